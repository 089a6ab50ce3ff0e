#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hyperlattice/parallel.hpp"
#include "hyperlattice/quadrature.hpp"

namespace q = hyperlattice::quadrature;

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  for (int order : {1, 2, 5, 12, 20}) {
    const auto r = q::gauss_legendre(order);
    for (int deg = 0; deg <= 2 * order - 1; ++deg) {
      double s = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], deg);
      const double exact = (deg % 2) ? 0.0 : 2.0 / (deg + 1);
      EXPECT_NEAR(s, exact, 1e-13) << "order " << order << " degree " << deg;
    }
  }
}

TEST(GaussLegendre, NodesSortedAndSymmetric) {
  const auto r = q::gauss_legendre(9);
  for (std::size_t i = 0; i + 1 < r.size(); ++i) EXPECT_LT(r.nodes[i], r.nodes[i + 1]);
  for (std::size_t i = 0; i < r.size(); ++i) EXPECT_NEAR(r.nodes[i], -r.nodes[r.size() - 1 - i], 1e-15);
}

TEST(CompositeGauss, MatchesClosedForm) {
  const auto r = q::composite_gauss(0.0, std::numbers::pi, 8, 10);
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::sin(r.nodes[i]);
  EXPECT_NEAR(s, 2.0, 1e-14);
}

TEST(Trapezoid, EndpointHalfWeights) {
  const auto r = q::trapezoid(0.0, 1.0, 5);
  ASSERT_EQ(r.size(), 5u);
  EXPECT_DOUBLE_EQ(r.weights.front(), 0.125);
  EXPECT_DOUBLE_EQ(r.weights[2], 0.25);
}

TEST(Periodic, ExactForTrigonometricPolynomials) {
  const auto r = q::periodic(0.0, 2.0 * std::numbers::pi, 8);
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(std::cos(r.nodes[i]), 4);
  EXPECT_NEAR(s, 3.0 * std::numbers::pi / 4.0, 1e-14);
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<int> hits(1000, 0);
  hyperlattice::parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(ParallelFor, PropagatesExceptions) {
  EXPECT_THROW(hyperlattice::parallel_for(10, [](std::size_t i) {
                 if (i == 7) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}
