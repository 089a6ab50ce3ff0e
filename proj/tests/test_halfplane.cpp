#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hyperlattice/halfplane.hpp"

using namespace hyperlattice;

namespace {

GroupElement random_element(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (;;) {
    const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    if (a * d - b * c > 0.2) return {a, b, c, d};
  }
}

PointH random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> x(-3.0, 3.0);
  std::uniform_real_distribution<double> y(0.1, 3.0);
  return {x(rng), y(rng)};
}

void expect_point(const PointH& z, double x, double y, double tol = 1e-12) {
  EXPECT_NEAR(z.x, x, tol);
  EXPECT_NEAR(z.y, y, tol);
}

}  // namespace

TEST(PointH, RejectsNonPositiveImaginaryPart) {
  EXPECT_THROW(PointH(0.0, 0.0), DomainError);
  EXPECT_THROW(PointH(1.0, -1.0), DomainError);
}

TEST(GroupElement, NormalizesDeterminant) {
  const GroupElement m(2.0, 1.0, 1.0, 3.0);
  EXPECT_NEAR(m.det(), 1.0, 1e-12);
  EXPECT_THROW(GroupElement(1.0, 2.0, 2.0, 1.0), DomainError);
}

TEST(GroupElement, SignCanonicalization) {
  const GroupElement m(-1.0, 0.0, 0.0, -1.0);
  EXPECT_TRUE(approx_equal(m, identity_element()));
  EXPECT_DOUBLE_EQ(m.a(), 1.0);
  const GroupElement s(0.0, 1.0, -1.0, 0.0);  // a = 0, c < 0 flips
  EXPECT_GT(s.c(), 0.0);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const GroupElement r = random_element(rng);
    EXPECT_EQ(canonicalize(r.negated()).entries(), canonicalize(r).entries());
    EXPECT_EQ(canonicalize(canonicalize(r)).entries(), canonicalize(r).entries());
  }
}

TEST(Mobius, Examples) {
  expect_point(mobius_apply(identity_element(), {2.0, 3.0}), 2.0, 3.0);
  expect_point(mobius_apply(affine_embed(2.0, 5.0), {0.0, 1.0}), 5.0, 2.0);
  expect_point(mobius_apply(GroupElement(0.0, -1.0, 1.0, 0.0), {0.0, 2.0}), 0.0, 0.5);
  expect_point(mobius_apply(affine_embed(3.0, -1.0), {0.0, 1.0}), -1.0, 3.0);
}

TEST(Mobius, IsAHomomorphism) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const GroupElement m1 = random_element(rng);
    const GroupElement m2 = random_element(rng);
    const PointH z = random_point(rng);
    const PointH lhs = mobius_apply(compose(m1, m2), z);
    const PointH rhs = mobius_apply(m1, mobius_apply(m2, z));
    EXPECT_NEAR(lhs.x, rhs.x, 1e-10 * (1.0 + std::abs(lhs.x)));
    EXPECT_NEAR(lhs.y, rhs.y, 1e-10 * (1.0 + lhs.y));
  }
}

TEST(Mobius, ImaginaryPartFormula) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 100; ++i) {
    const GroupElement m = random_element(rng);
    const PointH z = random_point(rng);
    const double expect = z.y / std::norm(m.c() * z.as_complex() + m.d());
    EXPECT_NEAR(mobius_apply(m, z).y, expect, 1e-12 * expect);
  }
}

TEST(Group, ComposeInverseCanonicalize) {
  const GroupElement m(1.0, 2.0, 3.0, 7.0);
  EXPECT_TRUE(approx_equal(compose(identity_element(), m), m));
  EXPECT_TRUE(approx_equal(compose(m, inverse(m)), identity_element(), 1e-12));
  const GroupElement inv = inverse(affine_embed(4.0, 2.0));
  EXPECT_NEAR(inv.a(), 0.5, 1e-15);
  EXPECT_NEAR(inv.b(), -1.0, 1e-15);
  EXPECT_TRUE(approx_equal(canonicalize(identity_element().negated()), identity_element()));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const GroupElement r = random_element(rng);
    EXPECT_NEAR(compose(r, random_element(rng)).det(), 1.0, 1e-12);
  }
}

TEST(AffineEmbed, Examples) {
  EXPECT_TRUE(approx_equal(affine_embed(1.0, 0.0), identity_element()));
  const GroupElement m = affine_embed(4.0, 2.0);
  EXPECT_NEAR(m.a(), 2.0, 1e-15);
  EXPECT_NEAR(m.b(), 1.0, 1e-15);
  EXPECT_NEAR(m.c(), 0.0, 1e-15);
  EXPECT_NEAR(m.d(), 0.5, 1e-15);
  EXPECT_THROW(affine_embed(0.0, 1.0), DomainError);
  EXPECT_THROW(affine_embed(-1.0, 1.0), DomainError);
}

TEST(Rotation, FixesIAndHasPeriodPi) {
  EXPECT_TRUE(approx_equal(rotation(0.0), identity_element()));
  expect_point(mobius_apply(rotation(0.7), {0.0, 1.0}), 0.0, 1.0, 1e-15);
  EXPECT_TRUE(approx_equal(rotation(std::numbers::pi), identity_element(), 1e-12));
}

TEST(NAK, Examples) {
  const auto id = nak_factor(identity_element());
  EXPECT_NEAR(id.scale, 1.0, 1e-14);
  EXPECT_NEAR(id.shift, 0.0, 1e-14);
  EXPECT_NEAR(id.angle, 0.0, 1e-14);
  const auto r = nak_factor(rotation(0.3));
  EXPECT_NEAR(r.scale, 1.0, 1e-14);
  EXPECT_NEAR(r.shift, 0.0, 1e-14);
  EXPECT_NEAR(r.angle, 0.3, 1e-14);
  const auto a = nak_factor(affine_embed(2.0, 1.0));
  EXPECT_NEAR(a.scale, 2.0, 1e-14);
  EXPECT_NEAR(a.shift, 1.0, 1e-14);
  EXPECT_NEAR(a.angle, 0.0, 1e-14);
}

TEST(NAK, RoundTrips) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> sc(0.1, 5.0), sh(-4.0, 4.0), an(0.0, std::numbers::pi);
  for (int i = 0; i < 200; ++i) {
    const NAKCoords k{sc(rng), sh(rng), an(rng)};
    const NAKCoords back = nak_factor(nak_assemble(k));
    EXPECT_NEAR(back.scale, k.scale, 1e-10);
    EXPECT_NEAR(back.shift, k.shift, 1e-10);
    EXPECT_NEAR(back.angle, k.angle, 1e-10);
    const GroupElement m = random_element(rng);
    EXPECT_TRUE(approx_equal(nak_assemble(nak_factor(m)), m, 1e-10));
  }
}

TEST(Haar, ZeroAndIndicator) {
  HaarQuadratureSpec spec;
  EXPECT_EQ(haar_integrate([](const GroupElement&) { return 0.0; }, spec), 0.0);
  // 1 <= a <= e, 0 <= b <= 1, every theta: the integral of da db / a^2 is 1 - 1/e.
  spec.a_min = 1.0;
  spec.a_max = std::numbers::e;
  spec.a_nodes = 2001;
  spec.b_min = 0.0;
  spec.b_max = 1.0;
  spec.b_nodes = 3;
  const double v = haar_integrate([](const GroupElement&) { return 1.0; }, spec);
  EXPECT_NEAR(v, 1.0 - 1.0 / std::numbers::e, 1e-6);
}

TEST(Haar, ConvergesUnderBRefinement) {
  auto f = [](const GroupElement& m) {
    const auto k = nak_factor(m);
    return std::exp(-std::pow(std::log(k.scale), 2) - k.shift * k.shift) * (1.0 + 0.5 * std::cos(2.0 * k.angle));
  };
  HaarQuadratureSpec coarse;
  coarse.b_min = -10.0;
  coarse.b_max = 10.0;
  HaarQuadratureSpec fine = coarse;
  fine.b_nodes *= 2;
  EXPECT_NEAR(haar_integrate(f, coarse), haar_integrate(f, fine), 1e-6);
}

TEST(Haar, NonFiniteIntegrandReportsNode) {
  HaarQuadratureSpec spec;
  try {
    haar_integrate([](const GroupElement&) { return std::nan(""); }, spec);
    FAIL() << "expected NumericError";
  } catch (const NumericError& e) {
    EXPECT_NE(std::string(e.what()).find("("), std::string::npos);
  }
}

TEST(Haar, SpecValidation) {
  HaarQuadratureSpec spec;
  spec.a_min = 0.0;
  EXPECT_THROW(haar_rule(spec), DomainError);
  spec = {};
  spec.theta_nodes = 1;
  EXPECT_THROW(haar_rule(spec), DomainError);
}

TEST(Haar, LeftInvariance) {
  auto f = [](const GroupElement& m) {
    const PointH z = mobius_apply(m, PointH{0.0, 1.0});
    const double d = hyperbolic_distance(z, PointH{0.0, 1.0});
    return std::exp(-d * d);
  };
  const PolarHaarSpec spec{8.0, 32, 8, 64, 4};
  const GroupElement m0(1.0, 0.3, 0.2, 1.06);
  const double base = haar_integrate(f, haar_rule(spec));
  const double moved = haar_integrate([&](const GroupElement& m) { return f(compose(m0, m)); }, haar_rule(spec));
  EXPECT_NEAR(moved, base, 1e-3 * base);
  // The polar rule and the box rule agree on the same integrand.
  HaarQuadratureSpec box;
  box.a_min = 1e-2;
  box.a_max = 1e2;
  box.a_nodes = 300;
  box.b_min = -30.0;
  box.b_max = 30.0;
  box.b_nodes = 3000;
  box.theta_nodes = 2;
  EXPECT_NEAR(haar_integrate(f, box), base, 1e-3 * base);
}

TEST(HyperbolicIntegrate, BoxClosedForm) {
  const double Y = 7.0;
  const auto region = Region::box(-0.5, 0.5, 1.0, Y);
  EXPECT_NEAR(hyperbolic_integrate([](const PointH&) { return 1.0; }, region, {}), 1.0 - 1.0 / Y, 1e-13);
  EXPECT_EQ(hyperbolic_integrate([](const PointH&) { return 0.0; }, region, {}), 0.0);
  EXPECT_NEAR(hyperbolic_integrate([](const PointH&) { return 2.5; }, region, {}), 2.5 * (1.0 - 1.0 / Y), 1e-13);
}

TEST(HyperbolicIntegrate, InvariantUnderIsometries) {
  // f o m over m^{-1}(disc) equals f over the disc; the disc is a polar grid.
  auto f = [](const PointH& z) { return std::exp(-0.3 * (z.x - 0.2) * (z.x - 0.2)) / (1.0 + z.y); };
  const PolarGridSpec spec{2.0, 8, 10, 256};
  const PointH center{0.4, 1.3};
  double base = 0.0;
  for (const auto& n : polar_area_nodes(center, spec)) base += n.weight * f(n.z);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 5; ++i) {
    const GroupElement m = random_element(rng);
    const GroupElement minv = inverse(m);
    double moved = 0.0;
    for (const auto& n : polar_area_nodes(mobius_apply(minv, center), spec)) moved += n.weight * f(mobius_apply(m, n.z));
    EXPECT_NEAR(moved, base, 1e-8 * std::abs(base));
  }
}

TEST(PolarGrid, AreaOfDisc) {
  const PolarGridSpec spec{3.0, 6, 8, 16};
  double area = 0.0;
  for (const auto& n : polar_area_nodes({1.0, 2.0}, spec)) area += n.weight;
  EXPECT_NEAR(area, 2.0 * std::numbers::pi * (std::cosh(3.0) - 1.0), 1e-10);
}

TEST(Geometry, DistanceAndMidpoint) {
  EXPECT_NEAR(hyperbolic_distance({0.0, 1.0}, {0.0, std::exp(2.0)}), 2.0, 1e-14);
  const PointH z{0.3, 0.5}, w{4.0, 2.0};
  const PointH m = hyperbolic_midpoint(z, w);
  EXPECT_NEAR(hyperbolic_distance(m, z), hyperbolic_distance(m, w), 1e-12);
  EXPECT_NEAR(2.0 * hyperbolic_distance(m, z), hyperbolic_distance(z, w), 1e-12);
  for (double s : {0.5, 5.0, 25.0}) EXPECT_NEAR(hyperbolic_distance({0.0, 1.0}, polar_point(s, 1.1)), s, 1e-9 * s);
}
