#pragma once

/**
 * @file density.hpp
 * @brief Density verdicts for lattice orbits of the weight-k representation,
 *        the periodization identity over a fundamental domain, Bessel
 *        witnesses and a quadrature estimate of the formal dimension.
 *
 * The periodization identity: for a left fundamental domain D of the lattice
 * in G, the translates gamma D tile G, so for integrable f
 *     \int_G f = \int_D sum_gamma f(gamma m) dm.
 * With f(m) = |<H, tau(m) F>|^2 and D = { m_z r_theta : z in Omega } the
 * right-hand side becomes \int_D sum_gamma |<tau(gamma)^{-1} H, tau(m) F>|^2,
 * a sum over tiles. The theta integral is kept (no averaging shortcut), so
 * the identity holds for any F, H, stationary or not.
 */

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hyperlattice/errors.hpp"
#include "hyperlattice/fuchsian.hpp"
#include "hyperlattice/halfplane.hpp"
#include "hyperlattice/hardy.hpp"
#include "hyperlattice/parallel.hpp"
#include "hyperlattice/quadrature.hpp"
#include "hyperlattice/wavelet.hpp"

namespace hyperlattice {

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

/// |p - 1| below this counts as p = 1.
inline constexpr double kCriticalBand = 1e-12;

struct DensityVerdict {
  double covolume = 0.0;          // hyperbolic area of Omega
  double alpha = 0.0;
  int n = 0;
  double formal_dimension = 0.0;  // alpha / 2
  double product = 0.0;           // covolume * formal_dimension
  bool frame_admissible = false;  // product <= 1
  bool riesz_admissible = false;  // product >= 1
  double abdm_bound = 0.0;        // 4 (n + 1) / alpha
  double sharp_bound = 0.0;       // 2 / alpha
  double haar_covolume = 0.0;     // covolume / (2 pi), mass of G / Gamma
  double normalized_product = 0.0;
  std::string group;
  std::vector<std::string> notes;
};

/// Value of alpha at which the frame verdict flips for a given covolume.
inline double frame_threshold(double covolume) {
  if (!(covolume > 0.0)) throw DomainError("frame_threshold: covolume must be positive");
  return 2.0 / covolume;
}

inline DensityVerdict density_verdict(double covolume, double alpha, int n, std::string group = "explicit") {
  if (!(covolume > 0.0) || !std::isfinite(covolume)) throw DomainError("density_verdict: covolume must be positive");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("density_verdict: alpha must be positive");
  if (n < 0) throw DomainError("density_verdict: n must be >= 0");
  DensityVerdict v;
  v.covolume = covolume;
  v.alpha = alpha;
  v.n = n;
  v.group = std::move(group);
  v.formal_dimension = 0.5 * alpha;
  v.product = covolume * v.formal_dimension;
  v.frame_admissible = v.product <= 1.0 + kCriticalBand;
  v.riesz_admissible = v.product >= 1.0 - kCriticalBand;
  v.abdm_bound = 4.0 * (n + 1) / alpha;
  v.sharp_bound = 2.0 / alpha;
  v.haar_covolume = covolume / (2.0 * std::numbers::pi);
  v.normalized_product = v.haar_covolume * v.formal_dimension;
  v.notes = {
      "product = area(Omega) * alpha / 2; frame orbits need product <= 1, Riesz orbits need product >= 1",
      "the converse (an admissible vector exists once the inequality holds) is a known result from the literature; "
      "it is cited here, not computed",
      "the quotient need not be compact: only the covolume enters, so cusped lattices such as the modular group are covered",
      "normalized_product uses Haar measure (dx dy / 2 pi y^2)(dtheta / pi), in which the formal dimension of the "
      "representation is alpha / 2; its critical value is also 1",
  };
  return v;
}

inline DensityVerdict density_verdict(const FuchsianGroup& g, double alpha, int n, double cusp_height = 10.0) {
  return density_verdict(covolume(g, cusp_height).value, alpha, n, g.name);
}

// ---------------------------------------------------------------------------
// Periodization
// ---------------------------------------------------------------------------

struct PeriodizationSpec {
  int word_length = 8;                     // L
  double cusp_height = 10.0;               // Y
  RegionGrid domain_grid{4, 4, 10};        // Omega, in x and 1/y
  int theta_nodes = 4;
  PolarHaarSpec haar{12.0, 24, 8, 32, 4};  // global integral
  double shell_tolerance = 1e-2;           // flag if the outermost shell carries more than this share
};

struct PeriodizationReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double relerr = 0.0;
  int word_length = 0;
  double cusp_height = 0.0;
  std::size_t ball_size = 0;
  double haar_radius = 0.0;
  double outer_shell_share = 0.0;
  std::vector<std::string> notes;
};

/// Both sides of the periodization identity for F, H in the span of the
/// window. Inner products are the range inner products, i.e. C_psi times the
/// H^2 pairing, evaluated in closed form.
inline PeriodizationReport periodization_check(const SpanElement& F, const SpanElement& H, const Wavelet& w,
                                               const FuchsianGroup& g, const PeriodizationSpec& spec = {}) {
  if (spec.word_length < 0) throw DomainError("periodization_check: word length must be >= 0");
  if (spec.theta_nodes < 1) throw DomainError("periodization_check: theta_nodes must be >= 1");
  const WindowKernel kernel(w);
  const double c2 = std::pow(admissibility_constant(w), 2);

  PeriodizationReport rep;
  rep.word_length = spec.word_length;
  rep.cusp_height = spec.cusp_height;
  rep.haar_radius = spec.haar.radius;

  auto coefficient_sq = [&](const SpanElement& h, const SpanElement& moved) { return c2 * std::norm(h2_inner(h, moved, kernel)); };

  // Left-hand side: the whole group.
  const HaarRule rule = haar_rule(spec.haar);
  std::vector<double> lhs_terms(rule.size());
  parallel_for(rule.size(), [&](std::size_t i) {
    lhs_terms[i] = rule[i].weight * coefficient_sq(H, rep_apply_span(rule[i].element, F, kernel));
  });
  double lhs = 0.0;
  for (const double t : lhs_terms) lhs += t;
  rep.lhs = kShiftMeasure * lhs;

  // Right-hand side: the lifted fundamental domain, summed over tiles.
  const WordBall ball = enumerate_ball(g, spec.word_length);
  rep.ball_size = ball.size();
  std::vector<SpanElement> pulled(ball.size());
  for (std::size_t j = 0; j < ball.size(); ++j) pulled[j] = rep_apply_span(inverse(ball.elements[j]), H, kernel);

  const auto nodes = area_nodes(domain_region(standard_domain(g, spec.cusp_height)), spec.domain_grid);
  const auto th = quadrature::periodic(0.0, std::numbers::pi, spec.theta_nodes);
  std::vector<double> rhs_terms(nodes.size(), 0.0);
  std::vector<double> shell_terms(nodes.size(), 0.0);
  parallel_for(nodes.size(), [&](std::size_t i) {
    const GroupElement affine = affine_embed(nodes[i].z.y, nodes[i].z.x);
    for (std::size_t k = 0; k < th.size(); ++k) {
      const double weight = nodes[i].weight * th.weights[k] / std::numbers::pi;
      const SpanElement moved = rep_apply_span(compose(affine, rotation(th.nodes[k])), F, kernel);
      for (std::size_t j = 0; j < ball.size(); ++j) {
        const double t = weight * coefficient_sq(pulled[j], moved);
        rhs_terms[i] += t;
        if (ball.lengths[j] == spec.word_length) shell_terms[i] += t;
      }
    }
  });
  double rhs = 0.0;
  double shell = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    rhs += rhs_terms[i];
    shell += shell_terms[i];
  }
  rep.rhs = kShiftMeasure * rhs;
  rep.outer_shell_share = rhs > 0.0 ? shell / rhs : 0.0;
  rep.relerr = std::abs(rep.lhs - rep.rhs) / std::max(std::abs(rep.lhs), 1e-300);

  std::ostringstream os;
  os << "word ball of length " << spec.word_length << " (" << ball.size() << " elements), cusp truncated at y = "
     << spec.cusp_height << ", global integral over hyperbolic radius " << spec.haar.radius;
  rep.notes.push_back(os.str());
  if (rep.outer_shell_share > spec.shell_tolerance) {
    std::ostringstream flag;
    flag << "tail flag: outermost word shell carries " << rep.outer_shell_share << " of the tile sum";
    rep.notes.push_back(flag.str());
  }
  return rep;
}

/// The standard configuration: F = H = psi.
inline PeriodizationReport periodization_check(const Wavelet& w, const FuchsianGroup& g, const PeriodizationSpec& spec = {}) {
  return periodization_check(SpanElement::window(), SpanElement::window(), w, g, spec);
}

/// d^{-1} ||W psi||^4, the value the global integral converges to for F = H = psi.
inline double periodization_target(const Wavelet& w) {
  const double c = admissibility_constant(w);
  const double nrm = norm_sq(w);
  return std::pow(c * nrm, 2) / (0.5 * w.alpha);
}

// ---------------------------------------------------------------------------
// Bessel witnesses
// ---------------------------------------------------------------------------

/// max over probes H of sum_{gamma in ball(L)} |<H/||H||, tau(gamma) F>|^2.
/// Every valid Bessel bound of the full orbit is at least this.
inline double bessel_witness(const SpanElement& F, const Wavelet& w, const FuchsianGroup& g, int L,
                             const std::vector<SpanElement>& probes) {
  if (probes.empty()) throw DomainError("bessel_witness: need at least one probe");
  const WindowKernel kernel(w);
  const double c = admissibility_constant(w);
  const WordBall ball = enumerate_ball(g, L);
  std::vector<SpanElement> orbit(ball.size());
  for (std::size_t j = 0; j < ball.size(); ++j) orbit[j] = rep_apply_span(ball.elements[j], F, kernel);
  double best = 0.0;
  for (const auto& h : probes) {
    const double hn = c * h2_inner(h, h, kernel).real();
    if (!(hn > 0.0)) throw DomainError("bessel_witness: probes must be nonzero");
    double sum = 0.0;
    for (const auto& f : orbit) sum += c * c * std::norm(h2_inner(h, f, kernel));
    best = std::max(best, sum / hn);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Formal dimension by quadrature over G
// ---------------------------------------------------------------------------

/// ||F||^4 / \int_G |<tau(m) F, F>|^2 dmu_G, every inner product by quadrature.
inline double formal_dim_numeric(const TransformFunction& F, const Wavelet& w, std::optional<PairingSpec> spec = std::nullopt) {
  const PairingSpec ps = spec.value_or(PairingSpec::for_window(w, false));
  const double nrm = wspace_inner(F, F, w).real();
  const double integral = haar_pairing_sq(F, F, w, ps);
  if (!(integral > 0.0)) throw NumericError("formal_dim_numeric: matrix-coefficient integral vanished");
  return nrm * nrm / integral;
}

inline double formal_dim_numeric(int n, double alpha, std::optional<PairingSpec> spec = std::nullopt) {
  const Wavelet w(n, alpha);
  return formal_dim_numeric(window_transform(w), w, spec.value_or(PairingSpec::for_window(w)));
}

}  // namespace hyperlattice
