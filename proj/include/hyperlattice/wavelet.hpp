#pragma once

/**
 * @file wavelet.hpp
 * @brief The wavelet transform, the affine action and the projective
 *        representation of PSL(2,R) on the transform's range.
 *
 * rho(a,b) f(t) = a^{-1/2} f((t - b)/a) acts on the frequency side as
 *     (rho(a,b) f)^(xi) = sqrt(a) e^{-i b xi} f^(a xi),
 * and W_psi f(a,b) = <f, rho(a,b) psi>, viewed as a function of z = b + ai.
 *
 * The representation of weight k = 2n + alpha + 1 is
 *     (tau(m) F)(z) = j(m^{-1}, z) F(m^{-1} z),   j(g, z) = (|cz+d| / (cz+d))^k,
 * for g = (a b; c d), with the principal branch of arg(cz + d). The
 * unimodular factor makes tau projective; the cocycle is never needed
 * explicitly.
 *
 * Integrals over the range and over the group use the shift measure
 * db / (2 pi). With that measure
 *     \int\int |W_psi f|^2 da db / (2 pi a^2) = C_psi ||f||^2,
 * and with dmu_G = (da db / 2 pi a^2)(dtheta / pi) the formal dimension of
 * tau is ||psi||^2 / C_psi = alpha / 2.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hyperlattice/errors.hpp"
#include "hyperlattice/halfplane.hpp"
#include "hyperlattice/hardy.hpp"
#include "hyperlattice/parallel.hpp"

namespace hyperlattice {

/// Shift measure db / (2 pi) used by every range and group integral here.
inline constexpr double kShiftMeasure = 1.0 / (2.0 * std::numbers::pi);

/// A function on C+ evaluable pointwise.
class TransformFunction {
 public:
  using Rule = std::function<complex(const PointH&)>;

  TransformFunction() : rule_([](const PointH&) { return complex{}; }), provenance_("zero") {}
  TransformFunction(Rule rule, std::string provenance) : rule_(std::move(rule)), provenance_(std::move(provenance)) {}

  complex operator()(const PointH& z) const { return rule_(z); }
  [[nodiscard]] const std::string& provenance() const { return provenance_; }

  [[nodiscard]] TransformFunction scaled(complex c) const {
    return {[r = rule_, c](const PointH& z) { return c * r(z); }, provenance_};
  }

 private:
  Rule rule_;
  std::string provenance_;
};

// ---------------------------------------------------------------------------
// Affine action on the frequency side
// ---------------------------------------------------------------------------

inline FreqFunction rho_apply(double a, double b, const FreqFunction& f) {
  if (!(a > 0.0)) throw DomainError("rho_apply: scale must be positive");
  FreqFunction g;
  g.rule = [f, a, b](double xi) { return std::sqrt(a) * std::polar(1.0, -b * xi) * f(a * xi); };
  g.decay_rate = a * f.decay_rate;
  if (f.support) g.support = std::make_pair(f.support->first / a, f.support->second / a);
  return g;
}

// ---------------------------------------------------------------------------
// Span of dilates and translates of the window
// ---------------------------------------------------------------------------

struct SpanTerm {
  complex coef{1.0, 0.0};
  double scale = 1.0;  // a
  double shift = 0.0;  // b
};

/// f = sum_l coef_l rho(a_l, b_l) psi.
struct SpanElement {
  std::vector<SpanTerm> terms;

  static SpanElement window() { return {{SpanTerm{}}}; }
  [[nodiscard]] SpanElement scaled(complex c) const {
    SpanElement s = *this;
    for (auto& t : s.terms) t.coef *= c;
    return s;
  }
  SpanElement& operator+=(const SpanElement& other) {
    terms.insert(terms.end(), other.terms.begin(), other.terms.end());
    return *this;
  }
};

/// Closed form of <rho(a1,b1) psi, rho(a2,b2) psi> via Gamma integrals:
/// expanding L_n^alpha into monomials, every term is
/// \int xi^p e^{-s xi} dxi = Gamma(p+1) s^{-(p+1)} with s = a1 + a2 + i(b1 - b2).
class WindowKernel {
 public:
  static constexpr std::size_t kMaxDegree = 64;

  explicit WindowKernel(const Wavelet& w) : w_(w) {
    const auto c = laguerre_coefficients(w.n, w.alpha);
    if (c.size() > kMaxDegree) throw DomainError("WindowKernel: Laguerre degree too large");
    coeff_.resize(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) coeff_[j] = c[j] * std::pow(2.0, static_cast<double>(j));
    gamma_.resize(2 * c.size() - 1);
    for (std::size_t m = 0; m < gamma_.size(); ++m) gamma_[m] = std::tgamma(w.alpha + static_cast<double>(m) + 1.0);
  }

  [[nodiscard]] const Wavelet& wavelet() const { return w_; }

  [[nodiscard]] complex pair(double a1, double b1, double a2, double b2) const {
    const std::size_t deg = coeff_.size();
    const complex s(a1 + a2, b1 - b2);
    const complex log_s = std::log(s);
    const complex lead = std::exp(0.5 * (w_.alpha + 1.0) * std::log(a1 * a2) - (w_.alpha + 1.0) * log_s);
    if (deg == 1) return lead * gamma_[0] * coeff_[0] * coeff_[0];
    std::array<double, kMaxDegree> p1{};
    std::array<double, kMaxDegree> p2{};
    p1[0] = coeff_[0];
    p2[0] = coeff_[0];
    double x1 = 1.0;
    double x2 = 1.0;
    for (std::size_t j = 1; j < deg; ++j) {
      x1 *= a1;
      x2 *= a2;
      p1[j] = coeff_[j] * x1;
      p2[j] = coeff_[j] * x2;
    }
    const complex inv_s = 1.0 / s;
    complex sum{};
    complex power{1.0, 0.0};
    for (std::size_t m = 0; m < 2 * deg - 1; ++m) {
      double conv = 0.0;
      const std::size_t jlo = (m + 1 > deg) ? m + 1 - deg : 0;
      for (std::size_t j = jlo; j <= std::min(m, deg - 1); ++j) conv += p1[j] * p2[m - j];
      sum += gamma_[m] * conv * power;
      power *= inv_s;
    }
    return lead * sum;
  }

  private:
  Wavelet w_;
  std::vector<double> coeff_;
  std::vector<double> gamma_;
};

inline FreqFunction to_freq(const SpanElement& f, const Wavelet& w) {
  double rate = 1e300;
  for (const auto& t : f.terms) rate = std::min(rate, t.scale);
  if (f.terms.empty()) rate = 1.0;
  return {[f, w](double xi) {
            complex s{};
            for (const auto& t : f.terms) s += t.coef * std::sqrt(t.scale) * std::polar(1.0, -t.shift * xi) * psi_hat(w, t.scale * xi);
            return s;
          },
          rate, std::nullopt};
}

/// <f, g> in H^2 for span elements, in closed form.
inline complex h2_inner(const SpanElement& f, const SpanElement& g, const WindowKernel& kernel) {
  complex s{};
  for (const auto& p : f.terms) {
    for (const auto& q : g.terms) s += p.coef * std::conj(q.coef) * kernel.pair(p.scale, p.shift, q.scale, q.shift);
  }
  return s;
}

/// W_psi f for f in the span, evaluated in closed form.
inline TransformFunction transform(const SpanElement& f, const Wavelet& w) {
  return {[f, kernel = WindowKernel(w)](const PointH& z) {
            complex s{};
            for (const auto& t : f.terms) s += t.coef * kernel.pair(t.scale, t.shift, z.y, z.x);
            return s;
          },
          "W_psi(span)"};
}

/// W_psi psi.
inline TransformFunction window_transform(const Wavelet& w) { return transform(SpanElement::window(), w); }

/// W_psi f(z) by frequency quadrature.
inline complex wavelet_transform_at(const FreqFunction& f, const Wavelet& w, const PointH& z,
                                    const FreqQuadratureSpec& spec = {}) {
  const double a = z.y;
  const double b = z.x;
  const auto r = integrate_half_line(
      [&](double xi) { return f(xi) * std::sqrt(a) * std::polar(1.0, b * xi) * psi_hat(w, a * xi); },
      f.decay_rate + a, b, spec, f.support);
  if (r.tail > spec.tail_tolerance * r.mass) throw TruncationError("wavelet_transform: frequency tail above tolerance");
  return r.value;
}

inline TransformFunction wavelet_transform(const FreqFunction& f, const Wavelet& w, const FreqQuadratureSpec& spec = {}) {
  return {[f, w, spec](const PointH& z) { return wavelet_transform_at(f, w, z, spec); }, "W_psi(f) by quadrature"};
}

// ---------------------------------------------------------------------------
// The projective representation
// ---------------------------------------------------------------------------

/// j(g, z) = (|cz + d| / (cz + d))^k with the principal argument.
inline complex automorphy_factor(const GroupElement& g, const PointH& z, double k) {
  const complex den = g.c() * z.as_complex() + g.d();
  return std::polar(1.0, -k * std::arg(den));
}

inline TransformFunction rep_apply(const GroupElement& m, const Wavelet& w, const TransformFunction& F) {
  const GroupElement minv = inverse(m);
  const double k = w.weight();
  return {[F, minv, k](const PointH& z) { return automorphy_factor(minv, z, k) * F(mobius_apply(minv, z)); },
          "tau(m) " + F.provenance()};
}

/// tau(m) W_psi f = W_psi f' with f' again in the span. Each term
/// rho(a_l,b_l) psi is carried to rho(a',b') psi where m m_{a_l,b_l} =
/// m_{a',b'} r; the unimodular constant is read off at z = b' + i a'.
inline SpanElement rep_apply_span(const GroupElement& m, const SpanElement& f, const WindowKernel& kernel) {
  const GroupElement minv = inverse(m);
  const double k = kernel.wavelet().weight();
  SpanElement out;
  out.terms.reserve(f.terms.size());
  for (const auto& t : f.terms) {
    const NAKCoords nak = nak_factor(compose(m, affine_embed(t.scale, t.shift)));
    const PointH ref{nak.shift, nak.scale};
    const PointH pre = mobius_apply(minv, ref);
    const complex moved = automorphy_factor(minv, ref, k) * kernel.pair(t.scale, t.shift, pre.y, pre.x);
    const complex target = kernel.pair(nak.scale, nak.shift, nak.scale, nak.shift);
    out.terms.push_back({t.coef * moved / target, nak.scale, nak.shift});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pointwise identity checks
// ---------------------------------------------------------------------------

/// sup over points of |W(rho(a,b) f) - tau(m_{a,b}) W f|, both by quadrature.
inline double intertwine_residual(const FreqFunction& f, const Wavelet& w, double a, double b,
                                  std::span<const PointH> points, const FreqQuadratureSpec& spec = {}) {
  const GroupElement m = affine_embed(a, b);
  const TransformFunction lhs = wavelet_transform(rho_apply(a, b, f), w, spec);
  const TransformFunction rhs = rep_apply(m, w, wavelet_transform(f, w, spec));
  double sup = 0.0;
  for (const auto& z : points) sup = std::max(sup, std::abs(lhs(z) - rhs(z)));
  return sup;
}

struct PhaseReport {
  double phase = 0.0;
  double dispersion = 0.0;
  double modulus_residual = 0.0;
  std::size_t points_used = 0;
};

inline double wrap_angle(double x) {
  x = std::remainder(x, 2.0 * std::numbers::pi);
  return x;
}

/// Compares tau(r_theta) F with F: the phase of their ratio and its spread.
inline PhaseReport stationarity_report(const TransformFunction& F, const Wavelet& w, double theta,
                                       std::span<const PointH> points, double floor_fraction = 1e-6) {
  if (!(theta >= 0.0 && theta < std::numbers::pi)) throw DomainError("stationarity_report: theta must lie in [0, pi)");
  const TransformFunction G = rep_apply(rotation(theta), w, F);
  std::vector<complex> fv(points.size());
  std::vector<complex> gv(points.size());
  double peak = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    fv[i] = F(points[i]);
    gv[i] = G(points[i]);
    peak = std::max(peak, std::abs(fv[i]));
  }
  PhaseReport rep;
  const double floor = floor_fraction * peak;
  complex mean{};
  for (std::size_t i = 0; i < points.size(); ++i) {
    rep.modulus_residual = std::max(rep.modulus_residual, std::abs(std::abs(gv[i]) - std::abs(fv[i])));
    if (std::abs(fv[i]) > floor && std::abs(gv[i]) > 0.0) {
      const complex r = gv[i] / fv[i];
      mean += r / std::abs(r);
      ++rep.points_used;
    }
  }
  if (rep.points_used == 0 || !(peak > 0.0)) {
    throw DegenerateInputError("stationarity_report: every sample lies below the modulus floor");
  }
  rep.phase = std::arg(mean);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (std::abs(fv[i]) > floor && std::abs(gv[i]) > 0.0) {
      rep.dispersion = std::max(rep.dispersion, std::abs(wrap_angle(std::arg(gv[i] / fv[i]) - rep.phase)));
    }
  }
  return rep;
}

/// Stationarity of W_psi psi itself.
inline PhaseReport stationarity_report(const Wavelet& w, double theta, std::span<const PointH> points) {
  return stationarity_report(window_transform(w), w, theta, points);
}

// ---------------------------------------------------------------------------
// Range inner products
// ---------------------------------------------------------------------------

/// Polar quadrature grid for range integrals, centered at `center`.
struct WSpaceGrid {
  PointH center{0.0, 1.0};
  PolarGridSpec polar{10.0, 20, 8, 64};
  double tail_tolerance = 1e-6;

  /// |W_psi psi|^2 carries mass ~ exp(-alpha r) beyond hyperbolic radius r.
  static WSpaceGrid for_window(const Wavelet& w) {
    WSpaceGrid g;
    if (w.alpha < 2.0) {
      const double grow = 2.0 / w.alpha;
      g.polar.radius *= grow;
      g.polar.radial_panels = static_cast<int>(std::ceil(g.polar.radial_panels * grow));
    }
    return g;
  }
};

/// <F, H> = \int F conj(H) da db / (2 pi a^2).
inline complex wspace_inner(const TransformFunction& F, const TransformFunction& H, const WSpaceGrid& grid) {
  const auto nodes = polar_area_nodes(grid.center, grid.polar);
  const std::size_t ring = static_cast<std::size_t>(grid.polar.radial_order) * grid.polar.angular_nodes;
  complex sum{};
  double mass = 0.0;
  double outer = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const complex f = F(nodes[i].z);
    const complex h = H(nodes[i].z);
    sum += nodes[i].weight * f * std::conj(h);
    const double m = nodes[i].weight * std::abs(f) * std::abs(h);
    mass += m;
    if (i + ring >= nodes.size()) outer += m;
  }
  if (!std::isfinite(std::abs(sum))) throw NumericError("wspace_inner: non-finite integrand");
  if (mass > 0.0 && outer > grid.tail_tolerance * mass) {
    throw TruncationError("wspace_inner: outer ring carries too much mass; enlarge the grid radius");
  }
  return kShiftMeasure * sum;
}

inline complex wspace_inner(const TransformFunction& F, const TransformFunction& H, const Wavelet& w) {
  return wspace_inner(F, H, WSpaceGrid::for_window(w));
}

/// Parameters for integrals over G of range inner products.
struct PairingSpec {
  PolarHaarSpec outer{8.0, 16, 4, 12, 8};
  PolarGridSpec inner{9.0, 12, 6, 64};

  /// With `stationary_inputs`, every F and G is assumed to be a multiple of
  /// W_psi psi, so the integrand does not depend on the rotation angle and
  /// two theta nodes are exact. Off-centre inputs need the default eight.
  static PairingSpec for_window(const Wavelet& w, bool stationary_inputs = true) {
    PairingSpec p;
    if (stationary_inputs) p.outer.theta_nodes = 2;
    if (w.alpha < 2.0) {
      const double grow = 2.0 / w.alpha;
      p.outer.radius *= grow;
      p.outer.radial_panels = static_cast<int>(std::ceil(p.outer.radial_panels * grow));
      p.inner.radius *= grow;
      p.inner.radial_panels = static_cast<int>(std::ceil(p.inner.radial_panels * grow));
      p.inner.angular_nodes *= 2;
    }
    return p;
  }
};

namespace detail {

// Shared body of the G-integrals. With `squared` set, F2/G2 are ignored and
// the integrand is |<tau(m) F1, G1>|^2.
inline complex haar_pairing_impl(const TransformFunction& F1, const TransformFunction& G1, const TransformFunction* F2,
                                 const TransformFunction* G2, const Wavelet& w, const PairingSpec& spec) {
  const HaarRule rule = haar_rule(spec.outer);
  std::vector<complex> values(rule.size());
  const PointH origin{0.0, 1.0};
  const double k = w.weight();
  parallel_for(rule.size(), [&](std::size_t idx) {
    const GroupElement& m = rule[idx].element;
    const GroupElement minv = inverse(m);
    const PointH center = hyperbolic_midpoint(origin, mobius_apply(m, origin));
    complex p1{};
    complex p2{};
    for (const auto& node : polar_area_nodes(center, spec.inner)) {
      const complex j = node.weight * automorphy_factor(minv, node.z, k);
      const PointH pre = mobius_apply(minv, node.z);
      p1 += j * F1(pre) * std::conj(G1(node.z));
      if (F2 != nullptr) p2 += j * (*F2)(pre) * std::conj((*G2)(node.z));
    }
    p1 *= kShiftMeasure;
    p2 = F2 != nullptr ? kShiftMeasure * p2 : p1;
    values[idx] = rule[idx].weight * p1 * std::conj(p2);
  });
  complex total{};
  for (const auto& v : values) total += v;
  if (!std::isfinite(std::abs(total))) throw NumericError("haar_pairing: non-finite result");
  return kShiftMeasure * total;
}

}  // namespace detail

/// \int_G <tau(m) F1, G1> conj(<tau(m) F2, G2>) dmu_G(m), with every inner
/// product computed by quadrature on a polar grid centered halfway between
/// i and m i.
inline complex haar_pairing(const TransformFunction& F1, const TransformFunction& G1, const TransformFunction& F2,
                            const TransformFunction& G2, const Wavelet& w, const PairingSpec& spec) {
  return detail::haar_pairing_impl(F1, G1, &F2, &G2, w, spec);
}

/// \int_G |<tau(m) F, G>|^2 dmu_G(m).
inline double haar_pairing_sq(const TransformFunction& F, const TransformFunction& G, const Wavelet& w,
                              const PairingSpec& spec) {
  return detail::haar_pairing_impl(F, G, nullptr, nullptr, w, spec).real();
}

struct OrthoRelation {
  complex lhs{};
  complex rhs{};
  double relerr = 0.0;
};

/// Both sides of the orthogonality relations for a trial formal dimension d.
inline OrthoRelation ortho_relation_terms(const TransformFunction& F1, const TransformFunction& F2,
                                          const TransformFunction& G1, const TransformFunction& G2, const Wavelet& w,
                                          double formal_dim, const PairingSpec& spec, std::optional<WSpaceGrid> grid = std::nullopt) {
  if (!(formal_dim > 0.0)) throw DomainError("ortho_relation: formal dimension must be positive");
  OrthoRelation r;
  r.lhs = haar_pairing(F1, G1, F2, G2, w, spec);
  const WSpaceGrid g = grid.value_or(WSpaceGrid::for_window(w));
  r.rhs = (1.0 / formal_dim) * wspace_inner(F1, F2, g) * std::conj(wspace_inner(G1, G2, g));
  return r;
}

/// Throws IllConditionedError when |rhs| is below `rhs_floor` times its
/// Cauchy-Schwarz bound ||F1|| ||F2|| ||G1|| ||G2|| / d: the relative error
/// then measures quadrature noise only.
inline OrthoRelation ortho_relation_check(const TransformFunction& F1, const TransformFunction& F2,
                                          const TransformFunction& G1, const TransformFunction& G2, const Wavelet& w,
                                          double formal_dim, const PairingSpec& spec,
                                          std::optional<WSpaceGrid> grid = std::nullopt, double rhs_floor = 1e-3) {
  OrthoRelation r = ortho_relation_terms(F1, F2, G1, G2, w, formal_dim, spec, grid);
  const WSpaceGrid g = grid.value_or(WSpaceGrid::for_window(w));
  const auto sq = [&](const TransformFunction& F) { return wspace_inner(F, F, g).real(); };
  const double bound = std::sqrt(sq(F1) * sq(F2) * sq(G1) * sq(G2)) / formal_dim;
  if (!(std::abs(r.rhs) >= rhs_floor * bound) || !(bound > 0.0)) {
    throw IllConditionedError("ortho_relation_check: right-hand side below floor; relative error undefined");
  }
  r.relerr = std::abs(r.lhs - r.rhs) / std::abs(r.rhs);
  return r;
}

/// Convenience overload for span inputs; d defaults to alpha / 2.
inline OrthoRelation ortho_relation_check(const SpanElement& f1, const SpanElement& f2, const SpanElement& g1,
                                          const SpanElement& g2, const Wavelet& w, const PairingSpec& spec,
                                          std::optional<double> formal_dim = std::nullopt) {
  return ortho_relation_check(transform(f1, w), transform(f2, w), transform(g1, w), transform(g2, w), w,
                              formal_dim.value_or(0.5 * w.alpha), spec);
}

/// Inputs given on the frequency side; transforms by quadrature.
inline OrthoRelation ortho_relation_check(const FreqFunction& f1, const FreqFunction& f2, const FreqFunction& g1,
                                          const FreqFunction& g2, const Wavelet& w, const PairingSpec& spec,
                                          std::optional<double> formal_dim = std::nullopt,
                                          const FreqQuadratureSpec& freq = {}) {
  return ortho_relation_check(wavelet_transform(f1, w, freq), wavelet_transform(f2, w, freq),
                              wavelet_transform(g1, w, freq), wavelet_transform(g2, w, freq), w,
                              formal_dim.value_or(0.5 * w.alpha), spec);
}

// ---------------------------------------------------------------------------
// Range projection
// ---------------------------------------------------------------------------

struct RangeSpec {
  PolarGridSpec eval{5.0, 10, 6, 32};
  PolarGridSpec inner{9.0, 18, 6, 64};
  double idempotency_tolerance = 1e-3;

  /// Kernel sections decay like exp(-alpha r / 2) in hyperbolic distance;
  /// small alpha needs a wider inner grid.
  static RangeSpec for_window(const Wavelet& w) {
    RangeSpec s;
    if (w.alpha < 2.0) {
      const double grow = 2.0 / w.alpha;
      s.inner.radius *= grow;
      s.inner.radial_panels = static_cast<int>(std::ceil(s.inner.radial_panels * grow));
    }
    return s;
  }
};

namespace detail {

// (P F)(z) at each evaluation node. The integrand K(z, w) F(w) lives near the
// geodesic from i to z, so each node gets its own grid centered at the
// midpoint of that geodesic.
inline std::vector<complex> project_on_nodes(const TransformFunction& F, const std::vector<AreaNode>& eval,
                                             const WindowKernel& kernel, double inv_c, const PolarGridSpec& inner) {
  std::vector<complex> out(eval.size());
  const PointH origin{0.0, 1.0};
  parallel_for(eval.size(), [&](std::size_t i) {
    const PointH& z = eval[i].z;
    complex s{};
    for (const auto& node : polar_area_nodes(hyperbolic_midpoint(origin, z), inner)) {
      s += node.weight * kernel.pair(node.z.y, node.z.x, z.y, z.x) * F(node.z);
    }
    out[i] = inv_c * kShiftMeasure * s;
  });
  return out;
}

inline double weighted_norm(const std::vector<complex>& v, const std::vector<AreaNode>& eval) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += eval[i].weight * std::norm(v[i]);
  return std::sqrt(kShiftMeasure * s);
}

}  // namespace detail

/// ||F - P F|| / ||F|| on the evaluation disk, where P is the
/// reproducing-kernel integral operator K(z, w) = C_psi^{-1} <rho_w psi, rho_z psi>.
/// The range of P is spanned by kernel sections K(., w), so the
/// discretization is accepted only if it reproduces a few of them.
inline double range_residual(const TransformFunction& F, const Wavelet& w, std::optional<RangeSpec> grid = std::nullopt,
                             const FreqQuadratureSpec& freq = {}) {
  const RangeSpec spec = grid.value_or(RangeSpec::for_window(w));
  const auto eval = polar_area_nodes(PointH{0.0, 1.0}, spec.eval);
  const WindowKernel kernel(w);
  const double c_psi = admissibility_constant(w, freq);
  const double inv_c = 1.0 / c_psi;

  auto residual = [&](const TransformFunction& G) {
    std::vector<complex> g(eval.size());
    for (std::size_t i = 0; i < eval.size(); ++i) g[i] = G(eval[i].z);
    const double gn = detail::weighted_norm(g, eval);
    if (!(gn > 0.0)) throw DegenerateInputError("range_residual: function vanishes on the evaluation grid");
    const auto pg = detail::project_on_nodes(G, eval, kernel, inv_c, spec.inner);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= pg[i];
    return detail::weighted_norm(g, eval) / gn;
  };

  for (const PointH probe : {PointH{0.0, 1.0}, PointH{0.3, 1.2}}) {
    const SpanElement section{{SpanTerm{1.0, probe.y, probe.x}}};
    if (residual(transform(section, w)) > spec.idempotency_tolerance) {
      throw DiscretizationError("range_residual: discretized projection does not reproduce the range; refine the grid");
    }
  }
  return residual(F);
}

}  // namespace hyperlattice
