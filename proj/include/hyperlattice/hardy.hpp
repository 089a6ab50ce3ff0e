#pragma once

/**
 * @file hardy.hpp
 * @brief Hardy-space windows on the frequency side.
 *
 * Functions in H^2(R) are handled through their Fourier transforms, which
 * vanish on (-inf, 0]. The transform is unitary with angular frequency,
 *     f^(xi) = (2 pi)^{-1/2} \int f(t) e^{-i t xi} dt,
 * so <f, g> = \int_0^inf f^(xi) conj(g^(xi)) dxi with constant one.
 *
 * The windows are psi^(xi) = xi^{alpha/2} e^{-xi} L_n^alpha(2 xi). For them
 *     C_psi = \int |psi^|^2 dxi / xi = (2 / alpha) ||psi||^2,
 * from \int x^{a-1} e^{-x} [L_n^a(x)]^2 dx = Gamma(n+a+1) / (a n!).
 */

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "hyperlattice/errors.hpp"
#include "hyperlattice/quadrature.hpp"

namespace hyperlattice {

using complex = std::complex<double>;

/// A function on the frequency half-line; zero for xi <= 0.
struct FreqFunction {
  std::function<complex(double)> rule;
  double decay_rate = 1.0;  // |f^(xi)| <~ poly(xi) e^{-decay_rate xi}
  std::optional<std::pair<double, double>> support;  // optional compact support

  complex operator()(double xi) const {
    if (xi <= 0.0) return {0.0, 0.0};
    if (support && (xi < support->first || xi > support->second)) return {0.0, 0.0};
    return rule(xi);
  }

  [[nodiscard]] FreqFunction scaled(complex c) const {
    return {[r = rule, c](double xi) { return c * r(xi); }, decay_rate, support};
  }
};

inline FreqFunction zero_function() {
  return {[](double) { return complex{}; }, 1.0, std::nullopt};
}

struct Wavelet {
  int n = 0;
  double alpha = 2.0;

  Wavelet() = default;
  Wavelet(int n_, double alpha_) : n(n_), alpha(alpha_) {
    if (n < 0) throw DomainError("Wavelet: n must be >= 0");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("Wavelet: alpha must be positive");
  }

  /// Exponent 2n + alpha + 1 of the automorphy factor.
  [[nodiscard]] double weight() const { return 2.0 * n + alpha + 1.0; }
};

/// Generalized Laguerre polynomial by the three-term recurrence.
inline double laguerre(int n, double alpha, double x) {
  if (n < 0) throw DomainError("laguerre: n must be >= 0");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Monomial coefficients: L_n^alpha(x) = sum_j coeff[j] x^j.
inline std::vector<double> laguerre_coefficients(int n, double alpha) {
  std::vector<double> c(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double binom = std::exp(std::lgamma(n + alpha + 1.0) - std::lgamma(n - j + 1.0) - std::lgamma(alpha + j + 1.0));
    c[j] = ((j % 2) ? -1.0 : 1.0) * binom / std::tgamma(j + 1.0);
  }
  return c;
}

inline double psi_hat(const Wavelet& w, double xi) {
  if (xi <= 0.0) return 0.0;
  return std::pow(xi, 0.5 * w.alpha) * std::exp(-xi) * laguerre(w.n, w.alpha, 2.0 * xi);
}

inline FreqFunction as_freq(const Wavelet& w) {
  return {[w](double xi) { return complex(psi_hat(w, xi), 0.0); }, 1.0, std::nullopt};
}

// ---------------------------------------------------------------------------
// Half-line quadrature
// ---------------------------------------------------------------------------

/// Composite Gauss-Legendre on (0, cutoff], geometrically graded towards 0.
struct FreqQuadratureSpec {
  double tail_nats = 60.0;      // cutoff = tail_nats / decay rate
  int order = 20;               // nodes per panel
  double panel_width = 0.5;     // in units of 1 / decay rate
  int grading_levels = 40;
  double grading_ratio = 0.15;
  double tail_tolerance = 1e-13;
  double divergence_tolerance = 1e-9;

  void validate() const {
    if (!(tail_nats > 0.0) || order < 2 || !(panel_width > 0.0) || grading_levels < 1 ||
        !(grading_ratio > 0.0 && grading_ratio < 1.0)) {
      throw DomainError("FreqQuadratureSpec: invalid parameters");
    }
  }
  [[nodiscard]] FreqQuadratureSpec refined() const {
    FreqQuadratureSpec s = *this;
    s.panel_width *= 0.5;
    s.grading_levels *= 2;
    s.grading_ratio = std::sqrt(grading_ratio);
    return s;
  }
};

template <typename T>
struct HalfLineResult {
  T value{};
  double innermost = 0.0;  // |contribution| of the panels closest to 0
  double tail = 0.0;       // |g(cutoff)| / rate, a crude tail bound
  double mass = 0.0;       // sum of |panel contributions|
};

/// Integrates g over (0, inf). `rate` is the exponential decay rate of g and
/// `oscillation` the angular frequency of any e^{i b xi} factor.
template <typename G>
auto integrate_half_line(G&& g, double rate, double oscillation, const FreqQuadratureSpec& spec,
                         std::optional<std::pair<double, double>> support = std::nullopt) {
  using T = std::decay_t<decltype(g(1.0))>;
  spec.validate();
  if (!(rate > 0.0)) throw DomainError("integrate_half_line: decay rate must be positive");
  const quadrature::Rule base = quadrature::gauss_legendre(spec.order);
  auto panel = [&](double lo, double hi) {
    T s{};
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < base.size(); ++i) s += base.weights[i] * half * g(mid + half * base.nodes[i]);
    return s;
  };

  double lo = 0.0;
  double cutoff = spec.tail_nats / rate;
  if (support) {
    lo = std::max(0.0, support->first);
    cutoff = std::min(lo + cutoff, support->second);
  }
  HalfLineResult<T> out;
  if (!(cutoff > lo)) return out;

  double start = lo;
  if (lo == 0.0) {
    double xi0 = std::min(1.0 / rate, cutoff);
    if (oscillation != 0.0) xi0 = std::min(xi0, 1.0 / std::abs(oscillation));
    // graded panels [xi0 r^{j+1}, xi0 r^j] and the last one [0, xi0 r^L]
    double right = xi0;
    T graded{};
    for (int j = 0; j < spec.grading_levels; ++j) {
      const double left = right * spec.grading_ratio;
      const T part = panel(left, right);
      graded += part;
      if (j == spec.grading_levels - 1) out.innermost = std::abs(part);
      right = left;
    }
    const T last = panel(0.0, right);
    out.innermost += std::abs(last);
    out.value = graded + last;
    start = xi0;
  }
  double width = spec.panel_width / rate;
  if (oscillation != 0.0) width = std::min(width, 2.0 * std::numbers::pi / std::abs(oscillation));
  const int panels = std::max(1, static_cast<int>(std::ceil((cutoff - start) / width)));
  const double h = (cutoff - start) / panels;
  double mass = std::abs(out.value);
  for (int p = 0; p < panels; ++p) {
    const T part = panel(start + p * h, start + (p + 1) * h);
    out.value += part;
    mass += std::abs(part);
  }
  if (!support || cutoff < support->second) {
    // Polynomial factors push the mass beyond tail_nats / rate; keep adding
    // panels until the tail bound is small next to the integrated mass.
    out.tail = std::abs(g(cutoff)) / rate;
    for (int extra = 0; extra < 4 * panels && out.tail > spec.tail_tolerance * mass; ++extra) {
      const double hi = support ? std::min(cutoff + h, support->second) : cutoff + h;
      const T part = panel(cutoff, hi);
      out.value += part;
      mass += std::abs(part);
      cutoff = hi;
      out.tail = (support && cutoff >= support->second) ? 0.0 : std::abs(g(cutoff)) / rate;
    }
  }
  out.mass = mass;
  if (!std::isfinite(std::abs(out.value))) throw NumericError("integrate_half_line: non-finite result");
  return out;
}

/// ||f||^2 = \int_0^inf |f^(xi)|^2 dxi.
inline double norm_sq(const FreqFunction& f, const FreqQuadratureSpec& spec = {}) {
  const auto r = integrate_half_line([&](double xi) { return std::norm(f(xi)); }, 2.0 * f.decay_rate, 0.0, spec,
                                     f.support);
  if (r.tail > spec.tail_tolerance * std::max(std::abs(r.value), 1e-300)) {
    throw NumericError("norm_sq: tail estimate above tolerance; raise tail_nats");
  }
  return r.value;
}

/// C_psi = \int_0^inf |f^(xi)|^2 dxi / xi.
inline double admissibility_constant(const FreqFunction& f, const FreqQuadratureSpec& spec = {}) {
  const auto r = integrate_half_line([&](double xi) { return std::norm(f(xi)) / xi; }, 2.0 * f.decay_rate, 0.0,
                                     spec, f.support);
  if (!std::isfinite(r.value) || r.innermost > spec.divergence_tolerance * std::abs(r.value)) {
    throw AdmissibilityError("admissibility_constant: integral near xi = 0 does not converge");
  }
  if (r.tail > spec.tail_tolerance * std::max(std::abs(r.value), 1e-300)) {
    throw NumericError("admissibility_constant: tail estimate above tolerance");
  }
  return r.value;
}

inline double norm_sq(const Wavelet& w, const FreqQuadratureSpec& spec = {}) { return norm_sq(as_freq(w), spec); }

inline double admissibility_constant(const Wavelet& w, const FreqQuadratureSpec& spec = {}) {
  return admissibility_constant(as_freq(w), spec);
}

struct FormalDimension {
  double quadrature = 0.0;   // ||psi||^2 / C_psi
  double closed_form = 0.0;  // alpha / 2
};

inline FormalDimension formal_dimension(const Wavelet& w, const FreqQuadratureSpec& spec = {}) {
  return {norm_sq(w, spec) / admissibility_constant(w, spec), 0.5 * w.alpha};
}

/// Ratio C_psi / ||psi||^2 for an arbitrary window.
inline double admissibility_ratio(const FreqFunction& f, const FreqQuadratureSpec& spec = {}) {
  return admissibility_constant(f, spec) / norm_sq(f, spec);
}

}  // namespace hyperlattice
