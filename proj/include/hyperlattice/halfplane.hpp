#pragma once

/**
 * @file halfplane.hpp
 * @brief PSL(2,R) elements, the upper half-plane, and integration over both.
 *
 * Conventions used throughout the library:
 *   - m = (a b; c d) acts on z in C+ by z -> (az + b)/(cz + d).
 *   - The affine point (a, b), a > 0, is identified with z = b + ai and with
 *     the group element m_{a,b} = (sqrt(a), b/sqrt(a); 0, 1/sqrt(a)).
 *   - Every element factors as m = m_{a,b} r_theta with r_theta in PSO(2),
 *     theta in [0, pi).
 *   - Haar measure: dmu = (da db / a^2)(dtheta / pi); PSO(2) has mass 1.
 *   - Hyperbolic area: dx dy / y^2.
 */

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hyperlattice/errors.hpp"
#include "hyperlattice/quadrature.hpp"

namespace hyperlattice {

using complex = std::complex<double>;

/// A point z = x + iy of the upper half-plane (y > 0).
struct PointH {
  double x = 0.0;
  double y = 1.0;

  PointH() = default;
  PointH(double x_, double y_) : x(x_), y(y_) {
    if (!(y > 0.0)) throw DomainError("PointH: imaginary part must be positive");
  }
  static PointH from(complex z) { return {z.real(), z.imag()}; }
  [[nodiscard]] complex as_complex() const { return {x, y}; }
};

/// Element of PSL(2,R): determinant one, sign canonicalized.
class GroupElement {
 public:
  /// Identity.
  GroupElement() = default;

  /// Builds from any real matrix with positive determinant (rescaled to 1).
  GroupElement(double a, double b, double c, double d) {
    const double det = a * d - b * c;
    if (!(det > 0.0) || !std::isfinite(det)) {
      throw DomainError("GroupElement: determinant must be positive and finite");
    }
    const double s = 1.0 / std::sqrt(det);
    m_ = {a * s, b * s, c * s, d * s};
    canonicalize_in_place();
  }

  [[nodiscard]] double a() const { return m_[0]; }
  [[nodiscard]] double b() const { return m_[1]; }
  [[nodiscard]] double c() const { return m_[2]; }
  [[nodiscard]] double d() const { return m_[3]; }
  [[nodiscard]] double det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
  [[nodiscard]] const std::array<double, 4>& entries() const { return m_; }

  [[nodiscard]] GroupElement negated() const {
    GroupElement r;
    r.m_ = {-m_[0], -m_[1], -m_[2], -m_[3]};
    return r;
  }

  [[nodiscard]] std::string str() const {
    std::ostringstream os;
    os.precision(12);
    os << "(" << m_[0] << " " << m_[1] << "; " << m_[2] << " " << m_[3] << ")";
    return os.str();
  }

 private:
  friend GroupElement canonicalize(const GroupElement& m);

  // First entry in the order (a, c, b, d) with |x| > 1e-12 is made positive.
  void canonicalize_in_place() {
    for (const int idx : {0, 2, 1, 3}) {
      if (std::abs(m_[idx]) > 1e-12) {
        if (m_[idx] < 0.0) {
          for (double& v : m_) v = -v;
        }
        return;
      }
    }
  }

  std::array<double, 4> m_{1.0, 0.0, 0.0, 1.0};
};

inline GroupElement canonicalize(const GroupElement& m) {
  GroupElement r = m;
  r.canonicalize_in_place();
  return r;
}

inline GroupElement identity_element() { return {}; }

inline GroupElement compose(const GroupElement& m1, const GroupElement& m2) {
  return {m1.a() * m2.a() + m1.b() * m2.c(), m1.a() * m2.b() + m1.b() * m2.d(),
          m1.c() * m2.a() + m1.d() * m2.c(), m1.c() * m2.b() + m1.d() * m2.d()};
}

inline GroupElement inverse(const GroupElement& m) { return {m.d(), -m.b(), -m.c(), m.a()}; }

/// Entrywise comparison modulo the PSL sign.
inline bool approx_equal(const GroupElement& m1, const GroupElement& m2, double tol = 1e-9) {
  auto close = [&](double s) {
    for (int i = 0; i < 4; ++i) {
      if (std::abs(m1.entries()[i] - s * m2.entries()[i]) > tol) return false;
    }
    return true;
  };
  return close(1.0) || close(-1.0);
}

inline PointH mobius_apply(const GroupElement& m, const PointH& z) {
  const complex w = z.as_complex();
  const complex den = m.c() * w + m.d();
  const complex num = m.a() * w + m.b();
  const double y = z.y / std::norm(den);  // exact formula, stays positive
  return {(num / den).real(), y};
}

/// m_{a,b} = (sqrt a, b / sqrt a; 0, 1 / sqrt a).
inline GroupElement affine_embed(double a, double b) {
  if (!(a > 0.0)) throw DomainError("affine_embed: scale must be positive");
  const double r = std::sqrt(a);
  return {r, b / r, 0.0, 1.0 / r};
}

/// r_theta = (cos, sin; -sin, cos); fixes i, projective period pi.
inline GroupElement rotation(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c, s, -s, c};
}

/// Iwasawa coordinates of m = m_{a,b} r_theta.
struct NAKCoords {
  double scale = 1.0;
  double shift = 0.0;
  double angle = 0.0;
};

inline NAKCoords nak_factor(const GroupElement& m) {
  const PointH z = mobius_apply(m, PointH{0.0, 1.0});
  const GroupElement r = compose(inverse(affine_embed(z.y, z.x)), m);
  double theta = std::atan2(r.b(), r.a());
  theta = std::fmod(theta, std::numbers::pi);
  if (theta < 0.0) theta += std::numbers::pi;
  if (theta >= std::numbers::pi) theta -= std::numbers::pi;
  return {z.y, z.x, theta};
}

inline GroupElement nak_assemble(const NAKCoords& k) {
  return compose(affine_embed(k.scale, k.shift), rotation(k.angle));
}

// ---------------------------------------------------------------------------
// Haar measure quadrature
// ---------------------------------------------------------------------------

/// Box rule on (log a, b, theta): trapezoid in log a and b, periodic in theta.
struct HaarQuadratureSpec {
  double a_min = 1e-2;
  double a_max = 1e2;
  int a_nodes = 200;
  double b_min = -20.0;
  double b_max = 20.0;
  int b_nodes = 400;
  int theta_nodes = 4;

  void validate() const {
    if (!(a_min > 0.0) || !(a_max > a_min)) throw DomainError("HaarQuadratureSpec: need 0 < a_min < a_max");
    if (!(b_max > b_min)) throw DomainError("HaarQuadratureSpec: need b_min < b_max");
    if (a_nodes < 2 || b_nodes < 2 || theta_nodes < 2) {
      throw DomainError("HaarQuadratureSpec: node counts must be >= 2");
    }
  }
};

/// Geodesic-polar rule: the point m*i in hyperbolic polar coordinates
/// (radius t in [0, radius], angle phi) about i, times theta.
struct PolarHaarSpec {
  double radius = 8.0;
  int radial_panels = 16;
  int radial_order = 8;
  int angular_nodes = 32;
  int theta_nodes = 4;

  void validate() const {
    if (!(radius > 0.0)) throw DomainError("PolarHaarSpec: radius must be positive");
    if (radial_panels < 1 || radial_order < 2 || angular_nodes < 2 || theta_nodes < 2) {
      throw DomainError("PolarHaarSpec: node counts must be >= 2");
    }
  }
};

struct HaarNode {
  GroupElement element;
  double weight = 0.0;
};

using HaarRule = std::vector<HaarNode>;

inline HaarRule haar_rule(const HaarQuadratureSpec& spec) {
  spec.validate();
  const auto u = quadrature::trapezoid(std::log(spec.a_min), std::log(spec.a_max), spec.a_nodes);
  const auto b = quadrature::trapezoid(spec.b_min, spec.b_max, spec.b_nodes);
  const auto th = quadrature::periodic(0.0, std::numbers::pi, spec.theta_nodes);
  HaarRule rule;
  rule.reserve(u.size() * b.size() * th.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = std::exp(u.nodes[i]);
    const double wa = u.weights[i] / a;  // da / a^2 = e^{-u} du
    for (std::size_t j = 0; j < b.size(); ++j) {
      const GroupElement affine = affine_embed(a, b.nodes[j]);
      for (std::size_t k = 0; k < th.size(); ++k) {
        rule.push_back({compose(affine, rotation(th.nodes[k])), wa * b.weights[j] * th.weights[k] / std::numbers::pi});
      }
    }
  }
  return rule;
}

/// Point at hyperbolic distance s from i in direction phi.
/// Disc coordinate tanh(s/2) e^{i phi}, mapped by w -> i(1 + w)/(1 - w);
/// written without the cancellation in 1 - |w|^2.
inline PointH polar_point(double s, double phi) {
  const double half = std::sin(0.5 * phi);
  const double den = std::exp(-s) + 2.0 * std::sinh(s) * half * half;
  return {-std::sinh(s) * std::sin(phi) / den, 1.0 / den};
}

inline HaarRule haar_rule(const PolarHaarSpec& spec) {
  spec.validate();
  const auto t = quadrature::composite_gauss(0.0, spec.radius, spec.radial_panels, spec.radial_order);
  const auto phi = quadrature::periodic(0.0, 2.0 * std::numbers::pi, spec.angular_nodes);
  const auto th = quadrature::periodic(0.0, std::numbers::pi, spec.theta_nodes);
  HaarRule rule;
  rule.reserve(t.size() * phi.size() * th.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double area = std::sinh(t.nodes[i]) * t.weights[i];
    for (std::size_t j = 0; j < phi.size(); ++j) {
      const PointH z = polar_point(t.nodes[i], phi.nodes[j]);
      const GroupElement affine = affine_embed(z.y, z.x);
      for (std::size_t k = 0; k < th.size(); ++k) {
        rule.push_back({compose(affine, rotation(th.nodes[k])), area * phi.weights[j] * th.weights[k] / std::numbers::pi});
      }
    }
  }
  return rule;
}

namespace detail {
inline double checked(double v, const GroupElement& at) {
  if (!std::isfinite(v)) throw NumericError("haar_integrate: non-finite integrand at " + at.str());
  return v;
}
}  // namespace detail

/// Approximates the integral of f over PSL(2,R) with the given nodes.
template <typename F>
double haar_integrate(F&& f, const HaarRule& rule) {
  double sum = 0.0;
  for (const auto& node : rule) sum += node.weight * detail::checked(f(node.element), node.element);
  return sum;
}

template <typename F>
double haar_integrate(F&& f, const HaarQuadratureSpec& spec) {
  return haar_integrate(std::forward<F>(f), haar_rule(spec));
}

// ---------------------------------------------------------------------------
// Hyperbolic area integration
// ---------------------------------------------------------------------------

/// { x_min <= x <= x_max, lower(x) <= y <= upper(x) }, lower(x) > 0.
struct Region {
  double x_min = 0.0;
  double x_max = 1.0;
  std::function<double(double)> lower;
  std::function<double(double)> upper;

  static Region box(double x0, double x1, double y0, double y1) {
    if (!(y0 > 0.0) || !(y1 > y0) || !(x1 > x0)) throw DomainError("Region::box: invalid bounds");
    return {x0, x1, [y0](double) { return y0; }, [y1](double) { return y1; }};
  }
};

/// Composite Gauss-Legendre in x and in u = 1/y.
struct RegionGrid {
  int x_panels = 4;
  int y_panels = 4;
  int order = 16;

  void validate() const {
    if (x_panels < 1 || y_panels < 1 || order < 2) throw DomainError("RegionGrid: invalid node counts");
  }
  [[nodiscard]] RegionGrid refined() const { return {2 * x_panels, 2 * y_panels, order}; }
};

struct AreaNode {
  PointH z;
  double weight = 0.0;  // hyperbolic area element dx dy / y^2
};

/// Nodes for a Region; the y-integration uses u = 1/y, for which
/// dy / y^2 = -du, so the weights are plain Lebesgue weights in (x, u).
inline std::vector<AreaNode> area_nodes(const Region& region, const RegionGrid& grid) {
  grid.validate();
  const auto xs = quadrature::composite_gauss(region.x_min, region.x_max, grid.x_panels, grid.order);
  const auto unit = quadrature::composite_gauss(0.0, 1.0, grid.y_panels, grid.order);
  std::vector<AreaNode> nodes;
  nodes.reserve(xs.size() * unit.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs.nodes[i];
    const double y0 = region.lower(x);
    const double y1 = region.upper(x);
    if (!(y0 > 0.0)) throw DomainError("Region: lower boundary must stay above the real axis");
    if (!(y1 > y0)) continue;
    const double u_hi = 1.0 / y0;
    const double u_lo = 1.0 / y1;
    for (std::size_t j = 0; j < unit.size(); ++j) {
      const double u = u_lo + (u_hi - u_lo) * unit.nodes[j];
      nodes.push_back({PointH{x, 1.0 / u}, xs.weights[i] * unit.weights[j] * (u_hi - u_lo)});
    }
  }
  return nodes;
}

/// Integral of f dx dy / y^2 over the region.
template <typename F>
double hyperbolic_integrate(F&& f, const Region& region, const RegionGrid& grid) {
  double sum = 0.0;
  for (const auto& node : area_nodes(region, grid)) {
    const double v = f(node.z);
    if (!std::isfinite(v)) throw NumericError("hyperbolic_integrate: non-finite integrand");
    sum += node.weight * v;
  }
  return sum;
}

/// Hyperbolic polar grid about an arbitrary center.
struct PolarGridSpec {
  double radius = 10.0;
  int radial_panels = 20;
  int radial_order = 8;
  int angular_nodes = 64;

  void validate() const {
    if (!(radius > 0.0) || radial_panels < 1 || radial_order < 2 || angular_nodes < 2) {
      throw DomainError("PolarGridSpec: invalid parameters");
    }
  }
};

/// Area nodes on the hyperbolic disc of the given radius about `center`.
inline std::vector<AreaNode> polar_area_nodes(const PointH& center, const PolarGridSpec& spec) {
  spec.validate();
  const auto s = quadrature::composite_gauss(0.0, spec.radius, spec.radial_panels, spec.radial_order);
  const auto phi = quadrature::periodic(0.0, 2.0 * std::numbers::pi, spec.angular_nodes);
  const GroupElement move = affine_embed(center.y, center.x);
  std::vector<AreaNode> nodes;
  nodes.reserve(s.size() * phi.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double w = std::sinh(s.nodes[i]) * s.weights[i];
    for (std::size_t j = 0; j < phi.size(); ++j) {
      nodes.push_back({mobius_apply(move, polar_point(s.nodes[i], phi.nodes[j])), w * phi.weights[j]});
    }
  }
  return nodes;
}

/// Hyperbolic distance between two points.
inline double hyperbolic_distance(const PointH& z, const PointH& w) {
  const double dx = z.x - w.x;
  const double dy = z.y - w.y;
  return std::acosh(1.0 + (dx * dx + dy * dy) / (2.0 * z.y * w.y));
}

/// Midpoint of the geodesic segment from z to w.
inline PointH hyperbolic_midpoint(const PointH& z, const PointH& w) {
  // Move z to i; the image of w sits at distance t in direction phi.
  const GroupElement to_origin = inverse(affine_embed(z.y, z.x));
  const PointH v = mobius_apply(to_origin, w);
  const complex disc = (v.as_complex() - complex(0.0, 1.0)) / (v.as_complex() + complex(0.0, 1.0));
  const double t = hyperbolic_distance(PointH{0.0, 1.0}, v);
  const PointH mid = polar_point(0.5 * t, std::arg(disc));
  return mobius_apply(affine_embed(z.y, z.x), mid);
}

}  // namespace hyperlattice
