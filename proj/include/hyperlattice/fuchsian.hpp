#pragma once

// Concrete Fuchsian lattices (the modular group and the Hecke groups),
// word balls, reduction to the standard fundamental domain, covolumes and
// tile histograms.

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hyperlattice/errors.hpp"
#include "hyperlattice/halfplane.hpp"

namespace hyperlattice {

/// A lattice given by generators S = (0 -1; 1 0), T = (1 l; 0 1) and T^-1.
struct FuchsianGroup {
  std::string name;
  std::vector<GroupElement> generators;
  std::vector<std::string> generator_names;
  double translation = 1.0;  // l, the width of the standard strip
  int q = 3;                 // Hecke index; 3 for the modular group
};

inline FuchsianGroup hecke_group(int q) {
  if (q < 3) throw DomainError("hecke_group: q must be >= 3");
  const double lambda = (q == 3) ? 1.0 : 2.0 * std::cos(std::numbers::pi / q);
  FuchsianGroup g;
  g.name = (q == 3) ? "modular" : "hecke:" + std::to_string(q);
  g.q = q;
  g.translation = lambda;
  g.generators = {GroupElement(0.0, -1.0, 1.0, 0.0), GroupElement(1.0, lambda, 0.0, 1.0),
                  GroupElement(1.0, -lambda, 0.0, 1.0)};
  g.generator_names = {"S", "T", "T^-1"};
  return g;
}

/// PSL(2,Z).
inline FuchsianGroup modular_group() { return hecke_group(3); }

/// Standard domain |x| <= l/2, |z| >= 1, cusp truncated at `cusp_height`.
/// Tie-break: the left edge x = -l/2 is kept, the right edge dropped; on the
/// unit arc only x <= 0 is kept.
struct FundamentalDomain {
  double half_width = 0.5;
  double cusp_height = 10.0;
  double tolerance = 1e-12;
};

inline FundamentalDomain standard_domain(const FuchsianGroup& g, double cusp_height = 10.0) {
  if (!(cusp_height > 1.0)) throw DomainError("standard_domain: cusp height must exceed 1");
  return {0.5 * g.translation, cusp_height, 1e-12};
}

inline bool in_domain(const PointH& z, const FundamentalDomain& d) {
  const double eps = d.tolerance;
  if (z.x < -d.half_width - eps || z.x > d.half_width - eps) return false;
  const double r2 = z.x * z.x + z.y * z.y;
  if (r2 < 1.0 - eps) return false;
  if (r2 <= 1.0 + eps) return z.x <= eps;
  return true;
}

// ---------------------------------------------------------------------------
// Words and balls
// ---------------------------------------------------------------------------

/// Compresses a token list such as {T, T, S, T^-1} into "T^2 S T^-1".
inline std::string word_string(const std::vector<std::string>& tokens) {
  if (tokens.empty()) return "I";
  std::string out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t j = i;
    while (j < tokens.size() && tokens[j] == tokens[i]) ++j;
    const auto run = static_cast<long>(j - i);
    std::string base = tokens[i];
    long power = run;
    if (base.ends_with("^-1")) {
      base = base.substr(0, base.size() - 3);
      power = -run;
    }
    if (!out.empty()) out += ' ';
    out += base;
    if (power != 1) out += "^" + std::to_string(power);
    i = j;
  }
  return out;
}

struct WordBall {
  int radius = 0;
  std::vector<GroupElement> elements;  // BFS order; elements[0] is the identity
  std::vector<std::string> words;      // a shortest word for each element
  std::vector<int> lengths;            // word length of each element

  [[nodiscard]] std::size_t size() const { return elements.size(); }

  /// Index of m in the ball (modulo sign, entrywise tolerance), if present.
  [[nodiscard]] std::optional<std::size_t> find(const GroupElement& m, double tol = 1e-9) const {
    const auto key = bucket(m);
    for (std::int64_t da = -1; da <= 1; ++da) {
      for (std::int64_t dc = -1; dc <= 1; ++dc) {
        auto range = index_.equal_range(pack(key.first + da, key.second + dc));
        for (auto it = range.first; it != range.second; ++it) {
          if (approx_equal(elements[it->second], m, tol)) return it->second;
        }
      }
    }
    return std::nullopt;
  }

  void insert(const GroupElement& m, std::string word, int length = 0) {
    const auto key = bucket(m);
    index_.emplace(pack(key.first, key.second), elements.size());
    elements.push_back(m);
    words.push_back(std::move(word));
    lengths.push_back(length);
  }

 private:
  static std::pair<std::int64_t, std::int64_t> bucket(const GroupElement& m) {
    return {std::llround(std::abs(m.a()) * 1e6), std::llround(std::abs(m.c()) * 1e6)};
  }
  static std::int64_t pack(std::int64_t a, std::int64_t c) {
    return a * 1000003LL + c;
  }
  std::unordered_multimap<std::int64_t, std::size_t> index_;
};

/// All products of at most L generators, deduplicated in PSL(2,R).
inline WordBall enumerate_ball(const FuchsianGroup& g, int L) {
  if (L < 0) throw DomainError("enumerate_ball: L must be >= 0");
  WordBall ball;
  ball.radius = L;
  std::vector<std::vector<std::string>> tokens{{}};
  ball.insert(identity_element(), "I");
  std::vector<std::size_t> frontier{0};
  for (int step = 0; step < L; ++step) {
    std::vector<std::size_t> next;
    for (const std::size_t idx : frontier) {
      for (std::size_t k = 0; k < g.generators.size(); ++k) {
        const GroupElement p = compose(ball.elements[idx], g.generators[k]);
        if (ball.find(p)) continue;
        auto word = tokens[idx];
        word.push_back(g.generator_names[k]);
        ball.insert(p, word_string(word), step + 1);
        tokens.push_back(std::move(word));
        next.push_back(ball.size() - 1);
      }
    }
    frontier = std::move(next);
  }
  return ball;
}

// ---------------------------------------------------------------------------
// Reduction
// ---------------------------------------------------------------------------

struct Reduction {
  GroupElement gamma;  // z = gamma * reduced
  PointH reduced;
  std::string word;    // word for gamma in the generators
  int steps = 0;
};

/// Alternates translation into the strip and inversion while |z| < 1.
inline Reduction reduce_to_domain(const PointH& z, const FuchsianGroup& g, double tolerance = 1e-12) {
  constexpr int kMaxSteps = 10000;
  const double lambda = g.translation;
  const double h = 0.5 * lambda;
  const GroupElement S = g.generators[0];
  FundamentalDomain dom{h, 10.0, tolerance};

  PointH w = z;
  GroupElement gamma;  // invariant: z = gamma * w
  std::vector<std::string> tokens;
  for (int step = 0; step < kMaxSteps; ++step) {
    // translate into [-h, h)
    long shift = static_cast<long>(std::floor((w.x + h) / lambda));
    double x = w.x - shift * lambda;
    if (x > h - tolerance) {
      x -= lambda;
      ++shift;
    }
    if (shift != 0) {
      w = PointH{x, w.y};
      gamma = compose(gamma, GroupElement(1.0, shift * lambda, 0.0, 1.0));
      const std::string t = shift > 0 ? "T" : "T^-1";
      for (long k = 0; k < std::labs(shift); ++k) tokens.push_back(t);
    }
    if (in_domain(w, dom)) return {gamma, w, word_string(tokens), step};
    // |z| < 1, or on the arc with x > 0: invert
    w = mobius_apply(S, w);
    gamma = compose(gamma, S);  // S is an involution in PSL
    tokens.push_back("S");
  }
  throw NumericError("reduce_to_domain: iteration cap exceeded");
}

// ---------------------------------------------------------------------------
// Covolume
// ---------------------------------------------------------------------------

struct CovolumeReport {
  double value = 0.0;        // truncated quadrature + analytic cusp tail
  double truncated = 0.0;    // quadrature over y <= cusp height
  double cusp_tail = 0.0;    // 2h / Y
  double closed_form = 0.0;  // pi (1 - 2/q)
};

inline Region domain_region(const FundamentalDomain& d) {
  return {-d.half_width, d.half_width, [](double x) { return std::sqrt(1.0 - x * x); },
          [Y = d.cusp_height](double) { return Y; }};
}

inline CovolumeReport covolume(const FundamentalDomain& d, const RegionGrid& grid, int q = 3) {
  CovolumeReport r;
  r.truncated = hyperbolic_integrate([](const PointH&) { return 1.0; }, domain_region(d), grid);
  r.cusp_tail = 2.0 * d.half_width / d.cusp_height;
  r.value = r.truncated + r.cusp_tail;
  r.closed_form = std::numbers::pi * (1.0 - 2.0 / q);
  return r;
}

inline CovolumeReport covolume(const FuchsianGroup& g, double cusp_height = 10.0, const RegionGrid& grid = {}) {
  return covolume(standard_domain(g, cusp_height), grid, g.q);
}

// ---------------------------------------------------------------------------
// Tile histogram
// ---------------------------------------------------------------------------

struct TileAssignment {
  PointH point;
  Reduction reduction;
  std::string word;  // ball word when the tile lies in the ball
  bool in_ball = false;
  bool ambiguous = false;
};

struct TileHistogram {
  std::map<std::string, std::size_t> counts;  // keyed by tile word
  std::vector<TileAssignment> assignments;
  std::size_t flagged = 0;
  std::size_t outside_ball = 0;

  [[nodiscard]] std::size_t total() const {
    std::size_t s = 0;
    for (const auto& [w, c] : counts) s += c;
    return s;
  }
};

/// Hyperbolic distance (to first order) from a reduced point to the boundary.
inline double boundary_distance(const PointH& z, double half_width) {
  const double to_sides = std::min(std::abs(z.x - half_width), std::abs(z.x + half_width)) / z.y;
  const double to_arc = std::abs(std::hypot(z.x, z.y) - 1.0) / z.y;
  return std::min(to_sides, to_arc);
}

inline TileHistogram tile_histogram(const std::vector<PointH>& points, const FuchsianGroup& g, const WordBall& ball,
                                    double boundary_tolerance = 1e-6) {
  TileHistogram hist;
  hist.assignments.reserve(points.size());
  for (const auto& p : points) {
    TileAssignment a{p, reduce_to_domain(p, g), {}, false, false};
    a.ambiguous = boundary_distance(a.reduction.reduced, 0.5 * g.translation) < boundary_tolerance;
    if (const auto idx = ball.find(a.reduction.gamma)) {
      a.in_ball = true;
      a.word = ball.words[*idx];
    } else {
      a.word = a.reduction.word;
    }
    if (a.ambiguous) {
      ++hist.flagged;
    } else {
      if (!a.in_ball) ++hist.outside_ball;
      ++hist.counts[a.word];
    }
    hist.assignments.push_back(std::move(a));
  }
  return hist;
}

}  // namespace hyperlattice
