#pragma once

/**
 * @file frame_core.hpp
 * @brief Finite-dimensional frame algebra: Gram matrix, frame operator,
 *        frame and Riesz bounds, canonical tight frames, and orbits of finite
 *        projective representations (finite Weyl-Heisenberg groups).
 *
 * Inner products are linear in the first slot: <x, y> = sum x_j conj(y_j).
 */

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "hyperlattice/errors.hpp"

namespace hyperlattice {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// N vectors in C^d, stored as the columns of a d x N matrix.
struct VectorSystem {
  CMatrix vectors;

  VectorSystem() = default;
  explicit VectorSystem(CMatrix columns) : vectors(std::move(columns)) {
    if (vectors.cols() < 1 || vectors.rows() < 1) throw DomainError("VectorSystem: need at least one vector of positive length");
  }
  static VectorSystem from(const std::vector<CVector>& list) {
    if (list.empty()) throw DomainError("VectorSystem: need at least one vector");
    CMatrix m(list.front().size(), static_cast<Eigen::Index>(list.size()));
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i].size() != m.rows()) throw DomainError("VectorSystem: vectors of unequal length");
      m.col(static_cast<Eigen::Index>(i)) = list[i];
    }
    return VectorSystem(std::move(m));
  }

  [[nodiscard]] Eigen::Index dim() const { return vectors.rows(); }
  [[nodiscard]] Eigen::Index size() const { return vectors.cols(); }
};

/// G(i, j) = <v_j, v_i>.
inline CMatrix gram(const VectorSystem& sys) { return sys.vectors.adjoint() * sys.vectors; }

/// S = sum v_i v_i^*.
inline CMatrix frame_operator(const VectorSystem& sys) { return sys.vectors * sys.vectors.adjoint(); }

// ---------------------------------------------------------------------------
// Hermitian eigensolver (cyclic Jacobi)
// ---------------------------------------------------------------------------

struct EigenDecomposition {
  Eigen::VectorXd values;  // ascending
  CMatrix vectors;         // columns
};

/// Each rotation first makes A(p,q) real with a diagonal phase and then
/// zeroes it with a real Givens rotation: J = D R, A <- J^H A J.
inline EigenDecomposition hermitian_eigen(const CMatrix& input, double tol = 1e-15, int max_sweeps = 100) {
  const Eigen::Index n = input.rows();
  if (input.cols() != n) throw DomainError("hermitian_eigen: matrix must be square");
  if ((input - input.adjoint()).norm() > 1e-10 * std::max(1.0, input.norm())) {
    throw DomainError("hermitian_eigen: matrix is not Hermitian");
  }
  CMatrix A = 0.5 * (input + input.adjoint());
  CMatrix V = CMatrix::Identity(n, n);
  const double scale = std::max(A.norm(), 1e-300);

  auto off = [&] {
    double s = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i)
        if (i != j) s += std::norm(A(i, j));
    return std::sqrt(s);
  };

  int sweep = 0;
  for (; sweep < max_sweeps && off() > tol * scale; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const std::complex<double> apq = A(p, q);
        const double g = std::abs(apq);
        if (g < 1e-300) continue;
        const std::complex<double> phase = apq / g;
        const double app = A(p, p).real();
        const double aqq = A(q, q).real();
        const double tau = (aqq - app) / (2.0 * g);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const std::complex<double> jqp = -s * std::conj(phase);
        const std::complex<double> jqq = c * std::conj(phase);

        const CVector colp = A.col(p);
        const CVector colq = A.col(q);
        A.col(p) = c * colp + jqp * colq;
        A.col(q) = s * colp + jqq * colq;
        const Eigen::RowVectorXcd rowp = A.row(p);
        const Eigen::RowVectorXcd rowq = A.row(q);
        A.row(p) = c * rowp + std::conj(jqp) * rowq;
        A.row(q) = s * rowp + std::conj(jqq) * rowq;
        A(p, q) = 0.0;
        A(q, p) = 0.0;
        A(p, p) = A(p, p).real();
        A(q, q) = A(q, q).real();

        const CVector vp = V.col(p);
        const CVector vq = V.col(q);
        V.col(p) = c * vp + jqp * vq;
        V.col(q) = s * vp + jqq * vq;
      }
    }
  }
  if (off() > tol * scale * 10.0) throw IllConditionedError("hermitian_eigen: Jacobi sweeps did not converge");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) { return A(i, i).real() < A(j, j).real(); });
  EigenDecomposition out{Eigen::VectorXd(n), CMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = A(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]).real();
    out.vectors.col(k) = V.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bounds and canonical systems
// ---------------------------------------------------------------------------

struct FrameBounds {
  double A = 0.0;
  double B = 0.0;
};

/// Eigenvalues below this fraction of the largest one count as zero.
inline constexpr double kRankFloor = 1e-12;

namespace detail {
inline FrameBounds extremal(const CMatrix& m) {
  const auto eig = hermitian_eigen(m);
  const double top = std::max(eig.values(eig.values.size() - 1), 0.0);
  double low = eig.values(0);
  if (low <= kRankFloor * top) low = 0.0;
  return {low, top};
}
}  // namespace detail

inline FrameBounds frame_bounds(const VectorSystem& sys) { return detail::extremal(frame_operator(sys)); }
inline FrameBounds riesz_bounds(const VectorSystem& sys) { return detail::extremal(gram(sys)); }

/// {S^{-1/2} v_i}; its frame operator is the identity.
inline VectorSystem canonical_tight(const VectorSystem& sys) {
  const auto eig = hermitian_eigen(frame_operator(sys));
  if (eig.values(0) <= kRankFloor) throw NotAFrameError("canonical_tight: lower frame bound is zero");
  const Eigen::VectorXd inv_sqrt = eig.values.cwiseSqrt().cwiseInverse();
  const CMatrix s_inv_half = eig.vectors * inv_sqrt.cast<std::complex<double>>().asDiagonal() * eig.vectors.adjoint();
  return VectorSystem(s_inv_half * sys.vectors);
}

/// For a Riesz sequence, S^{-1/2} taken on the span gives an orthonormal system.
inline VectorSystem riesz_orthonormalize(const VectorSystem& sys) {
  if (!(riesz_bounds(sys).A > 0.0)) throw DomainError("riesz_orthonormalize: system is not a Riesz sequence");
  const auto eig = hermitian_eigen(frame_operator(sys));
  const double top = eig.values(eig.values.size() - 1);
  Eigen::VectorXd inv_sqrt(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    inv_sqrt(i) = eig.values(i) > kRankFloor * top ? 1.0 / std::sqrt(eig.values(i)) : 0.0;
  }
  const CMatrix s_pinv_half = eig.vectors * inv_sqrt.cast<std::complex<double>>().asDiagonal() * eig.vectors.adjoint();
  return VectorSystem(s_pinv_half * sys.vectors);
}

// ---------------------------------------------------------------------------
// Finite projective representations
// ---------------------------------------------------------------------------

struct FiniteProjectiveRep {
  std::vector<std::string> labels;
  std::vector<CMatrix> unitaries;
  std::vector<std::vector<std::size_t>> product;              // index of g h
  std::vector<std::vector<std::complex<double>>> cocycle;     // U_g U_h = sigma(g,h) U_{gh}

  [[nodiscard]] std::size_t order() const { return unitaries.size(); }
  [[nodiscard]] Eigen::Index dim() const { return unitaries.empty() ? 0 : unitaries.front().rows(); }

  /// Largest deviation from unitarity, from the cocycle relation, and from
  /// the cocycle identity sigma(g,h) sigma(gh,k) = sigma(h,k) sigma(g,hk).
  [[nodiscard]] double consistency_residual() const {
    double worst = 0.0;
    const Eigen::Index d = dim();
    const std::size_t n = order();
    for (const auto& u : unitaries) worst = std::max(worst, (u.adjoint() * u - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff());
    for (std::size_t g = 0; g < n; ++g) {
      for (std::size_t h = 0; h < n; ++h) {
        const CMatrix diff = unitaries[g] * unitaries[h] - cocycle[g][h] * unitaries[product[g][h]];
        worst = std::max(worst, diff.cwiseAbs().maxCoeff());
        for (std::size_t k = 0; k < n; ++k) {
          const auto lhs = cocycle[g][h] * cocycle[product[g][h]][k];
          const auto rhs = cocycle[h][k] * cocycle[g][product[h][k]];
          worst = std::max(worst, std::abs(lhs - rhs));
        }
      }
    }
    return worst;
  }
};

/// Trivial group acting on C^d.
inline FiniteProjectiveRep trivial_rep(Eigen::Index d) {
  return {{"e"}, {CMatrix::Identity(d, d)}, {{0}}, {{1.0}}};
}

/// Index of (k, l) in the Weyl-Heisenberg group of C^N: U_{(k,l)} = M^l T^k.
inline std::size_t wh_index(int N, int k, int l) {
  const auto mod = [N](int v) { return ((v % N) + N) % N; };
  return static_cast<std::size_t>(mod(k) * N + mod(l));
}

/// Translations (T x)_j = x_{j-1} and modulations (M x)_j = omega^j x_j on
/// C^N, omega = exp(2 pi i / N). The cocycle is read off the products:
/// sigma((k,l),(k',l')) = omega^{-k l'}.
inline FiniteProjectiveRep finite_weyl_heisenberg(int N) {
  if (N < 2) throw DomainError("finite_weyl_heisenberg: N must be at least 2");
  const std::size_t order = static_cast<std::size_t>(N) * static_cast<std::size_t>(N);
  FiniteProjectiveRep rep;
  rep.labels.resize(order);
  rep.unitaries.resize(order);
  for (int k = 0; k < N; ++k) {
    for (int l = 0; l < N; ++l) {
      const std::size_t g = wh_index(N, k, l);
      CMatrix u = CMatrix::Zero(N, N);
      for (int j = 0; j < N; ++j) {
        const int row = (j + k) % N;
        u(row, j) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((l * row) % N) / N);
      }
      rep.unitaries[g] = u;
      rep.labels[g] = "(" + std::to_string(k) + "," + std::to_string(l) + ")";
    }
  }
  rep.product.assign(order, std::vector<std::size_t>(order));
  rep.cocycle.assign(order, std::vector<std::complex<double>>(order));
  for (int k = 0; k < N; ++k)
    for (int l = 0; l < N; ++l)
      for (int k2 = 0; k2 < N; ++k2)
        for (int l2 = 0; l2 < N; ++l2) {
          const std::size_t g = wh_index(N, k, l);
          const std::size_t h = wh_index(N, k2, l2);
          const std::size_t gh = wh_index(N, k + k2, l + l2);
          rep.product[g][h] = gh;
          const CMatrix uv = rep.unitaries[g] * rep.unitaries[h];
          rep.cocycle[g][h] = (rep.unitaries[gh].adjoint() * uv).trace() / static_cast<double>(N);
        }
  return rep;
}

/// Every index of the group, in table order.
inline std::vector<std::size_t> all_elements(const FiniteProjectiveRep& rep) {
  std::vector<std::size_t> all(rep.order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return all;
}

/// Throws DomainError unless `selection` is a subgroup (finite, so closure suffices).
inline void validate_subgroup(const FiniteProjectiveRep& rep, const std::vector<std::size_t>& selection) {
  if (selection.empty()) throw DomainError("subgroup selection is empty");
  std::vector<char> in(rep.order(), 0);
  for (const auto g : selection) {
    if (g >= rep.order()) throw DomainError("subgroup selection names an element outside the group");
    in[g] = 1;
  }
  for (const auto g : selection)
    for (const auto h : selection)
      if (!in[rep.product[g][h]]) throw DomainError("subgroup selection is not closed under the group law");
}

/// Lattice subgroup of the Weyl-Heisenberg group: translations by multiples
/// of N/p times modulations by multiples of N/q; order p q.
inline std::vector<std::size_t> wh_lattice_subgroup(int N, int p, int q) {
  if (p < 1 || q < 1 || N % p != 0 || N % q != 0) throw DomainError("wh_lattice_subgroup: p and q must divide N");
  std::vector<std::size_t> out;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) out.push_back(wh_index(N, i * (N / p), j * (N / q)));
  return out;
}

/// {U_g F : g in selection}, in selection order.
inline VectorSystem orbit_system(const FiniteProjectiveRep& rep, const CVector& F, const std::vector<std::size_t>& selection) {
  if (F.size() != rep.dim()) throw DomainError("orbit_system: vector length does not match the representation");
  CMatrix cols(rep.dim(), static_cast<Eigen::Index>(selection.size()));
  for (std::size_t i = 0; i < selection.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = rep.unitaries[selection[i]] * F;
  return VectorSystem(std::move(cols));
}

inline VectorSystem orbit_system(const FiniteProjectiveRep& rep, const CVector& F) {
  return orbit_system(rep, F, all_elements(rep));
}

/// max over g in selection of ||S U_g - U_g S||_F.
inline double commutation_residual(const FiniteProjectiveRep& rep, const CMatrix& S, const std::vector<std::size_t>& selection) {
  double worst = 0.0;
  for (const auto g : selection) worst = std::max(worst, (S * rep.unitaries[g] - rep.unitaries[g] * S).norm());
  return worst;
}

struct DensityAnalogReport {
  std::size_t orbit_size = 0;  // K
  Eigen::Index dimension = 0;  // d = N
  FrameBounds frame;
  FrameBounds riesz;
  bool is_frame = false;
  bool is_riesz = false;
  /// d / K, the finite shadow of covolume times formal dimension.
  double ratio = 0.0;
  /// is_frame implies K >= d and is_riesz implies K <= d.
  bool consistent = false;
};

inline DensityAnalogReport density_analog_experiment(const FiniteProjectiveRep& rep, const std::vector<std::size_t>& selection,
                                                     const CVector& F) {
  validate_subgroup(rep, selection);
  const VectorSystem sys = orbit_system(rep, F, selection);
  DensityAnalogReport r;
  r.orbit_size = selection.size();
  r.dimension = rep.dim();
  r.frame = frame_bounds(sys);
  r.riesz = riesz_bounds(sys);
  r.is_frame = r.frame.A > 0.0;
  r.is_riesz = r.riesz.A > 0.0;
  r.ratio = static_cast<double>(r.dimension) / static_cast<double>(r.orbit_size);
  const auto K = static_cast<Eigen::Index>(r.orbit_size);
  r.consistent = (!r.is_frame || K >= r.dimension) && (!r.is_riesz || K <= r.dimension);
  return r;
}

inline DensityAnalogReport density_analog_experiment(int N, int p, int q, const CVector& F) {
  return density_analog_experiment(finite_weyl_heisenberg(N), wh_lattice_subgroup(N, p, q), F);
}

}  // namespace hyperlattice
