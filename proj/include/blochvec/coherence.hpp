#pragma once

#include <utility>

#include "common.hpp"
#include "su_basis.hpp"

namespace blochvec {

/// Hermitian N x N operator. The trace is recorded, not forced to one.
class HermitianOperator {
 public:
  /// Throws Hermiticity if `m` is not square or not Hermitian to
  /// tol::hermitian(m). The stored matrix is the exact Hermitian part.
  explicit HermitianOperator(const ComplexMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) throw Error(ErrorKind::Hermiticity, "operator must be a non-empty square matrix");
    if (hermitian_residual(m) > tol::hermitian(m)) throw Error(ErrorKind::Hermiticity, "operator is not Hermitian");
    entries_ = 0.5 * (m + m.adjoint());
  }

  int dim() const { return static_cast<int>(entries_.rows()); }
  const ComplexMatrix& matrix() const { return entries_; }
  double trace() const { return entries_.trace().real(); }

  /// Sorted ascending.
  RealVector eigenvalues() const { return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(entries_, Eigen::EigenvaluesOnly).eigenvalues(); }

 private:
  ComplexMatrix entries_;
};

/// Coherence vector n of a trace-one operator rho = (1/N)(1 + c n.l),
/// c = sqrt(N(N-1)/2). Pure states have |n| = 1.
struct CoherenceState {
  int dim = 0;
  RealVector n;

  CoherenceState() = default;
  CoherenceState(int dim_, RealVector n_) : dim(dim_), n(std::move(n_)) {
    if (dim < 2) throw Error(ErrorKind::InvalidDimension, "coherence state needs N >= 2");
    if (n.size() != adjoint_size(dim))
      throw Error(ErrorKind::InvalidLayout, "coherence vector length " + std::to_string(n.size()) + " does not match N^2-1 = " +
                                                std::to_string(adjoint_size(dim)));
  }

  static CoherenceState maximally_mixed(int dim) { return {dim, RealVector::Zero(adjoint_size(dim))}; }

  double norm_squared() const { return n.squaredNorm(); }
};

/// n_i = sqrt(N/(2(N-1))) Tr(rho l_i); sqrt(3)/2 Tr(rho l_i) at N = 3.
inline double coherence_from_trace_factor(int dim) { return std::sqrt(dim / (2.0 * (dim - 1))); }

inline CoherenceState to_coherence(const HermitianOperator& rho, const BasisSet& basis) {
  if (rho.dim() != basis.dim) throw Error(ErrorKind::InvalidLayout, "operator and basis dimensions differ");
  if (std::abs(rho.trace() - 1.0) > tol::hermitian(rho.matrix()))
    throw Error(ErrorKind::Normalization, "operator trace is " + std::to_string(rho.trace()) + ", expected 1");

  const double factor = coherence_from_trace_factor(basis.dim);
  RealVector n(basis.size());
  const ComplexMatrix rho_t = rho.matrix().transpose();
  for (int i = 0; i < basis.size(); ++i)
    n(i) = factor * basis.elements[static_cast<std::size_t>(i)].cwiseProduct(rho_t).sum().real();
  return {basis.dim, std::move(n)};
}

/// rho = (1/N)(1 + sqrt(N(N-1)/2) n.l). Hermitian and trace one, not necessarily positive.
inline HermitianOperator from_coherence(const CoherenceState& state, const BasisSet& basis) {
  if (state.dim != basis.dim || state.n.size() != basis.size())
    throw Error(ErrorKind::InvalidLayout, "coherence vector does not match the basis");
  const double c = coherence_scale(state.dim);
  ComplexMatrix rho = ComplexMatrix::Identity(state.dim, state.dim);
  for (int i = 0; i < basis.size(); ++i) rho += (c * state.n(i)) * basis.elements[static_cast<std::size_t>(i)];
  return HermitianOperator(rho / static_cast<double>(state.dim));
}

/// sqrt(N(N-1)/2) / (N-2): prefactor of the star product.
inline double star_prefactor(int dim) {
  if (dim < 3) throw Error(ErrorKind::StarUndefined, "star product is undefined for N = 2");
  return coherence_scale(dim) / (dim - 2.0);
}

/// (a * b)_k = sqrt(N(N-1)/2) / (N-2) sum_ij d_ijk a_i b_j
inline RealVector star(const RealVector& a, const RealVector& b, const StructureTensors& tensors) {
  const double pref = star_prefactor(tensors.dim);
  const int len = adjoint_size(tensors.dim);
  if (a.size() != len || b.size() != len) throw Error(ErrorKind::InvalidLayout, "star product operands have the wrong length");
  return pref * tensors.d.contract(a, b);
}

/// |n.n - 1| <= tol, and for N >= 3 also ||n*n - n||_inf <= tol.
inline bool is_pure(const CoherenceState& state, const StructureTensors& tensors, double tolerance = tol::norm) {
  if (std::abs(state.norm_squared() - 1.0) > tolerance) return false;
  if (state.dim == 2) return true;
  return (star(state.n, state.n, tensors) - state.n).lpNorm<Eigen::Infinity>() <= tolerance;
}

/// Angle between two coherence vectors, in radians.
inline double mutual_angle(const CoherenceState& s1, const CoherenceState& s2) {
  if (s1.dim != s2.dim) throw Error(ErrorKind::InvalidLayout, "states have different dimensions");
  const double norms = s1.n.norm() * s2.n.norm();
  if (norms == 0.0) throw Error(ErrorKind::UndefinedAngle, "angle with a zero coherence vector");
  const double cosine = std::clamp(s1.n.dot(s2.n) / norms, -1.0, 1.0);
  return std::acos(cosine);
}

/// Orthogonal pure states satisfy n1.n2 = -1/(N-1).
inline bool are_orthogonal(const CoherenceState& s1, const CoherenceState& s2, double tolerance = tol::norm) {
  if (s1.dim != s2.dim) throw Error(ErrorKind::InvalidLayout, "states have different dimensions");
  return std::abs(s1.n.dot(s2.n) + 1.0 / (s1.dim - 1.0)) <= tolerance;
}

}  // namespace blochvec
