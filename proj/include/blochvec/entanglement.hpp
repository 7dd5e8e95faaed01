#pragma once

#include <algorithm>
#include <array>
#include <limits>
#include <set>

#include "common.hpp"
#include "composite.hpp"
#include "positivity.hpp"

namespace blochvec {

/// Normalized three-qubit ket. Qubit A is the most significant index bit.
class PureTripartiteState {
 public:
  explicit PureTripartiteState(ComplexVector amplitudes) : psi_(std::move(amplitudes)) {
    if (psi_.size() != 8) throw Error(ErrorKind::InvalidLayout, "three-qubit state needs 8 amplitudes");
    if (std::abs(psi_.squaredNorm() - 1.0) > 1e-12) throw Error(ErrorKind::Normalization, "state is not normalized");
  }

  const ComplexVector& amplitudes() const { return psi_; }
  HermitianOperator density() const { return HermitianOperator(psi_ * psi_.adjoint()); }

  static const CompositeLayout& layout() {
    static const CompositeLayout three_qubits({2, 2, 2});
    return three_qubits;
  }

  HermitianOperator marginal(const std::set<int>& keep) const { return partial_trace(density(), layout(), keep); }

 private:
  ComplexVector psi_;
};

/// Relabels qubits: new qubit s carries old qubit perm[s].
inline PureTripartiteState permute_qubits(const PureTripartiteState& psi, const std::array<int, 3>& perm) {
  std::array<int, 3> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<int, 3>{0, 1, 2}) throw Error(ErrorKind::InvalidInput, "not a permutation of three qubits");
  ComplexVector out(8);
  for (int old_index = 0; old_index < 8; ++old_index) {
    int new_index = 0;
    for (int s = 0; s < 3; ++s) {
      const int bit = (old_index >> (2 - perm[static_cast<std::size_t>(s)])) & 1;
      new_index |= bit << (2 - s);
    }
    out(new_index) = psi.amplitudes()(old_index);
  }
  return PureTripartiteState(out);
}

namespace detail {
inline ComplexMatrix sigma_y_y() {
  ComplexMatrix yy = ComplexMatrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(3, 0) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  return yy;
}

inline void require_two_qubit(const HermitianOperator& rho) {
  if (rho.dim() != 4) throw Error(ErrorKind::InvalidDimension, "two-qubit operator must be 4 x 4");
}
}  // namespace detail

/// (sigma_y x sigma_y) rho* (sigma_y x sigma_y)
inline HermitianOperator spin_flip(const HermitianOperator& rho) {
  detail::require_two_qubit(rho);
  const ComplexMatrix yy = detail::sigma_y_y();
  return HermitianOperator(yy * rho.matrix().conjugate() * yy);
}

struct ConcurrenceBound {
  double c_squared = 0.0;
  double trace_rho_rho_tilde = 0.0;
};

/// C = max(0, l1 - l2 - l3 - l4) with l_i the descending square roots of the
/// eigenvalues of rho rho~, read off the Hermitian form sqrt(rho) rho~ sqrt(rho).
inline ConcurrenceBound concurrence_squared_bound(const HermitianOperator& rho, double tolerance = tol::positivity) {
  detail::require_two_qubit(rho);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(rho.matrix());
  if (eig.eigenvalues().minCoeff() < -tolerance) throw Error(ErrorKind::Domain, "concurrence needs a positive semidefinite operator");

  const RealVector clamped = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const ComplexMatrix root = eig.eigenvectors() * clamped.cast<cplx>().asDiagonal() * eig.eigenvectors().adjoint();
  const HermitianOperator tilde = spin_flip(rho);
  const ComplexMatrix similar = root * tilde.matrix() * root;

  RealVector lambda = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(0.5 * (similar + similar.adjoint()), Eigen::EigenvaluesOnly)
                          .eigenvalues()
                          .cwiseMax(0.0)
                          .cwiseSqrt();
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  const double c = std::max(0.0, lambda(0) - lambda(1) - lambda(2) - lambda(3));
  return {c * c, (rho.matrix() * tilde.matrix()).trace().real()};
}

struct SchmidtResiduals {
  double correlation_lhs = 0.0;  // |n_AB|^2
  double correlation_rhs = 0.0;  // 1 + 2|n_C|^2 - |n_A|^2 - |n_B|^2
  double correlation = 0.0;
  double determinant_lhs = 0.0;  // Tr(rho_AB rho~_AB)
  double determinant_rhs = 0.0;  // 2(det rho_A + det rho_B - det rho_C)
  double determinant = 0.0;
};

namespace detail {
inline RealVector pauli_vector(const HermitianOperator& rho) {
  static const BasisSet sigma = build_gellmann_basis(2);
  RealVector out(3);
  for (int i = 0; i < 3; ++i) out(i) = (rho.matrix() * sigma.elements[static_cast<std::size_t>(i)]).trace().real();
  return out;
}

inline double det2(const HermitianOperator& rho) { return rho.matrix().determinant().real(); }
}  // namespace detail

/// Both pure-state identities, with bare Pauli expectation vectors.
inline SchmidtResiduals schmidt_trace_relation(const PureTripartiteState& psi) {
  const auto rho_a = psi.marginal({0});
  const auto rho_b = psi.marginal({1});
  const auto rho_c = psi.marginal({2});
  const auto rho_ab = psi.marginal({0, 1});

  const double na = detail::pauli_vector(rho_a).squaredNorm();
  const double nb = detail::pauli_vector(rho_b).squaredNorm();
  const double nc = detail::pauli_vector(rho_c).squaredNorm();
  const auto block = extract_correlation(rho_ab, CompositeLayout({2, 2}));

  SchmidtResiduals out;
  out.correlation_lhs = local_invariant_quadratic(block);
  out.correlation_rhs = 1.0 + 2.0 * nc - na - nb;
  out.correlation = std::abs(out.correlation_lhs - out.correlation_rhs);
  out.determinant_lhs = (rho_ab.matrix() * spin_flip(rho_ab).matrix()).trace().real();
  out.determinant_rhs = 2.0 * (detail::det2(rho_a) + detail::det2(rho_b) - detail::det2(rho_c));
  out.determinant = std::abs(out.determinant_lhs - out.determinant_rhs);
  return out;
}

/// 4 sqrt(S_2(rho_AB rho~_AB)).
inline double three_tangle(const PureTripartiteState& psi, double consistency = tol::positivity) {
  const auto rho_ab = psi.marginal({0, 1});
  const ComplexMatrix m = rho_ab.matrix() * spin_flip(rho_ab).matrix();
  const double s2 = newton_symmetric_functions(matrix_power_traces(m, 2))[1];
  if (s2 < -consistency) throw Error(ErrorKind::NumericalConsistency, "S_2(rho rho~) = " + std::to_string(s2) + " is negative");
  return 4.0 * std::sqrt(std::max(s2, 0.0));
}

struct CkwResult {
  double lhs = 0.0;  // C^2_AB + C^2_AC
  double rhs = 0.0;  // 4 det rho_A
  bool holds = true;
};

inline CkwResult ckw_inequality_check(const PureTripartiteState& psi, double tolerance = tol::positivity) {
  CkwResult out;
  out.lhs = concurrence_squared_bound(psi.marginal({0, 1})).c_squared + concurrence_squared_bound(psi.marginal({0, 2})).c_squared;
  out.rhs = 4.0 * detail::det2(psi.marginal({0}));
  out.holds = out.lhs <= out.rhs + tolerance;
  return out;
}

/// max - min of three_tangle over the six qubit orderings.
inline double tangle_permutation_spread(const PureTripartiteState& psi) {
  std::array<int, 3> perm{0, 1, 2};
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  do {
    const double tau = three_tangle(permute_qubits(psi, perm));
    lo = std::min(lo, tau);
    hi = std::max(hi, tau);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return hi - lo;
}

}  // namespace blochvec
