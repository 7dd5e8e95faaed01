#pragma once

#include <vector>

#include "coherence.hpp"
#include "common.hpp"
#include "invariants.hpp"
#include "su_basis.hpp"

namespace blochvec {

enum class Verdict { PSD, NotPSD, Boundary };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::PSD: return "PSD";
    case Verdict::NotPSD: return "NotPSD";
    case Verdict::Boundary: return "Boundary";
  }
  return "?";
}

/// Characteristic-polynomial coefficients S_1..S_N with the positivity gate.
/// det(A - x 1) = x^N - S_1 x^(N-1) + S_2 x^(N-2) - ... + (-1)^N S_N.
struct SymFnSequence {
  int dim = 0;
  std::vector<double> S;  // S[0] is S_1
  int sign_changes = 0;
  Verdict verdict = Verdict::PSD;
  double tolerance = 0.0;  // the scaled eps_pos actually used

  double s(int k) const { return S.at(static_cast<std::size_t>(k - 1)); }
  bool positive_semidefinite() const { return verdict != Verdict::NotPSD; }
};

/// Newton's identities: k S_k = sum_{i=1..k} (-1)^(i-1) Tr(A^i) S_{k-i}, S_0 = 1.
inline std::vector<double> newton_symmetric_functions(const std::vector<double>& traces) {
  if (traces.empty()) throw Error(ErrorKind::InvalidInput, "need at least Tr(A)");
  std::vector<double> S(traces.size() + 1, 0.0);
  S[0] = 1.0;
  for (std::size_t k = 1; k <= traces.size(); ++k) {
    double acc = 0.0;
    double sign = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
      acc += sign * traces[i - 1] * S[k - i];
      sign = -sign;
    }
    S[k] = acc / static_cast<double>(k);
  }
  S.erase(S.begin());
  return S;
}

/// S_2, S_3, S_4 written directly in the coherence vector. Terms carrying
/// (N-2) or (N-3) are evaluated as raw d-contractions times explicit factors,
/// so N = 2 and N = 3 need no special casing.
struct ClosedS234 {
  double s2 = 0, s3 = 0, s4 = 0;
};

inline ClosedS234 closed_S234(const CoherenceState& state, const StructureTensors& tensors) {
  if (state.dim != tensors.dim) throw Error(ErrorKind::InvalidDimension, "state and tensors differ in dimension");
  const double N = state.dim;
  const double c = coherence_scale(state.dim);
  const RealVector v = tensors.d.contract(state.n, state.n);
  const double nn = state.n.squaredNorm();
  const double vn = v.dot(state.n);  // (N-2) (n*n).n = c vn
  const double vv = v.squaredNorm();  // (N-2)^2 (n*n).(n*n) = c^2 vv

  ClosedS234 out;
  out.s2 = (N - 1) / (2 * N) * (1 - nn);
  out.s3 = (N - 1) / (6 * N * N) * ((N - 2) * (1 - 3 * nn) + 2 * c * vn);
  out.s4 = (N - 1) / (24 * N * N * N) *
           ((N - 2) * (N - 3) * (1 - 6 * nn) + 8 * (N - 3) * c * vn + 3 * (N - 1) * (N - 2) * nn * nn - 6 * c * c * vv);
  return out;
}

/// Applies the S_k >= 0 gate. eps_pos = tolerance * max(1, max|S_k|);
/// coefficients within eps_pos of zero are dropped before counting sign
/// changes in (1, -S_1, S_2, -S_3, ...).
inline SymFnSequence positivity_verdict(std::vector<double> S, double tolerance = tol::positivity) {
  SymFnSequence out;
  out.dim = static_cast<int>(S.size());
  double scale = 1.0;
  for (double s : S) scale = std::max(scale, std::abs(s));
  out.tolerance = tolerance * scale;

  bool negative = false;
  bool vanishing = false;
  for (double s : S) {
    if (s < -out.tolerance) negative = true;
    if (std::abs(s) <= out.tolerance) vanishing = true;
  }
  out.verdict = negative ? Verdict::NotPSD : (vanishing ? Verdict::Boundary : Verdict::PSD);

  int previous = 1;
  for (std::size_t k = 0; k < S.size(); ++k) {
    if (std::abs(S[k]) <= out.tolerance) continue;
    const double coeff = (k % 2 == 0) ? -S[k] : S[k];
    const int sign = coeff > 0 ? 1 : -1;
    if (sign != previous) ++out.sign_changes;
    previous = sign;
  }
  out.S = std::move(S);
  return out;
}

/// S_1..S_N of the state, via Newton from adjoint-route traces.
inline std::vector<double> symmetric_functions(const CoherenceState& state, const StructureTensors& tensors) {
  if (state.dim != tensors.dim) throw Error(ErrorKind::InvalidDimension, "state and tensors differ in dimension");
  return newton_symmetric_functions(trace_powers_adjoint(AdjointElement::from_coherence(state), state.dim, tensors));
}

/// S_1..S_N of an arbitrary Hermitian operator (any trace).
inline std::vector<double> symmetric_functions(const HermitianOperator& op, const BasisSet& basis, const StructureTensors& tensors) {
  return newton_symmetric_functions(trace_powers_adjoint(AdjointElement::from_matrix(op.matrix(), basis), op.dim(), tensors));
}

/// Tr(A), ..., Tr(A^max_power) by dense products. A need not be Hermitian but
/// must have real power traces (e.g. a product of two PSD operators).
inline std::vector<double> matrix_power_traces(const ComplexMatrix& a, int max_power) {
  std::vector<double> traces;
  ComplexMatrix power = a;
  for (int m = 1; m <= max_power; ++m) {
    if (m > 1) power = power * a;
    traces.push_back(detail::real_trace(power.trace(), "Tr(A^m)"));
  }
  return traces;
}

inline SymFnSequence check_positivity(const CoherenceState& state, const StructureTensors& tensors,
                                      double tolerance = tol::positivity) {
  return positivity_verdict(symmetric_functions(state, tensors), tolerance);
}

inline SymFnSequence check_positivity(const HermitianOperator& op, const BasisSet& basis, const StructureTensors& tensors,
                                      double tolerance = tol::positivity) {
  return positivity_verdict(symmetric_functions(op, basis, tensors), tolerance);
}

/// n -> T n + t on coherence vectors.
struct AffineMap {
  int dim = 0;
  RealMatrix T;
  RealVector t;

  AffineMap() = default;
  AffineMap(int dim_, RealMatrix T_, RealVector t_) : dim(dim_), T(std::move(T_)), t(std::move(t_)) {
    const int len = adjoint_size(dim);
    if (T.rows() != len || T.cols() != len || t.size() != len)
      throw Error(ErrorKind::InvalidLayout, "affine map shapes do not match N^2-1 = " + std::to_string(len));
  }

  static AffineMap identity(int dim) {
    const int len = adjoint_size(dim);
    return {dim, RealMatrix::Identity(len, len), RealVector::Zero(len)};
  }
  static AffineMap inversion(int dim) {
    const int len = adjoint_size(dim);
    return {dim, -RealMatrix::Identity(len, len), RealVector::Zero(len)};
  }
};

/// No positivity guarantee; feed the image to check_positivity.
inline CoherenceState apply_affine_map(const AffineMap& map, const CoherenceState& state) {
  if (map.dim != state.dim) throw Error(ErrorKind::InvalidLayout, "map and state dimensions differ");
  return {state.dim, map.T * state.n + map.t};
}

/// rho -> (1/N)(b 1 - c n.l) = b * (1/N)(1 + c n'.l) with n' = -n/b.
/// b = N - 1 is the universal inverter 1 - rho; b = 1 is the naive flip.
struct WeightedState {
  double weight = 1.0;
  CoherenceState state;
};

inline WeightedState universal_inversion(const CoherenceState& state, double b) {
  if (!(b > 0)) throw Error(ErrorKind::Domain, "inversion weight b must be positive");
  return {b, CoherenceState(state.dim, -state.n / b)};
}

/// (1/N)[1 + diag(a, ..., a, -(N-1)a)]; positive for 1/(N-1) >= a >= -1.
inline HermitianOperator inverter_family_operator(double a, int dim) {
  if (dim < 2) throw Error(ErrorKind::InvalidDimension, "family needs N >= 2");
  ComplexMatrix m = ComplexMatrix::Identity(dim, dim);
  for (int i = 0; i + 1 < dim; ++i) m(i, i) += a;
  m(dim - 1, dim - 1) -= (dim - 1) * a;
  return HermitianOperator(m / static_cast<double>(dim));
}

/// The inverted family member is PSD iff b >= max(a, (1-N) a); for a <= 0
/// that is b >= (N-1)|a|, which reaches b >= N-1 at a = -1.
inline bool inversion_bound_closed(double a, double b, int dim) { return b >= std::max(a, (1.0 - dim) * a); }

/// Positivity of (1/N)(b 1 - c n.l) for the family member at `a`, decided by
/// the S_k gate.
inline bool inversion_bound_check(double a, double b, int dim, const BasisSet& basis, const StructureTensors& tensors,
                                  double tolerance = tol::positivity) {
  constexpr double slack = 1e-12;
  if (a > 1.0 / (dim - 1) + slack || a < -1.0 - slack)
    throw Error(ErrorKind::Domain, "family parameter must satisfy 1/(N-1) >= a >= -1");
  if (basis.dim != dim) throw Error(ErrorKind::InvalidDimension, "basis does not match N");
  const auto input = to_coherence(inverter_family_operator(a, dim), basis);
  const auto inverted = universal_inversion(input, b);
  return check_positivity(inverted.state, tensors, tolerance).positive_semidefinite();
}

inline bool inversion_bound_check(double a, double b, int dim) {
  const auto basis = build_gellmann_basis(dim);
  return inversion_bound_check(a, b, dim, basis, structure_constants(basis));
}

}  // namespace blochvec
