#pragma once

#include <map>
#include <vector>

#include "coherence.hpp"
#include "common.hpp"
#include "su_basis.hpp"

namespace blochvec {

/// The operator scalar * 1 + vec . l, multiplied through the product rule
/// l_i l_j = (2/N) delta_ij 1 + (d_ijk + i f_ijk) l_k.
struct AdjointElement {
  int dim = 0;
  cplx scalar = 0.0;
  ComplexVector vec;

  static AdjointElement identity(int dim) { return {dim, 1.0, ComplexVector::Zero(adjoint_size(dim))}; }

  /// scalar = Tr(A)/N, vec_i = Tr(A l_i)/2. Works for any trace.
  static AdjointElement from_matrix(const ComplexMatrix& a, const BasisSet& basis) {
    if (a.rows() != basis.dim || a.cols() != basis.dim) throw Error(ErrorKind::InvalidLayout, "matrix does not match the basis");
    AdjointElement out{basis.dim, a.trace() / static_cast<double>(basis.dim), ComplexVector(basis.size())};
    const ComplexMatrix at = a.transpose();
    for (int i = 0; i < basis.size(); ++i) out.vec(i) = 0.5 * basis.elements[static_cast<std::size_t>(i)].cwiseProduct(at).sum();
    return out;
  }

  /// rho = (1/N)(1 + c n.l)
  static AdjointElement from_coherence(const CoherenceState& state) {
    const double inv_n = 1.0 / state.dim;
    return {state.dim, inv_n, (coherence_scale(state.dim) * inv_n) * state.n.cast<cplx>()};
  }

  ComplexMatrix to_matrix(const BasisSet& basis) const {
    ComplexMatrix m = ComplexMatrix::Identity(dim, dim) * scalar;
    for (int i = 0; i < basis.size(); ++i) m += vec(i) * basis.elements[static_cast<std::size_t>(i)];
    return m;
  }

  cplx trace() const { return scalar * static_cast<double>(dim); }
};

inline AdjointElement adjoint_multiply(const AdjointElement& x, const AdjointElement& y, const StructureTensors& tensors) {
  if (x.dim != y.dim || x.dim != tensors.dim) throw Error(ErrorKind::InvalidDimension, "adjoint elements of different dimension");
  AdjointElement out;
  out.dim = x.dim;
  out.scalar = x.scalar * y.scalar + (2.0 / x.dim) * x.vec.cwiseProduct(y.vec).sum();
  out.vec = x.scalar * y.vec + y.scalar * x.vec;
  for (const auto& e : tensors.d.entries()) out.vec(e.k) += e.value * x.vec(e.i) * y.vec(e.j);
  const cplx i_unit(0.0, 1.0);
  for (const auto& e : tensors.f.entries()) out.vec(e.k) += (i_unit * e.value) * x.vec(e.i) * y.vec(e.j);
  return out;
}

namespace detail {
inline double real_trace(cplx t, const char* what) {
  if (std::abs(t.imag()) > 1e-10 * std::max(1.0, std::abs(t.real())))
    throw Error(ErrorKind::NumericalConsistency, std::string(what) + " has a non-vanishing imaginary part");
  return t.real();
}
}  // namespace detail

/// Tr(x^1), ..., Tr(x^max_power) by repeated adjoint multiplication.
inline std::vector<double> trace_powers_adjoint(const AdjointElement& x, int max_power, const StructureTensors& tensors) {
  if (max_power < 1) throw Error(ErrorKind::InvalidInput, "power must be >= 1");
  std::vector<double> traces;
  traces.reserve(static_cast<std::size_t>(max_power));
  AdjointElement power = x;
  traces.push_back(detail::real_trace(power.trace(), "Tr(A)"));
  for (int m = 2; m <= max_power; ++m) {
    power = adjoint_multiply(power, x, tensors);
    traces.push_back(detail::real_trace(power.trace(), "Tr(A^m)"));
  }
  return traces;
}

inline double trace_power_adjoint(const CoherenceState& state, int m, const StructureTensors& tensors) {
  if (state.dim != tensors.dim) throw Error(ErrorKind::InvalidDimension, "state and tensors differ in dimension");
  return trace_powers_adjoint(AdjointElement::from_coherence(state), m, tensors).back();
}

/// Scalar d-contractions of n from which every Tr((n.l)^k), k <= 9, is built.
/// With v = D(n,n), w = D(v,v) and D(a,b)_k = d_ijk a_i b_j.
struct DContractions {
  double nn = 0, vn = 0, vv = 0, wn = 0, wv = 0, ww = 0, wvn = 0, wwn = 0;

  static DContractions of(const RealVector& n, const StructureTensors& tensors) {
    DContractions c;
    const RealVector v = tensors.d.contract(n, n);
    const RealVector w = tensors.d.contract(v, v);
    c.nn = n.squaredNorm();
    c.vn = v.dot(n);
    c.vv = v.squaredNorm();
    c.wn = w.dot(n);
    c.wv = w.dot(v);
    c.ww = w.squaredNorm();
    c.wvn = tensors.d.contract(w, v).dot(n);
    c.wwn = tensors.d.contract(w, w).dot(n);
    return c;
  }
};

/// T_k = Tr_sym(l_i1 ... l_ik) n_i1 ... n_ik = Tr((n.l)^k) for k = 2..9.
///
/// Each line is the fully contracted symmetric-trace pattern: delta factors
/// carry 2/N, the trailing term is the pure d-chain. Orders 7-9 include the
/// (dd)(d..d) and delta-delta terms needed for the identity to close.
inline double symmetric_trace_contraction(int k, const DContractions& c, int dim) {
  const double N = dim;
  switch (k) {
    case 2: return 2 * c.nn;
    case 3: return 2 * c.vn;
    case 4: return 4 / N * c.nn * c.nn + 2 * c.vv;
    case 5: return 8 / N * c.nn * c.vn + 2 * c.wn;
    case 6: return 8 / (N * N) * c.nn * c.nn * c.nn + 12 / N * c.nn * c.vv + 2 * c.wv;
    case 7:
      return 24 / (N * N) * c.nn * c.nn * c.vn + 12 / N * c.nn * c.wn + 4 / N * c.vv * c.vn + 2 * c.wvn;
    case 8:
      return 16 / (N * N * N) * std::pow(c.nn, 4) + 48 / (N * N) * c.nn * c.nn * c.vv + 16 / N * c.nn * c.wv +
             4 / N * c.vv * c.vv + 2 * c.ww;
    case 9:
      return 64 / (N * N * N) * std::pow(c.nn, 3) * c.vn + 48 / (N * N) * c.nn * c.nn * c.wn +
             32 / (N * N) * c.nn * c.vv * c.vn + 16 / N * c.nn * c.wvn + 8 / N * c.vv * c.wn + 2 * c.wwn;
    default: throw Error(ErrorKind::UnsupportedOrder, "symmetric trace contractions exist for orders 2..9, got " + std::to_string(k));
  }
}

inline double symmetric_trace_contraction(int k, const RealVector& n, const StructureTensors& tensors) {
  if (k < 2 || k > 9) throw Error(ErrorKind::UnsupportedOrder, "symmetric trace contractions exist for orders 2..9");
  return symmetric_trace_contraction(k, DContractions::of(n, tensors), tensors.dim);
}

/// Tr(rho^m) = N^-m sum_k C(m,k) c^k T_k with T_0 = N, T_1 = 0.
inline double trace_power_closed(const CoherenceState& state, int m, const StructureTensors& tensors) {
  if (m < 2 || m > 9) throw Error(ErrorKind::UnsupportedOrder, "closed trace forms exist for m = 2..9, got " + std::to_string(m));
  if (state.dim != tensors.dim) throw Error(ErrorKind::InvalidDimension, "state and tensors differ in dimension");
  const auto contractions = DContractions::of(state.n, tensors);
  const double N = state.dim;
  const double c = coherence_scale(state.dim);
  double sum = N;
  double binom = 1.0;
  double c_pow = 1.0;
  for (int k = 1; k <= m; ++k) {
    binom = binom * (m - k + 1) / k;
    c_pow *= c;
    if (k >= 2) sum += binom * c_pow * symmetric_trace_contraction(k, contractions, state.dim);
  }
  return sum / std::pow(N, m);
}

/// Casimir values c_2 .. c_up_to of a coherence vector.
///
/// c_2 = n.n, c_3 = (n*n).n, and for m >= 4 the pure d-chain of T_m scaled by
/// (sqrt(N(N-1)/2)/(N-2))^(m-2), so that c_4 = (n*n).(n*n) and every c_m = 1
/// on pure states.
struct CasimirSet {
  int dim = 0;
  std::map<int, double> values;

  double at(int m) const {
    auto it = values.find(m);
    if (it == values.end()) throw Error(ErrorKind::UnsupportedOrder, "Casimir c_" + std::to_string(m) + " was not computed");
    return it->second;
  }
};

inline CasimirSet casimirs(const CoherenceState& state, const StructureTensors& tensors, int up_to) {
  if (up_to > 9) throw Error(ErrorKind::UnsupportedOrder, "Casimir values are available up to order 9");
  if (up_to < 2) throw Error(ErrorKind::InvalidInput, "Casimir order must be >= 2");
  if (up_to > state.dim) throw Error(ErrorKind::InvalidInput, "SU(N) has Casimirs up to order N only");
  if (state.dim != tensors.dim) throw Error(ErrorKind::InvalidDimension, "state and tensors differ in dimension");

  CasimirSet out;
  out.dim = state.dim;
  const auto c = DContractions::of(state.n, tensors);
  out.values[2] = c.nn;
  if (up_to == 2) return out;

  const double pref = star_prefactor(state.dim);
  const double chains[] = {c.vn, c.vv, c.wn, c.wv, c.wvn, c.ww, c.wwn};
  double scale = 1.0;
  for (int m = 3; m <= up_to; ++m) {
    scale *= pref;
    out.values[m] = scale * chains[m - 3];
  }
  return out;
}

/// C_2 = sum_a l_a l_a (metric delta_ab) or C_3 = sum_abc d_abc l_a l_b l_c.
/// Both are multiples of the identity on the defining representation.
inline HermitianOperator casimir_operator(int m, const BasisSet& basis, const StructureTensors& tensors) {
  const int dim = basis.dim;
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  if (m == 2) {
    for (const auto& e : basis.elements) out += e * e;
  } else if (m == 3) {
    for (const auto& e : tensors.d.entries())
      out += e.value * (basis.elements[static_cast<std::size_t>(e.i)] * basis.elements[static_cast<std::size_t>(e.j)] *
                        basis.elements[static_cast<std::size_t>(e.k)]);
  } else {
    throw Error(ErrorKind::UnsupportedOrder, "Casimir operators are built for m = 2, 3 only");
  }
  return HermitianOperator(out);
}

enum class Degeneracy3 { ThreeFoldDegenerate, TwoLargeOneSmall, TwoSmallOneLarge, NonDegenerate };

inline const char* to_string(Degeneracy3 d) {
  switch (d) {
    case Degeneracy3::ThreeFoldDegenerate: return "ThreeFoldDegenerate";
    case Degeneracy3::TwoLargeOneSmall: return "TwoLargeOneSmall";
    case Degeneracy3::TwoSmallOneLarge: return "TwoSmallOneLarge";
    case Degeneracy3::NonDegenerate: return "NonDegenerate";
  }
  return "?";
}

/// Three-level spectra: a degenerate pair forces c_3 = -+ c_2^(3/2); the sign is
/// negative when the pair is the larger eigenvalue.
inline Degeneracy3 classify_degeneracy_3(double c2, double c3, double tolerance = tol::norm) {
  if (c2 < -tolerance) throw Error(ErrorKind::InvalidInput, "quadratic Casimir must be non-negative");
  if (c2 <= tolerance) return Degeneracy3::ThreeFoldDegenerate;
  const double bound = std::pow(c2, 1.5);
  if (std::abs(c3 + bound) <= tolerance) return Degeneracy3::TwoLargeOneSmall;
  if (std::abs(c3 - bound) <= tolerance) return Degeneracy3::TwoSmallOneLarge;
  return Degeneracy3::NonDegenerate;
}

enum class Degeneracy4 { PatternABBB, PatternAABB, Unresolved };

inline const char* to_string(Degeneracy4 d) {
  switch (d) {
    case Degeneracy4::PatternABBB: return "PatternABBB";
    case Degeneracy4::PatternAABB: return "PatternAABB";
    case Degeneracy4::Unresolved: return "Unresolved";
  }
  return "?";
}

namespace detail {
/// c_3 and c_4 on the unit-|n| member diag(1,0,0,0) of the (a,b,b,b) family.
inline std::pair<double, double> abbb_reference() {
  static const std::pair<double, double> ref = [] {
    const auto basis = build_gellmann_basis(4);
    const auto tensors = structure_constants(basis);
    ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
    rho(0, 0) = 1.0;
    const auto state = to_coherence(HermitianOperator(rho), basis);
    const auto cs = casimirs(state, tensors, 4);
    return std::make_pair(cs.at(3), cs.at(4));
  }();
  return ref;
}
}  // namespace detail

/// Four-level spectra. (a,b,b,b) puts n on a fixed ray, so c_m = k_m (+-|n|)^m;
/// (a,a,b,b) gives n.l proportional to an involution, so c_3 = c_4 = 0.
/// n = 0 (a = b) is reported as PatternABBB.
inline Degeneracy4 classify_degeneracy_4(const CasimirSet& cs, double tolerance = tol::norm) {
  if (cs.dim != 4) throw Error(ErrorKind::InvalidDimension, "four-level classification needs N = 4");
  const double c2 = cs.at(2), c3 = cs.at(3), c4 = cs.at(4);
  const auto [k3, k4] = detail::abbb_reference();
  const double r = std::sqrt(std::max(c2, 0.0));
  const double sign = c3 >= 0 ? 1.0 : -1.0;
  if (std::abs(c3 - sign * k3 * r * r * r) <= tolerance && std::abs(c4 - k4 * r * r * r * r) <= tolerance)
    return Degeneracy4::PatternABBB;
  if (c2 > tolerance && std::abs(c3) <= tolerance && std::abs(c4) <= tolerance) return Degeneracy4::PatternAABB;
  return Degeneracy4::Unresolved;
}

}  // namespace blochvec
