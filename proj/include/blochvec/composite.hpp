#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "coherence.hpp"
#include "common.hpp"
#include "positivity.hpp"
#include "su_basis.hpp"

namespace blochvec {

/// Subsystem dimensions plus the map between product-basis labels and flat
/// coherence indices. Subsystem 0 is the most significant tensor factor.
class CompositeLayout {
 public:
  explicit CompositeLayout(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw Error(ErrorKind::InvalidLayout, "layout needs at least one subsystem");
    total_ = 1;
    for (int d : dims_) {
      if (d < 2) throw Error(ErrorKind::InvalidLayout, "subsystem dimensions must be >= 2");
      total_ *= d;
    }
    labels_ = product_labels(dims_);
    for (std::size_t k = 0; k < labels_.size(); ++k) index_.emplace(labels_[k], static_cast<int>(k));
  }

  const std::vector<int>& dims() const { return dims_; }
  int total() const { return total_; }
  int subsystems() const { return static_cast<int>(dims_.size()); }

  const std::vector<int>& label_of(int flat) const { return labels_.at(static_cast<std::size_t>(flat)); }
  int index_of(const std::vector<int>& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw Error(ErrorKind::InvalidLayout, "label is not a non-identity product label");
    return it->second;
  }

  /// <P_k> = n_k / expectation_scale(k), P_k the unnormalized product of local
  /// Gell-Mann matrices and identities behind flat element k.
  double expectation_scale(int flat) const {
    const auto& label = label_of(flat);
    double norm_sq = 1.0;
    for (std::size_t s = 0; s < dims_.size(); ++s) norm_sq *= label[s] == 0 ? dims_[s] : 2.0;
    return coherence_from_trace_factor(total_) * std::sqrt(2.0 / norm_sq);
  }

  /// Digits of a flat matrix index, subsystem 0 first.
  std::vector<int> digits(int index) const {
    std::vector<int> out(dims_.size());
    for (int s = static_cast<int>(dims_.size()) - 1; s >= 0; --s) {
      out[static_cast<std::size_t>(s)] = index % dims_[static_cast<std::size_t>(s)];
      index /= dims_[static_cast<std::size_t>(s)];
    }
    return out;
  }

 private:
  std::vector<int> dims_;
  int total_ = 1;
  std::vector<std::vector<int>> labels_;
  std::map<std::vector<int>, int> index_;
};

namespace detail {
inline void require_layout(const HermitianOperator& rho, const CompositeLayout& layout) {
  if (rho.dim() != layout.total())
    throw Error(ErrorKind::InvalidLayout, "operator dimension " + std::to_string(rho.dim()) + " does not match the layout");
}
}  // namespace detail

/// Traces out every subsystem not in `keep`; kept subsystems stay in order.
inline HermitianOperator partial_trace(const HermitianOperator& rho, const CompositeLayout& layout, const std::set<int>& keep) {
  detail::require_layout(rho, layout);
  for (int s : keep)
    if (s < 0 || s >= layout.subsystems()) throw Error(ErrorKind::InvalidLayout, "subsystem index out of range");

  int kept_dim = 1;
  for (int s : keep) kept_dim *= layout.dims()[static_cast<std::size_t>(s)];

  auto kept_index = [&](const std::vector<int>& digits) {
    int idx = 0;
    for (int s : keep) idx = idx * layout.dims()[static_cast<std::size_t>(s)] + digits[static_cast<std::size_t>(s)];
    return idx;
  };
  auto traced_match = [&](const std::vector<int>& a, const std::vector<int>& b) {
    for (int s = 0; s < layout.subsystems(); ++s)
      if (!keep.count(s) && a[static_cast<std::size_t>(s)] != b[static_cast<std::size_t>(s)]) return false;
    return true;
  };

  ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
  const int n = layout.total();
  std::vector<std::vector<int>> digits(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) digits[static_cast<std::size_t>(i)] = layout.digits(i);
  for (int r = 0; r < n; ++r) {
    const auto& dr = digits[static_cast<std::size_t>(r)];
    for (int c = 0; c < n; ++c) {
      const auto& dc = digits[static_cast<std::size_t>(c)];
      if (traced_match(dr, dc)) out(kept_index(dr), kept_index(dc)) += rho.matrix()(r, c);
    }
  }
  return HermitianOperator(out);
}

/// Transpose on one tensor factor. Hermitian and trace preserving, not positive.
inline HermitianOperator partial_transpose(const HermitianOperator& rho, const CompositeLayout& layout, int subsystem = 0) {
  detail::require_layout(rho, layout);
  if (subsystem < 0 || subsystem >= layout.subsystems()) throw Error(ErrorKind::InvalidLayout, "subsystem index out of range");

  const int n = layout.total();
  int stride = 1;
  for (int s = layout.subsystems() - 1; s > subsystem; --s) stride *= layout.dims()[static_cast<std::size_t>(s)];
  const int d = layout.dims()[static_cast<std::size_t>(subsystem)];

  ComplexMatrix out(n, n);
  for (int r = 0; r < n; ++r) {
    const int rs = (r / stride) % d;
    for (int c = 0; c < n; ++c) {
      const int cs = (c / stride) % d;
      // swap the chosen subsystem's digit between row and column
      const int r2 = r + (cs - rs) * stride;
      const int c2 = c + (rs - cs) * stride;
      out(r2, c2) = rho.matrix()(r, c);
    }
  }
  return HermitianOperator(out);
}

/// Partial transpose acting on a product-basis coherence vector: the elements
/// whose factor on `subsystem` is an antisymmetric (imaginary) generator flip
/// sign. For two qubits and subsystem 0 these are n_2, n_10, n_11, n_12 in
/// 1-based numbering.
inline CoherenceState partial_transpose_coherence(const CoherenceState& state, const CompositeLayout& layout, int subsystem = 0) {
  if (state.dim != layout.total()) throw Error(ErrorKind::InvalidLayout, "state does not match the layout");
  if (subsystem < 0 || subsystem >= layout.subsystems()) throw Error(ErrorKind::InvalidLayout, "subsystem index out of range");
  for (int d : layout.dims())
    if (d != 2 && d != 3) throw Error(ErrorKind::InvalidLayout, "coherence-level partial transpose needs qubit/qutrit factors");

  RealVector n = state.n;
  const int d = layout.dims()[static_cast<std::size_t>(subsystem)];
  for (int k = 0; k < n.size(); ++k) {
    const int local = layout.label_of(k)[static_cast<std::size_t>(subsystem)];
    if (local != 0 && detail::gellmann_kind(d, local - 1) == GellMannKind::Antisymmetric) n(k) = -n(k);
  }
  return {state.dim, std::move(n)};
}

/// Two-party block form with unnormalized local Gell-Mann matrices g
/// (Tr g_a g_b = 2 delta_ab): nA_i = <g_i x 1>, nB_j = <1 x g_j>,
/// C_ij = <g_i x g_j>. For qubits g = sigma.
struct CorrelationBlock {
  int dim_a = 0;
  int dim_b = 0;
  RealVector nA;
  RealVector nB;
  RealMatrix C;
};

namespace detail {
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

inline void require_bipartite(const CompositeLayout& layout) {
  if (layout.subsystems() != 2) throw Error(ErrorKind::InvalidLayout, "correlation blocks need exactly two subsystems");
  for (int d : layout.dims())
    if (d != 2 && d != 3) throw Error(ErrorKind::InvalidLayout, "correlation blocks need qubit/qutrit factors");
}
}  // namespace detail

inline CorrelationBlock extract_correlation(const HermitianOperator& rho, const CompositeLayout& layout) {
  detail::require_bipartite(layout);
  detail::require_layout(rho, layout);
  const int da = layout.dims()[0], db = layout.dims()[1];
  const auto ga = build_gellmann_basis(da), gb = build_gellmann_basis(db);
  const ComplexMatrix ia = ComplexMatrix::Identity(da, da), ib = ComplexMatrix::Identity(db, db);
  auto expect = [&](const ComplexMatrix& op) { return (rho.matrix() * op).trace().real(); };

  CorrelationBlock block{da, db, RealVector(ga.size()), RealVector(gb.size()), RealMatrix(ga.size(), gb.size())};
  for (int i = 0; i < ga.size(); ++i) block.nA(i) = expect(detail::kron(ga.elements[static_cast<std::size_t>(i)], ib));
  for (int j = 0; j < gb.size(); ++j) block.nB(j) = expect(detail::kron(ia, gb.elements[static_cast<std::size_t>(j)]));
  for (int i = 0; i < ga.size(); ++i)
    for (int j = 0; j < gb.size(); ++j)
      block.C(i, j) = expect(detail::kron(ga.elements[static_cast<std::size_t>(i)], gb.elements[static_cast<std::size_t>(j)]));
  return block;
}

/// rho = (1/(dA dB)) (1 + (dA/2) nA.g x 1 + (dB/2) 1 x nB.g + (dA dB/4) C_ij g_i x g_j)
inline ComplexMatrix reconstruct(const CorrelationBlock& block) {
  const int da = block.dim_a, db = block.dim_b;
  const auto ga = build_gellmann_basis(da), gb = build_gellmann_basis(db);
  const ComplexMatrix ia = ComplexMatrix::Identity(da, da), ib = ComplexMatrix::Identity(db, db);
  ComplexMatrix rho = ComplexMatrix::Identity(da * db, da * db);
  for (int i = 0; i < ga.size(); ++i) rho += (0.5 * da * block.nA(i)) * detail::kron(ga.elements[static_cast<std::size_t>(i)], ib);
  for (int j = 0; j < gb.size(); ++j) rho += (0.5 * db * block.nB(j)) * detail::kron(ia, gb.elements[static_cast<std::size_t>(j)]);
  for (int i = 0; i < ga.size(); ++i)
    for (int j = 0; j < gb.size(); ++j)
      rho += (0.25 * da * db * block.C(i, j)) *
             detail::kron(ga.elements[static_cast<std::size_t>(i)], gb.elements[static_cast<std::size_t>(j)]);
  return rho / static_cast<double>(da * db);
}

/// Same block read off a flat product-basis coherence vector.
inline CorrelationBlock correlation_from_coherence(const CoherenceState& state, const CompositeLayout& layout) {
  detail::require_bipartite(layout);
  if (state.dim != layout.total()) throw Error(ErrorKind::InvalidLayout, "state does not match the layout");
  const int da = layout.dims()[0], db = layout.dims()[1];
  CorrelationBlock block{da, db, RealVector(da * da - 1), RealVector(db * db - 1), RealMatrix(da * da - 1, db * db - 1)};
  for (int k = 0; k < state.n.size(); ++k) {
    const auto& label = layout.label_of(k);
    const double value = state.n(k) / layout.expectation_scale(k);
    if (label[1] == 0)
      block.nA(label[0] - 1) = value;
    else if (label[0] == 0)
      block.nB(label[1] - 1) = value;
    else
      block.C(label[0] - 1, label[1] - 1) = value;
  }
  return block;
}

/// sum_ij C_ij^2, conserved by U_A x U_B.
inline double local_invariant_quadratic(const CorrelationBlock& block) { return block.C.squaredNorm(); }

/// sum d^A_ijk d^B_lmn C_il C_jm C_kn with each party's own d-tensor.
/// Identically zero when either party is a qubit (su(2) has d = 0).
inline double local_invariant_cubic(const CorrelationBlock& block, const StructureTensors& tensors_a,
                                    const StructureTensors& tensors_b) {
  if (tensors_a.dim != block.dim_a || tensors_b.dim != block.dim_b)
    throw Error(ErrorKind::InvalidDimension, "tensors do not match the correlation block");
  double sum = 0.0;
  for (const auto& a : tensors_a.d.entries())
    for (const auto& b : tensors_b.d.entries()) sum += a.value * b.value * block.C(a.i, b.i) * block.C(a.j, b.j) * block.C(a.k, b.k);
  return sum;
}

inline double local_invariant_cubic(const CorrelationBlock& block) {
  const auto ta = structure_constants(build_gellmann_basis(block.dim_a));
  const auto tb = block.dim_b == block.dim_a ? ta : structure_constants(build_gellmann_basis(block.dim_b));
  return local_invariant_cubic(block, ta, tb);
}

/// det C for two qubits: the nonvanishing cubic local invariant there.
/// Local unitaries act as C -> R_A C R_B^T with R in SO(3).
inline double local_invariant_det(const CorrelationBlock& block) {
  if (block.dim_a != 2 || block.dim_b != 2) throw Error(ErrorKind::InvalidLayout, "det(C) invariant is defined for two qubits");
  return block.C.determinant();
}

/// Basis and tensors for a fixed product layout, built once.
struct ProductAlgebra {
  CompositeLayout layout;
  BasisSet basis;
  StructureTensors tensors;

  explicit ProductAlgebra(const std::vector<int>& dims)
      : layout(dims), basis(build_product_basis(dims)), tensors(structure_constants(basis)) {}
};

inline const ProductAlgebra& two_qubit_algebra() {
  static const ProductAlgebra algebra({2, 2});
  return algebra;
}

/// ((1-x)/4) 1 + x S, S the singlet projector.
inline HermitianOperator werner_state(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::Domain, "Werner parameter must lie in [0, 1]");
  ComplexMatrix rho = ComplexMatrix::Identity(4, 4) * ((1.0 - x) / 4.0);
  rho(1, 1) += x / 2;
  rho(2, 2) += x / 2;
  rho(1, 2) -= x / 2;
  rho(2, 1) -= x / 2;
  return HermitianOperator(rho);
}

/// Closed-form (S_3, S_4) of the Werner state or of its partial transpose.
inline std::pair<double, double> werner_symfns(double x, bool transposed) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::Domain, "Werner parameter must lie in [0, 1]");
  const double sign = transposed ? -1.0 : 1.0;
  const double s3 = (1 - 3 * x * x + sign * 2 * x * x * x) / 16.0;
  const double s4 = (1 - 6 * x * x + sign * 8 * x * x * x - 3 * x * x * x * x) / 256.0;
  return {s3, s4};
}

/// werner_state -> [partial transpose on A] -> coherence vector -> S_k gate.
inline SymFnSequence werner_symfns_pipeline(double x, bool transposed, double tolerance = tol::positivity) {
  const auto& alg = two_qubit_algebra();
  auto rho = werner_state(x);
  if (transposed) rho = partial_transpose(rho, alg.layout, 0);
  return check_positivity(to_coherence(rho, alg.basis), alg.tensors, tolerance);
}

/// Bisection for the root of S_4 of the transposed Werner state on [lo, hi].
inline double werner_ppt_boundary(double lo = 0.0, double hi = 0.5, double tolerance = 1e-12) {
  auto s4 = [](double x) { return werner_symfns_pipeline(x, true).s(4); };
  double f_lo = s4(lo);
  if (f_lo * s4(hi) > 0) throw Error(ErrorKind::Domain, "bracket does not contain the separability boundary");
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = s4(mid);
    if ((f_mid > 0) == (f_lo > 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace blochvec
