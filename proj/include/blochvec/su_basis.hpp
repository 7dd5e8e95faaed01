#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "common.hpp"

namespace blochvec {

/// Ordered traceless Hermitian basis with Tr(l_i l_j) = 2 delta_ij.
///
/// For product bases `labels[k]` holds one local generator index per
/// subsystem: 0 is the identity, a + 1 is local Gell-Mann element a.
struct BasisSet {
  int dim = 0;
  std::vector<ComplexMatrix> elements;
  std::vector<int> subsystem_dims;
  std::optional<std::vector<std::vector<int>>> labels;

  int size() const { return static_cast<int>(elements.size()); }
};

/// Where a generalized Gell-Mann element sits in the (symmetric, antisymmetric,
/// diagonal) ordering used by build_gellmann_basis.
enum class GellMannKind { Symmetric, Antisymmetric, Diagonal };

namespace detail {

inline int off_diagonal_pair_count(int dim) { return dim * (dim - 1) / 2; }

inline GellMannKind gellmann_kind(int dim, int index) {
  const int pairs = off_diagonal_pair_count(dim);
  if (index < pairs) return GellMannKind::Symmetric;
  if (index < 2 * pairs) return GellMannKind::Antisymmetric;
  return GellMannKind::Diagonal;
}

}  // namespace detail

/// Generalized Gell-Mann basis: symmetric off-diagonal pairs, antisymmetric
/// off-diagonal pairs (row, col lexicographic), then the N - 1 diagonal
/// elements sqrt(2/(m(m+1))) diag(1,...,1,-m,0,...).
inline BasisSet build_gellmann_basis(int dim) {
  if (dim < 2) throw Error(ErrorKind::InvalidDimension, "Gell-Mann basis needs N >= 2, got " + std::to_string(dim));

  BasisSet basis;
  basis.dim = dim;
  basis.elements.reserve(static_cast<std::size_t>(adjoint_size(dim)));

  for (int r = 0; r < dim; ++r) {
    for (int c = r + 1; c < dim; ++c) {
      ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
      m(r, c) = 1.0;
      m(c, r) = 1.0;
      basis.elements.push_back(std::move(m));
    }
  }
  for (int r = 0; r < dim; ++r) {
    for (int c = r + 1; c < dim; ++c) {
      ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
      m(r, c) = cplx(0.0, -1.0);
      m(c, r) = cplx(0.0, 1.0);
      basis.elements.push_back(std::move(m));
    }
  }
  for (int m = 1; m < dim; ++m) {
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    const double scale = std::sqrt(2.0 / (m * (m + 1.0)));
    for (int r = 0; r < m; ++r) h(r, r) = scale;
    h(m, m) = -m * scale;
    basis.elements.push_back(std::move(h));
  }
  return basis;
}

/// Maps the physics-standard SU(3) labels 1..8 onto build_gellmann_basis(3)
/// indices. Standard lambda_3 is diag(1,-1,0), lambda_8 is diag(1,1,-2)/sqrt(3).
inline int gellmann3_index(int standard_label) {
  static constexpr std::array<int, 8> table{0, 3, 6, 1, 4, 2, 5, 7};
  if (standard_label < 1 || standard_label > 8)
    throw Error(ErrorKind::InvalidInput, "SU(3) label must be in 1..8");
  return table[static_cast<std::size_t>(standard_label - 1)];
}

/// Local-generator label tuples of a product basis, all-identity excluded.
/// Ordering: by number of non-identity factors, then by which subsystems carry
/// them, then lexicographically in the local labels.
inline std::vector<std::vector<int>> product_labels(const std::vector<int>& dims) {
  std::vector<std::vector<int>> labels;
  std::vector<int> label(dims.size(), 0);
  while (true) {
    std::size_t pos = 0;
    while (pos < dims.size()) {
      if (++label[pos] < dims[pos] * dims[pos]) break;
      label[pos] = 0;
      ++pos;
    }
    if (pos == dims.size()) break;
    labels.push_back(label);
  }

  auto support = [](const std::vector<int>& l) {
    std::vector<int> s;
    for (std::size_t i = 0; i < l.size(); ++i)
      if (l[i] != 0) s.push_back(static_cast<int>(i));
    return s;
  };
  std::sort(labels.begin(), labels.end(), [&](const auto& a, const auto& b) {
    const auto sa = support(a);
    const auto sb = support(b);
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    if (sa != sb) return sa < sb;
    return a < b;
  });
  return labels;
}

/// Product basis {g_1 x ... x g_k} without the all-identity term, scaled to
/// Tr(l_i l_j) = 2 delta_ij, ordered as product_labels. For dims = {2, 2}
/// this reproduces the familiar two-qubit table (sigma_i x 1, 1 x sigma_i, sigma_1 x sigma_i, sigma_2 x sigma_i, sigma_3 x sigma_i).
inline BasisSet build_product_basis(const std::vector<int>& dims) {
  if (dims.empty()) throw Error(ErrorKind::InvalidLayout, "product basis needs at least one subsystem");
  for (int d : dims) {
    if (d != 2 && d != 3)
      throw Error(ErrorKind::InvalidLayout, "product bases support qubit and qutrit factors only, got " + std::to_string(d));
  }
  if (dims.size() == 1) {
    BasisSet b = build_gellmann_basis(dims.front());
    b.subsystem_dims = dims;
    std::vector<std::vector<int>> labels;
    for (int a = 0; a < b.size(); ++a) labels.push_back({a + 1});
    b.labels = std::move(labels);
    return b;
  }

  std::vector<BasisSet> local;
  int total = 1;
  for (int d : dims) {
    local.push_back(build_gellmann_basis(d));
    total *= d;
  }

  auto labels = product_labels(dims);

  BasisSet basis;
  basis.dim = total;
  basis.subsystem_dims = dims;
  for (const auto& l : labels) {
    ComplexMatrix m = ComplexMatrix::Identity(1, 1);
    double norm_sq = 1.0;
    for (std::size_t s = 0; s < dims.size(); ++s) {
      const int d = dims[s];
      ComplexMatrix factor = l[s] == 0 ? ComplexMatrix(ComplexMatrix::Identity(d, d))
                                       : local[s].elements[static_cast<std::size_t>(l[s] - 1)];
      norm_sq *= l[s] == 0 ? d : 2.0;
      ComplexMatrix next(m.rows() * d, m.cols() * d);
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) next.block(r * d, c * d, d, d) = m(r, c) * factor;
      m = std::move(next);
    }
    basis.elements.push_back(m * std::sqrt(2.0 / norm_sq));
  }
  basis.labels = std::move(labels);
  return basis;
}

/// Largest violation of hermiticity, tracelessness and Tr(l_i l_j) = 2 delta_ij.
inline double basis_invariant_residual(const BasisSet& basis) {
  double worst = 0.0;
  const int n = basis.size();
  for (int i = 0; i < n; ++i) {
    const auto& a = basis.elements[static_cast<std::size_t>(i)];
    worst = std::max(worst, hermitian_residual(a));
    worst = std::max(worst, std::abs(a.trace()));
    for (int j = i; j < n; ++j) {
      const auto& b = basis.elements[static_cast<std::size_t>(j)];
      const cplx t = (a.cwiseProduct(b.transpose())).sum();
      worst = std::max(worst, std::abs(t - (i == j ? 2.0 : 0.0)));
    }
  }
  return worst;
}

/// Sparse real rank-3 tensor that is either totally symmetric or totally
/// antisymmetric. Stored twice: canonical (sorted-index) entries for lookup,
/// and every nonzero ordered triple for contractions.
class SparseTensor3 {
 public:
  struct Entry {
    int i, j, k;
    double value;
  };

  SparseTensor3() = default;
  SparseTensor3(int extent, bool antisymmetric) : extent_(extent), antisymmetric_(antisymmetric) {}

  /// `i <= j <= k` (strict for antisymmetric tensors).
  void insert_canonical(int i, int j, int k, double value) {
    canonical_.push_back({i, j, k, value});
    index_.emplace(key(i, j, k), value);
    // next_permutation over the sorted values visits each distinct ordering once
    std::array<int, 3> p{i, j, k};
    do {
      const bool odd = inversions(p) % 2 == 1;
      full_.push_back({p[0], p[1], p[2], antisymmetric_ && odd ? -value : value});
    } while (std::next_permutation(p.begin(), p.end()));
  }

  double operator()(int i, int j, int k) const {
    std::array<int, 3> idx{i, j, k};
    int sign = 1;
    // bubble sort, counting swaps
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t a = 0; a + 1 < 3; ++a)
        if (idx[a] > idx[a + 1]) {
          std::swap(idx[a], idx[a + 1]);
          sign = -sign;
        }
    if (antisymmetric_ && (idx[0] == idx[1] || idx[1] == idx[2])) return 0.0;
    auto it = index_.find(key(idx[0], idx[1], idx[2]));
    if (it == index_.end()) return 0.0;
    return antisymmetric_ ? sign * it->second : it->second;
  }

  const std::vector<Entry>& canonical() const { return canonical_; }
  const std::vector<Entry>& entries() const { return full_; }
  int extent() const { return extent_; }
  bool antisymmetric() const { return antisymmetric_; }

  /// out_k = sum_ij t_ijk a_i b_j
  template <typename VecA, typename VecB>
  auto contract(const VecA& a, const VecB& b) const {
    using Scalar = decltype(typename VecA::Scalar{} * typename VecB::Scalar{});
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(extent_);
    for (const auto& e : full_) out(e.k) += e.value * a(e.i) * b(e.j);
    return out;
  }

 private:
  static std::uint64_t key(int i, int j, int k) {
    return (static_cast<std::uint64_t>(i) << 42) | (static_cast<std::uint64_t>(j) << 21) | static_cast<std::uint64_t>(k);
  }
  static int inversions(const std::array<int, 3>& p) {
    int count = 0;
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = a + 1; b < 3; ++b)
        if (p[a] > p[b]) ++count;
    return count;
  }

  int extent_ = 0;
  bool antisymmetric_ = false;
  std::vector<Entry> canonical_;
  std::vector<Entry> full_;
  std::unordered_map<std::uint64_t, double> index_;
};

/// f and d for a basis: l_i l_j = (2/N) delta_ij 1 + (i f_ijk + d_ijk) l_k.
struct StructureTensors {
  int dim = 0;
  SparseTensor3 f;
  SparseTensor3 d;
  /// Measured while building, before symmetrization into canonical storage.
  double f_symmetry_violation = 0.0;
  double d_symmetry_violation = 0.0;
};

/// f_ijk = Tr([l_i, l_j] l_k) / (4i), d_ijk = Tr({l_i, l_j} l_k) / 4.
/// The 1/4 factors are forced by Tr(l_i l_j) = 2 delta_ij.
inline StructureTensors structure_constants(const BasisSet& basis) {
  const int n = basis.size();
  if (basis.dim < 2 || n != adjoint_size(basis.dim))
    throw Error(ErrorKind::InconsistentBasis, "basis has the wrong number of elements");
  if (basis_invariant_residual(basis) > 1e-10)
    throw Error(ErrorKind::InconsistentBasis, "basis is not Hermitian, traceless and trace-orthonormal");

  const auto N = static_cast<std::size_t>(n);
  std::vector<ComplexMatrix> transposed;
  transposed.reserve(N);
  for (const auto& e : basis.elements) transposed.push_back(e.transpose());

  // triple[(i*n + j)*n + k] = Tr(l_i l_j l_k)
  std::vector<cplx> triple(N * N * N);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      const ComplexMatrix prod = basis.elements[i] * basis.elements[j];
      for (std::size_t k = 0; k < N; ++k) triple[(i * N + j) * N + k] = prod.cwiseProduct(transposed[k]).sum();
    }
  }
  auto T = [&](std::size_t i, std::size_t j, std::size_t k) { return triple[(i * N + j) * N + k]; };

  StructureTensors out;
  out.dim = basis.dim;
  out.f = SparseTensor3(n, true);
  out.d = SparseTensor3(n, false);

  const cplx four_i(0.0, 4.0);
  double imag_residue = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      for (std::size_t k = 0; k < N; ++k) {
        const cplx fijk = (T(i, j, k) - T(j, i, k)) / four_i;
        const cplx dijk = (T(i, j, k) + T(j, i, k)) / 4.0;
        imag_residue = std::max({imag_residue, std::abs(fijk.imag()), std::abs(dijk.imag())});
        // compare against the cyclic and swapped partners
        const cplx fjki = (T(j, k, i) - T(k, j, i)) / four_i;
        const cplx fikj = (T(i, k, j) - T(k, i, j)) / four_i;
        const cplx djki = (T(j, k, i) + T(k, j, i)) / 4.0;
        const cplx dikj = (T(i, k, j) + T(k, i, j)) / 4.0;
        out.f_symmetry_violation =
            std::max({out.f_symmetry_violation, std::abs(fijk.real() - fjki.real()), std::abs(fijk.real() + fikj.real())});
        out.d_symmetry_violation =
            std::max({out.d_symmetry_violation, std::abs(dijk.real() - djki.real()), std::abs(dijk.real() - dikj.real())});

        if (i < j && j < k && std::abs(fijk.real()) > tol::tensor)
          out.f.insert_canonical(static_cast<int>(i), static_cast<int>(j), static_cast<int>(k), fijk.real());
        if (i <= j && j <= k && std::abs(dijk.real()) > tol::tensor)
          out.d.insert_canonical(static_cast<int>(i), static_cast<int>(j), static_cast<int>(k), dijk.real());
      }
    }
  }
  if (imag_residue > 1e-10)
    throw Error(ErrorKind::InconsistentBasis, "structure constants have non-vanishing imaginary parts");
  return out;
}

/// max_ij || l_i l_j - [(2/N) delta_ij 1 + sum_k (i f_ijk + d_ijk) l_k] ||_max
inline double product_rule_residual(const BasisSet& basis, const StructureTensors& tensors) {
  const int n = basis.size();
  const int dim = basis.dim;
  std::vector<std::vector<std::pair<int, cplx>>> coeff(static_cast<std::size_t>(n * n));
  for (const auto& e : tensors.d.entries()) coeff[static_cast<std::size_t>(e.i * n + e.j)].push_back({e.k, cplx(e.value, 0.0)});
  for (const auto& e : tensors.f.entries()) coeff[static_cast<std::size_t>(e.i * n + e.j)].push_back({e.k, cplx(0.0, e.value)});

  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      ComplexMatrix rhs = ComplexMatrix::Zero(dim, dim);
      if (i == j) rhs.diagonal().setConstant(2.0 / dim);
      for (const auto& [k, c] : coeff[static_cast<std::size_t>(i * n + j)]) rhs += c * basis.elements[static_cast<std::size_t>(k)];
      const ComplexMatrix lhs = basis.elements[static_cast<std::size_t>(i)] * basis.elements[static_cast<std::size_t>(j)];
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

}  // namespace blochvec
