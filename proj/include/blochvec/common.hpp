#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace blochvec {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

enum class ErrorKind {
  InvalidDimension,
  InvalidLayout,
  InconsistentBasis,
  Normalization,
  Hermiticity,
  StarUndefined,
  UndefinedAngle,
  UnsupportedOrder,
  InvalidInput,
  Domain,
  NumericalConsistency,
  Parse,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid-dimension";
    case ErrorKind::InvalidLayout: return "invalid-layout";
    case ErrorKind::InconsistentBasis: return "inconsistent-basis";
    case ErrorKind::Normalization: return "normalization";
    case ErrorKind::Hermiticity: return "hermiticity";
    case ErrorKind::StarUndefined: return "star-undefined";
    case ErrorKind::UndefinedAngle: return "undefined-angle";
    case ErrorKind::UnsupportedOrder: return "unsupported-order";
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::NumericalConsistency: return "numerical-consistency";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

/// Every failure raised by the library carries a kind so callers (and the CLI)
/// can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

namespace tol {
/// Entries of f and d below this magnitude are dropped.
inline constexpr double tensor = 1e-12;
/// Coherence-vector norm tolerance (purity tests).
inline constexpr double norm = 1e-9;
/// Base of the relative positivity tolerance.
inline constexpr double positivity = 1e-9;

/// Hermiticity / trace tolerance, scaled by the largest entry of the matrix.
inline double hermitian(const ComplexMatrix& m) {
  const double scale = m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
  return 1e-10 * std::max(1.0, scale);
}
}  // namespace tol

/// sqrt(N(N-1)/2): the constant multiplying n.lambda in the density operator.
inline double coherence_scale(int dim) {
  return std::sqrt(0.5 * dim * (dim - 1.0));
}

inline int adjoint_size(int dim) { return dim * dim - 1; }

inline double hermitian_residual(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace blochvec
