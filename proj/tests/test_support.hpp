#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include <blochvec/blochvec.hpp>

namespace testsupport {

using blochvec::ComplexMatrix;
using blochvec::ComplexVector;
using blochvec::RealVector;
using blochvec::cplx;

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240917);
  return engine;
}

inline double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline ComplexMatrix ginibre(int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = cplx(g(rng()), g(rng()));
  return m;
}

/// QR of a Ginibre matrix with the diagonal phases of R divided out.
inline ComplexMatrix haar_unitary(int n) {
  Eigen::HouseholderQR<ComplexMatrix> qr(ginibre(n));
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    const cplx d = r(k, k);
    q.col(k) *= std::abs(d) > 0 ? d / std::abs(d) : cplx(1.0);
  }
  return q;
}

inline ComplexVector haar_ket(int n) { return haar_unitary(n).col(0); }

inline ComplexMatrix with_spectrum(const RealVector& spectrum) {
  const ComplexMatrix u = haar_unitary(static_cast<int>(spectrum.size()));
  return u * spectrum.cast<cplx>().asDiagonal() * u.adjoint();
}

/// Random probability vector (flat Dirichlet).
inline RealVector random_probabilities(int n) {
  std::exponential_distribution<double> e(1.0);
  RealVector p(n);
  for (int i = 0; i < n; ++i) p(i) = e(rng());
  return p / p.sum();
}

inline ComplexMatrix random_density(int n) { return with_spectrum(random_probabilities(n)); }

/// Trace-one spectrum with `negatives` strictly negative entries, each of
/// magnitude at least `gap`.
inline RealVector indefinite_spectrum(int n, int negatives, double gap = 1e-3) {
  RealVector s(n);
  for (int i = 0; i < n; ++i) s(i) = i < negatives ? -uniform(gap, 0.5) : uniform(gap, 1.0);
  double positive_sum = 0.0;
  for (int i = negatives; i < n; ++i) positive_sum += s(i);
  const double shift = 1.0 - s.sum();
  for (int i = negatives; i < n; ++i) s(i) += shift * s(i) / positive_sum;
  return s;
}

inline ComplexMatrix ket_projector(const ComplexVector& psi) { return psi * psi.adjoint(); }

inline RealVector eigenvalues(const ComplexMatrix& m) {
  return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly).eigenvalues();
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) { return blochvec::detail::kron(a, b); }

inline double power_sum(const RealVector& spectrum, int m) {
  double s = 0.0;
  for (double a : spectrum) s += std::pow(a, m);
  return s;
}

/// Wootters concurrence from the complex eigenvalues of the non-Hermitian
/// rho rho~, in whatever scalar precision `rho` carries.
template <typename Matrix>
typename Matrix::RealScalar wootters_concurrence(const Matrix& rho) {
  using Real = typename Matrix::RealScalar;
  Matrix yy = Matrix::Zero(4, 4);
  yy(0, 3) = yy(3, 0) = Real(-1);
  yy(1, 2) = yy(2, 1) = Real(1);
  const Matrix tilde = yy * rho.conjugate() * yy;
  const auto ev = Eigen::ComplexEigenSolver<Matrix>(rho * tilde, false).eigenvalues();
  std::vector<Real> l;
  for (int i = 0; i < 4; ++i) l.push_back(std::sqrt(std::max(ev(i).real(), Real(0))));
  std::sort(l.rbegin(), l.rend());
  return std::max(Real(0), l[0] - l[1] - l[2] - l[3]);
}

/// 4 det rho_A - C_AB^2 - C_AC^2 for a three-qubit ket, evaluated in long
/// double from the amplitudes up. Rank-2 marginals leave ~eps-sized
/// eigenvalues in rho rho~ whose square roots would otherwise swamp 1e-8.
inline double tangle_oracle(const ComplexVector& psi) {
  using C = std::complex<long double>;
  using M = Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Matrix<C, Eigen::Dynamic, 1> v = psi.cast<C>();
  // amplitude index = 4a + 2b + c
  auto marginal_pair = [&](int kept_second) {
    M rho = M::Zero(4, 4);
    for (int a = 0; a < 2; ++a)
      for (int x = 0; x < 2; ++x)
        for (int a2 = 0; a2 < 2; ++a2)
          for (int x2 = 0; x2 < 2; ++x2)
            for (int t = 0; t < 2; ++t) {
              const int i = kept_second == 1 ? 4 * a + 2 * x + t : 4 * a + 2 * t + x;
              const int j = kept_second == 1 ? 4 * a2 + 2 * x2 + t : 4 * a2 + 2 * t + x2;
              rho(2 * a + x, 2 * a2 + x2) += v(i) * std::conj(v(j));
            }
    return rho;
  };
  const M rho_ab = marginal_pair(1), rho_ac = marginal_pair(2);
  const C a00 = rho_ab(0, 0) + rho_ab(1, 1), a11 = rho_ab(2, 2) + rho_ab(3, 3), a01 = rho_ab(0, 2) + rho_ab(1, 3);
  const long double det_a = (a00 * a11 - a01 * std::conj(a01)).real();
  const long double cab = wootters_concurrence(rho_ab), cac = wootters_concurrence(rho_ac);
  return static_cast<double>(4 * det_a - cab * cab - cac * cac);
}

}  // namespace testsupport
