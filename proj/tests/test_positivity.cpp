#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace blochvec;

namespace {
struct Qutrit {
  BasisSet basis = build_gellmann_basis(3);
  StructureTensors tensors = structure_constants(basis);
};

/// Characteristic-polynomial oracle: coefficients from the roots.
std::vector<double> elementary_from_roots(const RealVector& roots) {
  std::vector<double> e(static_cast<std::size_t>(roots.size()) + 1, 0.0);
  e[0] = 1.0;
  for (double r : roots)
    for (std::size_t k = e.size() - 1; k >= 1; --k) e[k] += r * e[k - 1];
  e.erase(e.begin());
  return e;
}
}  // namespace

TEST(Newton, MatchesRootOracle) {
  RealVector roots(4);
  roots << 0.4, -0.1, 0.5, 0.2;
  std::vector<double> traces;
  for (int m = 1; m <= 4; ++m) traces.push_back(testsupport::power_sum(roots, m));
  const auto S = newton_symmetric_functions(traces);
  const auto expected = elementary_from_roots(roots);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(S[k], expected[k], 1e-15);
}

TEST(Positivity, IndefiniteDiagonal) {
  Qutrit q;
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = 0.5;
  m(1, 1) = 0.75;
  m(2, 2) = -0.25;
  const auto seq = check_positivity(HermitianOperator(m), q.basis, q.tensors);
  EXPECT_EQ(seq.verdict, Verdict::NotPSD);
  EXPECT_EQ(seq.sign_changes, 2);
  EXPECT_NEAR(seq.s(3), 0.5 * 0.75 * -0.25, 1e-15);
}

TEST(Positivity, MaximallyMixedAndPure) {
  for (int N = 2; N <= 6; ++N) {
    const auto b = build_gellmann_basis(N);
    const auto t = structure_constants(b);
    const auto mixed = check_positivity(CoherenceState::maximally_mixed(N), t);
    EXPECT_EQ(mixed.verdict, Verdict::PSD);
    EXPECT_EQ(mixed.sign_changes, N);
    const auto pure = check_positivity(to_coherence(HermitianOperator(testsupport::ket_projector(testsupport::haar_ket(N))), b), t);
    EXPECT_EQ(pure.verdict, Verdict::Boundary);
    EXPECT_EQ(pure.sign_changes, 1);
  }
}

TEST(Positivity, ClosedLowOrderForms) {
  for (int N = 2; N <= 6; ++N) {
    const auto b = build_gellmann_basis(N);
    const auto t = structure_constants(b);
    const RealVector spec = testsupport::indefinite_spectrum(N, N / 2);
    const auto s = to_coherence(HermitianOperator(testsupport::with_spectrum(spec)), b);
    auto oracle = elementary_from_roots(spec);
    const auto closed = closed_S234(s, t);
    // S_k vanishes identically for k > N
    oracle.resize(4, 0.0);
    EXPECT_NEAR(closed.s2, oracle[1], 1e-12);
    EXPECT_NEAR(closed.s3, oracle[2], 1e-12);
    EXPECT_NEAR(closed.s4, oracle[3], 1e-12);
  }
}

TEST(Positivity, SignChangesCountPositiveEigenvalues) {
  for (int N = 2; N <= 6; ++N) {
    const auto b = build_gellmann_basis(N);
    const auto t = structure_constants(b);
    for (int negatives = 0; negatives < N; ++negatives) {
      const RealVector spec = testsupport::indefinite_spectrum(N, negatives, 0.02);
      const auto seq = check_positivity(HermitianOperator(testsupport::with_spectrum(spec)), b, t);
      EXPECT_EQ(seq.sign_changes, N - negatives);
      EXPECT_EQ(seq.verdict, negatives == 0 ? Verdict::PSD : Verdict::NotPSD);
    }
  }
}

TEST(AffineMaps, IdentityInversionZero) {
  Qutrit q;
  const auto s = to_coherence(HermitianOperator(testsupport::random_density(3)), q.basis);
  EXPECT_LE((apply_affine_map(AffineMap::identity(3), s).n - s.n).norm(), 0.0);
  EXPECT_LE((apply_affine_map(AffineMap::inversion(3), s).n + s.n).norm(), 0.0);
  const AffineMap zero(3, RealMatrix::Zero(8, 8), RealVector::Zero(8));
  EXPECT_EQ(check_positivity(apply_affine_map(zero, s), q.tensors).verdict, Verdict::PSD);
  try {
    AffineMap bad(3, RealMatrix::Zero(8, 7), RealVector::Zero(8));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidLayout);
  }
}

TEST(Inversion, UniversalInverterIsOneMinusRho) {
  for (int N = 2; N <= 5; ++N) {
    const auto b = build_gellmann_basis(N);
    const auto t = structure_constants(b);
    const ComplexMatrix rho = testsupport::random_density(N);
    const auto inv = universal_inversion(to_coherence(HermitianOperator(rho), b), N - 1.0);
    const ComplexMatrix image = inv.weight * from_coherence(inv.state, b).matrix();
    EXPECT_LE((image - (ComplexMatrix::Identity(N, N) - rho)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_TRUE(check_positivity(inv.state, t).positive_semidefinite());
  }
}

TEST(Inversion, PureStateFlipFailsAtWeightOne) {
  Qutrit q;
  ComplexMatrix p = ComplexMatrix::Zero(3, 3);
  p(0, 0) = 1;
  const auto inv = universal_inversion(to_coherence(HermitianOperator(p), q.basis), 1.0);
  EXPECT_EQ(check_positivity(inv.state, q.tensors).verdict, Verdict::NotPSD);
}

TEST(Inversion, FamilyBoundAgreesWithEigenvalues) {
  Qutrit q;
  for (double a : {-1.0, -0.6, -0.25, 0.0, 0.3, 0.5})
    for (double bw : {0.1, 0.5, 0.9, 1.3, 2.0}) {
      const auto s = to_coherence(inverter_family_operator(a, 3), q.basis);
      const auto inv = universal_inversion(s, bw);
      const double min_eig = from_coherence(inv.state, q.basis).eigenvalues().minCoeff();
      if (std::abs(min_eig) < 1e-9) continue;
      EXPECT_EQ(inversion_bound_check(a, bw, 3, q.basis, q.tensors), min_eig > 0) << a << " " << bw;
      EXPECT_EQ(inversion_bound_closed(a, bw, 3), min_eig > 0) << a << " " << bw;
    }
}

TEST(Inversion, DomainErrors) {
  Qutrit q;
  try {
    universal_inversion(CoherenceState::maximally_mixed(3), 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
  try {
    inversion_bound_check(0.7, 1.0, 3, q.basis, q.tensors);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
}

TEST(Positivity, ClosedFormsAtTheExtremes) {
  Qutrit q;
  const auto mixed = closed_S234(CoherenceState::maximally_mixed(3), q.tensors);
  EXPECT_NEAR(mixed.s2, 1.0 / 3, 1e-15);
  EXPECT_NEAR(mixed.s3, 1.0 / 27, 1e-15);
  for (int N = 3; N <= 6; ++N) {
    const auto b = build_gellmann_basis(N);
    const auto pure = closed_S234(to_coherence(HermitianOperator(testsupport::ket_projector(testsupport::haar_ket(N))), b),
                                  structure_constants(b));
    EXPECT_NEAR(pure.s2, 0.0, 1e-12);
    EXPECT_NEAR(pure.s3, 0.0, 1e-12);
    EXPECT_NEAR(pure.s4, 0.0, 1e-12);
  }
}
