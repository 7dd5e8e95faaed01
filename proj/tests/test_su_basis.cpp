#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace blochvec;

TEST(GellMannBasis, PauliMatricesAtTwoLevels) {
  const auto b = build_gellmann_basis(2);
  ASSERT_EQ(b.size(), 3);
  ComplexMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, cplx(0, -1), cplx(0, 1), 0;
  z << 1, 0, 0, -1;
  EXPECT_TRUE(b.elements[0].isApprox(x));
  EXPECT_TRUE(b.elements[1].isApprox(y));
  EXPECT_TRUE(b.elements[2].isApprox(z));
}

TEST(GellMannBasis, QutritDiagonalPair) {
  const auto b = build_gellmann_basis(3);
  ASSERT_EQ(b.size(), 8);
  const ComplexMatrix l3 = b.elements[static_cast<std::size_t>(gellmann3_index(3))];
  const ComplexMatrix l8 = b.elements[static_cast<std::size_t>(gellmann3_index(8))];
  EXPECT_NEAR(std::abs(l3(0, 0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(l3(1, 1) + 1.0), 0.0, 1e-15);
  EXPECT_NEAR(l8(0, 0).real(), 1 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(l8(1, 1).real(), 1 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(l8(2, 2).real(), -2 / std::sqrt(3.0), 1e-15);
}

TEST(GellMannBasis, OrthonormalUpToSix) {
  for (int N = 2; N <= 6; ++N) {
    const auto b = build_gellmann_basis(N);
    EXPECT_EQ(b.size(), N * N - 1);
    EXPECT_LE(basis_invariant_residual(b), 1e-12) << "N=" << N;
  }
}

TEST(GellMannBasis, RejectsSmallDimension) {
  try {
    build_gellmann_basis(1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidDimension);
  }
}

TEST(ProductBasis, TwoQubitLabelOrder) {
  const auto b = build_product_basis({2, 2});
  ASSERT_EQ(b.size(), 15);
  const auto sigma = build_gellmann_basis(2);
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  const double s = 1 / std::sqrt(2.0);
  for (int i = 0; i < 3; ++i) {
    EXPECT_TRUE(b.elements[static_cast<std::size_t>(i)].isApprox(s * testsupport::kron(sigma.elements[static_cast<std::size_t>(i)], id)));
    EXPECT_TRUE(b.elements[static_cast<std::size_t>(3 + i)].isApprox(s * testsupport::kron(id, sigma.elements[static_cast<std::size_t>(i)])));
    for (int j = 0; j < 3; ++j)
      EXPECT_TRUE(b.elements[static_cast<std::size_t>(6 + 3 * i + j)].isApprox(
          s * testsupport::kron(sigma.elements[static_cast<std::size_t>(i)], sigma.elements[static_cast<std::size_t>(j)])));
  }
}

TEST(ProductBasis, SingleFactorIsGellMann) {
  const auto b = build_product_basis({2});
  const auto g = build_gellmann_basis(2);
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(b.elements[static_cast<std::size_t>(i)].isApprox(g.elements[static_cast<std::size_t>(i)]));
}

TEST(ProductBasis, OrthonormalLayouts) {
  for (const auto& dims : std::vector<std::vector<int>>{{2, 2, 2}, {2, 3}, {3, 3}}) {
    const auto b = build_product_basis(dims);
    int total = 1;
    for (int d : dims) total *= d;
    EXPECT_EQ(b.size(), total * total - 1);
    EXPECT_LE(basis_invariant_residual(b), 1e-12);
  }
}

TEST(ProductBasis, EmptyLayoutRejected) {
  try {
    build_product_basis({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidLayout);
  }
}

TEST(StructureConstants, PauliLeviCivita) {
  const auto t = structure_constants(build_gellmann_basis(2));
  EXPECT_TRUE(t.d.canonical().empty());
  EXPECT_NEAR(t.f(0, 1, 2), 1.0, 1e-14);
  EXPECT_NEAR(t.f(1, 0, 2), -1.0, 1e-14);
  EXPECT_NEAR(t.f(2, 1, 0), -1.0, 1e-14);
  EXPECT_NEAR(t.f(1, 2, 0), 1.0, 1e-14);
}

TEST(StructureConstants, QutritStandardValues) {
  const auto t = structure_constants(build_gellmann_basis(3));
  auto d = [&](int a, int b, int c) { return t.d(gellmann3_index(a), gellmann3_index(b), gellmann3_index(c)); };
  auto f = [&](int a, int b, int c) { return t.f(gellmann3_index(a), gellmann3_index(b), gellmann3_index(c)); };
  const double r3 = 1 / std::sqrt(3.0);
  EXPECT_NEAR(d(1, 1, 8), r3, 1e-14);
  EXPECT_NEAR(d(2, 2, 8), r3, 1e-14);
  EXPECT_NEAR(d(3, 3, 8), r3, 1e-14);
  EXPECT_NEAR(d(8, 8, 8), -r3, 1e-14);
  EXPECT_NEAR(d(4, 4, 8), -r3 / 2, 1e-14);
  EXPECT_NEAR(d(1, 4, 6), 0.5, 1e-14);
  EXPECT_NEAR(f(1, 2, 3), 1.0, 1e-14);
  EXPECT_NEAR(f(4, 5, 8), std::sqrt(3.0) / 2, 1e-14);
  EXPECT_NEAR(f(1, 4, 7), 0.5, 1e-14);
}

TEST(StructureConstants, SymmetryAndReconstruction) {
  for (int N = 2; N <= 6; ++N) {
    const auto b = build_gellmann_basis(N);
    const auto t = structure_constants(b);
    EXPECT_LE(t.f_symmetry_violation, 1e-12);
    EXPECT_LE(t.d_symmetry_violation, 1e-12);
    EXPECT_LE(product_rule_residual(b, t), 1e-10) << "N=" << N;
  }
}

TEST(StructureConstants, DenseOracleAgreement) {
  // f and d straight from commutator and anticommutator traces
  const auto b = build_gellmann_basis(4);
  const auto t = structure_constants(b);
  double worst = 0.0;
  for (int i = 0; i < b.size(); ++i)
    for (int j = 0; j < b.size(); ++j) {
      const auto& li = b.elements[static_cast<std::size_t>(i)];
      const auto& lj = b.elements[static_cast<std::size_t>(j)];
      for (int k = 0; k < b.size(); ++k) {
        const auto& lk = b.elements[static_cast<std::size_t>(k)];
        const cplx fc = ((li * lj - lj * li) * lk).trace() / cplx(0, 4);
        const cplx dc = ((li * lj + lj * li) * lk).trace() / 4.0;
        worst = std::max({worst, std::abs(fc - t.f(i, j, k)), std::abs(dc - t.d(i, j, k))});
      }
    }
  EXPECT_LE(worst, 1e-12);
}

TEST(StructureConstants, RejectsNonOrthogonalBasis) {
  auto b = build_gellmann_basis(3);
  b.elements[0] = b.elements[0] + b.elements[1];
  try {
    structure_constants(b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InconsistentBasis);
  }
}
