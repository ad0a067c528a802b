#include <gtest/gtest.h>

#include <dareal/numerics.hpp>
#include <dareal/sampling.hpp>

#include "oracles.hpp"
#include "test_util.hpp"

using namespace dareal;
using dareal::testing::identity;
using dareal::testing::max_abs;

TEST(PsdSqrt, IdentityIsFixed) {
  auto [sqrt, rank] = psd_sqrt_and_defect(identity(3));
  EXPECT_LT(max_abs(sqrt - identity(3)), 1e-14);
  EXPECT_EQ(rank, 3);
}

TEST(PsdSqrt, IdempotentDiagonal) {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = 1;
  m(1, 1) = 1;
  auto [sqrt, rank] = psd_sqrt_and_defect(m);
  EXPECT_LT(max_abs(sqrt - m), 1e-14);
  EXPECT_EQ(rank, 2);
}

TEST(PsdSqrt, RowContractionDefect) {
  // I - T^* T for T = [0 0 1] is diag(1,1,0), rank 2 (direct arithmetic)
  ComplexMatrix t(1, 3);
  t << 0, 0, 1;
  ComplexMatrix defect = identity(3) - t.adjoint() * t;
  auto [sqrt, rank] = psd_sqrt_and_defect(defect);
  ComplexMatrix expect = ComplexMatrix::Zero(3, 3);
  expect(0, 0) = 1;
  expect(1, 1) = 1;
  EXPECT_LT(max_abs(sqrt - expect), 1e-14);
  EXPECT_EQ(rank, 2);
}

TEST(PsdSqrt, ClampsSlightlyNegativeEigenvalues) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1e-12;  // within psd_tol
  auto [sqrt, rank] = psd_sqrt_and_defect(m);
  EXPECT_EQ(rank, 1);
  EXPECT_GE(sqrt(1, 1).real(), 0.0);
}

TEST(PsdSqrt, RejectsNonHermitianAndIndefinite) {
  ComplexMatrix skew(2, 2);
  skew << 0, 1, -1, 0;
  EXPECT_THROW(psd_sqrt_and_defect(skew), NotHermitian);
  ComplexMatrix neg = -identity(2);
  EXPECT_THROW(psd_sqrt_and_defect(neg), NotPsd);
}

TEST(PsdSqrt, SquareReconstruction) {
  SampleGen gen(11);
  for (int k = 0; k < 20; ++k) {
    ComplexMatrix g = gen.gaussian_matrix(5, 3);
    ComplexMatrix m = g * g.adjoint();
    auto [sqrt, rank] = psd_sqrt_and_defect(m);
    EXPECT_LE(operator_norm(sqrt * sqrt - m), 1e-9 * (1.0 + operator_norm(m)));
    EXPECT_EQ(rank, 3);
  }
}

TEST(OrthonormalBasis, CollinearColumns) {
  ComplexMatrix m(2, 2);
  m << 1, 2, 0, 0;
  ComplexMatrix q = orthonormal_basis(m, BasisMode::Range);
  ASSERT_EQ(q.cols(), 1);
  EXPECT_LT(std::abs(q(0, 0) - Complex(1, 0)), 1e-14);
  EXPECT_LT(std::abs(q(1, 0)), 1e-14);
}

TEST(OrthonormalBasis, KernelOfRowSum) {
  ComplexMatrix m(1, 2);
  m << 1, 1;
  ComplexMatrix q = orthonormal_basis(m, BasisMode::Kernel);
  ASSERT_EQ(q.cols(), 1);
  const double r = 1.0 / std::sqrt(2.0);
  // phase convention: first significant entry real positive
  EXPECT_LT(std::abs(q(0, 0) - Complex(r, 0)), 1e-14);
  EXPECT_LT(std::abs(q(1, 0) - Complex(-r, 0)), 1e-14);
}

TEST(OrthonormalBasis, RangeAndKernelContracts) {
  SampleGen gen(5);
  Tolerances tol;
  for (int k = 0; k < 10; ++k) {
    ComplexMatrix m = gen.gaussian_matrix(6, 4) * gen.gaussian_matrix(4, 5);
    ComplexMatrix qr = orthonormal_basis(m, BasisMode::Range, tol);
    ComplexMatrix qk = orthonormal_basis(m, BasisMode::Kernel, tol);
    EXPECT_LE(operator_norm(qr.adjoint() * qr - identity(qr.cols())), tol.eq_tol);
    EXPECT_LE(operator_norm(qk.adjoint() * qk - identity(qk.cols())), tol.eq_tol);
    EXPECT_LE(operator_norm(m - qr * (qr.adjoint() * m)), tol.eq_tol * operator_norm(m));
    EXPECT_LE(operator_norm(m * qk), tol.eq_tol * operator_norm(m));
    EXPECT_EQ(qr.cols() + qk.cols(), m.cols());
  }
}

TEST(OrthonormalBasis, DeterministicForFixedInput) {
  SampleGen gen(17);
  ComplexMatrix m = gen.gaussian_matrix(5, 3);
  ComplexMatrix a = orthonormal_basis(m, BasisMode::Range);
  ComplexMatrix b = orthonormal_basis(m, BasisMode::Range);
  EXPECT_EQ(max_abs(a - b), 0.0);
}

TEST(Polar, ZeroMatrix) {
  auto [g, modulus] = polar_partial_isometry(ComplexMatrix::Zero(2, 3));
  EXPECT_EQ(max_abs(g), 0.0);
  EXPECT_EQ(g.rows(), 2);
  EXPECT_EQ(g.cols(), 3);
  EXPECT_EQ(max_abs(modulus), 0.0);
}

TEST(Polar, ScaledIdentity) {
  auto [g, modulus] = polar_partial_isometry(0.5 * identity(2));
  EXPECT_LT(max_abs(g - identity(2)), 1e-14);
  EXPECT_LT(max_abs(modulus - 0.5 * identity(2)), 1e-14);
}

TEST(Polar, ReconstructionAndKernelContracts) {
  SampleGen gen(23);
  Tolerances tol;
  for (int k = 0; k < 12; ++k) {
    ComplexMatrix t = gen.gaussian_matrix(4, 6) * gen.gaussian_matrix(6, 5);
    t /= 1.1 * operator_norm(t);
    auto [g, modulus] = polar_partial_isometry(t, tol);
    EXPECT_LE(operator_norm(g * modulus - t), tol.eq_tol);
    // g restricted to its initial space is isometric: g = g (g^* g)
    EXPECT_LE(operator_norm(g - g * (g.adjoint() * g)), tol.eq_tol);
    // Ker g^* = Ker t^*: ranks agree and g^* kills the cokernel of t
    EXPECT_EQ(numerical_rank(g, tol), numerical_rank(t, tol));
    ComplexMatrix coker = orthonormal_basis(t.adjoint(), BasisMode::Kernel, tol);
    EXPECT_LE(operator_norm(g.adjoint() * coker), tol.eq_tol);
  }
}

TEST(Polar, RejectsExpansive) {
  EXPECT_THROW(polar_partial_isometry(2.0 * identity(2)), NormExceedsOne);
}

TEST(OperatorNorm, KnownValues) {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = 0.5;
  EXPECT_NEAR(operator_norm(d), 1.0, 1e-12);
  ComplexMatrix col(2, 1);
  col << 3, 4;
  EXPECT_NEAR(operator_norm(col), 5.0, 1e-12);
}

TEST(OperatorNorm, Submultiplicative) {
  SampleGen gen(31);
  for (int k = 0; k < 25; ++k) {
    ComplexMatrix u = gen.gaussian_matrix(4, 3);
    ComplexMatrix v = gen.gaussian_matrix(3, 5);
    EXPECT_LE(operator_norm(u * v), operator_norm(u) * operator_norm(v) + 1e-12);
  }
}

TEST(ZeroDimensional, ConsistentShapes) {
  ComplexMatrix a(0, 0), b(3, 0), c(0, 4);
  EXPECT_EQ(operator_norm(a), 0.0);
  EXPECT_EQ(operator_norm(b), 0.0);
  ComplexMatrix prod = b * c;  // 3 x 4 zero
  EXPECT_EQ(prod.rows(), 3);
  EXPECT_EQ(prod.cols(), 4);
  EXPECT_EQ(max_abs(prod), 0.0);
  auto [sqrt, rank] = psd_sqrt_and_defect(a);
  EXPECT_EQ(rank, 0);
  EXPECT_EQ(orthonormal_basis(b, BasisMode::Range).cols(), 0);
  EXPECT_EQ(orthonormal_basis(c, BasisMode::Kernel).cols(), 4);
}

TEST(PivotedCholesky, ReconstructsFullAndLowRank) {
  SampleGen gen(41);
  Tolerances tol;
  for (Index r : {2, 4, 6}) {
    ComplexMatrix g = gen.gaussian_matrix(6, r);
    ComplexMatrix m = g * g.adjoint();
    ComplexMatrix l = pivoted_cholesky(m, tol);
    EXPECT_EQ(l.cols(), std::min<Index>(r, 6));
    EXPECT_LE(operator_norm(l * l.adjoint() - m), 1e-10 * (1.0 + operator_norm(m)));
  }
}

TEST(PivotedCholesky, RankMatchesGramSchmidtOracle) {
  SampleGen gen(43);
  for (int k = 0; k < 8; ++k) {
    ComplexMatrix g = gen.gaussian_matrix(7, 3);
    ComplexMatrix m = g * g.adjoint();
    ComplexMatrix l = pivoted_cholesky(m);
    EXPECT_EQ(l.cols(), oracles::rank_gram_schmidt(g, 1e-8));
  }
}

TEST(Tolerances, RejectsNonPositive) {
  Tolerances t;
  t.eq_tol = 0.0;
  EXPECT_THROW(t.validate(), std::invalid_argument);
}
