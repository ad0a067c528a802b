#include <gtest/gtest.h>

#include <dareal/example33.hpp>
#include <dareal/numerics.hpp>
#include <dareal/realization.hpp>

#include "oracles.hpp"
#include "test_util.hpp"

using namespace dareal;
using dareal::testing::identity;
using dareal::testing::max_abs;

namespace {

SchurEvaluator row_multiplier_s() {
  return SchurEvaluator::from_function(
      [](const BallPoint& q) {
        ComplexMatrix v(1, 2);
        v << q[0], q[1];
        return v;
      },
      2, 2, 1);
}

OutputPair scalar_pair_d2(double c_value = 1.0) {
  ComplexMatrix c(1, 1);
  c << c_value;
  return OutputPair(c, OperatorTuple({ComplexMatrix::Zero(1, 1),
                                      ComplexMatrix::Zero(1, 1)}));
}

double kernel_equality_residual(const Colligation& col, const OutputPair& p,
                                int n_points, std::uint64_t seed) {
  SampleGen gen(seed);
  auto pts = gen.ball_points(n_points, p.d(), 0.9);
  KernelSpec ks = KernelSpec::schur(SchurEvaluator::from_colligation(col));
  KernelSpec kp = KernelSpec::pair(p);
  GramCertificate cert = gram_certify(ks, pts, {}, &kp);
  return cert.max_diff.value_or(1e30);
}

}  // namespace

TEST(Observability, CoefficientRecursionMatchesDefinition) {
  // c_beta = sum_j A_j^* c_{beta-e_j} holds exactly by construction
  OutputPair p = example33_pair(0.2);
  ObservabilityData data = observability_data(p);
  for (const auto& [beta, m] : data.coefficients) {
    int total = 0;
    for (int b : beta) total += b;
    if (total == 0) continue;
    ComplexMatrix expect = ComplexMatrix::Zero(m.cols(), m.rows());  // X -> Y adjoint
    for (Index j = 0; j < p.d(); ++j) {
      if (beta[static_cast<size_t>(j)] == 0) continue;
      MultiIndexKey prev = beta;
      --prev[static_cast<size_t>(j)];
      auto it = data.coefficients.find(prev);
      ASSERT_NE(it, data.coefficients.end());
      expect += p.A.blocks[static_cast<size_t>(j)].adjoint() * it->second.adjoint();
    }
    EXPECT_EQ(max_abs(m.adjoint() - expect), 0.0);
  }
}

TEST(Observability, Example33PairsObservable) {
  for (double g : {0.0, 0.1, 0.3})
    EXPECT_TRUE(observability_data(example33_pair(g)).observable);
}

TEST(Observability, ZeroOutputNotObservable) {
  OperatorTuple a({0.3 * identity(2), 0.3 * identity(2)});
  OutputPair p(ComplexMatrix::Zero(1, 2), a);
  ObservabilityData data = observability_data(p);
  EXPECT_FALSE(data.observable);
  EXPECT_EQ(data.rank, 0);
}

TEST(CholeskyRealize, OneStepShift) {
  // d = 1, A = 0, C = 1, dimU = 1: S(lambda) = lambda up to phase
  ComplexMatrix c(1, 1);
  c << 1;
  OutputPair p(c, OperatorTuple({ComplexMatrix::Zero(1, 1)}));
  Colligation col = realize_from_pair_cholesky(p, 1);
  EXPECT_LE(classify(col).coisometry_residual, 1e-12);
  BallPoint z = BallPoint::interior({Complex(0.3, 0.4)});
  EXPECT_NEAR(std::abs(transfer_eval(col, z)(0, 0)), std::abs(Complex(0.3, 0.4)),
              1e-12);
  EXPECT_LT(max_abs(col.D), 1e-12);
}

TEST(CholeskyRealize, RowMultiplierFromScalarPair) {
  // d = 2, A = 0, C = 1, dimU = 2 (defect diag(1,1,0)): K_S == K_{C,A} == 1
  Colligation col = realize_from_pair_cholesky(scalar_pair_d2(), 2);
  EXPECT_LE(classify(col).coisometry_residual, 1e-12);
  SampleGen gen(5);
  auto pts = gen.ball_points(20, 2, 0.9);
  KernelSpec ks = KernelSpec::schur(SchurEvaluator::from_colligation(col));
  for (const auto& l : pts)
    for (const auto& z : pts)
      EXPECT_LT(std::abs(eval_kernel(ks, l, z)(0, 0) - Complex(1, 0)), 1e-12);
}

TEST(CholeskyRealize, Example33PairKernelEquality) {
  OutputPair p = example33_pair(0.0);
  Colligation col = realize_from_pair_cholesky(p, 7);
  EXPECT_LE(classify(col).coisometry_residual, 1e-11);
  EXPECT_LE(kernel_equality_residual(col, p, 25, 7), 1e-9);
  // consistency with the built-in colligation: same kernel, not same matrix
  EXPECT_LE(kernel_equality_residual(example33_colligation(), p, 25, 7), 1e-10);
}

TEST(CholeskyRealize, DimUTooSmallAndNotContractive) {
  EXPECT_THROW(realize_from_pair_cholesky(scalar_pair_d2(), 1), DimUTooSmall);
  EXPECT_THROW(realize_from_pair_cholesky(example33_pair(0.4), 9),
               NotContractivePair);
}

TEST(CholeskyRealize, RandomPairsCoisometricWithKernelEquality) {
  SampleGen gen(11);
  for (int k = 0; k < 30; ++k) {
    Index d = 1 + static_cast<Index>(gen.next_u64() % 3);
    Index nx = 2 + static_cast<Index>(gen.next_u64() % 5);
    Index ny = 1 + static_cast<Index>(gen.next_u64() % 3);
    double scale = 0.5 + 0.5 * gen.uniform();
    OutputPair p = dareal::testing::random_contractive_pair(gen, d, nx, ny, scale);
    ComplexMatrix stacked(d * nx + ny, nx);
    stacked << p.A.stacked(), p.C;
    ComplexMatrix defect =
        identity(d * nx + ny) - stacked * stacked.adjoint();
    Index rank = numerical_rank(defect);
    Colligation col = realize_from_pair_cholesky(p, rank);
    EXPECT_LE(classify(col).coisometry_residual, 1e-10);
    EXPECT_LE(kernel_equality_residual(col, p, 10, 100 + k), 1e-8);
  }
}

TEST(RealizeWithPair, Example33Gamma02) {
  SchurEvaluator s = example33_schur();
  OutputPair pair = example33_pair(0.2);
  RealizationResult r = realize_with_pair(s, pair);
  SampleGen gen(13);
  double err = 0.0;
  for (const auto& p : gen.ball_points(50, 2, 0.9))
    err = std::max(err, max_abs(transfer_eval(r.colligation, p) - s(p)));
  EXPECT_LE(err, 1e-9);
  // weakly coisometric: U^* isometric on D (+) Y
  ComplexMatrix ustar = r.colligation.as_matrix().adjoint();
  ComplexMatrix embed(7, r.blocks.dim_d() + 1);
  embed << r.blocks.domain.basis, ComplexMatrix::Zero(6, 1),
      ComplexMatrix::Zero(1, r.blocks.dim_d()), identity(1);
  ComplexMatrix ue = ustar * embed;
  EXPECT_LE(operator_norm(ue.adjoint() * ue - identity(ue.cols())), 1e-9);
  // D block of the colligation is S(0)
  EXPECT_LT(max_abs(r.colligation.D - s.at_origin()), 1e-14);
}

TEST(RealizeWithPair, RowMultiplierRecoversPermutation) {
  RealizationResult r = realize_with_pair(row_multiplier_s(), scalar_pair_d2());
  ComplexMatrix expect(3, 3);
  expect << 0, 1, 0, 0, 0, 1, 1, 0, 0;
  EXPECT_LT(max_abs(r.colligation.as_matrix().cwiseAbs() - expect), 1e-10);
  EXPECT_TRUE(r.family.unique);
  EXPECT_TRUE(r.family.unitary_achievable);
}

TEST(RealizeWithPair, KernelMismatchRejected) {
  EXPECT_THROW(realize_with_pair(row_multiplier_s(), scalar_pair_d2(0.5)),
               KernelMismatch);
}

TEST(RealizeWithPair, D1CollapseSingletonFamily) {
  SampleGen gen(17);
  for (int k = 0; k < 10; ++k) {
    OutputPair p = dareal::testing::random_contractive_pair(gen, 1, 3, 1, 0.9);
    ComplexMatrix stacked(4, 3);
    stacked << p.A.stacked(), p.C;
    Index rank = numerical_rank(identity(4) - stacked * stacked.adjoint());
    Colligation base = realize_from_pair_cholesky(p, rank);
    SchurEvaluator s = SchurEvaluator::from_colligation(base);
    RealizationResult r = realize_with_pair(s, p);
    EXPECT_EQ(r.blocks.dim_dperp(), 0);
    EXPECT_TRUE(r.family.unique);
    EXPECT_EQ(r.family.parameter_dimension, 0);
    // B = C_V^* expanded through the basis of D = X
    ComplexMatrix b_expected =
        r.blocks.domain.basis * r.blocks.c_v().adjoint();
    EXPECT_LE(max_abs(r.completion.b_stacked(3, 1) - b_expected), 1e-10);
    // and the realization is coisometric outright
    EXPECT_LE(classify(r.colligation).coisometry_residual, 1e-9);
  }
}

TEST(Representers, RowMultiplierMinimal) {
  OutputPair p = scalar_pair_d2();
  RepresenterData rep = enumerate_representers(p, 2);
  EXPECT_EQ(rep.minimal_dim_u, 2);
  SampleGen gen(19);
  for (const auto& z : gen.ball_points(20, 2, 0.9)) {
    ComplexMatrix expect(1, 2);
    expect << z[0], z[1];
    EXPECT_LT(max_abs(rep.schur(z) - expect), 1e-12);
  }
}

TEST(Representers, DimUTooSmall) {
  EXPECT_THROW(enumerate_representers(scalar_pair_d2(), 1), DimUTooSmall);
}

TEST(Representers, KernelEqualityByConstruction) {
  OutputPair p = example33_pair(0.1);
  RepresenterData rep = enumerate_representers(p, 6);
  SampleGen gen(23);
  auto pts = gen.ball_points(30, 2, 0.9);
  KernelSpec ks = KernelSpec::schur(rep.schur);
  KernelSpec kp = KernelSpec::pair(p);
  GramCertificate cert = gram_certify(ks, pts, {}, &kp);
  EXPECT_LE(*cert.max_diff, 1e-10);
}

TEST(Representers, AdjointFormulaCrossValidates) {
  // S(zeta)^* = G (I - T^*T)^{1/2} [coords of generator; I] pointwise
  OutputPair p = example33_pair(0.1);
  RepresenterData rep = enumerate_representers(p, 6);
  SampleGen gen(29);
  for (const auto& z : gen.ball_points(15, 2, 0.9)) {
    ComplexMatrix gen_coords =
        rep.domain.space.basis.adjoint() *
        (z_row(z, p.dim_x()).adjoint() * p.section_state(z));
    ComplexMatrix col(rep.t.cols(), p.dim_y());
    col << gen_coords, identity(p.dim_y());
    ComplexMatrix adjoint_route = rep.g * rep.defect * col;
    EXPECT_LT(max_abs(rep.schur(z).adjoint() - adjoint_route), 1e-11);
  }
}

TEST(Representers, MinimalPairRelatedByConstantUnitary) {
  OutputPair p = scalar_pair_d2();
  RepresenterData rep1 = enumerate_representers(p, 2);
  // second isometry: a seeded unitary rotation of the embedding
  SampleGen ugen(311);
  ComplexMatrix raw = ugen.gaussian_matrix(2, 2);
  Eigen::JacobiSVD<ComplexMatrix> usvd(raw,
                                       Eigen::ComputeFullU | Eigen::ComputeFullV);
  ComplexMatrix g2 = usvd.matrixU() * usvd.matrixV().adjoint();
  RepresenterData rep2 = enumerate_representers(p, 2, g2);

  // solve S1(z) = S2(z) W from samples, then check unitarity
  SampleGen gen(31);
  auto pts = gen.ball_points(25, 2, 0.9);
  ComplexMatrix lhs(static_cast<Index>(pts.size()), 2);
  ComplexMatrix rhs(static_cast<Index>(pts.size()), 2);
  for (size_t i = 0; i < pts.size(); ++i) {
    lhs.row(static_cast<Index>(i)) = rep2.schur(pts[i]).row(0);
    rhs.row(static_cast<Index>(i)) = rep1.schur(pts[i]).row(0);
  }
  ComplexMatrix w = lstsq(lhs, rhs);
  EXPECT_LE(operator_norm(lhs * w - rhs), 1e-9);
  EXPECT_LE(operator_norm(w.adjoint() * w - identity(2)), 1e-9);
}

TEST(Gleason, ShiftIdentityAndContractivity) {
  GleasonReport r = gleason_check(example33_pair(0.0));
  EXPECT_LE(r.shift_identity_residual, 1e-12);
  EXPECT_TRUE(r.contractive_inequality);
  EXPECT_LE(r.section_match_residual, 1e-10);
  EXPECT_TRUE(r.pass);

  EXPECT_TRUE(gleason_check(example33_pair(0.3)).contractive_inequality);
  EXPECT_FALSE(gleason_check(example33_pair(0.5)).contractive_inequality);
}

TEST(Gleason, ColligationRouteUsesItsKernel) {
  GleasonReport r = gleason_check(example33_colligation());
  EXPECT_LE(r.shift_identity_residual, 1e-12);
  EXPECT_LE(r.section_match_residual, 1e-10);
  EXPECT_TRUE(r.pass);
}

TEST(Equivalence, GammaGridStrict) {
  const double grid[] = {0.0, 0.1, 0.2, 0.3};
  for (double g1 : grid)
    for (double g2 : grid) {
      EquivalenceReport r = observability_and_equivalence(example33_pair(g1),
                                                          example33_pair(g2));
      EXPECT_TRUE(r.observable1);
      EXPECT_TRUE(r.observable2);
      EXPECT_EQ(r.equivalent, g1 == g2) << "g1=" << g1 << " g2=" << g2;
      if (r.equivalent) {
        ASSERT_TRUE(r.witness.has_value());
        EXPECT_LE(operator_norm(*r.witness - identity(3)), 1e-9);
      }
    }
}

TEST(Equivalence, UnitaryConjugationDetected) {
  // rotate a pair by a fixed unitary; the witness must be recovered
  SampleGen gen(37);
  OutputPair p1 = dareal::testing::random_contractive_pair(gen, 2, 3, 1, 0.9);
  ComplexMatrix raw = gen.gaussian_matrix(3, 3);
  Eigen::JacobiSVD<ComplexMatrix> svd(raw, Eigen::ComputeFullU | Eigen::ComputeFullV);
  ComplexMatrix u = svd.matrixU() * svd.matrixV().adjoint();
  std::vector<ComplexMatrix> a2;
  for (const auto& a : p1.A.blocks) a2.push_back(u * a * u.adjoint());
  OutputPair p2(p1.C * u.adjoint(), OperatorTuple(a2));
  EquivalenceReport r = observability_and_equivalence(p1, p2);
  EXPECT_TRUE(r.equivalent);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_LE(operator_norm(*r.witness - u), 1e-8);
}

TEST(Equivalence, ZeroOutputNotObservable) {
  OperatorTuple a({0.5 * identity(2), 0.3 * identity(2)});
  OutputPair p(ComplexMatrix::Zero(1, 2), a);
  EquivalenceReport r = observability_and_equivalence(p, p);
  EXPECT_FALSE(r.observable1);
  EXPECT_FALSE(r.observable2);
}

TEST(FunctionalModel, RealizationsOfObservablePairsAreObservable) {
  SchurEvaluator s = example33_schur();
  for (double g : {0.0, 0.2}) {
    RealizationResult r = realize_with_pair(s, example33_pair(g));
    EXPECT_TRUE(observability_data(r.colligation.output_pair()).observable);
  }
}

TEST(Example33Suite, AllChecksPass) {
  Report report = example33_suite();
  for (const auto& check : report.checks)
    EXPECT_NE(check.status, CheckRecord::Status::Fail)
        << check.name << " residual " << check.residual << " " << check.details;
  EXPECT_TRUE(report.overall_pass());
  EXPECT_GE(report.checks.size(), 12u);
}
