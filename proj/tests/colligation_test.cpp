#include <gtest/gtest.h>

#include <dareal/colligation.hpp>
#include <dareal/example33.hpp>
#include <dareal/numerics.hpp>
#include <dareal/sampling.hpp>

#include "oracles.hpp"
#include "test_util.hpp"

using namespace dareal;
using dareal::testing::identity;
using dareal::testing::max_abs;

TEST(BallPoint, InteriorRejectsBoundary) {
  EXPECT_THROW(BallPoint::interior({Complex(1, 0), Complex(0, 0)}),
               std::invalid_argument);
  EXPECT_NO_THROW(BallPoint::closure({Complex(1, 0), Complex(0, 0)}));
  EXPECT_THROW(BallPoint::closure({Complex(1.1, 0)}), std::invalid_argument);
}

TEST(BallPoint, InnerProduct) {
  BallPoint l = BallPoint::interior({Complex(0.5, 0), Complex(0, 0.5)});
  BallPoint z = BallPoint::interior({Complex(0, 0.5), Complex(0.5, 0)});
  // <l,z> = 0.5 * conj(0.5i) + 0.5i * conj(0.5) = -0.25i + 0.25i ... per slot
  Complex got = BallPoint::inner(l, z);
  Complex expect = Complex(0.5, 0) * std::conj(Complex(0, 0.5)) +
                   Complex(0, 0.5) * std::conj(Complex(0.5, 0));
  EXPECT_LT(std::abs(got - expect), 1e-15);
}

TEST(TransferEval, OneStepShift) {
  // d = 1, A = 0, B = 1, C = 1, D = 0 gives S(lambda) = lambda
  OperatorTuple a({ComplexMatrix::Zero(1, 1)});
  Colligation c(a, {identity(1)}, identity(1), ComplexMatrix::Zero(1, 1));
  for (double r : {0.0, 0.3, -0.7}) {
    BallPoint p = BallPoint::interior({Complex(r, 0.1)});
    EXPECT_LT(std::abs(transfer_eval(c, p)(0, 0) - Complex(r, 0.1)), 1e-15);
  }
}

TEST(TransferEval, OriginReturnsD) {
  SampleGen gen(3);
  Colligation c = dareal::testing::random_contractive_colligation(gen, 2, 3, 4, 2);
  EXPECT_EQ(max_abs(transfer_eval(c, BallPoint::origin(2)) - c.D), 0.0);
}

TEST(TransferEval, Example33AtNamedPoints) {
  Colligation u0 = example33_colligation();
  ComplexMatrix s0 = transfer_eval(u0, BallPoint::origin(2));
  ComplexMatrix d_expect = ComplexMatrix::Zero(1, 7);
  d_expect(0, 0) = std::sqrt(3.0) / 2.0;
  EXPECT_LT(max_abs(s0 - d_expect), 1e-15);

  // at (1/2, 0): [sqrt(3)/2, sqrt(15)/16, 1/32, 0, 0, 0, 0]
  BallPoint p = BallPoint::interior({Complex(0.5, 0), Complex(0, 0)});
  ComplexMatrix s = transfer_eval(u0, p);
  ComplexMatrix expect(1, 7);
  expect << std::sqrt(3.0) / 2.0, std::sqrt(15.0) / 16.0, 1.0 / 32.0, 0, 0, 0, 0;
  EXPECT_LT(max_abs(s - expect), 1e-14);
}

TEST(TransferEval, MatchesClosedFormOracle) {
  Colligation u0 = example33_colligation();
  SampleGen gen(77);
  for (const auto& p : gen.ball_points(60, 2, 0.95)) {
    ComplexMatrix oracle = oracles::closed_form_s33(p[0], p[1]);
    EXPECT_LT(max_abs(transfer_eval(u0, p) - oracle), 1e-13);
    EXPECT_LT(max_abs(transfer_eval_adjoint(u0, p) - oracle.adjoint()), 1e-13);
  }
}

TEST(TransferEval, AdjointRouteAgreesWithDirect) {
  SampleGen gen(9);
  Colligation c = dareal::testing::random_contractive_colligation(gen, 3, 2, 3, 2);
  for (const auto& p : gen.ball_points(20, 3, 0.9))
    EXPECT_LT(max_abs(transfer_eval_adjoint(c, p) - transfer_eval(c, p).adjoint()),
              1e-12);
}

TEST(TransferEval, SingularResolventOnClosurePoint) {
  // A = I (d = 1) is not contractive; at lambda -> 1 the resolvent blows up
  OperatorTuple a({identity(1)});
  Colligation c(a, {identity(1)}, identity(1), ComplexMatrix::Zero(1, 1));
  EXPECT_THROW(transfer_eval(c, BallPoint::closure({Complex(1, 0)})),
               SingularResolvent);
}

TEST(TransferEval, BoundaryPointThroughClosureConstructor) {
  // the example's transfer function is analytic past the sphere
  Colligation u0 = example33_colligation();
  BallPoint edge = BallPoint::closure({Complex(1, 0), Complex(0, 0)});
  ComplexMatrix s = transfer_eval(u0, edge);
  EXPECT_LT(max_abs(s - oracles::closed_form_s33(Complex(1, 0), Complex(0, 0))),
            1e-13);
}

TEST(Classify, Example33Coisometric) {
  ColligationClass cls = classify(example33_colligation());
  EXPECT_TRUE(cls.coisometric);
  EXPECT_TRUE(cls.contractive);
  EXPECT_FALSE(cls.isometric);
  EXPECT_FALSE(cls.unitary);
  EXPECT_LT(cls.coisometry_residual, 1e-12);
}

TEST(Classify, PairGammaThreshold) {
  EXPECT_TRUE(classify(example33_pair(0.3)).contractive_pair);
  EXPECT_FALSE(classify(example33_pair(0.4)).contractive_pair);
  // direct min-eigenvalue oracle: defect(1,1) entry = 1/4 - 2 gamma^2
  PairClass pc = classify(example33_pair(0.3));
  EXPECT_NEAR(pc.defect_min_eigenvalue, 0.25 - 2 * 0.09, 1e-12);
}

TEST(Classify, MonotoneFlags) {
  SampleGen gen(19);
  for (int k = 0; k < 10; ++k) {
    Colligation c = dareal::testing::random_coisometric_colligation(gen, 2, 2, 4, 1);
    ColligationClass cls = classify(c);
    EXPECT_TRUE(cls.coisometric);
    EXPECT_TRUE(cls.contractive);  // coisometric implies contractive
    if (cls.unitary) EXPECT_TRUE(cls.isometric && cls.coisometric);
  }
}

TEST(Classify, CoisometryResidualAssertable) {
  SampleGen gen(29);
  Colligation c = dareal::testing::random_coisometric_colligation(gen, 2, 3, 6, 2);
  ComplexMatrix u = c.as_matrix();
  EXPECT_LE(operator_norm(u * u.adjoint() - identity(u.rows())), 1e-9);
}

TEST(Classify, ContractiveTransferStaysContractive) {
  // ||S(lambda)|| <= 1 on 200 seeded points for contractive colligations
  SampleGen gen(37);
  Colligation c = dareal::testing::random_contractive_colligation(gen, 2, 3, 2, 2, 0.98);
  for (const auto& p : gen.ball_points(200, 2, 0.95))
    EXPECT_LE(operator_norm(transfer_eval(c, p)), 1.0 + 1e-9);
}

TEST(Colligation, DimensionValidation) {
  OperatorTuple a({ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(2, 2)});
  EXPECT_THROW(Colligation(a, {ComplexMatrix::Zero(2, 3)}, ComplexMatrix::Zero(1, 2),
                           ComplexMatrix::Zero(1, 3)),
               DimensionMismatch);
  EXPECT_THROW(OperatorTuple({ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(3, 3)}),
               DimensionMismatch);
  EXPECT_THROW(OutputPair(ComplexMatrix::Zero(1, 3), a), DimensionMismatch);
}
