#include "dareal/example33.hpp"

#include <cmath>

namespace dareal {

namespace {
const double kSqrt3 = std::sqrt(3.0);
const double kSqrt15 = std::sqrt(15.0);
const double kSqrt6 = std::sqrt(6.0);
const double kSqrt2 = std::sqrt(2.0);
}  // namespace

OutputPair example33_pair(double gamma) {
  ComplexMatrix c(1, 3);
  c << 0.5, 0, 0;
  ComplexMatrix a1(3, 3), a2(3, 3);
  a1 << 0, 0.25, 0,
        0, 0, 0,
        0.5 + gamma, 0, 0;
  a2 << 0, 0, 0.25,
        0.5 - gamma, 0, 0,
        0, 0, 0;
  return OutputPair(c, OperatorTuple({a1, a2}));
}

Colligation example33_colligation() {
  OutputPair p = example33_pair(0.0);
  ComplexMatrix b1 = ComplexMatrix::Zero(3, 7);
  b1(0, 1) = kSqrt15 / 4.0;
  b1(1, 2) = 1.0;
  b1(2, 0) = -1.0 / (2.0 * kSqrt3);
  b1(2, 3) = std::sqrt(2.0 / 3.0);
  ComplexMatrix b2 = ComplexMatrix::Zero(3, 7);
  b2(0, 4) = kSqrt15 / 4.0;
  b2(1, 0) = -1.0 / (2.0 * kSqrt3);
  b2(1, 3) = -1.0 / kSqrt6;
  b2(1, 5) = 1.0 / kSqrt2;
  b2(2, 6) = 1.0;
  ComplexMatrix d = ComplexMatrix::Zero(1, 7);
  d(0, 0) = kSqrt3 / 2.0;
  return Colligation(p.A, {b1, b2}, p.C, d);
}

ComplexMatrix example33_closed_form(const BallPoint& lambda) {
  if (lambda.dim() != 2)
    throw DimensionMismatch("example33_closed_form expects a 2-variable point");
  const Complex l1 = lambda[0], l2 = lambda[1];
  const Complex den = 2.0 * (4.0 - l1 * l2);
  ComplexMatrix s(1, 7);
  s << (12.0 - 4.0 * l1 * l2) / kSqrt3, kSqrt15 * l1, l1 * l1, l1 * l2 / kSqrt6,
      kSqrt15 * l2, l1 * l2 / kSqrt2, l2 * l2;
  return s / den;
}

ComplexMatrix example33_resolvent_row(const BallPoint& lambda) {
  if (lambda.dim() != 2)
    throw DimensionMismatch("example33_resolvent_row expects a 2-variable point");
  const Complex l1 = lambda[0], l2 = lambda[1];
  const Complex den = 4.0 - l1 * l2;
  ComplexMatrix r(1, 3);
  r << 4.0 / den, l1 / den, l2 / den;
  return r / 2.0;
}

SchurEvaluator example33_schur() {
  return SchurEvaluator::from_function(
      [](const BallPoint& p) { return example33_closed_form(p); }, 2, 7, 1);
}

double example33_gamma_threshold() { return 1.0 / (2.0 * kSqrt2); }

}  // namespace dareal
