#include "dareal/colligation.hpp"

#include <cmath>

#include "dareal/numerics.hpp"

namespace dareal {

namespace {

void check_finite_coords(const std::vector<Complex>& coords) {
  for (const auto& z : coords)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument("BallPoint: non-finite coordinate");
}

double norm_sq(const std::vector<Complex>& coords) {
  double s = 0.0;
  for (const auto& z : coords) s += std::norm(z);
  return s;
}

// Solves (I - Z(lambda) A) y = rhs, raising SingularResolvent on breakdown.
ComplexMatrix resolvent_solve(const OperatorTuple& a, const BallPoint& lambda,
                              const ComplexMatrix& rhs) {
  ComplexMatrix m = ComplexMatrix::Identity(a.dim_x(), a.dim_x()) -
                    a.z_contraction(lambda);
  Eigen::FullPivLU<ComplexMatrix> lu(m);
  if (!lu.isInvertible())
    throw SingularResolvent("I - Z(lambda) A at the requested point");
  return lu.solve(rhs);
}

ComplexMatrix resolvent_solve_adjoint(const OperatorTuple& a,
                                      const BallPoint& zeta,
                                      const ComplexMatrix& rhs) {
  ComplexMatrix m = ComplexMatrix::Identity(a.dim_x(), a.dim_x()) -
                    a.z_contraction_adjoint(zeta);
  Eigen::FullPivLU<ComplexMatrix> lu(m);
  if (!lu.isInvertible())
    throw SingularResolvent("I - A^* Z(zeta)^* at the requested point");
  return lu.solve(rhs);
}

}  // namespace

BallPoint BallPoint::interior(std::vector<Complex> coords) {
  check_finite_coords(coords);
  if (norm_sq(coords) >= 1.0)
    throw std::invalid_argument("BallPoint::interior: <lambda,lambda> must be < 1");
  return BallPoint(std::move(coords));
}

BallPoint BallPoint::closure(std::vector<Complex> coords) {
  check_finite_coords(coords);
  if (norm_sq(coords) > 1.0 + 1e-12)
    throw std::invalid_argument("BallPoint::closure: <lambda,lambda> must be <= 1");
  return BallPoint(std::move(coords));
}

BallPoint BallPoint::origin(Index d) {
  return BallPoint(std::vector<Complex>(static_cast<size_t>(d), Complex(0, 0)));
}

double BallPoint::norm() const { return std::sqrt(norm_sq(coords_)); }

Complex BallPoint::inner(const BallPoint& lambda, const BallPoint& zeta) {
  if (lambda.dim() != zeta.dim())
    throw DimensionMismatch("BallPoint::inner: dimensions differ");
  Complex s(0, 0);
  for (size_t j = 0; j < lambda.coords_.size(); ++j)
    s += lambda.coords_[j] * std::conj(zeta.coords_[j]);
  return s;
}

bool BallPoint::same_coordinates(const BallPoint& other) const {
  if (dim() != other.dim()) return false;
  for (size_t j = 0; j < coords_.size(); ++j)
    if (coords_[j] != other.coords_[j]) return false;
  return true;
}

OperatorTuple::OperatorTuple(std::vector<ComplexMatrix> b) : blocks(std::move(b)) {
  for (const auto& m : blocks) {
    if (m.rows() != m.cols() || m.rows() != dim_x())
      throw DimensionMismatch("OperatorTuple: blocks must be square of equal size");
    if (!all_finite(m)) throw std::invalid_argument("OperatorTuple: non-finite entry");
  }
}

ComplexMatrix OperatorTuple::stacked() const {
  ComplexMatrix s(d() * dim_x(), dim_x());
  for (Index j = 0; j < d(); ++j)
    s.middleRows(j * dim_x(), dim_x()) = blocks[static_cast<size_t>(j)];
  return s;
}

ComplexMatrix OperatorTuple::adjoint_row() const {
  ComplexMatrix r(dim_x(), d() * dim_x());
  for (Index j = 0; j < d(); ++j)
    r.middleCols(j * dim_x(), dim_x()) = blocks[static_cast<size_t>(j)].adjoint();
  return r;
}

ComplexMatrix OperatorTuple::z_contraction(const BallPoint& lambda) const {
  if (lambda.dim() != d())
    throw DimensionMismatch("OperatorTuple: point dimension != d");
  ComplexMatrix m = ComplexMatrix::Zero(dim_x(), dim_x());
  for (Index j = 0; j < d(); ++j) m += lambda[j] * blocks[static_cast<size_t>(j)];
  return m;
}

ComplexMatrix OperatorTuple::z_contraction_adjoint(const BallPoint& zeta) const {
  if (zeta.dim() != d())
    throw DimensionMismatch("OperatorTuple: point dimension != d");
  ComplexMatrix m = ComplexMatrix::Zero(dim_x(), dim_x());
  for (Index j = 0; j < d(); ++j)
    m += std::conj(zeta[j]) * blocks[static_cast<size_t>(j)].adjoint();
  return m;
}

OutputPair::OutputPair(ComplexMatrix c, OperatorTuple a)
    : C(std::move(c)), A(std::move(a)) {
  if (C.cols() != A.dim_x())
    throw DimensionMismatch("OutputPair: C column count != state dimension");
  if (!all_finite(C)) throw std::invalid_argument("OutputPair: non-finite entry in C");
}

ComplexMatrix OutputPair::contractivity_defect() const {
  ComplexMatrix m = ComplexMatrix::Identity(dim_x(), dim_x()) - C.adjoint() * C;
  for (const auto& a : A.blocks) m -= a.adjoint() * a;
  return (m + ComplexMatrix(m.adjoint())) / 2.0;
}

ComplexMatrix OutputPair::section_state(const BallPoint& zeta) const {
  return resolvent_solve_adjoint(A, zeta, C.adjoint());
}

ComplexMatrix OutputPair::observe(const BallPoint& lambda,
                                  const ComplexMatrix& x) const {
  return C * resolvent_solve(A, lambda, x);
}

Colligation::Colligation(OperatorTuple a, std::vector<ComplexMatrix> b,
                         ComplexMatrix c, ComplexMatrix d_)
    : A(std::move(a)), B(std::move(b)), C(std::move(c)), D(std::move(d_)) {
  if (static_cast<Index>(B.size()) != A.d())
    throw DimensionMismatch("Colligation: B must have d blocks");
  for (const auto& bj : B) {
    if (bj.rows() != A.dim_x() || bj.cols() != D.cols())
      throw DimensionMismatch("Colligation: B block shape mismatch");
    if (!all_finite(bj)) throw std::invalid_argument("Colligation: non-finite entry in B");
  }
  if (C.cols() != A.dim_x() || C.rows() != D.rows())
    throw DimensionMismatch("Colligation: C/D shape mismatch");
  if (!all_finite(C) || !all_finite(D))
    throw std::invalid_argument("Colligation: non-finite entry");
}

ComplexMatrix Colligation::as_matrix() const {
  ComplexMatrix u(d() * dim_x() + dim_y(), dim_x() + dim_u());
  for (Index j = 0; j < d(); ++j) {
    u.block(j * dim_x(), 0, dim_x(), dim_x()) = A.blocks[static_cast<size_t>(j)];
    u.block(j * dim_x(), dim_x(), dim_x(), dim_u()) = B[static_cast<size_t>(j)];
  }
  u.block(d() * dim_x(), 0, dim_y(), dim_x()) = C;
  u.block(d() * dim_x(), dim_x(), dim_y(), dim_u()) = D;
  return u;
}

ComplexMatrix Colligation::z_contraction_b(const BallPoint& lambda) const {
  if (lambda.dim() != d())
    throw DimensionMismatch("Colligation: point dimension != d");
  ComplexMatrix m = ComplexMatrix::Zero(dim_x(), dim_u());
  for (Index j = 0; j < d(); ++j) m += lambda[j] * B[static_cast<size_t>(j)];
  return m;
}

ComplexMatrix Colligation::b_stacked() const {
  ComplexMatrix s(d() * dim_x(), dim_u());
  for (Index j = 0; j < d(); ++j)
    s.middleRows(j * dim_x(), dim_x()) = B[static_cast<size_t>(j)];
  return s;
}

ComplexMatrix transfer_eval(const Colligation& c, const BallPoint& lambda) {
  return c.D + c.C * resolvent_solve(c.A, lambda, c.z_contraction_b(lambda));
}

ComplexMatrix transfer_eval_adjoint(const Colligation& c, const BallPoint& zeta) {
  ComplexMatrix section = resolvent_solve_adjoint(c.A, zeta, c.C.adjoint());
  ComplexMatrix zb = c.z_contraction_b(zeta);
  return c.D.adjoint() + zb.adjoint() * section;
}

ComplexMatrix resolvent_row(const OutputPair& p, const BallPoint& lambda) {
  return p.observe(lambda, ComplexMatrix::Identity(p.dim_x(), p.dim_x()));
}

ComplexMatrix z_row(const BallPoint& lambda, Index dim_x) {
  ComplexMatrix z(dim_x, lambda.dim() * dim_x);
  for (Index j = 0; j < lambda.dim(); ++j)
    z.middleCols(j * dim_x, dim_x) =
        lambda[j] * ComplexMatrix::Identity(dim_x, dim_x);
  return z;
}

ColligationClass classify(const Colligation& c, const Tolerances& tol) {
  tol.validate();
  ComplexMatrix u = c.as_matrix();
  ColligationClass r;
  r.norm_excess = std::max(0.0, operator_norm(u) - 1.0);
  r.isometry_residual =
      operator_norm(u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols()));
  r.coisometry_residual =
      operator_norm(u * u.adjoint() - ComplexMatrix::Identity(u.rows(), u.rows()));
  r.contractive = r.norm_excess <= tol.eq_tol;
  r.isometric = r.isometry_residual <= tol.eq_tol;
  r.coisometric = r.coisometry_residual <= tol.eq_tol;
  r.unitary = r.isometric && r.coisometric;
  return r;
}

PairClass classify(const OutputPair& p, const Tolerances& tol) {
  tol.validate();
  PairClass r;
  ComplexMatrix defect = p.contractivity_defect();
  if (defect.rows() == 0) {
    r.contractive_pair = true;
    r.isometric_pair = true;
    return r;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(defect);
  r.defect_min_eigenvalue = es.eigenvalues()(0);
  r.defect_norm = es.eigenvalues().cwiseAbs().maxCoeff();
  r.contractive_pair = r.defect_min_eigenvalue >= -tol.psd_tol;
  r.isometric_pair = r.defect_norm <= tol.psd_tol;
  return r;
}

}  // namespace dareal
