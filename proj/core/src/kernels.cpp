#include "dareal/kernels.hpp"

#include <cmath>

#include "dareal/numerics.hpp"
#include "parallel_for.hpp"

namespace dareal {

namespace {
constexpr double kDenominatorFloor = 1e-14;

Complex szego_denominator(const BallPoint& lambda, const BallPoint& zeta) {
  Complex den = Complex(1, 0) - BallPoint::inner(lambda, zeta);
  if (std::abs(den) < kDenominatorFloor)
    throw SingularDenominator("1 - <lambda,zeta> vanishes");
  return den;
}
}  // namespace

SchurEvaluator SchurEvaluator::from_colligation(Colligation c) {
  SchurEvaluator s;
  auto shared = std::make_shared<const Colligation>(std::move(c));
  s.colligation_ = shared;
  s.d_ = shared->d();
  s.dim_u_ = shared->dim_u();
  s.dim_y_ = shared->dim_y();
  s.eval_ = [shared](const BallPoint& p) { return transfer_eval(*shared, p); };
  s.adjoint_eval_ = [shared](const BallPoint& p) {
    return transfer_eval_adjoint(*shared, p);
  };
  s.s0_ = s.eval_(BallPoint::origin(s.d_));
  return s;
}

SchurEvaluator SchurEvaluator::from_function(EvalFn fn, Index d, Index dim_u,
                                             Index dim_y) {
  SchurEvaluator s;
  s.eval_ = std::move(fn);
  s.d_ = d;
  s.dim_u_ = dim_u;
  s.dim_y_ = dim_y;
  s.s0_ = s.eval_(BallPoint::origin(d));
  if (s.s0_.rows() != dim_y || s.s0_.cols() != dim_u)
    throw DimensionMismatch("SchurEvaluator: function value shape != dimY x dimU");
  return s;
}

SchurEvaluator SchurEvaluator::right_multiplied(const ComplexMatrix& w) const {
  if (w.rows() != dim_u_)
    throw DimensionMismatch("SchurEvaluator::right_multiplied: factor rows != dimU");
  EvalFn base = eval_;
  ComplexMatrix wc = w;
  return from_function(
      [base, wc](const BallPoint& p) { return ComplexMatrix(base(p) * wc); },
      d_, w.cols(), dim_y_);
}

ComplexMatrix SchurEvaluator::operator()(const BallPoint& lambda) const {
  if (lambda.dim() != d_)
    throw DimensionMismatch("SchurEvaluator: point dimension != d");
  return eval_(lambda);
}

ComplexMatrix SchurEvaluator::adjoint_at(const BallPoint& zeta) const {
  if (adjoint_eval_) return adjoint_eval_(zeta);
  return (*this)(zeta).adjoint();
}

KernelSpec KernelSpec::szego(Index d) {
  KernelSpec k;
  k.d_ = d;
  k.block_ = 1;
  return k;
}

KernelSpec KernelSpec::schur(SchurEvaluator s) {
  KernelSpec k;
  k.d_ = s.d();
  k.block_ = s.dim_y();
  k.s_ = std::move(s);
  return k;
}

KernelSpec KernelSpec::pair(OutputPair p) {
  KernelSpec k;
  k.d_ = p.d();
  k.block_ = p.dim_y();
  k.p_ = std::move(p);
  return k;
}

ComplexMatrix KernelSpec::eval(const BallPoint& lambda, const BallPoint& zeta) const {
  if (lambda.dim() != d_ || zeta.dim() != d_)
    throw DimensionMismatch("KernelSpec: point dimension != d");
  if (p_) {
    // C (I - Z(lambda) A)^{-1} (I - A^* Z(zeta)^*)^{-1} C^*
    ComplexMatrix section = p_->section_state(zeta);
    return p_->observe(lambda, section);
  }
  Complex den = szego_denominator(lambda, zeta);
  if (s_) {
    ComplexMatrix num = ComplexMatrix::Identity(block_, block_) -
                        (*s_)(lambda)*s_->adjoint_at(zeta);
    return num / den;
  }
  return ComplexMatrix::Constant(1, 1, Complex(1, 0) / den);
}

ComplexMatrix eval_kernel(const KernelSpec& k, const BallPoint& lambda,
                          const BallPoint& zeta) {
  return k.eval(lambda, zeta);
}

KernelSample sample_kernel(const KernelSpec& k, const std::vector<BallPoint>& points,
                           int threads) {
  const Index n = static_cast<Index>(points.size());
  const Index bs = k.block_size();
  KernelSample sample;
  sample.points = points;
  sample.block = bs;
  sample.gram.resize(n * bs, n * bs);

  // upper triangle evaluated, lower mirrored; diagonal re-Hermitianized
  std::vector<std::pair<Index, Index>> work;
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) work.emplace_back(i, j);
  ComplexMatrix& g = sample.gram;
  detail::parallel_for(static_cast<long>(work.size()), threads, [&](long w) {
    auto [i, j] = work[static_cast<size_t>(w)];
    ComplexMatrix kij = k.eval(points[static_cast<size_t>(i)],
                               points[static_cast<size_t>(j)]);
    g.block(i * bs, j * bs, bs, bs) = kij;
    if (i != j) g.block(j * bs, i * bs, bs, bs) = kij.adjoint();
  });
  for (Index i = 0; i < n; ++i) {
    auto blk = g.block(i * bs, i * bs, bs, bs);
    blk = (blk + blk.adjoint().eval()) / 2.0;
  }
  return sample;
}

double defect_identity_residual(const Colligation& c, const BallPoint& lambda,
                                const BallPoint& zeta, const Tolerances& tol) {
  tol.validate();
  ComplexMatrix u = c.as_matrix();
  if (operator_norm(u) > 1.0 + tol.eq_tol)
    throw NotContractive("defect_identity_residual requires a contractive colligation");

  const Index nx = c.dim_x(), ny = c.dim_y(), d = c.d();
  Complex den = szego_denominator(lambda, zeta);

  SchurEvaluator s = SchurEvaluator::from_colligation(c);
  ComplexMatrix lhs =
      (ComplexMatrix::Identity(ny, ny) - s(lambda) * s.adjoint_at(zeta)) / den;

  OutputPair p = c.output_pair();
  ComplexMatrix pair_term = p.observe(lambda, p.section_state(zeta));

  // row [C (I - Z(lambda)A)^{-1} Z(lambda), I] and its zeta-side column
  ComplexMatrix row(ny, d * nx + ny);
  row << resolvent_row(p, lambda) * z_row(lambda, nx),
      ComplexMatrix::Identity(ny, ny);
  ComplexMatrix col(d * nx + ny, ny);
  col << z_row(zeta, nx).adjoint() * p.section_state(zeta),
      ComplexMatrix::Identity(ny, ny);

  ComplexMatrix defect =
      ComplexMatrix::Identity(u.rows(), u.rows()) - u * u.adjoint();
  ComplexMatrix rhs = pair_term + row * defect * col / den;
  return operator_norm(lhs - rhs);
}

GramCertificate gram_certify(const KernelSpec& k1, const std::vector<BallPoint>& points,
                             const Tolerances& tol, const KernelSpec* k2, int threads) {
  tol.validate();
  if (points.empty()) throw std::invalid_argument("gram_certify: need >= 1 point");
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j)
      if (points[i].same_coordinates(points[j]))
        throw DuplicatePoints("gram_certify: points " + std::to_string(i) + " and " +
                              std::to_string(j));

  KernelSample sample = sample_kernel(k1, points, threads);
  GramCertificate cert;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sample.gram);
  cert.min_eigenvalue = es.eigenvalues()(0);
  cert.psd = cert.min_eigenvalue >= -tol.psd_tol;

  if (k2) {
    if (k2->block_size() != k1.block_size())
      throw DimensionMismatch("gram_certify: kernel block sizes differ");
    double diff = 0.0;
    for (const auto& l : points)
      for (const auto& z : points)
        diff = std::max(diff, (k1.eval(l, z) - k2->eval(l, z)).cwiseAbs().maxCoeff());
    cert.max_diff = diff;
  }
  return cert;
}

}  // namespace dareal
