#include "dareal/overlap.hpp"

#include <cmath>

#include "dareal/numerics.hpp"
#include "dareal/sampling.hpp"
#include "parallel_for.hpp"

namespace dareal {

namespace {

// Range-restricted coordinates of a PSD Gram: keep eigenpairs above
// rank_tol * max, return (V, sqrt(lambda), 1/sqrt(lambda)).
struct GramCoords {
  ComplexMatrix vectors;        // n x r
  Eigen::VectorXd root;         // sqrt of kept eigenvalues
  Eigen::VectorXd inv_root;
};

GramCoords gram_coords(const ComplexMatrix& gram, const Tolerances& tol) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
      (gram + ComplexMatrix(gram.adjoint())) / 2.0);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  const double emax = ev.size() > 0 ? ev.maxCoeff() : 0.0;
  std::vector<Index> keep;
  for (Index i = 0; i < ev.size(); ++i)
    if (ev(i) > tol.rank_tol * emax) keep.push_back(i);

  GramCoords c;
  c.vectors.resize(gram.rows(), static_cast<Index>(keep.size()));
  c.root.resize(static_cast<Index>(keep.size()));
  c.inv_root.resize(static_cast<Index>(keep.size()));
  for (size_t i = 0; i < keep.size(); ++i) {
    c.vectors.col(static_cast<Index>(i)) = es.eigenvectors().col(keep[i]);
    c.root(static_cast<Index>(i)) = std::sqrt(ev(keep[i]));
    c.inv_root(static_cast<Index>(i)) = 1.0 / c.root(static_cast<Index>(i));
  }
  return c;
}

}  // namespace

ComplexMatrix pushforward_kernel(const SampledRKHS::KernelFn& kernel,
                                 const SampledRKHS::FactorFn& factor,
                                 const BallPoint& lambda, const BallPoint& zeta) {
  ComplexMatrix m = kernel(lambda, zeta);
  ComplexMatrix fl = factor(lambda);
  ComplexMatrix fz = factor(zeta);
  if (fl.cols() != m.rows() || fz.cols() != m.cols())
    throw DimensionMismatch("pushforward_kernel: factor width != kernel block size");
  return fl * m * fz.adjoint();
}

SampledRKHS SampledRKHS::build(std::vector<BallPoint> points, KernelFn kernel,
                               Index dim_m, FactorFn factor, Index dim_f,
                               int threads) {
  SampledRKHS s;
  s.points = std::move(points);
  s.kernel = std::move(kernel);
  s.dim_m = dim_m;
  s.factor = std::move(factor);
  s.dim_f = dim_f;

  const Index n = static_cast<Index>(s.points.size());
  s.gram.resize(n * dim_m, n * dim_m);
  std::vector<std::pair<Index, Index>> work;
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) work.emplace_back(i, j);
  detail::parallel_for(static_cast<long>(work.size()), threads, [&](long w) {
    auto [i, j] = work[static_cast<size_t>(w)];
    ComplexMatrix kij = s.kernel(s.points[static_cast<size_t>(i)],
                                 s.points[static_cast<size_t>(j)]);
    s.gram.block(i * dim_m, j * dim_m, dim_m, dim_m) = kij;
    if (i != j) s.gram.block(j * dim_m, i * dim_m, dim_m, dim_m) = kij.adjoint();
  });
  return s;
}

std::pair<ComplexVector, double> OverlapReport::coords_of_values(
    const ComplexVector& values) const {
  ComplexVector w = coord_map * values;
  double residual = (value_map * w - values).norm() /
                    std::max(1.0, values.norm());
  return {std::move(w), residual};
}

OverlapReport coisometry_and_overlap(const SampledRKHS& srk, const Tolerances& tol,
                                     std::uint64_t probe_seed) {
  tol.validate();
  const Index n = static_cast<Index>(srk.points.size());
  if (n == 0) throw std::invalid_argument("coisometry_and_overlap: no sample points");
  if (operator_norm(srk.gram) <= 0.0)
    throw DegenerateGram("base Gram vanishes on the sample");

  // block-diagonal factor values
  ComplexMatrix fbd = ComplexMatrix::Zero(n * srk.dim_f, n * srk.dim_m);
  for (Index i = 0; i < n; ++i) {
    ComplexMatrix fi = srk.factor(srk.points[static_cast<size_t>(i)]);
    if (fi.rows() != srk.dim_f || fi.cols() != srk.dim_m)
      throw DimensionMismatch("coisometry_and_overlap: factor value shape");
    fbd.block(i * srk.dim_f, i * srk.dim_m, srk.dim_f, srk.dim_m) = fi;
  }
  ComplexMatrix gram_f = fbd * srk.gram * fbd.adjoint();

  GramCoords base = gram_coords(srk.gram, tol);
  GramCoords push = gram_coords(gram_f, tol);

  OverlapReport report;
  report.base_rank = base.vectors.cols();
  report.pushforward_rank = push.vectors.cols();

  // Psi in orthonormal coordinates of the two section spans
  ComplexMatrix psi = base.root.asDiagonal() * ComplexMatrix(base.vectors.adjoint() *
                      fbd.adjoint() * push.vectors) * push.inv_root.asDiagonal();
  report.psi_isometry_residual = operator_norm(
      psi.adjoint() * psi -
      ComplexMatrix::Identity(report.pushforward_rank, report.pushforward_rank));

  // overlap = Ker Psi^* in base coordinates
  report.overlap_coords = orthonormal_basis(psi.adjoint(), BasisMode::Kernel, tol);
  report.overlap_dim = report.overlap_coords.cols();

  // Gamma = [Psi^*; P_ker] must be unitary on the base span
  ComplexMatrix gamma(report.pushforward_rank + report.overlap_dim, report.base_rank);
  gamma << psi.adjoint(), report.overlap_coords.adjoint();
  report.gamma_unitarity_residual = operator_norm(
      gamma.adjoint() * gamma -
      ComplexMatrix::Identity(report.base_rank, report.base_rank));

  // value/coordinate maps: values = V sqrt(L) w,  w = sqrt(L)^{-1} V^* values
  report.value_map = base.vectors * base.root.asDiagonal();
  report.coord_map = base.inv_root.asDiagonal() * ComplexMatrix(base.vectors.adjoint());
  report.overlap_values = report.value_map * report.overlap_coords;

  // lifted norm: ||M_F f||_{H(M_F)} = ||Q f||_{H(M)} on random span elements
  SampleGen gen(probe_seed ^ 0x0eea11);
  double lifted = 0.0;
  for (int k = 0; k < 16; ++k) {
    ComplexVector w = gen.gaussian_matrix(report.base_rank, 1);
    double pushed = (psi.adjoint() * w).norm();
    double projected =
        std::sqrt(std::max(0.0, w.squaredNorm() -
                                    (report.overlap_coords.adjoint() * w).squaredNorm()));
    lifted = std::max(lifted, std::abs(pushed - projected));
  }
  report.lifted_norm_residual = lifted;
  return report;
}

}  // namespace dareal
