#include "dareal/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace dareal {

namespace {

// Fixed phase convention: rotate each column so its first significant entry
// is real positive.  Keeps bases reproducible across runs.
void normalize_column_phases(ComplexMatrix& q) {
  for (Index j = 0; j < q.cols(); ++j) {
    double mx = q.col(j).cwiseAbs().maxCoeff();
    if (mx <= 0) continue;
    for (Index i = 0; i < q.rows(); ++i) {
      double a = std::abs(q(i, j));
      if (a > 1e-8 * mx) {
        q.col(j) *= std::conj(q(i, j)) / a;
        break;
      }
    }
  }
}

}  // namespace

bool all_finite(const ComplexMatrix& m) { return m.size() == 0 || m.allFinite(); }

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

PsdSqrt psd_sqrt_and_defect(const ComplexMatrix& m, const Tolerances& tol) {
  tol.validate();
  if (m.rows() != m.cols())
    throw DimensionMismatch("psd_sqrt_and_defect expects a square matrix");
  if (m.rows() == 0) return {ComplexMatrix(0, 0), 0};
  if (hermiticity_defect(m) > tol.eq_tol * (1.0 + m.cwiseAbs().maxCoeff()))
    throw NotHermitian("psd_sqrt_and_defect input");

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((m + ComplexMatrix(m.adjoint())) / 2.0);
  Eigen::VectorXd ev = es.eigenvalues();
  if (ev(0) < -tol.psd_tol)
    throw NotPsd("minimum eigenvalue " + std::to_string(ev(0)));
  ev = ev.cwiseMax(0.0);

  double emax = ev.maxCoeff();
  Index rank = 0;
  for (Index i = 0; i < ev.size(); ++i)
    if (ev(i) > tol.rank_tol * emax) ++rank;

  ComplexMatrix sqrt = es.eigenvectors() *
                       ev.cwiseSqrt().asDiagonal() *
                       es.eigenvectors().adjoint();
  // re-Hermitianize to kill rounding skew
  sqrt = (sqrt + ComplexMatrix(sqrt.adjoint())) / 2.0;
  return {std::move(sqrt), rank};
}

PsdSqrtPinv psd_sqrt_with_pinv(const ComplexMatrix& m, const Tolerances& tol) {
  tol.validate();
  if (m.rows() != m.cols())
    throw DimensionMismatch("psd_sqrt_with_pinv expects a square matrix");
  if (m.rows() == 0) return {ComplexMatrix(0, 0), ComplexMatrix(0, 0), 0};
  if (hermiticity_defect(m) > tol.eq_tol * (1.0 + m.cwiseAbs().maxCoeff()))
    throw NotHermitian("psd_sqrt_with_pinv input");

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((m + ComplexMatrix(m.adjoint())) / 2.0);
  Eigen::VectorXd ev = es.eigenvalues();
  if (ev(0) < -tol.psd_tol)
    throw NotPsd("minimum eigenvalue " + std::to_string(ev(0)));
  ev = ev.cwiseMax(0.0);
  const double emax = ev.maxCoeff();

  Eigen::VectorXd root = Eigen::VectorXd::Zero(ev.size());
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
  Index rank = 0;
  for (Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > tol.rank_tol * emax) {
      root(i) = std::sqrt(ev(i));
      inv(i) = 1.0 / root(i);
      ++rank;
    }
  }
  const ComplexMatrix& v = es.eigenvectors();
  PsdSqrtPinv out;
  out.sqrt = v * root.asDiagonal() * v.adjoint();
  out.sqrt = (out.sqrt + ComplexMatrix(out.sqrt.adjoint())) / 2.0;
  out.pinv_sqrt = v * inv.asDiagonal() * v.adjoint();
  out.pinv_sqrt = (out.pinv_sqrt + ComplexMatrix(out.pinv_sqrt.adjoint())) / 2.0;
  out.rank = rank;
  return out;
}

ComplexMatrix orthonormal_basis(const ComplexMatrix& m, BasisMode mode,
                                const Tolerances& tol) {
  tol.validate();
  if (m.rows() == 0 || m.cols() == 0) {
    // Range of an empty map is {0}; kernel of a 0 x n map is everything.
    if (mode == BasisMode::Range) return ComplexMatrix(m.rows(), 0);
    return ComplexMatrix::Identity(m.cols(), m.cols());
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(
      m, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  Index rank = 0;
  if (smax > 0)
    for (Index i = 0; i < sv.size(); ++i)
      if (sv(i) > tol.rank_tol * smax) ++rank;

  ComplexMatrix q;
  if (mode == BasisMode::Range) {
    q = svd.matrixU().leftCols(rank);
  } else {
    q = svd.matrixV().rightCols(m.cols() - rank);
  }
  normalize_column_phases(q);
  return q;
}

double operator_norm(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  return Eigen::JacobiSVD<ComplexMatrix>(m).singularValues()(0);
}

Index numerical_rank(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0) return 0;
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol.rank_tol * sv(0)) ++rank;
  return rank;
}

PolarDecomposition polar_partial_isometry(const ComplexMatrix& t,
                                          const Tolerances& tol) {
  tol.validate();
  if (t.rows() == 0 || t.cols() == 0)
    return {ComplexMatrix::Zero(t.rows(), t.cols()),
            ComplexMatrix::Zero(t.cols(), t.cols())};
  if (operator_norm(t) > 1.0 + tol.eq_tol)
    throw NormExceedsOne("polar_partial_isometry input");

  Eigen::JacobiSVD<ComplexMatrix> svd(
      t, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  Index rank = 0;
  if (smax > 0)
    for (Index i = 0; i < sv.size(); ++i)
      if (sv(i) > tol.rank_tol * smax) ++rank;

  ComplexMatrix g = svd.matrixU().leftCols(rank) *
                    svd.matrixV().leftCols(rank).adjoint();
  ComplexMatrix modulus = svd.matrixV() *
                          sv.cwiseMax(0.0).asDiagonal() *
                          svd.matrixV().adjoint();
  modulus = (modulus + ComplexMatrix(modulus.adjoint())) / 2.0;
  return {std::move(g), std::move(modulus)};
}

ComplexMatrix pivoted_cholesky(const ComplexMatrix& m, const Tolerances& tol) {
  tol.validate();
  if (m.rows() != m.cols())
    throw DimensionMismatch("pivoted_cholesky expects a square matrix");
  const Index n = m.rows();
  if (n == 0) return ComplexMatrix(0, 0);
  if (hermiticity_defect(m) > tol.eq_tol * (1.0 + m.cwiseAbs().maxCoeff()))
    throw NotHermitian("pivoted_cholesky input");

  ComplexMatrix a = (m + ComplexMatrix(m.adjoint())) / 2.0;
  Eigen::VectorXd diag = a.diagonal().real();
  if (diag.minCoeff() < -tol.psd_tol)
    throw NotPsd("pivoted_cholesky: negative diagonal entry");

  const double cutoff = tol.rank_tol * std::max(diag.maxCoeff(), 0.0);
  ComplexMatrix l = ComplexMatrix::Zero(n, n);
  std::vector<Index> perm(n);
  for (Index i = 0; i < n; ++i) perm[i] = i;

  Index k = 0;
  for (; k < n; ++k) {
    // pick the largest remaining diagonal as pivot
    Index p = k;
    for (Index i = k + 1; i < n; ++i)
      if (diag(perm[i]) > diag(perm[p])) p = i;
    std::swap(perm[k], perm[p]);
    const Index piv = perm[k];
    double dv = diag(piv);
    if (dv <= cutoff || dv <= 0.0) break;

    const double root = std::sqrt(dv);
    l(piv, k) = root;
    for (Index i = k + 1; i < n; ++i) {
      const Index r = perm[i];
      Complex v = a(r, piv);
      for (Index j = 0; j < k; ++j) v -= l(r, j) * std::conj(l(piv, j));
      l(r, k) = v / root;
      diag(r) -= std::norm(l(r, k));
    }
  }
  return l.leftCols(k);
}

ComplexMatrix lstsq(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows())
    throw DimensionMismatch("lstsq: row counts differ");
  if (a.cols() == 0) return ComplexMatrix(0, b.cols());
  if (a.rows() == 0) return ComplexMatrix::Zero(a.cols(), b.cols());
  return a.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
}

}  // namespace dareal
