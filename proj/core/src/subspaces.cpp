#include "dareal/subspaces.hpp"

#include <cmath>

#include "dareal/numerics.hpp"
#include "multi_index.hpp"

namespace dareal {

namespace {

// Ambient generator vector in X^d at a sampled point:
// Z(zeta)^* (I - A^* Z(zeta)^*)^{-1} C^* (as a dimX*d x dimY block column).
ComplexMatrix sampled_generator(const OutputPair& p, const BallPoint& zeta) {
  ComplexMatrix section = p.section_state(zeta);  // dimX x dimY
  ComplexMatrix g(p.d() * p.dim_x(), p.dim_y());
  for (Index j = 0; j < p.d(); ++j)
    g.middleRows(j * p.dim_x(), p.dim_x()) = std::conj(zeta[j]) * section;
  return g;
}

constexpr std::uint64_t kDomainSalt = 0x5d0a11;
constexpr std::uint64_t kIsometrySalt = 0x15c0;
constexpr std::uint64_t kMultiplierSalt = 0x3e0;

}  // namespace

SubspaceBasis SubspaceBasis::from_span(const ComplexMatrix& span_columns,
                                       const Tolerances& tol) {
  SubspaceBasis s;
  s.ambient_dim = span_columns.rows();
  s.basis = orthonormal_basis(span_columns, BasisMode::Range, tol);
  // complement = null space of basis^*
  s.complement = orthonormal_basis(s.basis.adjoint(), BasisMode::Kernel, tol);
  return s;
}

DomainSubspace domain_subspace(const OutputPair& p, const SampleConfig& cfg,
                               const Tolerances& tol) {
  tol.validate();
  cfg.validate();
  PairClass pc = classify(p, tol);
  if (!pc.contractive_pair)
    throw NotContractivePair("domain_subspace: min defect eigenvalue " +
                             std::to_string(pc.defect_min_eigenvalue));

  const Index d = p.d(), nx = p.dim_x(), ny = p.dim_y();
  const int degree_cap = static_cast<int>(2 * d * nx);

  detail::ResolventCoefficients coeffs(p.A.blocks, p.C.adjoint());
  ComplexMatrix stack(d * nx, 0);
  DomainSubspace result;
  Index last_rank = -1;
  int stable = 0;

  int deg = 1;
  for (; deg <= degree_cap; ++deg) {
    for (const auto& alpha : detail::multi_indices_of_degree(d, deg)) {
      // generator v_alpha: j-th component is c_{alpha - e_j}
      ComplexMatrix v = ComplexMatrix::Zero(d * nx, ny);
      for (Index j = 0; j < d; ++j) {
        if (alpha[static_cast<size_t>(j)] == 0) continue;
        detail::MultiIndex prev = alpha;
        --prev[static_cast<size_t>(j)];
        v.middleRows(j * nx, nx) = coeffs.at(prev);
      }
      stack.conservativeResize(Eigen::NoChange, stack.cols() + ny);
      stack.rightCols(ny) = v;
    }
    Index rank = numerical_rank(stack, tol);
    if (rank == last_rank) {
      if (++stable >= 2) {
        result.stop_rule_triggered = true;
        break;
      }
    } else {
      stable = 0;
    }
    last_rank = rank;
  }
  result.degree_reached = std::min(deg, degree_cap);
  result.space = SubspaceBasis::from_span(stack, tol);

  // cross-check against the span of generators at sampled points
  SampleConfig sub = cfg.with_salt(kDomainSalt);
  SampleGen gen(sub.seed);
  ComplexMatrix sampled(d * nx, cfg.sample_count * ny);
  for (int k = 0; k < cfg.sample_count; ++k)
    sampled.middleCols(k * ny, ny) =
        sampled_generator(p, gen.ball_point(d, cfg.sample_radius));
  Index sampled_rank = numerical_rank(sampled, tol);
  if (sampled_rank != result.space.dim())
    throw RankInstability("domain_subspace: Taylor rank " +
                          std::to_string(result.space.dim()) + " vs sampled rank " +
                          std::to_string(sampled_rank));
  // the sampled generators must lie in the Taylor span
  if (sampled.size() > 0 && operator_norm(sampled) > 0) {
    ComplexMatrix off = sampled - result.space.basis *
                                      (result.space.basis.adjoint() * sampled);
    if (operator_norm(off) > std::sqrt(tol.eq_tol) * operator_norm(sampled))
      throw RankInstability("domain_subspace: sampled generators escape the Taylor span");
  }
  return result;
}

IsometryV build_V_and_check(const SchurEvaluator& s, const OutputPair& p,
                            const SubspaceBasis& dsub, const SampleConfig& cfg,
                            const Tolerances& tol) {
  tol.validate();
  cfg.validate();
  if (s.d() != p.d() || s.dim_y() != p.dim_y())
    throw DimensionMismatch("build_V_and_check: S and pair dimensions differ");
  if (dsub.ambient_dim != p.d() * p.dim_x())
    throw DimensionMismatch("build_V_and_check: D has wrong ambient dimension");

  const Index nx = p.dim_x(), ny = p.dim_y(), nu = s.dim_u();
  const Index m = dsub.dim();

  IsometryV v;
  v.a_v = p.A.adjoint_row() * dsub.basis;
  v.b_v = p.C.adjoint();
  v.d_v = s.at_origin().adjoint();

  // C_V from the generator equations
  //   C_V (coords of generator) = S(zeta)^* - S(0)^*  applied columnwise
  const int n_samples = std::max(cfg.sample_count, static_cast<int>(m) + 1);
  SampleConfig sub = cfg.with_salt(kIsometrySalt);
  SampleGen gen(sub.seed);
  ComplexMatrix lhs(m, n_samples * ny);
  ComplexMatrix rhs(nu, n_samples * ny);
  for (int k = 0; k < n_samples; ++k) {
    BallPoint zeta = gen.ball_point(p.d(), cfg.sample_radius);
    lhs.middleCols(k * ny, ny) = dsub.basis.adjoint() * sampled_generator(p, zeta);
    rhs.middleCols(k * ny, ny) = s.adjoint_at(zeta) - v.d_v;
  }
  // minimum-norm solution of C_V * lhs = rhs
  v.c_v = lstsq(lhs.transpose(), rhs.transpose()).transpose();
  double scale = std::max(1.0, operator_norm(rhs));
  v.lsq_residual = operator_norm(v.c_v * lhs - rhs) / scale;

  v.matrix.resize(nx + nu, m + ny);
  v.matrix << v.a_v, v.b_v, v.c_v, v.d_v;
  v.isometry_residual = operator_norm(
      v.matrix.adjoint() * v.matrix - ComplexMatrix::Identity(m + ny, m + ny));
  v.isometric = v.isometry_residual <= tol.eq_tol;
  v.range_basis = orthonormal_basis(v.matrix, BasisMode::Range, tol);

  if (v.lsq_residual > tol.eq_tol)
    throw LeastSquaresInconsistent(
        "generator equations have residual " + std::to_string(v.lsq_residual) +
        " (K_S != K_{C,A})");
  if (!v.isometric)
    throw LeastSquaresInconsistent(
        "V fails the isometry check with residual " +
        std::to_string(v.isometry_residual) + " (K_S != K_{C,A})");
  return v;
}

SubspaceBasis kernel_of_multiplier(const SchurEvaluator& s, const SampleConfig& cfg,
                                   const Tolerances& tol) {
  tol.validate();
  cfg.validate();
  const Index nu = s.dim_u(), ny = s.dim_y();

  SampleConfig sub = cfg.with_salt(kMultiplierSalt);
  SampleGen gen(sub.seed);
  ComplexMatrix stack(cfg.sample_count * ny, nu);
  for (int k = 0; k < cfg.sample_count; ++k)
    stack.middleRows(k * ny, ny) = s(gen.ball_point(s.d(), cfg.sample_radius));

  if (const Colligation* c = s.colligation()) {
    // append the Taylor coefficients of S: S_beta = D at 0 and
    // sum_j M_{beta-e_j} B_j for |beta| >= 1
    const Index nx = c->dim_x();
    detail::ResolventCoefficients coeffs(c->A.blocks, c->C.adjoint());
    std::vector<ComplexMatrix> rows;
    rows.push_back(c->D);
    const int cap = static_cast<int>(2 * c->d() * nx);
    for (int deg = 1; deg <= cap; ++deg) {
      for (const auto& beta : detail::multi_indices_of_degree(c->d(), deg)) {
        ComplexMatrix sb = ComplexMatrix::Zero(ny, nu);
        for (Index j = 0; j < c->d(); ++j) {
          if (beta[static_cast<size_t>(j)] == 0) continue;
          detail::MultiIndex prev = beta;
          --prev[static_cast<size_t>(j)];
          sb += coeffs.at(prev).adjoint() * c->B[static_cast<size_t>(j)];
        }
        rows.push_back(std::move(sb));
      }
    }
    Index extra = static_cast<Index>(rows.size()) * ny;
    Index base = stack.rows();
    stack.conservativeResize(base + extra, Eigen::NoChange);
    for (size_t r = 0; r < rows.size(); ++r)
      stack.middleRows(base + static_cast<Index>(r) * ny, ny) = rows[r];
  }

  SubspaceBasis out;
  out.ambient_dim = nu;
  out.basis = orthonormal_basis(stack, BasisMode::Kernel, tol);
  out.complement = orthonormal_basis(out.basis.adjoint(), BasisMode::Kernel, tol);
  return out;
}

}  // namespace dareal
