#include "dareal/realization.hpp"

#include <cmath>

#include "dareal/example33.hpp"
#include "dareal/numerics.hpp"
#include "multi_index.hpp"
#include "parallel_for.hpp"

namespace dareal {

namespace {
constexpr std::uint64_t kRealizeSalt = 0x9ea1;
constexpr std::uint64_t kGleasonSalt = 0x91ea;
constexpr std::uint64_t kSuiteSalt = 0x5017e;
}  // namespace

ObservabilityData observability_data(const OutputPair& p, const Tolerances& tol) {
  tol.validate();
  ObservabilityData data;
  data.pair = p;
  const Index d = p.d(), nx = p.dim_x(), ny = p.dim_y();
  data.degree_cap = static_cast<int>(nx);

  detail::ResolventCoefficients coeffs(p.A.blocks, p.C.adjoint());
  ComplexMatrix stack(0, nx);
  data.gram = ComplexMatrix::Zero(nx, nx);

  Index last_rank = -1;
  for (int deg = 0; deg <= data.degree_cap; ++deg) {
    for (const auto& beta : detail::multi_indices_of_degree(d, deg)) {
      ComplexMatrix m = coeffs.at(beta).adjoint();  // X -> Y
      data.coefficients.emplace(beta, m);
      stack.conservativeResize(stack.rows() + ny, Eigen::NoChange);
      stack.bottomRows(ny) = m;
      data.gram += m.adjoint() * m;
    }
    Index rank = numerical_rank(stack, tol);
    if (rank == last_rank || rank == nx) break;  // Krylov span stabilized
    last_rank = rank;
  }
  data.rank = numerical_rank(stack, tol);
  data.observable = data.rank == nx;
  return data;
}

Colligation realize_from_pair_cholesky(const OutputPair& p, Index dim_u,
                                       const Tolerances& tol) {
  tol.validate();
  PairClass pc = classify(p, tol);
  if (!pc.contractive_pair)
    throw NotContractivePair("realize_from_pair_cholesky: defect min eigenvalue " +
                             std::to_string(pc.defect_min_eigenvalue));

  const Index d = p.d(), nx = p.dim_x(), ny = p.dim_y();
  const Index n = d * nx + ny;
  ComplexMatrix ac(n, nx);
  ac << p.A.stacked(), p.C;
  ComplexMatrix defect = ComplexMatrix::Identity(n, n) - ac * ac.adjoint();
  ComplexMatrix factor = pivoted_cholesky(defect, tol);
  if (dim_u < factor.cols())
    throw DimUTooSmall("need dimU >= " + std::to_string(factor.cols()) + ", got " +
                       std::to_string(dim_u));

  ComplexMatrix bd = ComplexMatrix::Zero(n, dim_u);
  bd.leftCols(factor.cols()) = factor;
  std::vector<ComplexMatrix> b(static_cast<size_t>(d));
  for (Index j = 0; j < d; ++j)
    b[static_cast<size_t>(j)] = bd.middleRows(j * nx, nx);
  return Colligation(p.A, std::move(b), p.C, bd.bottomRows(ny));
}

RealizationResult realize_with_pair(const SchurEvaluator& s, const OutputPair& p,
                                    std::optional<CompletionParameter> q,
                                    const SampleConfig& cfg, const Tolerances& tol) {
  tol.validate();
  cfg.validate();
  if (s.d() != p.d() || s.dim_y() != p.dim_y())
    throw DimensionMismatch("realize_with_pair: S and pair dimensions differ");

  // kernel equality on the seeded sample is the entry ticket
  SampleGen gen(cfg.with_salt(kRealizeSalt).seed);
  auto pts = gen.ball_points(cfg.sample_count, p.d(), cfg.sample_radius);
  KernelSpec ks = KernelSpec::schur(s);
  KernelSpec kp = KernelSpec::pair(p);
  GramCertificate cert = gram_certify(ks, pts, tol, &kp);
  if (!cert.max_diff || *cert.max_diff > tol.eq_tol)
    throw KernelMismatch("max |K_S - K_{C,A}| = " +
                         std::to_string(cert.max_diff.value_or(-1.0)) +
                         " on the seeded sample");

  RealizationResult result;
  result.domain = domain_subspace(p, cfg, tol);
  result.isometry = build_V_and_check(s, p, result.domain.space, cfg, tol);
  result.blocks = build_blocks(s, p, result.isometry, result.domain, cfg, tol);
  CompletionParameter param =
      q.value_or(CompletionParameter::zero(result.blocks));
  result.completion = parrott_complete(result.blocks, param, tol);
  result.colligation = assemble_colligation(result.blocks, p, result.completion);
  result.family = classify_family(result.blocks, p, s, cfg, tol);
  return result;
}

RepresenterData enumerate_representers(const OutputPair& p, Index dim_u,
                                       std::optional<ComplexMatrix> g,
                                       const Tolerances& tol) {
  tol.validate();
  RepresenterData data;
  data.domain = domain_subspace(p, SampleConfig{}, tol);
  const SubspaceBasis& dsub = data.domain.space;
  const Index nx = p.dim_x(), ny = p.dim_y(), m = dsub.dim();

  data.t.resize(nx, m + ny);
  data.t << p.A.adjoint_row() * dsub.basis, p.C.adjoint();
  ComplexMatrix defect_sq =
      ComplexMatrix::Identity(m + ny, m + ny) - data.t.adjoint() * data.t;
  PsdSqrt root = psd_sqrt_and_defect(defect_sq, tol);
  data.defect = root.sqrt;
  data.minimal_dim_u = root.rank;
  data.defect_range = orthonormal_basis(data.defect, BasisMode::Range, tol);
  if (dim_u < data.minimal_dim_u)
    throw DimUTooSmall("need dimU >= " + std::to_string(data.minimal_dim_u) +
                       ", got " + std::to_string(dim_u));

  // G maps defect-range coordinates isometrically into C^dimU
  ComplexMatrix g_range;
  if (g) {
    g_range = *g;
    if (g_range.rows() != dim_u || g_range.cols() != data.minimal_dim_u)
      throw DimensionMismatch("enumerate_representers: G must be dimU x rank(defect)");
    if (operator_norm(g_range.adjoint() * g_range -
                      ComplexMatrix::Identity(g_range.cols(), g_range.cols())) >
        tol.eq_tol)
      throw std::invalid_argument("enumerate_representers: G is not isometric");
  } else {
    g_range = ComplexMatrix::Identity(dim_u, data.minimal_dim_u);
  }
  data.g = g_range * data.defect_range.adjoint();  // dimU x (m + ny)

  // S(lambda) = [C (I - Z(lambda)A)^{-1} Z(lambda)|D, I_Y] (I-T^*T)^{1/2} G^*
  OutputPair pair = p;
  ComplexMatrix basis = dsub.basis;
  ComplexMatrix tail = data.defect * data.g.adjoint();  // (m+ny) x dimU
  data.schur = SchurEvaluator::from_function(
      [pair, basis, tail, m, ny, nx](const BallPoint& lambda) {
        ComplexMatrix row(ny, m + ny);
        row << resolvent_row(pair, lambda) * z_row(lambda, nx) * basis,
            ComplexMatrix::Identity(ny, ny);
        return ComplexMatrix(row * tail);
      },
      p.d(), dim_u, ny);
  return data;
}

namespace {

GleasonReport gleason_check_impl(const OutputPair& p,
                                 const SchurEvaluator* s_for_kernel,
                                 const SampleConfig& cfg, const Tolerances& tol) {
  tol.validate();
  cfg.validate();
  GleasonReport report;

  PairClass pc = classify(p, tol);
  report.contractive_inequality = pc.contractive_pair;
  report.pair_defect_min_eigenvalue = pc.defect_min_eigenvalue;

  SampleGen gen(cfg.with_salt(kGleasonSalt).seed);
  const Index d = p.d(), nx = p.dim_x();
  const int n_samples = std::min(cfg.sample_count, 25);

  // shift identity on surrogates f = O_{C,A} x:
  // f(lambda) - f(0) = sum_j lambda_j (O A_j x)(lambda)
  double shift = 0.0;
  for (int k = 0; k < n_samples; ++k) {
    BallPoint lambda = gen.ball_point(d, cfg.sample_radius);
    ComplexMatrix x = gen.gaussian_matrix(nx, 1);
    ComplexMatrix lhs = p.observe(lambda, x) - p.C * x;
    ComplexMatrix rhs = ComplexMatrix::Zero(p.dim_y(), 1);
    for (Index j = 0; j < d; ++j)
      rhs += lambda[j] * p.observe(lambda, p.A.blocks[static_cast<size_t>(j)] * x);
    shift = std::max(shift, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  report.shift_identity_residual = shift;

  // kernel sections against observability images in the lifted Gram metric
  ObservabilityData obs = observability_data(p, tol);
  ComplexMatrix coeff_stack(0, nx);
  for (const auto& [beta, m] : obs.coefficients) {
    coeff_stack.conservativeResize(coeff_stack.rows() + m.rows(), Eigen::NoChange);
    coeff_stack.bottomRows(m.rows()) = m;
  }
  ComplexMatrix null_basis = orthonormal_basis(coeff_stack, BasisMode::Kernel, tol);
  ComplexMatrix proj = ComplexMatrix::Identity(nx, nx) -
                       null_basis * null_basis.adjoint();

  double section = 0.0;
  std::vector<BallPoint> pts = gen.ball_points(std::min(n_samples, 12), d,
                                               cfg.sample_radius);
  KernelSpec kernel = s_for_kernel
                          ? KernelSpec::schur(*s_for_kernel)
                          : KernelSpec::pair(p);
  for (const auto& lambda : pts)
    for (const auto& zeta : pts) {
      ComplexMatrix expect = p.section_state(lambda).adjoint() * proj *
                             p.section_state(zeta);
      section = std::max(
          section, (kernel.eval(lambda, zeta) - expect).cwiseAbs().maxCoeff());
    }
  report.section_match_residual = section;

  report.pass = report.contractive_inequality &&
                report.shift_identity_residual <= tol.eq_tol &&
                report.section_match_residual <= tol.eq_tol;
  return report;
}

}  // namespace

GleasonReport gleason_check(const OutputPair& p, const SampleConfig& cfg,
                            const Tolerances& tol) {
  return gleason_check_impl(p, nullptr, cfg, tol);
}

GleasonReport gleason_check(const Colligation& c, const SampleConfig& cfg,
                            const Tolerances& tol) {
  SchurEvaluator s = SchurEvaluator::from_colligation(c);
  return gleason_check_impl(c.output_pair(), &s, cfg, tol);
}

EquivalenceReport observability_and_equivalence(const OutputPair& p1,
                                                const OutputPair& p2,
                                                const Tolerances& tol) {
  tol.validate();
  if (p1.d() != p2.d() || p1.dim_y() != p2.dim_y())
    throw DimensionMismatch("observability_and_equivalence: pair shapes differ");

  EquivalenceReport report;
  report.observable1 = observability_data(p1, tol).observable;
  report.observable2 = observability_data(p2, tol).observable;

  const Index n1 = p1.dim_x(), n2 = p2.dim_x(), ny = p1.dim_y(), d = p1.d();
  if (n1 != n2) return report;  // no unitary between different dimensions

  // least-squares intertwiner: C2 U = C1, U A_{1,j} = A_{2,j} U
  const Index rows = ny * n1 + d * n2 * n1;
  ComplexMatrix k = ComplexMatrix::Zero(rows, n2 * n1);
  ComplexVector rhs = ComplexVector::Zero(rows);
  // vec is column-major: U(i,j) -> j * n2 + i
  for (Index j = 0; j < n1; ++j)
    for (Index r = 0; r < ny; ++r) {
      for (Index i = 0; i < n2; ++i) k(j * ny + r, j * n2 + i) = p2.C(r, i);
      rhs(j * ny + r) = p1.C(r, j);
    }
  Index off = ny * n1;
  for (Index bj = 0; bj < d; ++bj) {
    const ComplexMatrix& a1 = p1.A.blocks[static_cast<size_t>(bj)];
    const ComplexMatrix& a2 = p2.A.blocks[static_cast<size_t>(bj)];
    for (Index jc = 0; jc < n1; ++jc)
      for (Index ir = 0; ir < n2; ++ir) {
        Index row = off + jc * n2 + ir;
        for (Index t = 0; t < n1; ++t) k(row, t * n2 + ir) += a1(t, jc);
        for (Index t = 0; t < n2; ++t) k(row, jc * n2 + t) -= a2(ir, t);
      }
    off += n2 * n1;
  }
  ComplexVector vec_u = lstsq(k, rhs);
  report.intertwine_residual = (k * vec_u - rhs).norm();

  ComplexMatrix u(n2, n1);
  for (Index j = 0; j < n1; ++j)
    for (Index i = 0; i < n2; ++i) u(i, j) = vec_u(j * n2 + i);
  report.unitarity_residual = operator_norm(
      u.adjoint() * u - ComplexMatrix::Identity(n1, n1));
  report.equivalent = report.intertwine_residual <= tol.eq_tol &&
                      report.unitarity_residual <= tol.eq_tol;
  if (report.equivalent) report.witness = u;
  return report;
}

Report example33_suite(const SampleConfig& cfg, const Tolerances& tol, int threads) {
  tol.validate();
  cfg.validate();
  Report report;
  SampleConfig suite_cfg = cfg.with_salt(kSuiteSalt);

  Colligation u0 = example33_colligation();
  ColligationClass cls = classify(u0, tol);
  report.add("u0_coisometric", cls.coisometry_residual <= 1e-12,
             cls.coisometry_residual, "||U0 U0^* - I||");

  // transfer function and resolvent row against the closed forms
  SampleGen gen(suite_cfg.seed);
  auto wide = gen.ball_points(100, 2, 0.95);
  std::vector<double> terr(wide.size()), rerr(wide.size());
  OutputPair pair0 = example33_pair(0.0);
  detail::parallel_for(static_cast<long>(wide.size()), threads, [&](long i) {
    const BallPoint& p = wide[static_cast<size_t>(i)];
    terr[static_cast<size_t>(i)] =
        (transfer_eval(u0, p) - example33_closed_form(p)).cwiseAbs().maxCoeff();
    rerr[static_cast<size_t>(i)] =
        (resolvent_row(pair0, p) - example33_resolvent_row(p)).cwiseAbs().maxCoeff();
  });
  double tmax = *std::max_element(terr.begin(), terr.end());
  double rmax = *std::max_element(rerr.begin(), rerr.end());
  report.add("transfer_matches_closed_form", tmax <= 1e-12, tmax,
             "100 points, radius 0.95");
  report.add("resolvent_row_matches", rmax <= 1e-12, rmax, "100 points, radius 0.95");

  // kernel equality across the gamma family
  SchurEvaluator s = example33_schur();
  KernelSpec ks = KernelSpec::schur(s);
  auto pts = gen.ball_points(50, 2, cfg.sample_radius);
  const double thr = example33_gamma_threshold();
  for (double gamma : {0.0, 0.2, thr - 0.01}) {
    KernelSpec kp = KernelSpec::pair(example33_pair(gamma));
    GramCertificate cert = gram_certify(ks, pts, tol, &kp, threads);
    char name[64];
    std::snprintf(name, sizeof(name), "kernel_equality_gamma_%.4f", gamma);
    report.add(name, cert.max_diff && *cert.max_diff <= 1e-10,
               cert.max_diff.value_or(-1.0), "50 point pairs");
  }
  GramCertificate psd_cert = gram_certify(ks, gen.ball_points(20, 2, cfg.sample_radius),
                                          tol, nullptr, threads);
  report.add("kernel_psd", psd_cert.psd, std::abs(std::min(0.0, psd_cert.min_eigenvalue)),
             "20 seeded points");

  // contractivity threshold straddle
  double below = classify(example33_pair(thr - 0.001), tol).defect_min_eigenvalue;
  double above = classify(example33_pair(thr + 0.001), tol).defect_min_eigenvalue;
  report.add("contractivity_threshold", below > 0 && above < 0,
             std::min(below, -above), "min defect eigenvalue straddles zero");

  // observability of (C, A_0)
  ObservabilityData obs = observability_data(pair0, tol);
  report.add("pair_observable", obs.observable,
             static_cast<double>(pair0.dim_x() - obs.rank), "coefficient-stack rank");

  // degeneracy space of S
  SubspaceBasis u0s = kernel_of_multiplier(s, suite_cfg, tol);
  report.add("degeneracy_space_dim", u0s.dim() == 1,
             static_cast<double>(u0s.dim()), "dim U0 expected 1");

  // full pipeline for gamma = 0.2
  OutputPair pair02 = example33_pair(0.2);
  RealizationResult real = realize_with_pair(s, pair02, std::nullopt, suite_cfg, tol);
  double reproduce = 0.0;
  for (const auto& p : pts)
    reproduce = std::max(reproduce,
                         (transfer_eval(real.colligation, p) - s(p)).cwiseAbs().maxCoeff());
  report.add("realize_gamma02_reproduces", reproduce <= 1e-9, reproduce,
             "50 seeded points");
  ComplexMatrix ustar = real.colligation.as_matrix().adjoint();
  const Index ambient = real.blocks.d * real.blocks.dim_x;
  const Index ny = real.blocks.dim_y, md = real.blocks.dim_d();
  ComplexMatrix embed(ambient + ny, md + ny);
  embed << real.blocks.domain.basis, ComplexMatrix::Zero(ambient, ny),
      ComplexMatrix::Zero(ny, md), ComplexMatrix::Identity(ny, ny);
  ComplexMatrix ue = ustar * embed;
  double weak = operator_norm(ue.adjoint() * ue -
                              ComplexMatrix::Identity(ue.cols(), ue.cols()));
  report.add("realize_gamma02_weakly_coisometric", weak <= 1e-9, weak,
             "isometric on D (+) Y");

  report.add("family_classification",
             !real.family.unique && real.family.coisometric_achievable &&
                 !real.family.unitary_achievable,
             0.0,
             "unique=false, coisometric_achievable=true, unitary_achievable=false");

  // coisometric member at |q| = 1
  CompletionParameter q1 = CompletionParameter::from_matrix(
      ComplexMatrix::Identity(1, 1), real.blocks, tol);
  Completion comp1 = parrott_complete(real.blocks, q1, tol);
  Colligation coiso = assemble_colligation(real.blocks, pair02, comp1);
  double coiso_res = classify(coiso, tol).coisometry_residual;
  report.add("coisometric_completion", coiso_res <= 1e-9, coiso_res,
             "|q| = 1 member of the family");

  // non-equivalence grid
  bool grid_ok = true;
  double worst = 0.0;
  for (double g1 : {0.0, 0.1, 0.2, 0.3})
    for (double g2 : {0.0, 0.1, 0.2, 0.3}) {
      EquivalenceReport eq =
          observability_and_equivalence(example33_pair(g1), example33_pair(g2), tol);
      bool expect = g1 == g2;
      if (eq.equivalent != expect) {
        grid_ok = false;
        worst = std::max(worst, eq.intertwine_residual + eq.unitarity_residual);
      }
    }
  report.add("equivalence_grid", grid_ok, worst,
             "equivalent iff gamma coincide, grid {0, 0.1, 0.2, 0.3}");

  // Gleason shift identity
  GleasonReport gleason = gleason_check(pair0, suite_cfg, tol);
  report.add("gleason_shift_identity", gleason.shift_identity_residual <= 1e-12,
             gleason.shift_identity_residual, "surrogate f = O x");
  report.add("gleason_contractive", gleason.contractive_inequality,
             gleason.pair_defect_min_eigenvalue, "sum ||A_j f||^2 bound");
  return report;
}

}  // namespace dareal
