#include "commands.hpp"

#include <dareal/example33.hpp>
#include <dareal/numerics.hpp>
#include <dareal/overlap.hpp>
#include <dareal/realization.hpp>

namespace dareal::cli {

namespace {

constexpr std::uint64_t kCliSalt = 0xc11;

std::string input_or_throw(const JobConfig& cfg, const std::string& key) {
  auto it = cfg.inputs.find(key);
  if (it == cfg.inputs.end())
    throw ParseError(cfg.command + ": missing required input --" + key);
  return it->second;
}

std::optional<std::string> input(const JobConfig& cfg, const std::string& key) {
  auto it = cfg.inputs.find(key);
  if (it == cfg.inputs.end()) return std::nullopt;
  return it->second;
}

Colligation load_colligation(const std::string& path) {
  return parse_colligation(load_json_file(path), path);
}

OutputPair load_pair(const std::string& path) {
  return parse_pair(load_json_file(path), path);
}

// kernel inputs: --s/--pair/--szego and --s2/--pair2/--szego2
std::optional<KernelSpec> kernel_from_inputs(const JobConfig& cfg,
                                             const std::string& suffix) {
  if (auto p = input(cfg, "s" + suffix)) {
    Json j = load_json_file(*p);
    return KernelSpec::schur(SchurEvaluator::from_colligation(
        parse_colligation(j, *p)));
  }
  if (auto p = input(cfg, "pair" + suffix))
    return KernelSpec::pair(load_pair(*p));
  if (cfg.inputs.count("szego" + suffix))
    return KernelSpec::szego(static_cast<Index>(
        std::stoll(cfg.inputs.at("szego" + suffix))));
  return std::nullopt;
}

std::vector<BallPoint> points_for(const JobConfig& cfg, Index d) {
  if (auto p = input(cfg, "points"))
    return parse_points(load_json_file(*p), *p);
  SampleGen gen(cfg.sample.with_salt(kCliSalt).seed);
  return gen.ball_points(cfg.sample.sample_count, d, cfg.sample.sample_radius);
}

Json family_to_json(const FamilyReport& fam) {
  Json j;
  j["defect_rank"] = fam.defect_rank;
  j["u0_dim"] = fam.u0_dim;
  j["pair_isometric"] = fam.pair_isometric;
  j["coisometric_achievable"] = fam.coisometric_achievable;
  j["unitary_achievable"] = fam.unitary_achievable;
  j["unique"] = fam.unique;
  j["parameter_dimension"] = fam.parameter_dimension;
  return j;
}

double reproduction_error(const Colligation& col, const SchurEvaluator& s,
                          const std::vector<BallPoint>& pts) {
  double err = 0.0;
  for (const auto& p : pts)
    err = std::max(err, (transfer_eval(col, p) - s(p)).cwiseAbs().maxCoeff());
  return err;
}

CommandOutcome cmd_classify(const JobConfig& cfg) {
  CommandOutcome out;
  if (auto p = input(cfg, "colligation")) {
    ColligationClass cls = classify(load_colligation(*p), cfg.tol);
    out.result["contractive"] = cls.contractive;
    out.result["isometric"] = cls.isometric;
    out.result["coisometric"] = cls.coisometric;
    out.result["unitary"] = cls.unitary;
    out.result["norm_excess"] = cls.norm_excess;
    out.result["isometry_residual"] = cls.isometry_residual;
    out.result["coisometry_residual"] = cls.coisometry_residual;
    out.report.add("classified", true, 0.0,
                   std::string("coisometric=") + (cls.coisometric ? "true" : "false") +
                       " unitary=" + (cls.unitary ? "true" : "false"));
  } else {
    OutputPair pair = load_pair(input_or_throw(cfg, "pair"));
    PairClass pc = classify(pair, cfg.tol);
    out.result["contractive_pair"] = pc.contractive_pair;
    out.result["isometric_pair"] = pc.isometric_pair;
    out.result["defect_min_eigenvalue"] = pc.defect_min_eigenvalue;
    out.report.add("classified", true, 0.0,
                   std::string("contractive_pair=") +
                       (pc.contractive_pair ? "true" : "false"));
  }
  return out;
}

CommandOutcome cmd_kernel_check(const JobConfig& cfg) {
  auto k1 = kernel_from_inputs(cfg, "");
  if (!k1) throw ParseError("kernel-check: need --s, --pair or --szego");
  auto k2 = kernel_from_inputs(cfg, "2");
  auto pts = points_for(cfg, k1->d());

  CommandOutcome out;
  GramCertificate cert =
      gram_certify(*k1, pts, cfg.tol, k2 ? &*k2 : nullptr, cfg.threads);
  out.report.add("kernel_psd", cert.psd,
                 std::abs(std::min(0.0, cert.min_eigenvalue)),
                 "min Gram eigenvalue " + std::to_string(cert.min_eigenvalue));
  out.result["min_eigenvalue"] = cert.min_eigenvalue;
  if (cert.max_diff) {
    out.report.add("kernels_match", *cert.max_diff <= cfg.tol.eq_tol,
                   *cert.max_diff, "max elementwise difference");
    out.result["max_diff"] = *cert.max_diff;
  }
  return out;
}

CommandOutcome cmd_realize_from_pair(const JobConfig& cfg) {
  OutputPair pair = load_pair(input_or_throw(cfg, "pair"));
  CommandOutcome out;
  Colligation col = realize_from_pair_cholesky(pair, cfg.dim_u, cfg.tol);
  double coiso = classify(col, cfg.tol).coisometry_residual;
  out.report.add("coisometric", coiso <= cfg.tol.eq_tol, coiso, "||U U^* - I||");

  auto pts = points_for(cfg, pair.d());
  KernelSpec ks = KernelSpec::schur(SchurEvaluator::from_colligation(col));
  KernelSpec kp = KernelSpec::pair(pair);
  GramCertificate cert = gram_certify(ks, pts, cfg.tol, &kp, cfg.threads);
  out.report.add("kernel_equality", *cert.max_diff <= cfg.tol.eq_tol,
                 *cert.max_diff, "K_S vs K_{C,A} on the sample");

  out.result["colligation"] = colligation_to_json(col);
  if (!cfg.artifact_path.empty())
    write_text_file(cfg.artifact_path, out.result["colligation"].dump(2) + "\n");
  return out;
}

CommandOutcome realize_like(const JobConfig& cfg, bool q_required) {
  Colligation sc = load_colligation(input_or_throw(cfg, "s"));
  SchurEvaluator s = SchurEvaluator::from_colligation(sc);
  OutputPair pair = load_pair(input_or_throw(cfg, "pair"));

  std::optional<CompletionParameter> q;
  ComplexMatrix q_raw;
  bool have_q = false;
  if (auto qpath = input(cfg, "q")) {
    q_raw = parse_q(load_json_file(*qpath), *qpath);
    have_q = true;
  } else if (q_required) {
    throw ParseError(cfg.command + ": missing required input --q");
  }

  CommandOutcome out;
  // shape of Q depends on the blocks; validate after the pipeline dry run
  RealizationResult r = realize_with_pair(s, pair, std::nullopt, cfg.sample, cfg.tol);
  if (have_q) {
    CompletionParameter param =
        CompletionParameter::from_matrix(q_raw, r.blocks, cfg.tol);
    r.completion = parrott_complete(r.blocks, param, cfg.tol);
    r.colligation = assemble_colligation(r.blocks, pair, r.completion);
  }

  auto pts = points_for(cfg, pair.d());
  double rep = reproduction_error(r.colligation, s, pts);
  out.report.add("reproduces_s", rep <= cfg.tol.eq_tol, rep,
                 "max transfer mismatch on the sample");

  ComplexMatrix ustar = r.colligation.as_matrix().adjoint();
  const Index ambient = r.blocks.d * r.blocks.dim_x;
  const Index ny = r.blocks.dim_y, md = r.blocks.dim_d();
  ComplexMatrix embed(ambient + ny, md + ny);
  embed << r.blocks.domain.basis, ComplexMatrix::Zero(ambient, ny),
      ComplexMatrix::Zero(ny, md), ComplexMatrix::Identity(ny, ny);
  ComplexMatrix ue = ustar * embed;
  double weak = operator_norm(ue.adjoint() * ue -
                              ComplexMatrix::Identity(ue.cols(), ue.cols()));
  out.report.add("weakly_coisometric", weak <= cfg.tol.eq_tol, weak,
                 "U^* isometric on D (+) Y");

  out.result["family"] = family_to_json(r.family);
  out.result["colligation"] = colligation_to_json(r.colligation);
  if (!cfg.artifact_path.empty())
    write_text_file(cfg.artifact_path, out.result["colligation"].dump(2) + "\n");
  return out;
}

CommandOutcome cmd_representers(const JobConfig& cfg) {
  OutputPair pair = load_pair(input_or_throw(cfg, "pair"));
  std::optional<ComplexMatrix> g;
  if (auto gpath = input(cfg, "g"))
    g = parse_matrix(load_json_file(*gpath), *gpath);

  CommandOutcome out;
  RepresenterData rep = enumerate_representers(pair, cfg.dim_u, g, cfg.tol);
  auto pts = points_for(cfg, pair.d());
  KernelSpec ks = KernelSpec::schur(rep.schur);
  KernelSpec kp = KernelSpec::pair(pair);
  GramCertificate cert = gram_certify(ks, pts, cfg.tol, &kp, cfg.threads);
  out.report.add("kernel_equality", *cert.max_diff <= cfg.tol.eq_tol,
                 *cert.max_diff, "K_S = K_{C,A} by construction");
  out.result["minimal_dim_u"] = rep.minimal_dim_u;
  out.result["dim_u"] = rep.schur.dim_u();
  out.result["s_at_origin"] = matrix_to_json(rep.schur.at_origin());
  Json samples = Json::array();
  for (size_t i = 0; i < std::min<size_t>(pts.size(), 5); ++i) {
    Json rec;
    Json coords = Json::array();
    for (Index j = 0; j < pts[i].dim(); ++j)
      coords.push_back(Json::array({pts[i][j].real(), pts[i][j].imag()}));
    rec["point"] = std::move(coords);
    rec["value"] = matrix_to_json(rep.schur(pts[i]));
    samples.push_back(std::move(rec));
  }
  out.result["samples"] = std::move(samples);
  return out;
}

CommandOutcome cmd_gleason(const JobConfig& cfg) {
  GleasonReport r;
  if (auto p = input(cfg, "colligation"))
    r = gleason_check(load_colligation(*p), cfg.sample, cfg.tol);
  else
    r = gleason_check(load_pair(input_or_throw(cfg, "pair")), cfg.sample, cfg.tol);

  CommandOutcome out;
  out.report.add("shift_identity", r.shift_identity_residual <= cfg.tol.eq_tol,
                 r.shift_identity_residual,
                 "f(lambda) - f(0) = sum lambda_j (A_j f)(lambda)");
  out.report.add("contractive_inequality", r.contractive_inequality,
                 std::abs(std::min(0.0, r.pair_defect_min_eigenvalue)),
                 "sum ||A_j f||^2 <= ||f||^2 - ||f(0)||^2");
  out.report.add("kernel_sections_match", r.section_match_residual <= cfg.tol.eq_tol,
                 r.section_match_residual,
                 "K(., zeta) y = (I - A^* Z(zeta)^*)^{-1} C^* y in the Gram metric");
  out.result["pass"] = r.pass;
  return out;
}

CommandOutcome cmd_equivalence(const JobConfig& cfg) {
  OutputPair p1 = load_pair(input_or_throw(cfg, "pair1"));
  OutputPair p2 = load_pair(input_or_throw(cfg, "pair2"));
  EquivalenceReport r = observability_and_equivalence(p1, p2, cfg.tol);
  CommandOutcome out;
  out.report.add("computed", true, r.intertwine_residual,
                 std::string("equivalent=") + (r.equivalent ? "true" : "false"));
  out.result["observable1"] = r.observable1;
  out.result["observable2"] = r.observable2;
  out.result["equivalent"] = r.equivalent;
  out.result["intertwine_residual"] = r.intertwine_residual;
  out.result["unitarity_residual"] = r.unitarity_residual;
  if (r.witness) out.result["witness"] = matrix_to_json(*r.witness);
  return out;
}

CommandOutcome cmd_overlap_demo(const JobConfig& cfg) {
  SchurEvaluator s = example33_schur();
  SampleGen gen(cfg.sample.with_salt(kCliSalt).seed);
  auto pts = gen.ball_points(std::max(cfg.sample.sample_count, 10), 2,
                             cfg.sample.sample_radius);

  auto ks = [s](const BallPoint& l, const BallPoint& z) {
    return (Complex(1, 0) - (s(l) * s.adjoint_at(z))(0, 0)) /
           (Complex(1, 0) - BallPoint::inner(l, z));
  };
  SampledRKHS shifted = SampledRKHS::build(
      pts,
      [ks](const BallPoint& l, const BallPoint& z) {
        return ComplexMatrix(ks(l, z) * ComplexMatrix::Identity(2, 2));
      },
      2,
      [](const BallPoint& l) {
        ComplexMatrix f(1, 2);
        f << l[0], l[1];
        return f;
      },
      1, cfg.threads);
  SampledRKHS graph = SampledRKHS::build(
      pts,
      [ks](const BallPoint& l, const BallPoint& z) {
        ComplexMatrix m = ComplexMatrix::Zero(8, 8);
        m(0, 0) = ks(l, z);
        m.block(1, 1, 7, 7) = ComplexMatrix::Identity(7, 7);
        return m;
      },
      8,
      [s](const BallPoint& l) {
        ComplexMatrix f(1, 8);
        f(0, 0) = 1;
        f.block(0, 1, 1, 7) = s(l);
        return f;
      },
      1, cfg.threads);

  CommandOutcome out;
  OverlapReport r1 = coisometry_and_overlap(shifted, cfg.tol, cfg.sample.seed);
  OverlapReport r2 = coisometry_and_overlap(graph, cfg.tol, cfg.sample.seed);
  out.report.add("shifted_psi_isometry", r1.psi_isometry_residual <= cfg.tol.eq_tol,
                 r1.psi_isometry_residual, "Psi^* Psi = I");
  out.report.add("shifted_gamma_unitary",
                 r1.gamma_unitarity_residual <= cfg.tol.eq_tol,
                 r1.gamma_unitarity_residual, "[M_F; P_ker] unitary");
  out.report.add("shifted_overlap_dim", r1.overlap_dim == 1,
                 static_cast<double>(r1.overlap_dim), "expected dim D-perp = 1");
  out.report.add("graph_psi_isometry", r2.psi_isometry_residual <= cfg.tol.eq_tol,
                 r2.psi_isometry_residual, "Psi^* Psi = I");
  out.report.add("graph_gamma_unitary",
                 r2.gamma_unitarity_residual <= cfg.tol.eq_tol,
                 r2.gamma_unitarity_residual, "[M_F; P_ker] unitary");
  out.report.add("graph_overlap_dim", r2.overlap_dim == 4,
                 static_cast<double>(r2.overlap_dim), "expected codim R_V = 4");
  out.result["shifted"] = {{"base_rank", r1.base_rank},
                           {"pushforward_rank", r1.pushforward_rank},
                           {"overlap_dim", r1.overlap_dim}};
  out.result["graph"] = {{"base_rank", r2.base_rank},
                         {"pushforward_rank", r2.pushforward_rank},
                         {"overlap_dim", r2.overlap_dim}};
  return out;
}

CommandOutcome cmd_example33(const JobConfig& cfg) {
  CommandOutcome out;
  out.report = example33_suite(cfg.sample, cfg.tol, cfg.threads);
  return out;
}

}  // namespace

void JobConfig::validate() const {
  tol.validate();
  sample.validate();
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (command.empty()) throw ParseError("no command given");
}

CommandOutcome run(const JobConfig& cfg) {
  cfg.validate();
  try {
    if (cfg.command == "classify") return cmd_classify(cfg);
    if (cfg.command == "kernel-check") return cmd_kernel_check(cfg);
    if (cfg.command == "realize-from-pair") return cmd_realize_from_pair(cfg);
    if (cfg.command == "realize-with-pair") return realize_like(cfg, false);
    if (cfg.command == "complete") return realize_like(cfg, true);
    if (cfg.command == "representers") return cmd_representers(cfg);
    if (cfg.command == "gleason") return cmd_gleason(cfg);
    if (cfg.command == "equivalence") return cmd_equivalence(cfg);
    if (cfg.command == "overlap-demo") return cmd_overlap_demo(cfg);
    if (cfg.command == "example33") return cmd_example33(cfg);
  } catch (const ParseError&) {
    throw;  // input problems abort the run (exit code 2)
  } catch (const Error& e) {
    // domain failures become failed checks, not crashes
    CommandOutcome out;
    out.report.add("domain_error", false, 0.0, e.what());
    return out;
  }
  throw ParseError("unknown command '" + cfg.command + "'");
}

Json machine_report(const JobConfig& cfg, const CommandOutcome& outcome) {
  Json j;
  j["command"] = cfg.command;
  Json jin;
  for (const auto& [k, v] : cfg.inputs) jin[k] = v;
  j["inputs"] = std::move(jin);
  j["config"] = {{"seed", cfg.sample.seed},
                 {"samples", cfg.sample.sample_count},
                 {"radius", cfg.sample.sample_radius},
                 {"tol_rank", cfg.tol.rank_tol},
                 {"tol_psd", cfg.tol.psd_tol},
                 {"tol_eq", cfg.tol.eq_tol},
                 {"threads", cfg.threads}};
  Json rep = report_to_json(outcome.report);
  j["checks"] = rep["checks"];
  j["overall"] = rep["overall"];
  if (!outcome.result.is_null()) j["result"] = outcome.result;
  return j;
}

int exit_code(const CommandOutcome& outcome) {
  return outcome.report.overall_pass() ? 0 : 1;
}

}  // namespace dareal::cli
