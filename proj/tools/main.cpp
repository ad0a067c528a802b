#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

using dareal::cli::CommandOutcome;
using dareal::cli::JobConfig;
using dareal::cli::Json;

namespace {

void apply_config_file(JobConfig& cfg, const std::string& path) {
  Json j = dareal::cli::load_json_file(path);
  if (j.contains("command")) cfg.command = j["command"].get<std::string>();
  if (j.contains("inputs"))
    for (auto& [k, v] : j["inputs"].items())
      cfg.inputs[k] = v.get<std::string>();
  if (j.contains("seed")) cfg.sample.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("samples")) cfg.sample.sample_count = j["samples"].get<int>();
  if (j.contains("radius")) cfg.sample.sample_radius = j["radius"].get<double>();
  if (j.contains("tol_rank")) cfg.tol.rank_tol = j["tol_rank"].get<double>();
  if (j.contains("tol_psd")) cfg.tol.psd_tol = j["tol_psd"].get<double>();
  if (j.contains("tol_eq")) cfg.tol.eq_tol = j["tol_eq"].get<double>();
  if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
  if (j.contains("dim_u")) cfg.dim_u = j["dim_u"].get<long long>();
  if (j.contains("out")) cfg.out_path = j["out"].get<std::string>();
  if (j.contains("artifact")) cfg.artifact_path = j["artifact"].get<std::string>();
}

// registers the per-command input-file flags
void add_input_flag(CLI::App* cmd, JobConfig& cfg, const std::string& name,
                    const std::string& desc) {
  cmd->add_option_function<std::string>(
      "--" + name, [&cfg, name](const std::string& v) { cfg.inputs[name] = v; },
      desc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "dareal - transfer-function realizations of Schur multipliers on the "
      "unit ball"};
  app.require_subcommand(0, 1);
  app.fallthrough();  // global flags may follow the subcommand

  JobConfig cfg;
  std::string config_path;
  app.add_option("--config", config_path, "JSON job config (flags override it)");
  app.add_option("--seed", cfg.sample.seed, "seed for all sampling (default 42)");
  app.add_option("--samples", cfg.sample.sample_count,
                 "seeded sample count (default 50)");
  app.add_option("--radius", cfg.sample.sample_radius,
                 "sampling radius in (0,1) (default 0.9)");
  app.add_option("--tol-rank", cfg.tol.rank_tol, "relative rank cutoff");
  app.add_option("--tol-psd", cfg.tol.psd_tol, "positivity eigenvalue floor");
  app.add_option("--tol-eq", cfg.tol.eq_tol, "identity residual bound");
  app.add_option("--threads", cfg.threads, "worker threads for point sweeps");
  app.add_option("--out", cfg.out_path, "write the machine (JSON) report here");

  auto* classify = app.add_subcommand("classify", "operator-class flags");
  add_input_flag(classify, cfg, "colligation", "colligation JSON file");
  add_input_flag(classify, cfg, "pair", "output-pair JSON file");

  auto* kernel = app.add_subcommand("kernel-check",
                                    "Gram positivity / kernel equality");
  add_input_flag(kernel, cfg, "s", "colligation file for K_S");
  add_input_flag(kernel, cfg, "pair", "pair file for K_{C,A}");
  add_input_flag(kernel, cfg, "szego", "dimension d for the Szego kernel");
  add_input_flag(kernel, cfg, "s2", "second kernel: colligation file");
  add_input_flag(kernel, cfg, "pair2", "second kernel: pair file");
  add_input_flag(kernel, cfg, "szego2", "second kernel: Szego dimension");
  add_input_flag(kernel, cfg, "points", "explicit sample points file");

  auto* rfp = app.add_subcommand("realize-from-pair",
                                 "coisometric realization by factorization");
  add_input_flag(rfp, cfg, "pair", "output-pair JSON file");
  rfp->add_option("--dimu", cfg.dim_u, "input-space dimension")->required();
  rfp->add_option("--write-colligation", cfg.artifact_path,
                  "write the resulting colligation here");

  auto* rwp = app.add_subcommand(
      "realize-with-pair", "weakly coisometric realization with a given pair");
  add_input_flag(rwp, cfg, "s", "colligation file defining S");
  add_input_flag(rwp, cfg, "pair", "output-pair JSON file");
  add_input_flag(rwp, cfg, "q", "optional completion parameter (matrix JSON)");
  rwp->add_option("--write-colligation", cfg.artifact_path,
                  "write the resulting colligation here");

  auto* complete = app.add_subcommand(
      "complete", "completion with an explicit parameter Q");
  add_input_flag(complete, cfg, "s", "colligation file defining S");
  add_input_flag(complete, cfg, "pair", "output-pair JSON file");
  add_input_flag(complete, cfg, "q", "completion parameter (matrix JSON)");
  complete->add_option("--write-colligation", cfg.artifact_path,
                       "write the resulting colligation here");

  auto* repr = app.add_subcommand("representers",
                                  "Schur-class representers of a pair");
  add_input_flag(repr, cfg, "pair", "output-pair JSON file");
  add_input_flag(repr, cfg, "g", "optional isometry G (matrix JSON)");
  repr->add_option("--dimu", cfg.dim_u, "input-space dimension")->required();

  auto* gleason = app.add_subcommand("gleason", "Gleason-problem diagnostics");
  add_input_flag(gleason, cfg, "pair", "output-pair JSON file");
  add_input_flag(gleason, cfg, "colligation", "colligation JSON file");

  auto* equiv = app.add_subcommand("equivalence",
                                   "observability and unitary equivalence");
  add_input_flag(equiv, cfg, "pair1", "first pair");
  add_input_flag(equiv, cfg, "pair2", "second pair");

  app.add_subcommand("overlap-demo",
                     "overlapping-space checks on the built-in example");
  app.add_subcommand("example33", "built-in regression suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) {
      JobConfig file_cfg;
      apply_config_file(file_cfg, config_path);
      // flags already parsed into cfg win over the file for scalars
      if (cfg.command.empty()) cfg.command = file_cfg.command;
      for (const auto& [k, v] : file_cfg.inputs)
        cfg.inputs.emplace(k, v);  // does not overwrite flag-provided inputs
      if (app.count("--seed") == 0) cfg.sample.seed = file_cfg.sample.seed;
      if (app.count("--samples") == 0)
        cfg.sample.sample_count = file_cfg.sample.sample_count;
      if (app.count("--radius") == 0)
        cfg.sample.sample_radius = file_cfg.sample.sample_radius;
      if (app.count("--tol-rank") == 0) cfg.tol.rank_tol = file_cfg.tol.rank_tol;
      if (app.count("--tol-psd") == 0) cfg.tol.psd_tol = file_cfg.tol.psd_tol;
      if (app.count("--tol-eq") == 0) cfg.tol.eq_tol = file_cfg.tol.eq_tol;
      if (app.count("--threads") == 0) cfg.threads = file_cfg.threads;
      if (cfg.dim_u == 0) cfg.dim_u = file_cfg.dim_u;
      if (cfg.out_path.empty()) cfg.out_path = file_cfg.out_path;
      if (cfg.artifact_path.empty()) cfg.artifact_path = file_cfg.artifact_path;
    }
    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();

    CommandOutcome outcome = dareal::cli::run(cfg);
    std::cout << dareal::cli::render_report_text(outcome.report);
    if (!cfg.out_path.empty()) {
      Json machine = dareal::cli::machine_report(cfg, outcome);
      dareal::cli::write_text_file(cfg.out_path, machine.dump(2) + "\n");
    }
    return dareal::cli::exit_code(outcome);
  } catch (const dareal::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const dareal::DimensionMismatch& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
