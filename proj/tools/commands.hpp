#pragma once

#include <map>
#include <optional>
#include <string>

#include <dareal/report.hpp>
#include <dareal/sampling.hpp>
#include <dareal/types.hpp>

#include "io.hpp"

namespace dareal::cli {

/// One job: a command, its input files, and the run-wide knobs.  All
/// randomness in a run derives from `sample.seed`, so identical configs
/// produce byte-identical machine reports.
struct JobConfig {
  std::string command;
  std::map<std::string, std::string> inputs;  // flag name -> file path
  Tolerances tol;
  SampleConfig sample;
  Index dim_u = 0;          // realize-from-pair / representers
  int threads = 1;
  std::string out_path;     // machine report destination ("" = none)
  std::string artifact_path;  // colligation/result file destination

  void validate() const;
};

struct CommandOutcome {
  Report report;
  Json result;  // command-specific payload for the machine report
};

/// Dispatches a validated config.  Domain errors surface as failed checks in
/// the report, not exceptions; input errors (missing/ill-formed files) throw
/// ParseError/DimensionMismatch before any work runs.
CommandOutcome run(const JobConfig& cfg);

/// Machine rendering: config echo + checks + payload.  Deterministic bytes
/// for a fixed config.
Json machine_report(const JobConfig& cfg, const CommandOutcome& outcome);

/// Exit code: 0 pass, 1 check failure (2 is reserved for input errors and
/// produced by the frontend).
int exit_code(const CommandOutcome& outcome);

}  // namespace dareal::cli
