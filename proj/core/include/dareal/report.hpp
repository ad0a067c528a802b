#pragma once

#include <string>
#include <vector>

namespace dareal {

/// One named check with its residual; Skip marks checks whose preconditions
/// did not apply.
struct CheckRecord {
  enum class Status { Pass, Fail, Skip };
  std::string name;
  Status status = Status::Skip;
  double residual = 0.0;
  std::string details;
};

struct Report {
  std::vector<CheckRecord> checks;

  void add(std::string name, bool pass, double residual, std::string details = "") {
    checks.push_back({std::move(name),
                      pass ? CheckRecord::Status::Pass : CheckRecord::Status::Fail,
                      residual, std::move(details)});
  }
  void skip(std::string name, std::string details = "") {
    checks.push_back({std::move(name), CheckRecord::Status::Skip, 0.0,
                      std::move(details)});
  }

  bool overall_pass() const {
    for (const auto& c : checks)
      if (c.status == CheckRecord::Status::Fail) return false;
    return true;
  }
};

}  // namespace dareal
