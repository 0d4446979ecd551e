#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "curtis/tame.hpp"

namespace curtis::cli {

struct SessionConfig {
  std::int64_t ell = 3;
  std::int64_t q = 2;
  int n = 2;
  std::string mode = "rectified";
  std::int64_t conductor = 0;  // 0: chosen per check
  std::int64_t value_modulus = 12;
  int window = 1;
  std::size_t samples = 50;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::int64_t r = 7;
  bool exhaustive = false;
  bool timings = false;

  ModeConfig mode_config() const { return ModeConfig::parse(mode); }
  std::shared_ptr<const TameParams> params() const { return std::make_shared<const TameParams>(ell, q, n); }
  /// Throws DomainError on an invalid combination.
  void validate() const;
};

enum class Status { pass, fail, skipped };

struct Outcome {
  Status status = Status::pass;
  std::string detail;
  std::string witness;
};

struct Check {
  std::string suite;
  std::string name;
  std::string anchor;
  std::function<Outcome(const SessionConfig&)> run;
};

struct CheckResult {
  std::string key;
  std::string suite;
  std::string name;
  std::string anchor;
  Outcome outcome;
  double millis = 0;
};

const std::vector<std::string>& suite_names();
std::vector<Check> build_suite(const std::string& suite, const SessionConfig& cfg);
/// Runs checks with at most cfg.jobs in flight; results sorted by key.
std::vector<CheckResult> run_checks(const std::vector<Check>& checks, const SessionConfig& cfg);

std::string status_name(Status s);

}  // namespace curtis::cli
