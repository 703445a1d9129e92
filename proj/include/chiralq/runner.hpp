#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chiralq/scenario.hpp"

namespace chiralq {

class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

struct OutputRecord {
  std::string path;
  std::uint64_t bytes = 0;
  std::string checksum;  // fnv1a64 of the file contents
};

struct RunManifest {
  std::string scenario_name;
  std::string kind;
  std::string scenario_hash;  // fnv1a64 of the resolved config text
  std::string library_version;
  long seed = 0;
  double wall_clock_ms = 0.0;
  bool converged = true;  // false propagates as exit status 3
  std::vector<OutputRecord> outputs;
};

struct RunOptions {
  std::string out_dir = ".";
  int jobs = 1;
  std::optional<long> seed_override;
  bool quiet = false;
};

// Runs a scenario and writes its outputs (<base>.csv, <base>_summary.json,
// <base>_manifest.json) under out_dir. Data outputs are byte-deterministic
// for a fixed scenario and seed; the manifest additionally records
// wall-clock time and is therefore excluded from reproducibility
// comparisons. Throws IoError on filesystem failures.
RunManifest run_scenario(const Scenario& scenario, const RunOptions& options = {});

}  // namespace chiralq
