#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "hurwitz/braid.hpp"

namespace hurwitz {

enum ExitCode { kExitOk = 0, kExitConfig = 2, kExitBudget = 3, kExitInconsistent = 4 };

struct RunConfig {
  nlohmann::json spec;
  std::string command = "report";  // enumerate orbits cusps genus shmatrix lift tower report
  std::string format = "json";     // json tsv dot text
  std::string out_dir;             // empty: only the returned text
  std::string cache_dir;           // empty: no orbit cache
  int jobs = 0;                    // 0: keep the spec value
  std::size_t budget = 0;          // 0: keep the spec value
};

struct RunResult {
  int exit_code = kExitOk;
  nlohmann::json report;
  std::string text;   // report rendered in the requested format
  std::string error;  // message for nonzero exits
  bool cache_hit = false;
};

RunResult run(const RunConfig& cfg);

// Applies HURWITZ_BUDGET and HURWITZ_CACHE where the config leaves them unset.
void apply_env(RunConfig& cfg);

// Orbit cache.
std::string spec_hash(const NielsenSpec& spec);
nlohmann::json orbits_to_json(const NielsenSpec& spec, const OrbitIndex& idx);
OrbitIndex orbits_from_json(const NielsenSpec& spec, const nlohmann::json& j);

std::string render(const nlohmann::json& report, const std::string& command, const std::string& format);

}  // namespace hurwitz
