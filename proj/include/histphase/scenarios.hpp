// Copyright 2026 The histphase Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file scenarios.hpp
 * @brief Named experiments behind the `histphase` command line tool.
 *
 * Each scenario validates its configuration before computing anything,
 * produces a fixed-column table, and records every internal assertion that
 * failed. Output is deterministic for a given configuration and seed.
 */

#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace histphase {

inline constexpr const char* kLibraryVersion = "0.1.0";

struct ScenarioConfig {
  std::string scenario;
  std::map<std::string, double> params;
  std::optional<int> n_steps;  ///< scenario default when empty
  std::string output = "-";    ///< "-" writes to stdout
  std::string format = "csv";  ///< "csv" | "json"
  std::uint64_t seed = 0;
  std::string input;           ///< input document, history_set only
};

/// Parses the JSON form of ScenarioConfig (same field names).
ScenarioConfig config_from_json(const nlohmann::json& j);

/// Empty cell (std::monostate) is written as an empty CSV field / JSON null.
using Cell = std::variant<std::monostate, long long, double, std::string>;

struct RunRecord {
  std::string scenario;
  std::map<std::string, double> params;  ///< resolved, defaults included
  int n_steps = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::json summary = nlohmann::json::object();
  std::vector<std::string> failures;
  double wall_time = 0.0;  ///< seconds; reported on stderr, not in output files
  std::string library_version = kLibraryVersion;

  bool ok() const { return failures.empty() && !rows.empty(); }
};

struct ParamSpec {
  std::string name;
  double default_value;
  std::string help;
};

struct ScenarioInfo {
  std::string name;
  std::string summary;
  std::vector<std::string> columns;
  std::vector<ParamSpec> params;
  int default_n_steps;
  std::function<void(const ScenarioConfig&, RunRecord&)> run;
};

/// Raised for configuration problems detected before any computation.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<ScenarioInfo>& scenario_registry();
const ScenarioInfo& find_scenario(const std::string& name);

/// Validates `config` (scenario name, parameter names, n_steps ∈ [4, 2²⁰],
/// format) and throws ConfigError on the first problem.
void validate_config(const ScenarioConfig& config);

/// Validates, runs and times the scenario.
RunRecord run_scenario(const ScenarioConfig& config);

RunRecord run_bloch_loop(const ScenarioConfig& config);
RunRecord run_adiabatic_spin(const ScenarioConfig& config);
RunRecord run_double_slit(const ScenarioConfig& config);
RunRecord run_convergence(const ScenarioConfig& config);
RunRecord run_df_coarse_check(const ScenarioConfig& config);

void write_csv(const RunRecord& record, std::ostream& os);
void write_json(const RunRecord& record, std::ostream& os);
nlohmann::json record_to_json(const RunRecord& record);

/// Text for `--help`: every scenario with its parameters and columns.
std::string scenarios_help();

}  // namespace histphase
