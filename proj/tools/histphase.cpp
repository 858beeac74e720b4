// Copyright 2026 The histphase Authors
// SPDX-License-Identifier: Apache-2.0

// histphase <scenario> [--param k=v]... [--n-steps N] [--seed S]
//           [--format csv|json] [--output PATH] [--config PATH] [--input PATH]
//
// Exit status: 0 when every scenario-internal check passed, 1 when a check
// failed (a JSON failure record goes to stderr), 2 on configuration errors.

#include <histphase/scenarios.hpp>

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace {

using nlohmann::json;

int fail_config(const std::string& message) {
  std::cerr << json{{"status", "config_error"}, {"message", message}}.dump() << '\n';
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric phases and decoherence functionals of quantum histories"};
  app.footer(histphase::scenarios_help());

  std::string scenario;
  std::vector<std::string> params;
  std::optional<int> n_steps;
  std::optional<std::uint64_t> seed;
  std::string format;
  std::string output;
  std::string config_path;
  std::string input;
  bool list = false;

  app.add_option("scenario", scenario, "Scenario name (see --list-scenarios)");
  app.add_option("--param,-p", params, "Scenario parameter as name=value (repeatable)");
  app.add_option("--n-steps,-n", n_steps, "Resolution, within [4, 2^20]");
  app.add_option("--seed,-s", seed, "Seed for randomized scenarios");
  app.add_option("--format,-f", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output,-o", output, "Output path ('-' for stdout)");
  app.add_option("--config,-c", config_path, "JSON file with the full configuration");
  app.add_option("--input,-i", input, "Input document (history_set scenario)");
  app.add_flag("--list-scenarios", list, "List scenario names and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (list) {
    for (const auto& s : histphase::scenario_registry()) std::cout << s.name << '\n';
    return 0;
  }

  histphase::ScenarioConfig config;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) return fail_config("cannot open config " + config_path);
      config = histphase::config_from_json(json::parse(in));
    }
    // Command-line values override the config file.
    if (!scenario.empty()) config.scenario = scenario;
    for (const auto& kv : params) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) return fail_config("expected name=value, got '" + kv + "'");
      std::size_t used = 0;
      const std::string value = kv.substr(eq + 1);
      double v = 0.0;
      try {
        v = std::stod(value, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != value.size()) return fail_config("parameter value is not a number: '" + kv + "'");
      config.params[kv.substr(0, eq)] = v;
    }
    if (n_steps) config.n_steps = n_steps;
    if (seed) config.seed = *seed;
    if (!format.empty()) config.format = format;
    if (!output.empty()) config.output = output;
    if (!input.empty()) config.input = input;
    if (config.scenario.empty()) return fail_config("no scenario given (see --list-scenarios)");

    const histphase::RunRecord record = histphase::run_scenario(config);

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (config.output != "-") {
      file.open(config.output, std::ios::binary);
      if (!file) return fail_config("cannot open output " + config.output);
      os = &file;
    }
    if (config.format == "json") {
      histphase::write_json(record, *os);
    } else {
      histphase::write_csv(record, *os);
    }

    std::cerr << record.scenario << ": " << record.rows.size() << " rows in " << record.wall_time << " s\n";
    if (!record.ok()) {
      std::cerr << json{{"status", "failed"}, {"scenario", record.scenario}, {"failures", record.failures}}.dump()
                << '\n';
      return 1;
    }
    return 0;
  } catch (const histphase::ConfigError& e) {
    return fail_config(e.what());
  } catch (const json::exception& e) {
    return fail_config(std::string("invalid JSON: ") + e.what());
  }
}
