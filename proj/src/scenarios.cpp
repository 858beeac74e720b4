// Copyright 2026 The histphase Authors
// SPDX-License-Identifier: Apache-2.0

#include <histphase/scenarios.hpp>

#include <histphase/decoherence.hpp>
#include <histphase/json_io.hpp>
#include <histphase/random.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace histphase {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

double param(const RunRecord& r, const std::string& name) { return r.params.at(name); }

void check(RunRecord& r, bool condition, const std::string& what) {
  if (!condition) r.failures.push_back(what);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool in_principal_range(double a) { return a > -kPi && a <= kPi; }

/// n_min, 2 n_min, 4 n_min, … up to n_max.
std::vector<int> doubling_sequence(int n_min, int n_max) {
  std::vector<int> out;
  for (long long n = n_min; n <= n_max; n *= 2) out.push_back(static_cast<int>(n));
  return out;
}

// ---------------------------------------------------------------------------
// bloch_loop

void bloch_loop(const ScenarioConfig&, RunRecord& r) {
  const double theta = param(r, "theta");
  if (!(theta > 0.0 && theta < kPi)) throw ConfigError("bloch_loop: theta must lie in (0, pi)");
  const int n_ref = static_cast<int>(param(r, "reference_n"));
  const int n_min = static_cast<int>(param(r, "n_min"));
  if (n_ref < 8 || n_min < 4) throw ConfigError("bloch_loop: reference_n >= 8 and n_min >= 4 required");

  const LoopGenerator loop = bloch_circle(theta);
  // Richardson extrapolation of the second-order discrete holonomy.
  const double a_half = *loop_holonomy(sample_loop(loop, n_ref / 2)).angle;
  const double a_full = *loop_holonomy(sample_loop(loop, n_ref)).angle;
  const double reference =
      wrap_angle(a_full + std::remainder(a_full - a_half, 2.0 * kPi) / 3.0);
  r.summary["reference_angle"] = reference;
  r.summary["solid_angle_phase"] = wrap_angle(-kPi * (1.0 - std::cos(theta)));

  for (int n : doubling_sequence(n_min, r.n_steps)) {
    const DiscretePath path = sample_loop(loop, n);
    const PhaseResult h = loop_holonomy(path);
    check(r, h.valid(), "holonomy undefined at n=" + std::to_string(n));
    if (!h.valid()) continue;
    const Complex tr = trace_class_operator(History::fine_grained(path),
                                            PropagatorTable::identity(path.times(), 2));
    const double tr_angle = wrap_angle(std::arg(tr));
    const double err = angle_distance(*h.angle, reference);
    check(r, angle_distance(tr_angle, *h.angle) < 1e-12,
          "trace/holonomy identity violated at n=" + std::to_string(n));
    check(r, in_principal_range(*h.angle) && in_principal_range(tr_angle),
          "angle outside (-pi, pi] at n=" + std::to_string(n));
    r.rows.push_back({static_cast<long long>(n), *h.angle, err, tr_angle});
  }
}

// ---------------------------------------------------------------------------
// adiabatic_spin

void adiabatic_spin(const ScenarioConfig&, RunRecord& r) {
  const double theta = param(r, "theta");
  const double t0 = param(r, "ramp_time");
  const double omega = param(r, "omega") * param(r, "scale");
  const int doublings = static_cast<int>(param(r, "doublings"));
  if (!(t0 > 0.0)) throw ConfigError("adiabatic_spin: ramp_time must be positive");
  if (!(theta > 0.0 && theta < kPi)) throw ConfigError("adiabatic_spin: theta must lie in (0, pi)");
  if (doublings < 0 || doublings > 16) throw ConfigError("adiabatic_spin: doublings must be in [0, 16]");

  const double target = wrap_angle(-kPi * (1.0 - std::cos(theta)));
  r.summary["adiabatic_geometric_angle"] = target;
  double prev_err = -1.0;
  for (int k = 0; k <= doublings; ++k) {
    const double ramp = t0 * std::ldexp(1.0, k);
    const TimeDependentHamiltonian h = cone_field(theta, omega, ramp);
    const Trajectory traj =
        evolve_state(propagate(h, uniform_grid(0.0, ramp, r.n_steps)), bloch_state(theta, 0.0));
    const PhaseSplit split = phase_split(traj, h);
    const double err = angle_distance(split.geometric_angle, target);
    check(r, angle_distance(split.total_angle, split.geometric_angle + split.dynamical_phase) < 1e-3,
          "phase split additivity violated at T=" + fmt(ramp));
    if (prev_err >= 0.0) {
      check(r, err <= 1.1 * prev_err, "geometric error did not decrease at T=" + fmt(ramp));
    }
    prev_err = err;
    r.rows.push_back({ramp, split.total_angle, split.dynamical_angle, split.geometric_angle, err});
  }
}

// ---------------------------------------------------------------------------
// double_slit and history_set share the decoherence-matrix report.

void report_decoherence(const DecoherenceMatrix& m, double epsilon, RunRecord& r) {
  const std::size_t n = m.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const Complex d = m.values(a, b);
      Cell defect;
      if (a != b) {
        try {
          const double i = interference(m, a, b);
          defect = i;
          check(r, std::abs(i - 2.0 * d.real()) < 1e-12,
                "interference identity violated for pair " + m.set.label(a) + "," + m.set.label(b));
        } catch (const InvariantError&) {
          // not disjoint in a single slot
        }
      }
      r.rows.push_back({static_cast<long long>(a), static_cast<long long>(b), m.set.label(a),
                        m.set.label(b), d.real(), d.imag(), std::abs(d), defect});
    }
  }
  const ConsistencyReport rep = consistency_check(m, epsilon);
  json probs = json::array();
  for (std::size_t a = 0; a < n; ++a) probs.push_back(probability(m, a));
  r.summary["probabilities"] = probs;
  r.summary["grand_sum"] = io::to_json(m.grand_sum);
  r.summary["consistency"] = io::to_json(rep);
  r.summary["decoherence_matrix"] = io::to_json(m);
  json hist = json::array();
  for (const auto& h : m.set.histories) hist.push_back(io::to_json(h));
  r.summary["histories"] = hist;
  check(r, std::abs(m.grand_sum - Complex(1.0)) < 1e-9, "grand sum differs from 1");
}

void double_slit(const ScenarioConfig&, RunRecord& r) {
  const bool final_z = param(r, "final_z") != 0.0;
  const double epsilon = param(r, "epsilon");
  if (!(epsilon > 0.0)) throw ConfigError("double_slit: epsilon must be positive");
  const StateVector e0 = StateVector::basis(2, 0), e1 = StateVector::basis(2, 1);
  const StateVector plus = normalize(e0.amplitudes() + e1.amplitudes());
  const StateVector minus = normalize(e0.amplitudes() - e1.amplitudes());
  const Projector p0 = projector_from_ray(Ray(e0)), p1 = projector_from_ray(Ray(e1));
  std::vector<Projector> last = final_z
      ? std::vector<Projector>{p0, p1}
      : std::vector<Projector>{projector_from_ray(Ray(plus)), projector_from_ray(Ray(minus))};
  const HistorySet set = build_history_set({{p0, p1}, last}, {1.0, 2.0});
  const DecoherenceMatrix m = build_decoherence_matrix(
      set, DensityMatrix::pure(plus), PropagatorTable::identity({0.0, 1.0, 2.0}, 2));
  report_decoherence(m, epsilon, r);

  const ConsistencyReport rep = consistency_check(m, epsilon);
  if (final_z) {
    check(r, rep.is_consistent, "orthogonal-final variant should be consistent");
  } else {
    // Histories 0 = (e0, +) and 1 = (e1, +): every entry 1/4, defect 1/2.
    for (std::size_t a : {0u, 1u}) {
      for (std::size_t b : {0u, 1u}) {
        check(r, std::abs(m.values(a, b) - Complex(0.25)) < 1e-12, "two-branch entry differs from 1/4");
      }
    }
    check(r, std::abs(interference(m, 0, 1) - 0.5) < 1e-12, "two-branch interference differs from 1/2");
    check(r, !rep.is_consistent || epsilon >= 0.25, "two-branch set unexpectedly consistent");
  }
}

std::vector<Projector> projectors_from_json(const json& list) {
  std::vector<Projector> out;
  for (const auto& p : list) out.emplace_back(io::matrix_from_json(p));
  return out;
}

void history_set(const ScenarioConfig& cfg, RunRecord& r) {
  if (cfg.input.empty()) throw ConfigError("history_set: --input PATH is required");
  std::ifstream in(cfg.input);
  if (!in) throw ConfigError("history_set: cannot open " + cfg.input);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("history_set: invalid JSON: ") + e.what());
  }
  for (const char* key : {"times", "alternatives", "rho0"}) {
    if (!doc.contains(key)) throw ConfigError(std::string("history_set: missing '") + key + "'");
  }
  const auto times = doc.at("times").get<std::vector<double>>();
  std::vector<std::vector<Projector>> alts;
  for (const auto& slot : doc.at("alternatives")) alts.push_back(projectors_from_json(slot));
  const DensityMatrix rho0(io::matrix_from_json(doc.at("rho0")));
  const HistorySet set = build_history_set(alts, times);

  std::vector<double> grid{0.0};
  for (double t : times) {
    if (t > grid.back()) grid.push_back(t);
  }
  const Eigen::Index d = rho0.dim();
  const PropagatorTable table =
      doc.contains("hamiltonian")
          ? propagate(TimeDependentHamiltonian::constant(io::matrix_from_json(doc.at("hamiltonian"))),
                      grid)
          : PropagatorTable::identity(grid, d);
  report_decoherence(build_decoherence_matrix(set, rho0, table), param(r, "epsilon"), r);
}

// ---------------------------------------------------------------------------
// convergence

void convergence(const ScenarioConfig&, RunRecord& r) {
  const double theta = param(r, "theta");
  const bool constant = param(r, "constant") != 0.0;
  const int n_min = static_cast<int>(param(r, "n_min"));
  if (n_min < 4) throw ConfigError("convergence: n_min must be >= 4");
  if (!constant && !(theta > 0.0 && theta < kPi)) throw ConfigError("convergence: theta must lie in (0, pi)");
  const std::vector<int> ns = doubling_sequence(n_min, r.n_steps);
  if (ns.size() < 2) throw ConfigError("convergence: need at least two n values (n_steps >= 2 n_min)");

  const LoopGenerator loop = constant
      ? LoopGenerator([](double) { return Ray(StateVector::basis(2, 0)); })
      : bloch_circle(theta);
  const std::vector<ConvergenceRow> rows = convergence_study(loop, ns);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    check(r, in_principal_range(row.angle), "angle outside (-pi, pi]");
    if (i > 0) {
      check(r, row.abs_error_vs_reference <= std::max(rows[i - 1].abs_error_vs_reference, kConvergenceFloor),
            "error increased at n=" + std::to_string(row.n_steps));
    }
    r.rows.push_back({static_cast<long long>(row.n_steps), row.angle, row.abs_error_vs_reference});
  }
  const double order = convergence_order(rows);
  const bool exact = std::isinf(order);
  r.summary["exact_at_all_n"] = exact;
  r.summary["fitted_order"] = std::isfinite(order) ? json(order) : json(nullptr);
  if (std::isfinite(order)) {
    check(r, order >= param(r, "min_order"), "fitted convergence order " + fmt(order) + " below min_order");
  }
}

// ---------------------------------------------------------------------------
// df_coarse_check

void df_coarse_check(const ScenarioConfig& cfg, RunRecord& r) {
  const int dim = static_cast<int>(param(r, "dim"));
  const int rank = static_cast<int>(param(r, "rank"));
  const int n_times = static_cast<int>(param(r, "times"));
  const int trials = static_cast<int>(param(r, "trials"));
  const double tolerance = param(r, "tolerance");
  if (dim < 2 || dim > 4) throw ConfigError("df_coarse_check: dim must be in [2, 4]");
  if (n_times < 1 || n_times > 3) throw ConfigError("df_coarse_check: times must be in [1, 3]");
  if (rank < 1 || rank > dim) throw ConfigError("df_coarse_check: rank must be in [1, dim]");
  if (trials < 1) throw ConfigError("df_coarse_check: trials must be positive");

  Rng rng(cfg.seed);
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<double> grid = uniform_grid(0.0, n_times, n_times * r.n_steps);
    const PropagatorTable table =
        propagate(TimeDependentHamiltonian::constant(random_hermitian(rng, dim)), grid);
    auto random_history = [&] {
      std::vector<Event> ev;
      for (int k = 1; k <= n_times; ++k) ev.push_back({grid[k * r.n_steps], random_projector(rng, dim, rank)});
      return History(std::move(ev));
    };
    const History a = random_history();
    const History b = random_history();
    const DensityMatrix rho0 = random_density(rng, dim);

    const Complex op = decoherence_functional(a, b, rho0, table);
    const Complex coarse = df_coarse_sum(a, b, rho0, std::nullopt, table);
    const double disc = std::abs(coarse - op);
    const double phase_disc = std::abs(coarse_phase_sum(a, table) - trace_class_operator(a, table));
    worst = std::max({worst, disc, phase_disc});
    check(r, disc < tolerance, "df_coarse_sum discrepancy " + fmt(disc) + " in trial " + std::to_string(trial));
    check(r, phase_disc < tolerance,
          "coarse_phase_sum discrepancy " + fmt(phase_disc) + " in trial " + std::to_string(trial));
    r.rows.push_back({static_cast<long long>(trial), op.real(), op.imag(), coarse.real(), coarse.imag(),
                      disc, phase_disc});
  }
  r.summary["max_discrepancy"] = worst;
}

// ---------------------------------------------------------------------------

const std::vector<std::string> kDecoherenceColumns = {"alpha", "beta", "alpha_label", "beta_label",
                                                       "d_re", "d_im", "d_abs", "interference"};

}  // namespace

const std::vector<ScenarioInfo>& scenario_registry() {
  static const std::vector<ScenarioInfo> registry = {
      {"bloch_loop",
       "Holonomy of a Bloch latitude circle at n = n_min, 2 n_min, ..., n_steps, against a "
       "Richardson reference, with the trace of the fine-grained class operator alongside.",
       {"n", "holonomy_angle", "error_vs_reference", "trace_class_operator_angle"},
       {{"theta", kPi / 2, "colatitude in (0, pi)"},
        {"reference_n", 16384, "reference resolution (Richardson with reference_n/2)"},
        {"n_min", 8, "smallest sample count"}},
       1024,
       bloch_loop},
      {"adiabatic_spin",
       "Spin-1/2 driven once around the colatitude-theta cone with ramp times T0 * 2^k; "
       "phase split of the evolved state.",
       {"T", "total_angle", "dynamical_angle", "geometric_angle", "geometric_error"},
       {{"theta", kPi / 3, "cone colatitude in (0, pi)"},
        {"ramp_time", 100, "first ramp time T0 (> 0)"},
        {"doublings", 4, "number of ramp-time doublings"},
        {"omega", 1, "field strength (level splitting)"},
        {"scale", 1, "overall Hamiltonian scale factor"}},
       4096,
       adiabatic_spin},
      {"double_slit",
       "Two-time C^2 history set: {e0, e1} at t=1, {+, -} (or {e0, e1} with final_z=1) at t=2, "
       "rho0 = |+><+|. Full decoherence matrix, interference and consistency.",
       kDecoherenceColumns,
       {{"final_z", 0, "1 selects the orthogonal (z-basis) final alternatives"},
        {"epsilon", 0.1, "consistency tolerance"}},
       4,
       double_slit},
      {"convergence",
       "Convergence study of the Bloch-circle holonomy at n = n_min * 2^k <= n_steps, errors "
       "against the largest n, with fitted order in the summary.",
       {"n_steps", "angle", "abs_error"},
       {{"theta", kPi / 2, "colatitude (pi/2 is the equator)"},
        {"constant", 0, "1 selects the constant loop family"},
        {"n_min", 8, "smallest sample count"},
        {"min_order", 1.0, "required fitted order when finite"}},
       128,
       convergence},
      {"df_coarse_check",
       "Random seeded coarse-grained history pairs: fine-grained double sum against the "
       "operator-form decoherence functional, and the coarse phase sum against Tr C.",
       {"trial", "df_operator_re", "df_operator_im", "df_coarse_re", "df_coarse_im", "discrepancy",
        "phase_sum_discrepancy"},
       {{"dim", 3, "Hilbert space dimension in [2, 4]"},
        {"rank", 2, "projector rank"},
        {"times", 3, "number of event times in [1, 3]"},
        {"trials", 20, "number of random trials"},
        {"tolerance", 1e-9, "maximum allowed discrepancy"}},
       4,
       df_coarse_check},
      {"history_set",
       "Decoherence matrix of a history set read from --input (JSON: times, alternatives, rho0, "
       "optional constant hamiltonian).",
       kDecoherenceColumns,
       {{"epsilon", 1e-10, "consistency tolerance"}},
       4,
       history_set},
  };
  return registry;
}

const ScenarioInfo& find_scenario(const std::string& name) {
  for (const auto& s : scenario_registry()) {
    if (s.name == name) return s;
  }
  throw ConfigError("unknown scenario '" + name + "' (see --list-scenarios)");
}

void validate_config(const ScenarioConfig& config) {
  const ScenarioInfo& info = find_scenario(config.scenario);
  for (const auto& [name, value] : config.params) {
    bool known = false;
    for (const auto& p : info.params) known = known || p.name == name;
    if (!known) throw ConfigError("unknown parameter '" + name + "' for scenario " + info.name);
    if (!std::isfinite(value)) throw ConfigError("parameter '" + name + "' is not finite");
  }
  if (config.n_steps && (*config.n_steps < 4 || *config.n_steps > (1 << 20))) {
    throw ConfigError("n_steps must lie in [4, 2^20]");
  }
  if (config.format != "csv" && config.format != "json") {
    throw ConfigError("format must be 'csv' or 'json'");
  }
}

ScenarioConfig config_from_json(const nlohmann::json& j) {
  ScenarioConfig c;
  try {
    c.scenario = j.at("scenario").get<std::string>();
    if (j.contains("params")) c.params = j.at("params").get<std::map<std::string, double>>();
    if (j.contains("n_steps")) c.n_steps = j.at("n_steps").get<int>();
    if (j.contains("output")) c.output = j.at("output").get<std::string>();
    if (j.contains("format")) c.format = j.at("format").get<std::string>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("input")) c.input = j.at("input").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  for (const auto& [key, _] : j.items()) {
    static const std::vector<std::string> known = {"scenario", "params", "n_steps", "output",
                                                   "format", "seed", "input"};
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown config field '" + key + "'");
    }
  }
  return c;
}

RunRecord run_scenario(const ScenarioConfig& config) {
  validate_config(config);
  const ScenarioInfo& info = find_scenario(config.scenario);
  RunRecord r;
  r.scenario = info.name;
  r.columns = info.columns;
  r.seed = config.seed;
  r.n_steps = config.n_steps.value_or(info.default_n_steps);
  for (const auto& p : info.params) {
    auto it = config.params.find(p.name);
    r.params[p.name] = it == config.params.end() ? p.default_value : it->second;
  }
  const auto start = std::chrono::steady_clock::now();
  try {
    info.run(config, r);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    r.failures.push_back(std::string("error: ") + e.what());
  }
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.rows.empty() && r.failures.empty()) r.failures.push_back("no rows produced");
  return r;
}

namespace {
RunRecord run_named(ScenarioConfig config, const char* name) {
  config.scenario = name;
  return run_scenario(config);
}
}  // namespace

RunRecord run_bloch_loop(const ScenarioConfig& c) { return run_named(c, "bloch_loop"); }
RunRecord run_adiabatic_spin(const ScenarioConfig& c) { return run_named(c, "adiabatic_spin"); }
RunRecord run_double_slit(const ScenarioConfig& c) { return run_named(c, "double_slit"); }
RunRecord run_convergence(const ScenarioConfig& c) { return run_named(c, "convergence"); }
RunRecord run_df_coarse_check(const ScenarioConfig& c) { return run_named(c, "df_coarse_check"); }

// ---------------------------------------------------------------------------
// Output

namespace {

std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return std::isfinite(v) ? fmt(v) : "";
        } else {
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string q = "\"";
          for (char ch : v) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
          return q + "\"";
        }
      },
      c);
}

json json_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          return std::isfinite(v) ? json(v) : json(nullptr);
        } else {
          return v;
        }
      },
      c);
}

}  // namespace

void write_csv(const RunRecord& record, std::ostream& os) {
  for (std::size_t i = 0; i < record.columns.size(); ++i) os << (i ? "," : "") << record.columns[i];
  os << '\n';
  for (const auto& row : record.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
}

json record_to_json(const RunRecord& record) {
  json rows = json::array();
  for (const auto& row : record.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size() && i < record.columns.size(); ++i) {
      obj[record.columns[i]] = json_cell(row[i]);
    }
    rows.push_back(std::move(obj));
  }
  return {{"metadata",
           {{"scenario", record.scenario},
            {"params", record.params},
            {"n_steps", record.n_steps},
            {"seed", record.seed},
            {"library_version", record.library_version},
            {"columns", record.columns},
            {"status", record.ok() ? "ok" : "failed"},
            {"failures", record.failures},
            {"summary", record.summary}}},
          {"rows", rows}};
}

void write_json(const RunRecord& record, std::ostream& os) { os << record_to_json(record).dump(2) << '\n'; }

std::string scenarios_help() {
  std::ostringstream os;
  os << "Scenarios (angles in radians, principal range (-pi, pi]):\n";
  for (const auto& s : scenario_registry()) {
    os << "\n  " << s.name << "  (default --n-steps " << s.default_n_steps << ")\n    " << s.summary
       << "\n    columns: ";
    for (std::size_t i = 0; i < s.columns.size(); ++i) os << (i ? ", " : "") << s.columns[i];
    os << "\n    params:\n";
    for (const auto& p : s.params) {
      os << "      " << p.name << " (default " << fmt(p.default_value) << "): " << p.help << '\n';
    }
  }
  return os.str();
}

}  // namespace histphase
