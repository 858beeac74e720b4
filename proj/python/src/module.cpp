// Copyright 2026 The histphase Authors
// SPDX-License-Identifier: Apache-2.0

#include <histphase/decoherence.hpp>
#include <histphase/geometry.hpp>
#include <histphase/histories.hpp>
#include <histphase/scenarios.hpp>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace histphase;

namespace {

DiscretePath path_from(const std::vector<CVector>& states, const std::optional<std::vector<double>>& times) {
  std::vector<Ray> rays;
  rays.reserve(states.size());
  for (const auto& s : states) rays.emplace_back(normalize(s));
  if (times) return DiscretePath(*times, std::move(rays));
  return DiscretePath::uniform(std::move(rays));
}

std::vector<CVector> amplitudes_of(const std::vector<StateVector>& states) {
  std::vector<CVector> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(s.amplitudes());
  return out;
}

std::vector<CVector> representatives(const DiscretePath& path) {
  std::vector<CVector> out;
  out.reserve(path.size());
  for (const auto& r : path.rays()) out.push_back(r.representative().amplitudes());
  return out;
}

py::dict phase_dict(const PhaseResult& r) {
  py::dict d;
  d["phase_factor"] = r.phase_factor;
  d["angle"] = r.angle ? py::cast(*r.angle) : py::none();
  d["magnitude"] = r.magnitude;
  return d;
}

History history_from(const std::vector<double>& times, const std::vector<CMatrix>& projectors) {
  if (times.size() != projectors.size()) throw DimensionError("times and projectors differ in length");
  std::vector<Event> ev;
  ev.reserve(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) ev.push_back({times[k], Projector(projectors[k])});
  return History(std::move(ev));
}

PropagatorTable table_for(const std::optional<CMatrix>& hamiltonian, const std::vector<double>& times,
                          Eigen::Index dim) {
  if (!hamiltonian) return PropagatorTable::identity(times, dim);
  return propagate(TimeDependentHamiltonian::constant(*hamiltonian), times);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Geometric phases of discrete paths and decoherence functionals of histories.";
  m.attr("__version__") = kLibraryVersion;

  auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<InvariantError>(m, "InvariantError", base.ptr());
  py::register_exception<UndefinedError>(m, "UndefinedError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("wrap_angle", &wrap_angle, py::arg("angle"));
  m.def("angle_distance", &angle_distance, py::arg("a"), py::arg("b"));

  m.def("normalize", [](const CVector& v) { return CVector(normalize(v).amplitudes()); }, py::arg("v"));
  m.def(
      "inner_product", [](const CVector& a, const CVector& b) { return inner_product(normalize(a), normalize(b)); },
      py::arg("a"), py::arg("b"), "Overlap of the normalized vectors.");
  m.def(
      "fs_distance", [](const CVector& a, const CVector& b) { return fs_distance(Ray(normalize(a)), Ray(normalize(b))); },
      py::arg("a"), py::arg("b"));
  m.def(
      "projector", [](const CVector& v) { return CMatrix(projector_from_ray(Ray(normalize(v))).matrix()); },
      py::arg("v"), "Rank-one projector onto the ray of v.");
  m.def(
      "bloch_state", [](double theta, double phi) { return CVector(bloch_state(theta, phi).amplitudes()); },
      py::arg("theta"), py::arg("phi"));
  m.def(
      "bloch_loop", [](double theta, int n) { return representatives(sample_loop(bloch_circle(theta), n)); },
      py::arg("theta"), py::arg("n"), "n samples of the circle of colatitude theta, closing point included.");

  m.def(
      "pancharatnam_product",
      [](const std::vector<CVector>& states) { return phase_dict(pancharatnam_product(path_from(states, {}))); },
      py::arg("states"));
  m.def(
      "loop_holonomy", [](const std::vector<CVector>& states) { return phase_dict(loop_holonomy(path_from(states, {}))); },
      py::arg("states"));
  m.def(
      "geometric_phase_open",
      [](const std::vector<CVector>& states) { return phase_dict(geometric_phase_open(path_from(states, {}))); },
      py::arg("states"));
  m.def(
      "horizontal_lift",
      [](const std::vector<CVector>& states) { return amplitudes_of(horizontal_lift(path_from(states, {}))); },
      py::arg("states"));

  m.def(
      "class_operator",
      [](const std::vector<double>& times, const std::vector<CMatrix>& projectors,
         const std::optional<CMatrix>& hamiltonian) {
        const History h = history_from(times, projectors);
        return class_operator(h, table_for(hamiltonian, h.times(), h.dim()));
      },
      py::arg("times"), py::arg("projectors"), py::arg("hamiltonian") = py::none(),
      "Class operator of the history; a constant Hamiltonian generates the dynamics from t = times[0].");
  m.def(
      "trace_class_operator",
      [](const std::vector<double>& times, const std::vector<CMatrix>& projectors,
         const std::optional<CMatrix>& hamiltonian) {
        const History h = history_from(times, projectors);
        return trace_class_operator(h, table_for(hamiltonian, h.times(), h.dim()));
      },
      py::arg("times"), py::arg("projectors"), py::arg("hamiltonian") = py::none());

  m.def(
      "decoherence_matrix",
      [](const std::vector<std::vector<CMatrix>>& alternatives, const std::vector<double>& times, const CMatrix& rho0,
         const std::optional<CMatrix>& hamiltonian) {
        std::vector<std::vector<Projector>> alts;
        for (const auto& slot : alternatives) {
          alts.emplace_back();
          for (const auto& p : slot) alts.back().emplace_back(p);
        }
        const HistorySet set = build_history_set(alts, times);
        const DensityMatrix rho(rho0);
        const auto dm = build_decoherence_matrix(set, rho, table_for(hamiltonian, times, rho.dim()));
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < set.size(); ++k) labels.push_back(set.label(k));
        return py::make_tuple(CMatrix(dm.values), labels);
      },
      py::arg("alternatives"), py::arg("times"), py::arg("rho0"), py::arg("hamiltonian") = py::none(),
      "Decoherence matrix of the exhaustive set built from per-time alternatives, with history labels.");

  m.def("scenario_names", [] {
    std::vector<std::string> names;
    for (const auto& info : scenario_registry()) names.push_back(info.name);
    return names;
  });
  m.def(
      "run_scenario",
      [](const std::string& name, const std::map<std::string, double>& params, std::optional<int> n_steps,
         std::uint64_t seed) {
        ScenarioConfig c;
        c.scenario = name;
        c.params = params;
        c.n_steps = n_steps;
        c.seed = seed;
        c.format = "json";
        const RunRecord r = run_scenario(c);
        std::ostringstream os;
        write_json(r, os);
        return os.str();
      },
      py::arg("name"), py::arg("params") = std::map<std::string, double>{}, py::arg("n_steps") = py::none(),
      py::arg("seed") = 0, "Runs a scenario and returns its JSON document as a string.");
}
