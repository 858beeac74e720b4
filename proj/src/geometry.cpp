// Copyright 2026 The histphase Authors
// SPDX-License-Identifier: Apache-2.0

#include <histphase/geometry.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace histphase {

DiscretePath::DiscretePath(std::vector<double> times, std::vector<Ray> rays)
    : times_(std::move(times)), rays_(std::move(rays)) {
  if (rays_.size() < 2) throw DimensionError("path needs at least two samples");
  if (times_.size() != rays_.size()) throw DimensionError("path: times/rays length mismatch");
  for (std::size_t i = 1; i < rays_.size(); ++i) {
    if (!(times_[i] > times_[i - 1])) throw InvariantError("path: times must strictly increase");
    if (rays_[i].dim() != rays_[0].dim()) throw DimensionError("path: mixed ray dimensions");
  }
}

DiscretePath DiscretePath::uniform(std::vector<Ray> rays) {
  std::vector<double> t(rays.size());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = static_cast<double>(k);
  return DiscretePath(std::move(t), std::move(rays));
}

DiscretePath DiscretePath::reversed() const {
  std::vector<double> t(times_.size());
  const double t0 = times_.front(), tf = times_.back();
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = t0 + (tf - times_[t.size() - 1 - k]);
  std::vector<Ray> r(rays_.rbegin(), rays_.rend());
  return DiscretePath(std::move(t), std::move(r));
}

double DiscretePath::fs_length() const {
  double len = 0.0;
  for (std::size_t i = 1; i < rays_.size(); ++i) len += fs_distance(rays_[i - 1], rays_[i]);
  return len;
}

PhaseResult PhaseResult::from_product(Complex product, bool vanishing) {
  PhaseResult r;
  if (vanishing) return r;
  r.phase_factor = product;
  r.magnitude = std::abs(product);
  r.angle = std::arg(product);
  if (*r.angle <= -std::numbers::pi) *r.angle += 2.0 * std::numbers::pi;
  return r;
}

Complex overlap_product(std::span<const StateVector> v) {
  if (v.size() < 2) throw DimensionError("overlap product needs at least two vectors");
  Complex acc = inner_product(v.front(), v.back());
  for (std::size_t i = 1; i < v.size(); ++i) acc *= inner_product(v[i], v[i - 1]);
  return acc;
}

PhaseResult pancharatnam_product(const DiscretePath& path) {
  const auto& rays = path.rays();
  Complex acc = inner_product(rays.front().representative(), rays.back().representative());
  bool vanishing = std::abs(acc) <= tol::kOrthogonal;
  for (std::size_t i = 1; i < rays.size(); ++i) {
    const Complex f = inner_product(rays[i].representative(), rays[i - 1].representative());
    vanishing = vanishing || std::abs(f) <= tol::kOrthogonal;
    acc *= f;
  }
  return PhaseResult::from_product(acc, vanishing);
}

PhaseResult geometric_phase_open(const DiscretePath& path) {
  const double end_overlap =
      std::abs(inner_product(path.front().representative(), path.back().representative()));
  if (end_overlap <= tol::kOrthogonal) {
    throw UndefinedError("open-path phase undefined: endpoints are orthogonal");
  }
  return pancharatnam_product(path);
}

double connection_integral(const DiscretePath& path, std::span<const StateVector> lift) {
  if (lift.size() != path.size()) throw DimensionError("lift length does not match path");
  double total = 0.0;
  for (std::size_t i = 1; i < lift.size(); ++i) {
    const Complex step = lift[i - 1].amplitudes().dot(lift[i].amplitudes() - lift[i - 1].amplitudes());
    total += (kI * step).real();
  }
  return total;
}

std::vector<StateVector> horizontal_lift(const DiscretePath& path) {
  std::vector<StateVector> lift;
  lift.reserve(path.size());
  lift.push_back(path.front().representative());
  for (std::size_t i = 1; i < path.size(); ++i) {
    const StateVector& v = path.rays()[i].representative();
    const Complex c = inner_product(lift.back(), v);
    if (std::abs(c) <= tol::kOrthogonal) {
      throw UndefinedError("horizontal lift undefined across orthogonal samples");
    }
    lift.push_back(v.with_phase(-std::arg(c)));
  }
  return lift;
}

PhaseResult loop_holonomy(const DiscretePath& path) {
  if (!(path.front() == path.back())) throw UndefinedError("not a loop: endpoint rays differ");
  return pancharatnam_product(path);
}

DiscretePath refine_path(const DiscretePath& path, int factor) {
  if (factor < 2) throw InvariantError("refinement factor must be >= 2");
  std::vector<double> t;
  std::vector<Ray> r;
  const std::size_t n = path.size();
  t.reserve((n - 1) * factor + 1);
  r.reserve((n - 1) * factor + 1);
  for (std::size_t i = 1; i < n; ++i) {
    const Ray& a = path.rays()[i - 1];
    const Ray& b = path.rays()[i];
    const double ta = path.times()[i - 1], tb = path.times()[i];
    t.push_back(ta);
    r.push_back(a);
    for (int k = 1; k < factor; ++k) {
      const double s = static_cast<double>(k) / factor;
      t.push_back(ta + s * (tb - ta));
      r.push_back(geodesic_interpolate(a, b, s));
    }
  }
  t.push_back(path.times().back());
  r.push_back(path.back());
  return DiscretePath(std::move(t), std::move(r));
}

DiscretePath sample_loop(const LoopGenerator& loop, int n) {
  if (n < 1) throw InvariantError("loop sampling needs n >= 1");
  std::vector<double> t(static_cast<std::size_t>(n) + 1);
  std::vector<Ray> r;
  r.reserve(t.size());
  for (int k = 0; k <= n; ++k) {
    t[k] = static_cast<double>(k) / n;
    r.push_back(loop(t[k]));
  }
  return DiscretePath(std::move(t), std::move(r));
}

std::vector<ConvergenceRow> convergence_study(const LoopGenerator& loop,
                                              std::span<const int> n_values) {
  if (n_values.empty()) throw InvariantError("convergence study needs at least one n");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 4) throw InvariantError("convergence study: each n must be >= 4");
    if (i > 0 && n_values[i] <= n_values[i - 1]) {
      throw InvariantError("convergence study: n values must increase");
    }
  }
  std::vector<ConvergenceRow> rows(n_values.size());
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    const PhaseResult h = loop_holonomy(sample_loop(loop, n_values[i]));
    if (!h.valid()) {
      std::ostringstream os;
      os << "loop family degenerate at n = " << n_values[i] << " (orthogonal consecutive samples)";
      throw UndefinedError(os.str());
    }
    rows[i].n_steps = n_values[i];
    rows[i].angle = *h.angle;
  }
  const double reference = rows.back().angle;
  for (auto& row : rows) row.abs_error_vs_reference = angle_distance(row.angle, reference);
  return rows;
}

double convergence_order(std::span<const ConvergenceRow> rows) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : rows) {
    if (r.abs_error_vs_reference > kConvergenceFloor) {
      pts.emplace_back(std::log(static_cast<double>(r.n_steps)), -std::log(r.abs_error_vs_reference));
    }
  }
  if (pts.empty()) return std::numeric_limits<double>::infinity();
  if (pts.size() == 1) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (auto [x, y] : pts) { mx += x; my += y; }
  mx /= pts.size();
  my /= pts.size();
  double sxy = 0.0, sxx = 0.0;
  for (auto [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  return sxy / sxx;
}

StateVector bloch_state(double theta, double phi) {
  CVector v(2);
  v << std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi);
  return normalize(v);
}

LoopGenerator bloch_circle(double theta) {
  return [theta](double s) { return Ray(bloch_state(theta, 2.0 * std::numbers::pi * s)); };
}

}  // namespace histphase
