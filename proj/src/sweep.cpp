#include "symopt/sweep.hpp"

#include <cmath>
#include <limits>

#include <omp.h>

namespace symopt {

std::string to_string(AxisName name) {
  switch (name) {
    case AxisName::C: return "C";
    case AxisName::h: return "h";
    case AxisName::p: return "p";
    case AxisName::eta: return "eta";
    case AxisName::p_target: return "pring";
    case AxisName::eta_target: return "etaring";
  }
  return "?";
}

AxisName parse_axis_name(const std::string& text) {
  if (text == "C") return AxisName::C;
  if (text == "h") return AxisName::h;
  if (text == "p") return AxisName::p;
  if (text == "eta") return AxisName::eta;
  if (text == "pring") return AxisName::p_target;
  if (text == "etaring") return AxisName::eta_target;
  throw ConfigError("unknown sweep axis '" + text + "'");
}

double Axis::value(int i) const {
  if (count == 1) return min;
  const double s = static_cast<double>(i) / (count - 1);
  if (i == count - 1) return max;
  if (log) return std::exp(std::log(min) + s * (std::log(max) - std::log(min)));
  return min + s * (max - min);
}

std::vector<double> Axis::values() const {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = value(i);
  return out;
}

std::size_t SweepGrid::cell_count() const {
  std::size_t n = 1;
  for (const Axis& a : axes) n *= static_cast<std::size_t>(a.count);
  return n;
}

std::vector<int> SweepGrid::unravel(std::size_t index) const {
  std::vector<int> idx(axes.size());
  for (std::size_t k = axes.size(); k-- > 0;) {
    idx[k] = static_cast<int>(index % axes[k].count);
    index /= axes[k].count;
  }
  return idx;
}

std::vector<double> SweepGrid::params(std::size_t index) const {
  const std::vector<int> idx = unravel(index);
  std::vector<double> out(axes.size());
  for (std::size_t k = 0; k < axes.size(); ++k) out[k] = axes[k].value(idx[k]);
  return out;
}

void SweepGrid::validate() const {
  if (axes.empty() || axes.size() > 3) throw ConfigError("a sweep needs one to three axes");
  for (std::size_t k = 0; k < axes.size(); ++k) {
    const Axis& a = axes[k];
    if (a.count < 1) throw ConfigError("axis " + to_string(a.name) + " needs at least one point");
    if (!std::isfinite(a.min) || !std::isfinite(a.max))
      throw ConfigError("axis " + to_string(a.name) + " bounds must be finite");
    if (a.log && !(a.min > 0 && a.max > 0))
      throw ConfigError("log axis " + to_string(a.name) + " needs positive bounds");
    for (std::size_t j = 0; j < k; ++j)
      if (axes[j].name == a.name) throw ConfigError("duplicate sweep axis " + to_string(a.name));
  }
}

RunConfig cell_config(const SweepGrid& grid, const RunConfig& base, std::size_t index) {
  RunConfig c = base;
  c.keep_trace = false;
  const bool poly_follow = base.cfg.family == Family::Poly && base.cfg.p_target == base.cfg.p;
  const bool expo_follow = base.cfg.family == Family::Expo && base.cfg.eta_target == base.cfg.eta;
  const std::vector<double> values = grid.params(index);
  for (std::size_t k = 0; k < grid.axes.size(); ++k) {
    const double v = values[k];
    switch (grid.axes[k].name) {
      case AxisName::C: c.cfg.C = v; break;
      case AxisName::h: c.h = v; break;
      case AxisName::p:
        c.cfg.p = v;
        if (poly_follow) c.cfg.p_target = v;
        break;
      case AxisName::eta:
        c.cfg.eta = v;
        if (expo_follow) c.cfg.eta_target = v;
        break;
      case AxisName::p_target: break;
      case AxisName::eta_target: break;
    }
  }
  for (std::size_t k = 0; k < grid.axes.size(); ++k) {
    if (grid.axes[k].name == AxisName::p_target) c.cfg.p_target = values[k];
    if (grid.axes[k].name == AxisName::eta_target) c.cfg.eta_target = values[k];
  }
  return c;
}

namespace {

RunResult run_cell(const SweepGrid& grid, const RunConfig& base, const ObjectiveProblem& problem,
                   std::size_t index) {
  const RunConfig c = cell_config(grid, base, index);
  try {
    return run(c, problem);
  } catch (const ConfigError&) {
    // e.g. a looping base swept into an adaptive configuration
    RunResult bad;
    bad.status = RunStatus::Diverged;
    bad.final_error = std::numeric_limits<double>::quiet_NaN();
    return bad;
  }
}

}  // namespace

SweepGrid sweep_serial(SweepGrid grid, const RunConfig& base) {
  grid.validate();
  const ObjectiveProblem problem = make_problem(base.problem);
  const std::size_t n = grid.cell_count();
  grid.cells.assign(n, RunResult{});
  for (std::size_t i = 0; i < n; ++i) grid.cells[i] = run_cell(grid, base, problem, i);
  return grid;
}

SweepGrid sweep(SweepGrid grid, const RunConfig& base, int threads) {
  grid.validate();
  const ObjectiveProblem problem = make_problem(base.problem);
  const long n = static_cast<long>(grid.cell_count());
  grid.cells.assign(n, RunResult{});
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
  for (long i = 0; i < n; ++i) grid.cells[i] = run_cell(grid, base, problem, i);
  return grid;
}

BestCell best_cell(const SweepGrid& grid) {
  BestCell best;
  int h_axis = -1, c_axis = -1;
  for (std::size_t k = 0; k < grid.axes.size(); ++k) {
    if (grid.axes[k].name == AxisName::h) h_axis = static_cast<int>(k);
    if (grid.axes[k].name == AxisName::C) c_axis = static_cast<int>(k);
  }
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    const RunResult& r = grid.cells[i];
    if (r.status != RunStatus::Converged) continue;
    const std::vector<double> p = grid.params(i);
    bool better = !best.found || r.iters < best.iters;
    if (best.found && r.iters == best.iters) {
      const double h_new = h_axis >= 0 ? p[h_axis] : 0, h_old = h_axis >= 0 ? best.params[h_axis] : 0;
      const double c_new = c_axis >= 0 ? p[c_axis] : 0, c_old = c_axis >= 0 ? best.params[c_axis] : 0;
      better = h_new < h_old || (h_new == h_old && c_new < c_old);
    }
    if (better) {
      best.found = true;
      best.index = i;
      best.params = p;
      best.iters = r.iters;
    }
  }
  return best;
}

}  // namespace symopt
