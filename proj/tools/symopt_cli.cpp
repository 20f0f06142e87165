// Command-line front end: solve, sweep, compare, rate-check.
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symopt/bregman.hpp"
#include "symopt/harness.hpp"
#include "symopt/integrators.hpp"
#include "symopt/looping.hpp"
#include "symopt/oracle.hpp"
#include "symopt/problems.hpp"
#include "symopt/reference_opt.hpp"
#include "symopt/report.hpp"
#include "symopt/restart.hpp"
#include "symopt/sweep.hpp"

using namespace symopt;

namespace {

constexpr int kOk = 0;
constexpr int kNotConverged = 2;
constexpr int kConfigError = 3;

struct CommonArgs {
  std::string problem = "illcond";
  int dim = 0;
  int samples = 0;
  std::uint64_t seed = 1;
  std::string penalty = "none";
  double lambda = 0.1;
  std::string family = "poly";
  std::string integrator = "slc";
  double p = 6;
  std::optional<double> pring;
  double eta = 0.01;
  std::optional<double> etaring;
  std::optional<double> C;
  std::optional<double> h;
  std::string restart = "gradient";
  std::string loop = "auto";
  double loop_eps = 0.001;
  double delta = 1e-8;
  long max_iters = 1000000;
  bool unfused = false;
  std::string out;
};

void add_common(CLI::App* app, CommonArgs& a) {
  app->set_help_flag("--help", "Print this help message and exit");
  app->add_option("--problem", a.problem,
                  "quartic|logbarrier|entropy|illcond|lstsq|logistic|fermat-weber");
  app->add_option("--dim", a.dim, "problem dimension (0: problem default)");
  app->add_option("--samples", a.samples, "rows (lstsq, logistic) or anchors (fermat-weber)");
  app->add_option("--seed", a.seed, "seed for generated problem data");
  app->add_option("--penalty", a.penalty, "none|l1|l2 (lstsq, logistic)");
  app->add_option("--lambda", a.lambda, "penalty weight");
  app->add_option("--family", a.family, "poly|expo|expo2poly|poly2expo");
  app->add_option("--integrator", a.integrator, "htvi|ltvi|slc|sv");
  app->add_option("--p", a.p, "polynomial order p");
  app->add_option("--pring", a.pring, "target polynomial order (default p)");
  app->add_option("--eta", a.eta, "exponential rate eta");
  app->add_option("--etaring", a.etaring, "target exponential rate (default eta)");
  app->add_option("--C", a.C, "coupling constant C");
  app->add_option("--h", a.h, "fictive time step");
  app->add_option("--restart", a.restart, "none|function|gradient|velocity");
  app->add_option("--loop", a.loop, "auto|off|mult:BETA|sub:NU");
  app->add_option("--loop-eps", a.loop_eps, "time floor for looping");
  app->add_option("--delta", a.delta, "termination tolerance");
  app->add_option("--max-iters", a.max_iters, "iteration cap");
  app->add_flag("--unfused", a.unfused, "unfused SLC/SV kicks");
  app->add_option("--out", a.out, "output path");
}

Penalty make_penalty(const CommonArgs& a) {
  if (a.penalty == "none") return Penalty::none();
  if (a.penalty == "l1") return Penalty::l1(a.lambda);
  if (a.penalty == "l2") return Penalty::l2(a.lambda);
  throw ConfigError("unknown penalty '" + a.penalty + "'");
}

RunConfig make_config(const CommonArgs& a) {
  const auto [family, kind] = parse_method(a.family + "-" + a.integrator);
  RunConfig c = family == Family::Expo ? expo_preset() : poly_preset();
  c.problem.name = a.problem;
  c.problem.dim = a.dim;
  c.problem.samples = a.samples;
  c.problem.seed = a.seed;
  c.problem.penalty = make_penalty(a);
  c.kind = kind;
  const double C = a.C.value_or(c.cfg.C);
  switch (family) {
    case Family::Poly: c.cfg = BregmanConfig::poly(a.p, C, a.pring.value_or(a.p)); break;
    case Family::Expo:
      c.cfg = BregmanConfig::expo(a.eta, C,
                                  a.etaring.value_or(a.eta));
      break;
    case Family::ExpoToPoly: c.cfg = BregmanConfig::expo_to_poly(a.eta, a.p, C); break;
    case Family::PolyToExpo: c.cfg = BregmanConfig::poly_to_expo(a.p, a.eta, C); break;
  }
  c.h = a.h.value_or(c.h);
  c.restart = {parse_restart(a.restart), 0};
  if (a.loop == "auto") {
    const bool loopable =
        !c.cfg.adaptive() && (family == Family::Poly || family == Family::Expo);
    c.looping = loopable ? LoopingStrategy::multiplicative(0.8, a.loop_eps) : LoopingStrategy::off();
  } else {
    c.looping = parse_looping(a.loop, a.loop_eps);
  }
  c.delta = a.delta;
  c.max_iters = a.max_iters;
  c.integrator.fused = !a.unfused;
  return c;
}

std::string describe(const RunConfig& c) {
  std::ostringstream s;
  s << to_string(c.cfg.family) << "-" << to_string(c.kind) << " p=" << c.cfg.p
    << " pring=" << c.cfg.p_target << " eta=" << c.cfg.eta << " etaring=" << c.cfg.eta_target
    << " C=" << c.cfg.C << " h=" << c.h << " restart=" << to_string(c.restart.scheme)
    << " loop=" << to_string(c.looping);
  return s.str();
}

Axis parse_axis(const std::string& text) {
  // name:min:max:count[:log|lin]
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() < 4 || parts.size() > 5)
    throw ConfigError("axis must be name:min:max:count[:log|lin], got '" + text + "'");
  Axis a;
  a.name = parse_axis_name(parts[0]);
  try {
    a.min = parse_double(parts[1]);
    a.max = parse_double(parts[2]);
    a.count = std::stoi(parts[3]);
  } catch (const std::exception&) {
    throw ConfigError("bad number in axis '" + text + "'");
  }
  if (parts.size() == 5) {
    if (parts[4] == "log") a.log = true;
    else if (parts[4] == "lin") a.log = false;
    else throw ConfigError("axis spacing must be log or lin");
  }
  return a;
}

int cmd_solve(const CommonArgs& a) {
  RunConfig c = make_config(a);
  c.keep_trace = true;
  const RunResult r = run(c);
  if (!a.out.empty()) write_csv(r, a.out);
  std::cout << describe(c) << "\n"
            << "status=" << to_string(r.status) << " iters=" << r.iters
            << " error=" << format_double(r.final_error) << " restarts=" << r.restart_count
            << " loops=" << r.loop_count << "\n";
  return r.status == RunStatus::Converged ? kOk : kNotConverged;
}

int cmd_sweep(const CommonArgs& a, const std::vector<std::string>& axes, const std::string& svg,
              int threads, bool serial) {
  RunConfig c = make_config(a);
  SweepGrid grid;
  for (const std::string& spec : axes) grid.axes.push_back(parse_axis(spec));
  if (grid.axes.empty()) {
    grid.axes.push_back({AxisName::C, 1e-8, 1e4, 60, true});
    grid.axes.push_back({AxisName::h, 1e-4, 1e2, 60, true});
  }
  grid = serial ? sweep_serial(grid, c) : sweep(grid, c, threads);
  if (!a.out.empty()) write_csv(grid, a.out);
  if (!svg.empty()) render_heatmap(grid, svg, describe(c));
  const BestCell best = best_cell(grid);
  std::cout << describe(c) << "\n";
  if (!best.found) {
    std::cout << "no converged cell\n";
    return kOk;
  }
  std::cout << "best iters=" << best.iters;
  for (std::size_t k = 0; k < grid.axes.size(); ++k)
    std::cout << " " << to_string(grid.axes[k].name) << "=" << format_double(best.params[k]);
  std::cout << "\n";
  return kOk;
}

int cmd_compare(const CommonArgs& a, const std::vector<std::string>& methods, double gd_h,
                double nag_h, double adam_h) {
  RunConfig c = make_config(a);
  const ObjectiveProblem problem = make_problem(c.problem);
  const Vec x0 = default_start(problem);
  const std::string prefix = a.out.empty() ? "compare" : a.out;
  bool all = true;
  for (const std::string& m : methods) {
    std::string path = prefix + "_" + m + ".csv";
    if (m == "bravo") {
      c.keep_trace = true;
      const RunResult r = run(c, problem);
      write_csv(r, path);
      all = all && r.status == RunStatus::Converged;
      std::cout << "bravo " << to_string(r.status) << " iters=" << r.iters
                << " error=" << format_double(r.final_error) << "\n";
      continue;
    }
    const BaselineKind kind = parse_baseline(m);
    const double h = kind == BaselineKind::GD ? gd_h : kind == BaselineKind::NAG ? nag_h : adam_h;
    const BaselineResult r = run_baseline(kind, problem, x0, h, c.delta, static_cast<int>(c.max_iters), true);
    write_csv(r, path);
    all = all && r.converged;
    std::cout << m << " " << (r.converged ? "converged" : r.diverged ? "diverged" : "max-iters")
              << " iters=" << r.iters << " error=" << format_double(r.final_error) << "\n";
  }
  return all ? kOk : kNotConverged;
}

int cmd_rate_check(const CommonArgs& a, double T, double h_ode, int stride) {
  const RunConfig c = make_config(a);
  const ObjectiveProblem problem = make_problem(c.problem);
  if (!problem.known_minimum) throw ConfigError("rate-check needs a problem with a known minimum");
  const OracleTrajectory traj =
      integrate_el(c.cfg, problem, default_start(problem), 1.0, T, h_ode, stride);
  if (!a.out.empty()) {
    std::FILE* f = std::fopen(a.out.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open '" + a.out + "' for writing");
    std::fprintf(f, "t,error\n");
    for (std::size_t i = 0; i < traj.times.size(); ++i)
      std::fprintf(f, "%s,%s\n", format_double(traj.times[i]).c_str(),
                   format_double(problem.eval(traj.q[i]) - *problem.known_minimum).c_str());
    std::fclose(f);
  }
  const RateFit fit = rate_envelope(traj, problem, *problem.known_minimum);
  std::cout << "slope=" << format_double(fit.slope) << (fit.unreliable ? " (unreliable)" : "")
            << (traj.diverged ? " (diverged)" : "") << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symplectic accelerated optimization"};
  app.require_subcommand(1);

  CommonArgs solve_args, sweep_args, compare_args, rate_args;
  auto* solve = app.add_subcommand("solve", "one run, trace CSV and summary");
  add_common(solve, solve_args);

  auto* sweep_cmd = app.add_subcommand("sweep", "parameter grid, CSV and optional SVG");
  add_common(sweep_cmd, sweep_args);
  std::vector<std::string> axes;
  std::string svg;
  int threads = 0;
  bool serial = false;
  sweep_cmd->add_option("--axis", axes, "name:min:max:count[:log|lin] (default 60x60 C,h grid)");
  sweep_cmd->add_option("--svg", svg, "heatmap output (two axes)");
  sweep_cmd->add_option("--threads", threads, "worker threads (0: OpenMP default)");
  sweep_cmd->add_flag("--serial", serial, "single-threaded reference sweep");

  auto* compare = app.add_subcommand("compare", "symplectic run against gd/nag/adam");
  add_common(compare, compare_args);
  std::vector<std::string> methods{"bravo", "gd", "nag", "adam"};
  double gd_h = 0.005, nag_h = 0.005, adam_h = 0.01;
  compare->add_option("--method", methods, "bravo|gd|nag|adam (repeatable)");
  compare->add_option("--gd-h", gd_h, "gradient descent step");
  compare->add_option("--nag-h", nag_h, "Nesterov step");
  compare->add_option("--adam-h", adam_h, "Adam learning rate");

  auto* rate = app.add_subcommand("rate-check", "continuous-time oracle error curve");
  add_common(rate, rate_args);
  double T = 20, h_ode = 1e-3;
  int stride = 10;
  rate->add_option("--T", T, "final time");
  rate->add_option("--h-ode", h_ode, "RK4 step");
  rate->add_option("--stride", stride, "store every n-th step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*solve) return cmd_solve(solve_args);
    if (*sweep_cmd) return cmd_sweep(sweep_args, axes, svg, threads, serial);
    if (*compare) return cmd_compare(compare_args, methods, gd_h, nag_h, adam_h);
    if (*rate) return cmd_rate_check(rate_args, T, h_ode, stride);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kOk;
}
