#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symopt/bregman.hpp"
#include "symopt/integrators.hpp"
#include "symopt/looping.hpp"
#include "symopt/problems.hpp"
#include "symopt/restart.hpp"
#include "symopt/types.hpp"

namespace symopt {

struct RunConfig {
  ProblemSpec problem;
  BregmanConfig cfg = BregmanConfig::poly(6, 0.1);
  IntegratorKind kind = IntegratorKind::SLC;
  double h = 0.01;
  RestartScheme restart{RestartKind::Gradient, 0};
  LoopingStrategy looping;
  double delta = 1e-8;
  long max_iters = 1000000;
  std::optional<Vec> q0;  // default_start(problem) when empty
  IntegratorOptions integrator;
  bool keep_trace = false;
};

// Tuned defaults: SLC with gradient restart and multiplicative looping (0.8).
RunConfig poly_preset();  // p = 6, C = 0.1, h = 0.01
RunConfig expo_preset();  // eta = 0.01, C = 1, h = 4

enum class RunStatus { Converged, MaxIters, Diverged };

std::string to_string(RunStatus status);
RunStatus parse_run_status(const std::string& text);

struct TraceRow {
  long iter;
  double f;
  double grad_norm;
  double error;
  double time;
  bool restarted;
  bool looped;
};

struct RunResult {
  RunStatus status = RunStatus::MaxIters;
  long iters = 0;
  double final_error = 0;  // |f - f*| when f* is known, else the final f
  bool error_is_absolute = false;
  long restart_count = 0;
  long loop_count = 0;
  std::vector<TraceRow> trace;  // row 0 is the starting point
};

// Throws ConfigError for inconsistent configurations before iterating.
RunResult run(const RunConfig& config);
RunResult run(const RunConfig& config, const ObjectiveProblem& problem);

// True when both termination inequalities hold at the last trace row.
bool termination_holds(const RunResult& result, double delta);

}  // namespace symopt
