#include "symopt/harness.hpp"

#include <cmath>

namespace symopt {

RunConfig poly_preset() {
  RunConfig c;
  c.cfg = BregmanConfig::poly(6, 0.1);
  c.kind = IntegratorKind::SLC;
  c.h = 0.01;
  c.looping = LoopingStrategy::multiplicative(0.8);
  return c;
}

RunConfig expo_preset() {
  RunConfig c;
  c.cfg = BregmanConfig::expo(0.01, 1.0);
  c.kind = IntegratorKind::SLC;
  c.h = 4;
  c.looping = LoopingStrategy::multiplicative(0.8);
  return c;
}

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Converged: return "converged";
    case RunStatus::MaxIters: return "max-iters";
    case RunStatus::Diverged: return "diverged";
  }
  return "?";
}

RunStatus parse_run_status(const std::string& text) {
  if (text == "converged") return RunStatus::Converged;
  if (text == "max-iters") return RunStatus::MaxIters;
  if (text == "diverged") return RunStatus::Diverged;
  throw ConfigError("unknown run status '" + text + "'");
}

RunResult run(const RunConfig& config) { return run(config, make_problem(config.problem)); }

RunResult run(const RunConfig& config, const ObjectiveProblem& problem) {
  if (!(config.delta > 0)) throw ConfigError("tolerance delta must be positive");
  if (config.max_iters < 1) throw ConfigError("max_iters must be at least 1");
  if (!(config.h > 0)) throw ConfigError("step size must be positive");
  if (config.restart.min_gap < 0) throw ConfigError("restart min_gap must be nonnegative");
  config.looping.validate();
  const bool looping = config.looping.mode != LoopMode::Off;
  if (looping && (config.cfg.adaptive() ||
                  (config.cfg.family != Family::Poly && config.cfg.family != Family::Expo)))
    throw ConfigError("temporal looping needs a non-adaptive poly or expo configuration");
  const Integrator integ(config.cfg, config.kind, config.h, config.integrator);

  const Vec q0 = config.q0 ? *config.q0 : default_start(problem);
  if (q0.size() != problem.dim) throw ConfigError("initial point has the wrong dimension");

  RunResult res;
  res.error_is_absolute = problem.known_minimum.has_value();
  const auto error_of = [&](double f) {
    return problem.known_minimum ? std::abs(f - *problem.known_minimum) : f;
  };

  IntegratorState s = integ.init(problem, q0);
  res.final_error = error_of(s.f);
  if (config.keep_trace)
    res.trace.push_back({0, s.f, s.grad.norm(), res.final_error, s.ext.time, false, false});
  if (!std::isfinite(s.f) || !s.grad.allFinite() || !s.ext.r.allFinite()) {
    res.status = RunStatus::Diverged;
    return res;
  }

  double f_prev = s.f;
  std::optional<Vec> dq_prev;
  Vec dq(problem.dim);
  int since_restart = 0;
  for (long k = 1; k <= config.max_iters; ++k) {
    const StepStatus st = integ.advance(s, problem, dq);
    res.iters = k;
    res.final_error = error_of(s.f);
    if (st != StepStatus::Ok) {
      res.status = RunStatus::Diverged;
      if (config.keep_trace)
        res.trace.push_back({k, s.f, s.grad.norm(), res.final_error, s.ext.time, false, false});
      return res;
    }
    ++since_restart;
    bool restarted = false, looped = false;
    if (should_restart(config.restart, s.f, f_prev, s.grad, dq, dq_prev, since_restart)) {
      s.ext.r.setZero();
      restarted = true;
      since_restart = 0;
      ++res.restart_count;
    }
    if (looping && instability_detected(config.cfg, s.ext.time, config.h, s.grad, dq)) {
      s.ext.time = reset_time(config.looping, s.ext.time, config.h);
      looped = true;
      ++res.loop_count;
    }
    const double gnorm = s.grad.norm();
    if (config.keep_trace)
      res.trace.push_back({k, s.f, gnorm, res.final_error, integ.iterate_time(s), restarted, looped});
    if (std::abs(s.f - f_prev) < config.delta && gnorm < config.delta) {
      res.status = RunStatus::Converged;
      return res;
    }
    f_prev = s.f;
    if (config.restart.scheme == RestartKind::Velocity) dq_prev = dq;
  }
  res.status = RunStatus::MaxIters;
  return res;
}

bool termination_holds(const RunResult& result, double delta) {
  const auto n = result.trace.size();
  if (n < 2) return false;
  const TraceRow& last = result.trace[n - 1];
  const TraceRow& prev = result.trace[n - 2];
  return std::abs(last.f - prev.f) < delta && last.grad_norm < delta;
}

}  // namespace symopt
