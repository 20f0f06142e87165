#include "symopt/integrators.hpp"

#include <cmath>
#include <limits>

namespace symopt {

namespace {

bool all_finite(const Vec& v) { return v.allFinite(); }

// Flow of rt' = -(c + gamma rt) over fictive time s, with c and gamma frozen.
double time_momentum_flow(double rt, double c, double gamma, double s) {
  const double x = -gamma * s;
  if (std::abs(x) < 1e-12) return rt - s * c;
  return rt * std::exp(x) + c * std::expm1(x) / gamma;
}

}  // namespace

std::string to_string(IntegratorKind kind) {
  switch (kind) {
    case IntegratorKind::HTVI: return "htvi";
    case IntegratorKind::LTVI: return "ltvi";
    case IntegratorKind::SLC: return "slc";
    case IntegratorKind::SV: return "sv";
  }
  return "?";
}

std::string to_string(StepStatus status) {
  switch (status) {
    case StepStatus::Ok: return "ok";
    case StepStatus::Saturated: return "saturated";
    case StepStatus::NonFinite: return "non-finite";
    case StepStatus::SolveFailed: return "solve-failed";
  }
  return "?";
}

std::pair<Family, IntegratorKind> parse_method(const std::string& text, Family fallback) {
  std::string family_part, kind_part = text;
  if (const auto dash = text.rfind('-'); dash != std::string::npos) {
    family_part = text.substr(0, dash);
    kind_part = text.substr(dash + 1);
  }
  Family family = fallback;
  if (family_part == "poly") family = Family::Poly;
  else if (family_part == "expo") family = Family::Expo;
  else if (family_part == "expo2poly") family = Family::ExpoToPoly;
  else if (family_part == "poly2expo") family = Family::PolyToExpo;
  else if (!family_part.empty()) throw ConfigError("unknown family in '" + text + "'");

  IntegratorKind kind;
  if (kind_part == "htvi") kind = IntegratorKind::HTVI;
  else if (kind_part == "ltvi") kind = IntegratorKind::LTVI;
  else if (kind_part == "slc") kind = IntegratorKind::SLC;
  else if (kind_part == "sv") kind = IntegratorKind::SV;
  else throw ConfigError("unknown integrator in '" + text + "'");
  return {family, kind};
}

double solve_implicit_time(const BregmanConfig& cfg, double t, double h) {
  const HamiltonianCoefficients coef(cfg);
  switch (cfg.family) {
    case Family::Expo:
      return t + h * cfg.eta / cfg.eta_target;
    case Family::ExpoToPoly: {
      const double denom = 2 * cfg.p - cfg.eta * h;
      if (!(denom > 0)) throw NoConvergenceError("trapezoidal time update has no positive root");
      return t * (2 * cfg.p + cfg.eta * h) / denom;
    }
    case Family::Poly:
      if (cfg.p_target == cfg.p) return t + h;
      break;
    case Family::PolyToExpo:
      break;
  }
  const auto g = [&](double x) { return std::exp(coef.log_monitor(x)); };
  const double base = t + 0.5 * h * g(t);
  double x = t + h * g(t);
  for (int it = 0; it < 100; ++it) {
    const double next = base + 0.5 * h * g(x);
    if (!std::isfinite(next) || !(next > 0)) break;
    if (std::abs(next - x) <= 1e-13 * std::max(1.0, std::abs(next))) return next;
    x = next;
  }
  throw NoConvergenceError("implicit time update did not converge in 100 iterations");
}

Integrator::Integrator(const BregmanConfig& cfg, IntegratorKind kind, double h,
                       IntegratorOptions options)
    : coef_(cfg), kind_(kind), h_(h), options_(options) {
  cfg.validate();
  const bool splittable = kind == IntegratorKind::SLC || kind == IntegratorKind::SV;
  if (!std::isfinite(h) || h == 0) throw ConfigError("step size must be finite and nonzero");
  if (h < 0 && (options.fused || !splittable))
    throw ConfigError("negative (time-reversed) steps need an unfused SLC or SV integrator");
  if (options.track_energy) {
    if (kind == IntegratorKind::LTVI)
      throw ConfigError("energy tracking is not available for LTVI");
    if (splittable && options.fused)
      throw ConfigError("energy tracking needs the unfused SLC/SV form");
  }
}

double Integrator::drift(double t, bool& saturated) const {
  return checked_exp(coef_.log_drift(t), saturated);
}

double Integrator::kick(double t, bool& saturated) const {
  return checked_exp(coef_.log_kick(t), saturated);
}

// d/dt of the kinetic and potential terms, the part of dH/dt not involving rt.
double Integrator::time_force(double t, const Vec& r, double f) const {
  return 0.5 * std::exp(coef_.log_drift(t)) * coef_.dlog_drift(t) * r.squaredNorm() +
         std::exp(coef_.log_kick(t)) * coef_.dlog_kick(t) * f;
}

double Integrator::next_time_trapezoid(IntegratorState& s, double t) const {
  if (s.cached_from == t) return s.cached_to;
  const double next = solve_implicit_time(coef_.cfg, t, h_);
  s.cached_from = t;
  s.cached_to = next;
  return next;
}

IntegratorState Integrator::init(const Vec& q0, double f0, const Vec& grad0) const {
  IntegratorState s;
  s.ext.q = q0;
  s.ext.time = 1.0;
  s.grad = grad0;
  s.f = f0;
  const bool fused_split =
      options_.fused && (kind_ == IntegratorKind::SLC || kind_ == IntegratorKind::SV);
  const bool half =
      options_.initial_momentum == InitialMomentum::HalfKick ||
      (options_.initial_momentum == InitialMomentum::Default && fused_split &&
       kind_ == IntegratorKind::SLC);
  bool saturated = false;
  s.ext.r = half ? Vec(-0.5 * h_ * kick(1.0, saturated) * grad0) : Vec::Zero(q0.size());
  if (fused_split && kind_ == IntegratorKind::SV) s.pending = PendingKick::Half;
  if (options_.track_energy) {
    const double t = s.ext.time;
    const double energy = 0.5 * std::exp(coef_.log_drift(t)) * s.ext.r.squaredNorm() +
                          std::exp(coef_.log_kick(t)) * f0;
    s.ext.time_momentum = -energy / std::exp(coef_.log_monitor(t));
  }
  return s;
}

IntegratorState Integrator::init(const ObjectiveProblem& problem, const Vec& q0) const {
  if (q0.size() != problem.dim) throw ConfigError("initial point has the wrong dimension");
  return init(q0, problem.eval(q0), problem.grad(q0));
}

double Integrator::iterate_time(const IntegratorState& s) const {
  if (s.pending != PendingKick::Full) return s.ext.time;
  if (kind_ == IntegratorKind::SLC) return coef_.time_flow(s.ext.time, h_);
  if (s.cached_from == s.ext.time) return s.cached_to;
  try {
    return solve_implicit_time(coef_.cfg, s.ext.time, h_);
  } catch (const NoConvergenceError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

StepStatus Integrator::finish(IntegratorState& s, const ObjectiveProblem& problem,
                              bool saturated) const {
  s.f = problem.eval(s.ext.q);
  s.grad = problem.grad(s.ext.q);
  if (saturated) return StepStatus::Saturated;
  if (!std::isfinite(s.f) || !all_finite(s.grad) || !all_finite(s.ext.q) ||
      !all_finite(s.ext.r) || !std::isfinite(s.ext.time) || !(s.ext.time > 0))
    return StepStatus::NonFinite;
  return StepStatus::Ok;
}

StepStatus Integrator::advance(IntegratorState& s, const ObjectiveProblem& problem,
                               Vec& dq) const {
  try {
    switch (kind_) {
      case IntegratorKind::HTVI: return advance_htvi(s, problem, dq);
      case IntegratorKind::LTVI: return advance_ltvi(s, problem, dq);
      case IntegratorKind::SLC: return advance_slc(s, problem, dq);
      case IntegratorKind::SV: return advance_sv(s, problem, dq);
    }
  } catch (const NoConvergenceError&) {
    return StepStatus::SolveFailed;
  }
  return StepStatus::NonFinite;
}

// r+ = r - h kick(t) G,  q+ = q + h drift(t) r+,  t+ = t + h g(t)
StepStatus Integrator::advance_htvi(IntegratorState& s, const ObjectiveProblem& problem,
                                    Vec& dq) const {
  const double t = s.ext.time;
  bool sat = false;
  const double a = drift(t, sat), b = kick(t, sat);
  s.ext.r.noalias() -= (h_ * b) * s.grad;
  dq = (h_ * a) * s.ext.r;
  s.ext.q += dq;
  if (s.ext.time_momentum) {
    // Implicit in rt only through the linear g'(t) rt term.
    const double gprime = std::exp(coef_.log_monitor(t)) * coef_.dlog_monitor(t);
    *s.ext.time_momentum =
        (*s.ext.time_momentum - h_ * time_force(t, s.ext.r, s.f)) / (1 + h_ * gprime);
  }
  s.ext.time = t + h_ * std::exp(coef_.log_monitor(t));
  return finish(s, problem, sat);
}

// q+ = q + h drift(t) (g(t) r - h kick(t) G),  r+ = (q+ - q) / (h drift(t) g(t+))
StepStatus Integrator::advance_ltvi(IntegratorState& s, const ObjectiveProblem& problem,
                                    Vec& dq) const {
  const double t = s.ext.time;
  bool sat = false;
  const double a = drift(t, sat), b = kick(t, sat);
  const double g = std::exp(coef_.log_monitor(t));
  const double t_next = t + h_ * g;
  const double g_next = std::exp(coef_.log_monitor(t_next));
  dq = (h_ * a) * (g * s.ext.r - (h_ * b) * s.grad);
  s.ext.r = dq / (h_ * a * g_next);
  s.ext.q += dq;
  s.ext.time = t_next;
  return finish(s, problem, sat);
}

StepStatus Integrator::advance_slc(IntegratorState& s, const ObjectiveProblem& problem,
                                   Vec& dq) const {
  bool sat = false;
  double t = s.ext.time;
  if (options_.fused) {
    if (s.pending == PendingKick::Full) {
      t = coef_.time_flow(t, h_);
      s.ext.time = t;
      s.ext.r.noalias() -= (h_ * kick(t, sat)) * s.grad;
    } else if (s.pending == PendingKick::Half) {
      s.ext.r.noalias() -= (0.5 * h_ * kick(t, sat)) * s.grad;
    }
    const double t_mid = coef_.time_flow(t, 0.5 * h_);
    dq = (h_ * drift(t_mid, sat)) * s.ext.r;
    s.ext.q += dq;
    s.pending = PendingKick::Full;
    return finish(s, problem, sat);
  }

  auto d_half = [&](double time, double f) {
    if (!s.ext.time_momentum) return;
    const double gamma = std::exp(coef_.log_monitor(time)) * coef_.dlog_monitor(time);
    *s.ext.time_momentum =
        time_momentum_flow(*s.ext.time_momentum, time_force(time, s.ext.r, f), gamma, 0.5 * h_);
  };
  d_half(t, s.f);
  s.ext.r.noalias() -= (0.5 * h_ * kick(t, sat)) * s.grad;
  t = coef_.time_flow(t, 0.5 * h_);
  dq = (h_ * drift(t, sat)) * s.ext.r;
  s.ext.q += dq;
  t = coef_.time_flow(t, 0.5 * h_);
  s.ext.time = t;
  const StepStatus mid = finish(s, problem, sat);
  if (mid != StepStatus::Ok) return mid;
  s.ext.r.noalias() -= (0.5 * h_ * kick(t, sat)) * s.grad;
  d_half(t, s.f);
  if (sat) return StepStatus::Saturated;
  return all_finite(s.ext.r) ? StepStatus::Ok : StepStatus::NonFinite;
}

StepStatus Integrator::advance_sv(IntegratorState& s, const ObjectiveProblem& problem,
                                  Vec& dq) const {
  bool sat = false;
  double t = s.ext.time;
  if (options_.fused) {
    if (s.pending == PendingKick::Full) {
      t = next_time_trapezoid(s, t);
      s.ext.time = t;
      s.ext.r.noalias() -= (h_ * kick(t, sat)) * s.grad;
    } else if (s.pending == PendingKick::Half) {
      s.ext.r.noalias() -= (0.5 * h_ * kick(t, sat)) * s.grad;
    }
    const double t_next = next_time_trapezoid(s, t);
    dq = (0.5 * h_ * (drift(t, sat) + drift(t_next, sat))) * s.ext.r;
    s.ext.q += dq;
    s.pending = PendingKick::Full;
    return finish(s, problem, sat);
  }

  s.ext.r.noalias() -= (0.5 * h_ * kick(t, sat)) * s.grad;
  if (s.ext.time_momentum) {
    const double gprime = std::exp(coef_.log_monitor(t)) * coef_.dlog_monitor(t);
    *s.ext.time_momentum = (*s.ext.time_momentum - 0.5 * h_ * time_force(t, s.ext.r, s.f)) /
                           (1 + 0.5 * h_ * gprime);
  }
  const double t_next = next_time_trapezoid(s, t);
  dq = (0.5 * h_ * (drift(t, sat) + drift(t_next, sat))) * s.ext.r;
  s.ext.q += dq;
  s.ext.time = t_next;
  const StepStatus mid = finish(s, problem, sat);
  if (mid != StepStatus::Ok) return mid;
  if (s.ext.time_momentum) {
    const double gprime = std::exp(coef_.log_monitor(t_next)) * coef_.dlog_monitor(t_next);
    *s.ext.time_momentum -= 0.5 * h_ *
                            (time_force(t_next, s.ext.r, s.f) + gprime * *s.ext.time_momentum);
  }
  s.ext.r.noalias() -= (0.5 * h_ * kick(t_next, sat)) * s.grad;
  if (sat) return StepStatus::Saturated;
  return all_finite(s.ext.r) ? StepStatus::Ok : StepStatus::NonFinite;
}

StepRecord Integrator::step(const IntegratorState& s, const ObjectiveProblem& problem) const {
  StepRecord rec;
  rec.state = s;
  rec.status = advance(rec.state, problem, rec.dq);
  rec.grad_evals = 1;
  rec.f_value = rec.state.f;
  rec.grad = rec.state.grad;
  return rec;
}

IntegratorState init_state(const BregmanConfig& cfg, IntegratorKind kind, const Vec& q0, double h,
                           double f0, const Vec& grad0, IntegratorOptions options) {
  return Integrator(cfg, kind, h, options).init(q0, f0, grad0);
}

StepRecord step(const BregmanConfig& cfg, IntegratorKind kind, const IntegratorState& s, double h,
                const ObjectiveProblem& problem, IntegratorOptions options) {
  return Integrator(cfg, kind, h, options).step(s, problem);
}

}  // namespace symopt
