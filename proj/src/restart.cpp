#include "symopt/restart.hpp"

namespace symopt {

std::string to_string(RestartKind kind) {
  switch (kind) {
    case RestartKind::None: return "none";
    case RestartKind::Function: return "function";
    case RestartKind::Gradient: return "gradient";
    case RestartKind::Velocity: return "velocity";
  }
  return "?";
}

RestartKind parse_restart(const std::string& text) {
  if (text == "none") return RestartKind::None;
  if (text == "function") return RestartKind::Function;
  if (text == "gradient") return RestartKind::Gradient;
  if (text == "velocity") return RestartKind::Velocity;
  throw ConfigError("unknown restart scheme '" + text + "'");
}

bool should_restart(const RestartScheme& scheme, double f_k, double f_prev, const Vec& grad_k,
                    const Vec& dq_k, const std::optional<Vec>& dq_prev, int iters_since_last) {
  if (iters_since_last < scheme.min_gap) return false;
  switch (scheme.scheme) {
    case RestartKind::None: return false;
    case RestartKind::Function: return f_k > f_prev;
    case RestartKind::Gradient: return grad_k.dot(dq_k) > 0;
    case RestartKind::Velocity: return dq_prev && dq_k.norm() < dq_prev->norm();
  }
  return false;
}

ExtendedState apply_restart(ExtendedState s) {
  s.r.setZero();
  return s;
}

}  // namespace symopt
