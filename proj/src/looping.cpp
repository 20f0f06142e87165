#include "symopt/looping.hpp"

#include <algorithm>
#include <cmath>

namespace symopt {

LoopingStrategy LoopingStrategy::multiplicative(double beta, double eps) {
  LoopingStrategy s;
  s.mode = LoopMode::Multiplicative;
  s.beta = beta;
  s.eps = eps;
  s.validate();
  return s;
}

LoopingStrategy LoopingStrategy::subtractive(double nu, double eps) {
  LoopingStrategy s;
  s.mode = LoopMode::Subtractive;
  s.nu = nu;
  s.eps = eps;
  s.validate();
  return s;
}

void LoopingStrategy::validate() const {
  if (!(eps > 0)) throw ConfigError("looping time floor must be positive");
  if (mode == LoopMode::Multiplicative && !(beta > 0 && beta < 1))
    throw ConfigError("looping beta must lie in (0, 1)");
  if (mode == LoopMode::Subtractive && !(nu > 1 && std::isfinite(nu)))
    throw ConfigError("looping nu must be greater than 1");
}

LoopingStrategy parse_looping(const std::string& text, double eps) {
  if (text == "off") {
    LoopingStrategy s;
    s.eps = eps;
    return s;
  }
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("looping must be off, mult:BETA or sub:NU");
  const std::string head = text.substr(0, colon);
  double value = 0;
  try {
    std::size_t used = 0;
    value = std::stod(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1) throw ConfigError("trailing characters");
  } catch (const std::exception&) {
    throw ConfigError("bad looping parameter in '" + text + "'");
  }
  if (head == "mult") return LoopingStrategy::multiplicative(value, eps);
  if (head == "sub") return LoopingStrategy::subtractive(value, eps);
  throw ConfigError("looping must be off, mult:BETA or sub:NU");
}

std::string to_string(const LoopingStrategy& strategy) {
  switch (strategy.mode) {
    case LoopMode::Off: return "off";
    case LoopMode::Multiplicative: return "mult:" + std::to_string(strategy.beta);
    case LoopMode::Subtractive: return "sub:" + std::to_string(strategy.nu);
  }
  return "?";
}

bool instability_detected(const BregmanConfig& cfg, double time, double h, const Vec& grad,
                          const Vec& dq) {
  if (cfg.adaptive() ||
      (cfg.family != Family::Poly && cfg.family != Family::Expo))
    throw ConfigError("temporal looping is defined for non-adaptive poly and expo only");
  const double g = grad.norm(), d = dq.norm();
  if (cfg.family == Family::Expo) {
    const double eta = cfg.eta;
    return cfg.C * h * h * eta * eta * std::exp(eta * time) * g > std::exp(-eta * h) * d;
  }
  const double p = cfg.p;
  return cfg.C * h * h * p * p * std::pow(time + h, p + 1) * g > time * d;
}

bool instability_detected(const BregmanConfig& cfg, const ExtendedState& s, double h,
                          const Vec& grad, const Vec& dq) {
  return instability_detected(cfg, s.time, h, grad, dq);
}

double reset_time(const LoopingStrategy& strategy, double time, double h) {
  switch (strategy.mode) {
    case LoopMode::Off: return time;
    case LoopMode::Multiplicative: return std::max(strategy.eps, strategy.beta * time);
    case LoopMode::Subtractive: return std::max(strategy.eps, time - strategy.nu * h);
  }
  return time;
}

}  // namespace symopt
