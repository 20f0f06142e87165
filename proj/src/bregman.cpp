#include "symopt/bregman.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace symopt {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0) || !std::isfinite(value))
    throw ConfigError(std::string("Bregman parameter ") + name + " must be positive and finite");
}

void require_positive_time(double t) {
  if (!(t > 0)) throw std::domain_error("Bregman time must be positive");
}

const double kLogMax = std::log(std::numeric_limits<double>::max());

}  // namespace

std::string to_string(Family family) {
  switch (family) {
    case Family::Poly: return "poly";
    case Family::Expo: return "expo";
    case Family::ExpoToPoly: return "expo2poly";
    case Family::PolyToExpo: return "poly2expo";
  }
  return "?";
}

BregmanConfig BregmanConfig::poly(double p, double C, double p_target) {
  BregmanConfig cfg;
  cfg.family = Family::Poly;
  cfg.p = p;
  cfg.p_target = p_target;
  cfg.C = C;
  cfg.validate();
  return cfg;
}

BregmanConfig BregmanConfig::expo(double eta, double C, double eta_target) {
  BregmanConfig cfg;
  cfg.family = Family::Expo;
  cfg.eta = eta;
  cfg.eta_target = eta_target;
  cfg.C = C;
  cfg.validate();
  return cfg;
}

BregmanConfig BregmanConfig::expo_to_poly(double eta, double p, double C) {
  BregmanConfig cfg;
  cfg.family = Family::ExpoToPoly;
  cfg.eta = eta;
  cfg.p = p;
  cfg.C = C;
  cfg.validate();
  return cfg;
}

BregmanConfig BregmanConfig::poly_to_expo(double p, double eta, double C) {
  BregmanConfig cfg;
  cfg.family = Family::PolyToExpo;
  cfg.p = p;
  cfg.eta = eta;
  cfg.C = C;
  cfg.validate();
  return cfg;
}

void BregmanConfig::validate() const {
  require_positive(C, "C");
  switch (family) {
    case Family::Poly:
      require_positive(p, "p");
      require_positive(p_target, "p_target");
      break;
    case Family::Expo:
      require_positive(eta, "eta");
      require_positive(eta_target, "eta_target");
      break;
    case Family::ExpoToPoly:
    case Family::PolyToExpo:
      require_positive(p, "p");
      require_positive(eta, "eta");
      break;
  }
}

bool BregmanConfig::adaptive() const {
  switch (family) {
    case Family::Poly: return p_target != p;
    case Family::Expo: return eta_target != eta;
    default: return true;
  }
}

ParameterFunctions parameter_functions(const BregmanConfig& cfg, double t) {
  require_positive_time(t);
  switch (cfg.family) {
    case Family::Poly: {
      const double lt = std::log(t);
      return {std::log(cfg.p) - lt, cfg.p * lt + std::log(cfg.C), cfg.p * lt};
    }
    case Family::Expo:
      return {std::log(cfg.eta), cfg.eta * t + std::log(cfg.C), cfg.eta * t};
    default:
      throw ConfigError("parameter functions are defined for the poly and expo families only");
  }
}

double monitor(const BregmanConfig& cfg, double t) {
  require_positive_time(t);
  return std::exp(HamiltonianCoefficients(cfg).log_monitor(t));
}

HamiltonianCoefficients::HamiltonianCoefficients(const BregmanConfig& config) : cfg(config) {}

double HamiltonianCoefficients::log_drift(double t) const {
  const double p = cfg.p, eta = cfg.eta;
  switch (cfg.family) {
    case Family::Poly: {
      const double k = cfg.p_target / p;
      return 2 * std::log(p) - std::log(cfg.p_target) - (p + k) * std::log(t);
    }
    case Family::Expo:
      return 2 * std::log(eta) - std::log(cfg.eta_target) - eta * t;
    case Family::ExpoToPoly:
      return std::log(t) + 2 * std::log(eta) - std::log(p) - eta * t;
    case Family::PolyToExpo:
      return 2 * std::log(p) - std::log(eta) - (p + 1) * std::log(t) - eta * t / p;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double HamiltonianCoefficients::log_kick(double t) const {
  const double p = cfg.p, eta = cfg.eta, lc = std::log(cfg.C);
  switch (cfg.family) {
    case Family::Poly: {
      const double k = cfg.p_target / p;
      return lc + 2 * std::log(p) - std::log(cfg.p_target) + (2 * p - k) * std::log(t);
    }
    case Family::Expo:
      return lc + 2 * std::log(eta) - std::log(cfg.eta_target) + 2 * eta * t;
    case Family::ExpoToPoly:
      return lc + std::log(t) + 2 * std::log(eta) - std::log(p) + 2 * eta * t;
    case Family::PolyToExpo:
      return lc + 2 * std::log(p) - std::log(eta) + (2 * p - 1) * std::log(t) - eta * t / p;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double HamiltonianCoefficients::log_monitor(double t) const {
  const double p = cfg.p, eta = cfg.eta;
  switch (cfg.family) {
    case Family::Poly: {
      const double k = cfg.p_target / p;
      return std::log(p) - std::log(cfg.p_target) + (1 - k) * std::log(t);
    }
    case Family::Expo:
      return std::log(eta) - std::log(cfg.eta_target);
    case Family::ExpoToPoly:
      return std::log(eta) - std::log(p) + std::log(t);
    case Family::PolyToExpo:
      return std::log(p) - std::log(eta) - eta * t / p;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double HamiltonianCoefficients::dlog_drift(double t) const {
  const double p = cfg.p, eta = cfg.eta;
  switch (cfg.family) {
    case Family::Poly: return -(p + cfg.p_target / p) / t;
    case Family::Expo: return -eta;
    case Family::ExpoToPoly: return 1 / t - eta;
    case Family::PolyToExpo: return -(p + 1) / t - eta / p;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double HamiltonianCoefficients::dlog_kick(double t) const {
  const double p = cfg.p, eta = cfg.eta;
  switch (cfg.family) {
    case Family::Poly: return (2 * p - cfg.p_target / p) / t;
    case Family::Expo: return 2 * eta;
    case Family::ExpoToPoly: return 1 / t + 2 * eta;
    case Family::PolyToExpo: return (2 * p - 1) / t - eta / p;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double HamiltonianCoefficients::dlog_monitor(double t) const {
  const double p = cfg.p, eta = cfg.eta;
  switch (cfg.family) {
    case Family::Poly: return (1 - cfg.p_target / p) / t;
    case Family::Expo: return 0.0;
    case Family::ExpoToPoly: return 1 / t;
    case Family::PolyToExpo: return -eta / p;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double HamiltonianCoefficients::time_flow(double t, double s) const {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  double out = nan;
  switch (cfg.family) {
    case Family::Poly: {
      // (t^k + s)^(1/k), k = p_target / p, written relative to t.
      const double k = cfg.p_target / cfg.p;
      if (k == 1) {
        out = t + s;
        break;
      }
      const double u = s * std::pow(t, -k);
      if (!(u > -1)) return nan;
      out = t * std::exp(std::log1p(u) / k);
      break;
    }
    case Family::Expo:
      out = t + s * cfg.eta / cfg.eta_target;
      break;
    case Family::ExpoToPoly:
      out = t * std::exp(cfg.eta * s / cfg.p);
      break;
    case Family::PolyToExpo: {
      // (p/eta) log(exp(eta t / p) + s)
      const double u = s * std::exp(-cfg.eta * t / cfg.p);
      if (!(u > -1)) return nan;
      out = t + cfg.p / cfg.eta * std::log1p(u);
      break;
    }
  }
  return out > 0 ? out : nan;
}

double checked_exp(double log_value, bool& saturated) {
  if (log_value > kLogMax) {
    saturated = true;
    return std::numeric_limits<double>::max();
  }
  return std::exp(log_value);
}

double poincare_hamiltonian(const BregmanConfig& cfg, const ExtendedState& s, double f_at_q) {
  if (!s.time_momentum)
    throw ConfigError("Poincare Hamiltonian needs the time momentum to be tracked");
  require_positive_time(s.time);
  const HamiltonianCoefficients coef(cfg);
  const double t = s.time;
  return 0.5 * std::exp(coef.log_drift(t)) * s.r.squaredNorm() +
         std::exp(coef.log_kick(t)) * f_at_q + std::exp(coef.log_monitor(t)) * *s.time_momentum;
}

double poincare_hamiltonian(const BregmanConfig& cfg, const ExtendedState& s,
                            const ObjectiveProblem& problem) {
  return poincare_hamiltonian(cfg, s, problem.eval(s.q));
}

Vec el_acceleration(const BregmanConfig& cfg, double t, const Vec& v, const Vec& grad) {
  switch (cfg.family) {
    case Family::Poly: {
      require_positive_time(t);
      const double p = cfg.p;
      return -((p + 1) / t) * v - cfg.C * p * p * std::pow(t, p - 2) * grad;
    }
    case Family::Expo: {
      const double eta = cfg.eta;
      return -eta * v - cfg.C * eta * eta * std::exp(eta * t) * grad;
    }
    default:
      throw ConfigError("Euler-Lagrange right-hand side is defined for poly and expo only");
  }
}

}  // namespace symopt
