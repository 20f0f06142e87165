#pragma once

#include <optional>
#include <string>

#include "symopt/problems.hpp"
#include "symopt/types.hpp"

namespace symopt {

// Which Bregman dynamics are simulated, and in which time parametrization.
//   Poly        polynomial-p dynamics, time-rescaled to polynomial-p_target
//   Expo        exponential-eta dynamics, time-rescaled to exponential-eta_target
//   ExpoToPoly  exponential-eta dynamics on a polynomial-p clock
//   PolyToExpo  polynomial-p dynamics on an exponential-eta clock
enum class Family { Poly, Expo, ExpoToPoly, PolyToExpo };

std::string to_string(Family family);

// Only the parameters relevant to the family are read:
//   Poly: p, p_target, C     Expo: eta, eta_target, C
//   ExpoToPoly: eta, p, C    PolyToExpo: p, eta, C
struct BregmanConfig {
  Family family = Family::Poly;
  double p = 0.0;
  double p_target = 0.0;
  double eta = 0.0;
  double eta_target = 0.0;
  double C = 0.0;

  static BregmanConfig poly(double p, double C) { return poly(p, C, p); }
  static BregmanConfig poly(double p, double C, double p_target);
  static BregmanConfig expo(double eta, double C) { return expo(eta, C, eta); }
  static BregmanConfig expo(double eta, double C, double eta_target);
  static BregmanConfig expo_to_poly(double eta, double p, double C);
  static BregmanConfig poly_to_expo(double p, double eta, double C);

  // Throws ConfigError when a parameter the family reads is not positive.
  void validate() const;

  // False for Poly with p_target == p and Expo with eta_target == eta.
  bool adaptive() const;
};

// Position q, momentum r, physical time (a position coordinate in the extended
// phase space) and, when energy is being monitored, its conjugate momentum.
struct ExtendedState {
  Vec q;
  Vec r;
  double time = 1.0;
  std::optional<double> time_momentum;
};

struct ParameterFunctions {
  double alpha;
  double beta;
  double gamma;
};

// alpha_t, beta_t, gamma_t of the polynomial or exponential subfamily.
// Throws std::domain_error for t <= 0, ConfigError for cross families.
ParameterFunctions parameter_functions(const BregmanConfig& cfg, double t);

// Monitor function g(t) = dt/dtau of the family's time rescaling.
double monitor(const BregmanConfig& cfg, double t);

// The Poincare-transformed Hamiltonian, written as
//   H(q, r, t, rt) = 1/2 drift(t) <r, r> + kick(t) f(q) + monitor(t) rt.
// The integrators only ever need these three coefficients of t, so they are
// exposed in log form (for overflow control) together with their log-derivatives
// (for the time-momentum update of the energy diagnostics).
struct HamiltonianCoefficients {
  explicit HamiltonianCoefficients(const BregmanConfig& cfg);

  double log_drift(double t) const;
  double log_kick(double t) const;
  double log_monitor(double t) const;

  double dlog_drift(double t) const;
  double dlog_kick(double t) const;
  double dlog_monitor(double t) const;

  // Exact flow of t' = monitor(t) over fictive time s (s may be negative).
  // Returns NaN when the flow leaves t > 0.
  double time_flow(double t, double s) const;

  BregmanConfig cfg;
};

// exp(log_value), with `saturated` set when the result would overflow.
double checked_exp(double log_value, bool& saturated);

// Energy diagnostic. Requires s.time_momentum.
double poincare_hamiltonian(const BregmanConfig& cfg, const ExtendedState& s, double f_at_q);
double poincare_hamiltonian(const BregmanConfig& cfg, const ExtendedState& s,
                            const ObjectiveProblem& problem);

// Right-hand side of the continuous Euler-Lagrange equation, q'' as a function
// of (t, q, q', grad f(q)). Poly and Expo families only.
Vec el_acceleration(const BregmanConfig& cfg, double t, const Vec& v, const Vec& grad);

}  // namespace symopt
