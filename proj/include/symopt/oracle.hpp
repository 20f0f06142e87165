#pragma once

#include <string>
#include <vector>

#include "symopt/bregman.hpp"
#include "symopt/problems.hpp"
#include "symopt/types.hpp"

namespace symopt {

// Fixed-step RK4 solution of the Bregman Euler-Lagrange equation, started at
// rest: q(t0) = q0, q'(t0) = 0.
struct OracleTrajectory {
  std::vector<double> times;
  std::vector<Vec> q;
  std::vector<Vec> v;
  std::string problem;
  BregmanConfig cfg;
  double h_ode = 0;
  int stride = 1;  // RK4 steps between stored samples
  bool diverged = false;

  double t_end() const { return times.empty() ? 0.0 : times.back(); }

  // Cubic Hermite interpolation of q between stored samples.
  // Throws std::domain_error outside [times.front(), times.back()].
  Vec position_at(double t) const;
};

// Poly and Expo families only. `stride` > 1 keeps every stride-th step.
OracleTrajectory integrate_el(const BregmanConfig& cfg, const ObjectiveProblem& problem,
                              const Vec& q0, double t0, double T, double h_ode, int stride = 1);

struct RateFit {
  double slope = 0;
  bool unreliable = false;
  int points = 0;
};

// Slope of the upper envelope of log(f(q(t)) - f*) against log t (Poly) or t
// (Expo) over the last decade of the trajectory (t >= T/10). The envelope is
// the running maximum over trailing windows of a twentieth of the fit span.
RateFit rate_envelope(const OracleTrajectory& traj, const ObjectiveProblem& problem, double f_star);

// Integrates the p-dynamics, reparametrizes to tau(t) = t^(p_target / p), and
// returns the sup over [1, horizon] of the p_target Euler-Lagrange residual
// |q'' + (p_target + 1)/t q' + C p_target^2 t^(p_target - 2) grad f(q)|,
// derivatives by fourth-order central differences.
double check_time_dilation(const BregmanConfig& cfg_p, const BregmanConfig& cfg_target,
                           const ObjectiveProblem& problem, double horizon, double h_ode = 1e-4,
                           const Vec* q0 = nullptr);

// Sign changes of d/dt [f(q(t)) - f*] along a trajectory (sampled derivative
// computed from v: <grad f(q), v>).
int count_error_sign_changes(const OracleTrajectory& traj, const ObjectiveProblem& problem,
                             double t_from, double t_to);

}  // namespace symopt
