#pragma once

#include <string>
#include <utility>

#include "symopt/bregman.hpp"
#include "symopt/problems.hpp"
#include "symopt/types.hpp"

namespace symopt {

// HTVI: Hamiltonian Taylor variational integrator (symplectic Euler).
// LTVI: Lagrangian Taylor variational integrator.
// SLC:  symmetric leapfrog composition of the component flows.
// SV:   Stormer-Verlet.
enum class IntegratorKind { HTVI, LTVI, SLC, SV };

std::string to_string(IntegratorKind kind);

// Parses "poly-slc", "expo2poly-htvi", ... (family prefix optional: "slc").
// Returns the family (or `fallback` when no prefix is given) and the kind.
std::pair<Family, IntegratorKind> parse_method(const std::string& text,
                                               Family fallback = Family::Poly);

enum class InitialMomentum {
  Default,   // half-kick for fused SLC, zero otherwise
  Zero,
  HalfKick,  // r0 = -h/2 kick(t0) grad f(q0)
};

struct IntegratorOptions {
  // SLC and SV: merge the trailing half-kick of one step with the leading
  // half-kick of the next, so that momentum restarts act on the mid-step
  // momentum exactly as in the restarted SLC algorithm.
  bool fused = true;
  // Evolve the time momentum (HTVI, and unfused SLC/SV) for energy diagnostics.
  bool track_energy = false;
  InitialMomentum initial_momentum = InitialMomentum::Default;
};

// Momentum kick still owed by a fused SLC/SV step before its next drift.
enum class PendingKick { None, Half, Full };

struct IntegratorState {
  ExtendedState ext;
  Vec grad;       // grad f(ext.q)
  double f = 0;   // f(ext.q)
  PendingKick pending = PendingKick::None;
  // Fused SLC/SV keep ext.time at the start of the current step (the time
  // variable advances together with the deferred kick), which is also where
  // temporal looping resets it.
  double cached_from = -1, cached_to = -1;  // last trapezoidal time solve
};

enum class StepStatus { Ok, Saturated, NonFinite, SolveFailed };

std::string to_string(StepStatus status);

struct StepRecord {
  IntegratorState state;
  Vec dq;
  int grad_evals = 0;
  double f_value = 0;
  Vec grad;
  StepStatus status = StepStatus::Ok;
};

class Integrator {
 public:
  Integrator(const BregmanConfig& cfg, IntegratorKind kind, double h,
             IntegratorOptions options = {});

  IntegratorState init(const Vec& q0, double f0, const Vec& grad0) const;
  IntegratorState init(const ObjectiveProblem& problem, const Vec& q0) const;

  // One full update in place. `dq` receives the position increment. Exactly
  // one gradient evaluation per call.
  StepStatus advance(IntegratorState& s, const ObjectiveProblem& problem, Vec& dq) const;

  StepRecord step(const IntegratorState& s, const ObjectiveProblem& problem) const;

  // Physical time attached to the current iterate s.ext.q.
  double iterate_time(const IntegratorState& s) const;

  const BregmanConfig& config() const { return coef_.cfg; }
  IntegratorKind kind() const { return kind_; }
  double step_size() const { return h_; }
  const IntegratorOptions& options() const { return options_; }

 private:
  StepStatus advance_htvi(IntegratorState& s, const ObjectiveProblem& problem, Vec& dq) const;
  StepStatus advance_ltvi(IntegratorState& s, const ObjectiveProblem& problem, Vec& dq) const;
  StepStatus advance_slc(IntegratorState& s, const ObjectiveProblem& problem, Vec& dq) const;
  StepStatus advance_sv(IntegratorState& s, const ObjectiveProblem& problem, Vec& dq) const;

  double drift(double t, bool& saturated) const;
  double kick(double t, bool& saturated) const;
  double next_time_trapezoid(IntegratorState& s, double t) const;
  double time_force(double t, const Vec& r, double f) const;
  StepStatus finish(IntegratorState& s, const ObjectiveProblem& problem, bool saturated) const;

  HamiltonianCoefficients coef_;
  IntegratorKind kind_;
  double h_;
  IntegratorOptions options_;
};

// Free-function forms.
IntegratorState init_state(const BregmanConfig& cfg, IntegratorKind kind, const Vec& q0, double h,
                           double f0, const Vec& grad0, IntegratorOptions options = {});

StepRecord step(const BregmanConfig& cfg, IntegratorKind kind, const IntegratorState& s, double h,
                const ObjectiveProblem& problem, IntegratorOptions options = {});

// Root of x = t + h/2 (g(t) + g(x)) for the Stormer-Verlet time update.
// Closed form where the monitor is constant or linear in t; otherwise a
// fixed-point iteration seeded at t + h g(t) (at most 100 iterations,
// successive-iterate tolerance 1e-13 relative to max(1, x)).
// Throws NoConvergenceError.
double solve_implicit_time(const BregmanConfig& cfg, double t, double h);

}  // namespace symopt
