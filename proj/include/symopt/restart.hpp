#pragma once

#include <optional>
#include <string>

#include "symopt/bregman.hpp"
#include "symopt/types.hpp"

namespace symopt {

enum class RestartKind { None, Function, Gradient, Velocity };

std::string to_string(RestartKind kind);
RestartKind parse_restart(const std::string& text);

struct RestartScheme {
  RestartKind scheme = RestartKind::None;
  int min_gap = 0;  // iterations that must pass between two restarts
};

// Function: f_k > f_{k-1}.  Gradient: <grad_k, dq_k> > 0.
// Velocity: |dq_k| < |dq_{k-1}|, never on the first step.
bool should_restart(const RestartScheme& scheme, double f_k, double f_prev, const Vec& grad_k,
                    const Vec& dq_k, const std::optional<Vec>& dq_prev, int iters_since_last);

// r <- 0. Position and time untouched.
ExtendedState apply_restart(ExtendedState s);

}  // namespace symopt
