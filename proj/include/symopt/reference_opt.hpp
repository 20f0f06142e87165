#pragma once

#include <functional>
#include <string>
#include <vector>

#include "symopt/problems.hpp"
#include "symopt/types.hpp"

namespace symopt {

struct AdamParams {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double h = 1e-3;
  double eps = 1e-8;
};

Vec gd_step(const Vec& x, const Vec& grad, double h);

struct NagStep {
  Vec x;  // x_{k+1}
  Vec y;  // y_k
};

// x_k = y_{k-1} - h grad f(y_{k-1}),  y_k = x_k + (k-1)/(k+2) (x_k - x_{k-1}).
// Given y_{k-1}, x_{k-1} and k, returns x_k and y_k.
NagStep nag_step(const Vec& y_prev, const Vec& x_prev, int k, double h,
                 const std::function<Vec(const Vec&)>& grad_at);

double nag_momentum(int k);

struct AdamState {
  Vec x, m, v;
};

// Standard bias-corrected Adam; k counts from 0.
AdamState adam_step(const AdamState& s, int k, const AdamParams& params, const Vec& grad);

enum class BaselineKind { GD, NAG, Adam };

std::string to_string(BaselineKind kind);
BaselineKind parse_baseline(const std::string& text);

struct BaselineTraceRow {
  int iter;
  double f;
  double grad_norm;
  double error;
};

struct BaselineResult {
  bool converged = false;
  bool diverged = false;
  int iters = 0;
  double final_error = 0;
  std::vector<BaselineTraceRow> trace;
};

// Same termination test as the symplectic runs: |f_k - f_{k-1}| < delta and
// |grad f(x_k)| < delta. NAG is tested at x_k.
BaselineResult run_baseline(BaselineKind kind, const ObjectiveProblem& problem, const Vec& x0,
                            double h, double delta, int max_iters, bool keep_trace = false,
                            const AdamParams& adam = {});

}  // namespace symopt
