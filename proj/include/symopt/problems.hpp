#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "symopt/types.hpp"

namespace symopt {

// A differentiable (or subdifferentiable) convex objective. Immutable after
// construction; eval and grad are pure and may be called concurrently.
//
// Objectives with a restricted domain (log barrier, negative entropy) return
// +infinity from eval outside it, and a non-finite gradient, so that a run
// wandering out of the domain is recorded as diverged instead of throwing.
struct ObjectiveProblem {
  std::string name;
  int dim = 0;
  std::function<double(const Vec&)> eval;
  std::function<Vec(const Vec&)> grad;
  std::optional<Vec> known_minimizer;
  std::optional<double> known_minimum;
};

// f(x) = 1 + [(x-1)' S (x-1)]^2 with S_ij = 0.9^|i-j|.
ObjectiveProblem make_quartic(int d);

// f(x1, x2) = x1 + x2^2 - ln(x1 x2) on the positive quadrant.
ObjectiveProblem make_log_barrier();

// f(x) = sum_k x_k ln x_k on the positive orthant.
ObjectiveProblem make_negative_entropy(int d);

// f(x) = 1 + 0.01 x1^2 + x2^2 + 100 x3^2.
ObjectiveProblem make_ill_conditioned();

enum class Regularization { None, L1, L2 };

struct Penalty {
  Regularization kind = Regularization::None;
  double lambda = 0.0;

  static Penalty none() { return {}; }
  static Penalty l1(double lambda) { return {Regularization::L1, lambda}; }
  static Penalty l2(double lambda) { return {Regularization::L2, lambda}; }
};

// Least squares with explicit data:
//   none: 1/2 x'A'Ax - b'Ax
//   l2:   ||Ax - b||^2 + lambda ||x||^2
//   l1:   1/2 ||Ax - b||^2 + lambda ||x||_1   (subgradient 0 at x_i = 0)
ObjectiveProblem make_least_squares(const Mat& A, const Vec& b, Penalty penalty);

// Same, with A (m x n) and b (m) drawn standard normal from a seeded generator.
ObjectiveProblem make_least_squares(int m, int n, Penalty penalty, std::uint64_t seed);

// Sum of softplus(-y_i w'x_i) over rows x_i of `features`, plus the penalty.
ObjectiveProblem make_logistic(const Mat& features, const Vec& labels, Penalty penalty);

// Seeded synthetic classification data: standard normal features, labels from
// the sign of a random linear model with a little label noise.
ObjectiveProblem make_logistic(int m, int n, Penalty penalty, std::uint64_t seed);

// f(x) = sum_j w_j ||x - y_j||. The j-th gradient term is zero when x == y_j.
ObjectiveProblem make_fermat_weber(const std::vector<Vec>& anchors,
                                   const std::vector<double>& weights);

// Seeded anchors (standard normal) and weights (uniform in [0.5, 2]).
ObjectiveProblem make_fermat_weber(int num_anchors, int n, std::uint64_t seed);

// Selection by name, as used on the command line.
struct ProblemSpec {
  std::string name = "illcond";  // quartic|logbarrier|entropy|illcond|lstsq|logistic|fermat-weber
  int dim = 0;                   // 0 picks the problem's default
  int samples = 0;               // rows for lstsq/logistic, anchors for fermat-weber; 0 = default
  std::uint64_t seed = 1;
  Penalty penalty{};
};

ObjectiveProblem make_problem(const ProblemSpec& spec);

// Interior starting point used when a run does not specify q0.
Vec default_start(const ObjectiveProblem& problem);

}  // namespace symopt
