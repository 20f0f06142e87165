#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "symopt/problems.hpp"

using namespace symopt;
using doctest::Approx;

namespace {

std::vector<ObjectiveProblem> all_problems() {
  Mat X(4, 2);
  X << 1, 0.5, -1, 2, 0.3, -0.7, 2, 1;
  Vec y(4);
  y << 1, -1, 1, -1;
  return {make_quartic(5),
          make_log_barrier(),
          make_negative_entropy(4),
          make_ill_conditioned(),
          make_least_squares(12, 5, Penalty::none(), 3),
          make_least_squares(12, 5, Penalty::l2(0.5), 3),
          make_least_squares(12, 5, Penalty::l1(0.1), 3),
          make_logistic(X, y, Penalty::none()),
          make_logistic(40, 4, Penalty::l2(0.1), 5),
          make_logistic(40, 4, Penalty::l1(0.1), 5),
          make_fermat_weber(6, 3, 11)};
}

// Random point in the problem's domain, kept away from kinks.
Vec sample_point(const ObjectiveProblem& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(0.2, 3.0), any(-2.0, 2.0);
  Vec x(p.dim);
  const bool positive = p.name == "logbarrier" || p.name == "entropy";
  for (int i = 0; i < p.dim; ++i) {
    x[i] = positive ? pos(rng) : any(rng);
    if (!positive && std::abs(x[i]) < 1e-3) x[i] += 0.01;
  }
  return x;
}

}  // namespace

TEST_CASE("gradients agree with central differences on every problem") {
  std::mt19937_64 rng(42);
  const double eps = 1e-6;
  for (const ObjectiveProblem& p : all_problems()) {
    CAPTURE(p.name);
    for (int trial = 0; trial < 20; ++trial) {
      const Vec x = sample_point(p, rng);
      const Vec g = p.grad(x);
      for (int i = 0; i < p.dim; ++i) {
        Vec xp = x, xm = x;
        xp[i] += eps;
        xm[i] -= eps;
        const double fd = (p.eval(xp) - p.eval(xm)) / (2 * eps);
        CHECK(std::abs(fd - g[i]) <= 1e-5 * std::max(1.0, std::abs(g[i])));
      }
    }
  }
}

TEST_CASE("convexity spot check") {
  std::mt19937_64 rng(7);
  for (const ObjectiveProblem& p : all_problems()) {
    CAPTURE(p.name);
    for (int trial = 0; trial < 50; ++trial) {
      const Vec x = sample_point(p, rng), y = sample_point(p, rng);
      CHECK(p.eval(0.5 * x + 0.5 * y) <= 0.5 * p.eval(x) + 0.5 * p.eval(y) + 1e-12);
    }
  }
}

TEST_CASE("known minimizers are stationary and match the known minimum") {
  for (const ObjectiveProblem& p : all_problems()) {
    if (!p.known_minimizer) continue;
    CAPTURE(p.name);
    CHECK(p.grad(*p.known_minimizer).norm() <= 1e-10);
    REQUIRE(p.known_minimum);
    CHECK(std::abs(p.eval(*p.known_minimizer) - *p.known_minimum) <=
          1e-12 * std::max(1.0, std::abs(*p.known_minimum)));
  }
}

TEST_CASE("quartic") {
  const auto p2 = make_quartic(2);
  CHECK(p2.eval(Vec::Ones(2)) == 1.0);
  CHECK(p2.grad(Vec::Ones(2)).isZero());
  CHECK(p2.eval(Vec::Zero(2)) == Approx(15.44));
  const auto p1 = make_quartic(1);
  CHECK(p1.eval(Vec::Constant(1, 2.0)) == Approx(2.0));
  CHECK(p1.grad(Vec::Constant(1, 2.0))[0] == Approx(4.0));
  CHECK_THROWS_AS(make_quartic(0), ConfigError);
}

TEST_CASE("log barrier") {
  const auto p = make_log_barrier();
  CHECK(p.eval(Vec::Ones(2)) == Approx(2.0));
  Vec xs(2);
  xs << 1, std::sqrt(2.0) / 2;
  CHECK(p.grad(xs).norm() < 1e-15);
  CHECK(*p.known_minimum == Approx(1.5 + 0.5 * std::log(2.0)));
  Vec bad(2);
  bad << -1, 1;
  CHECK(std::isinf(p.eval(bad)));
  CHECK_FALSE(p.grad(bad).allFinite());
}

TEST_CASE("negative entropy") {
  CHECK(make_negative_entropy(1).eval(Vec::Ones(1)) == 0.0);
  CHECK(make_negative_entropy(1).grad(Vec::Ones(1))[0] == 1.0);
  CHECK(*make_negative_entropy(3).known_minimum == Approx(-3 / std::exp(1.0)));
  CHECK(make_negative_entropy(2).grad(Vec::Constant(2, std::exp(-1.0))).norm() < 1e-15);
  CHECK(std::isinf(make_negative_entropy(2).eval(Vec::Constant(2, -0.5))));
}

TEST_CASE("ill-conditioned quadratic") {
  const auto p = make_ill_conditioned();
  CHECK(p.eval(Vec::Zero(3)) == 1.0);
  CHECK(p.eval(Vec::Ones(3)) == Approx(102.01));
  Vec e1 = Vec::Zero(3);
  e1[0] = 1;
  CHECK(p.grad(e1)[0] == Approx(0.02));
  CHECK(p.grad(e1).tail(2).isZero());
}

TEST_CASE("least squares") {
  const Mat A = Mat::Identity(2, 2);
  Vec b(2);
  b << 1, 2;
  const auto plain = make_least_squares(A, b, Penalty::none());
  REQUIRE(plain.known_minimizer);
  CHECK((*plain.known_minimizer - b).norm() < 1e-14);
  const auto ridge = make_least_squares(A, b, Penalty::l2(1.0));
  REQUIRE(ridge.known_minimizer);
  CHECK((*ridge.known_minimizer)[0] == Approx(0.5));
  CHECK((*ridge.known_minimizer)[1] == Approx(1.0));
  const auto lasso = make_least_squares(A, b, Penalty::l1(0.5));
  CHECK(lasso.grad(Vec::Zero(2))[0] == Approx(-1.0));  // data term only at the kink

  const auto s1 = make_least_squares(8, 3, Penalty::none(), 9);
  const auto s2 = make_least_squares(8, 3, Penalty::none(), 9);
  const auto s3 = make_least_squares(8, 3, Penalty::none(), 10);
  const Vec x = Vec::LinSpaced(3, -1, 1);
  CHECK(s1.eval(x) == s2.eval(x));
  CHECK(s1.eval(x) != s3.eval(x));

  Mat rank1(3, 2);
  rank1 << 1, 2, 2, 4, 3, 6;
  CHECK_FALSE(make_least_squares(rank1, Vec::Ones(3), Penalty::none()).known_minimizer);
}

TEST_CASE("logistic regression") {
  Mat X(1, 1);
  X << 1;
  Vec y(1);
  y << 1;
  const auto p = make_logistic(X, y, Penalty::none());
  CHECK(p.grad(Vec::Zero(1))[0] == Approx(-0.5));
  double prev = p.eval(Vec::Zero(1));
  for (double t : {1.0, 10.0, 100.0, 800.0}) {
    const double f = p.eval(Vec::Constant(1, t));
    CHECK(f < prev);
    CHECK(std::isfinite(f));
    prev = f;
  }
  const auto m = make_logistic(30, 3, Penalty::none(), 2);
  CHECK(m.eval(Vec::Zero(3)) == Approx(30 * std::log(2.0)));
  Vec bad(1);
  bad << 0.5;
  CHECK_THROWS_AS(make_logistic(X, bad, Penalty::none()), ConfigError);
}

TEST_CASE("Fermat-Weber") {
  const std::vector<Vec> a1{Vec::Zero(1), Vec::Constant(1, 2.0)};
  const auto p = make_fermat_weber(a1, {1.0, 1.0});
  CHECK(p.eval(Vec::Ones(1)) == Approx(2.0));
  CHECK(p.grad(Vec::Ones(1))[0] == Approx(0.0));
  const auto q = make_fermat_weber({Vec::Zero(2)}, {3.0});
  Vec x(2);
  x << 3, 4;
  CHECK(q.eval(x) == Approx(15.0));
  CHECK(q.grad(x)[0] == Approx(1.8));
  CHECK(q.grad(x)[1] == Approx(2.4));
  CHECK(q.grad(Vec::Zero(2)).isZero());
  // At an anchor only the other terms contribute.
  CHECK(p.grad(Vec::Zero(1))[0] == Approx(-1.0));
}

TEST_CASE("problem selection by name") {
  for (const char* name :
       {"quartic", "logbarrier", "entropy", "illcond", "lstsq", "logistic", "fermat-weber"}) {
    ProblemSpec spec;
    spec.name = name;
    const auto p = make_problem(spec);
    CHECK(p.name == name);
    const Vec x0 = default_start(p);
    CHECK(x0.size() == p.dim);
    CHECK(std::isfinite(p.eval(x0)));
  }
  ProblemSpec bad;
  bad.name = "rosenbrock";
  CHECK_THROWS_AS(make_problem(bad), ConfigError);
}
