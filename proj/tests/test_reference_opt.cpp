#include <doctest.h>

#include <cmath>
#include <random>

#include "symopt/reference_opt.hpp"

using namespace symopt;
using doctest::Approx;

TEST_CASE("gradient descent step") {
  CHECK(gd_step(Vec::Constant(2, 3.0), Vec::Zero(2), 0.5) == Vec::Constant(2, 3.0));
  CHECK(gd_step(Vec::Constant(1, 1.0), Vec::Constant(1, 2.0), 0.5)[0] == 0.0);
  const Vec x = Vec::LinSpaced(3, -1, 2);
  CHECK(gd_step(x, x, 1.0).isZero());  // unit-curvature quadratic
}

TEST_CASE("Nesterov step") {
  CHECK(nag_momentum(1) == 0.0);
  CHECK(nag_momentum(2) == 0.25);
  CHECK(nag_momentum(10) == Approx(9.0 / 12));
  auto grad = [](const Vec& x) { Vec g = x; return g; };
  const Vec x0 = Vec::Constant(2, 1.0);
  const NagStep s1 = nag_step(x0, x0, 1, 0.1, grad);
  CHECK((s1.x - gd_step(x0, x0, 0.1)).norm() == 0.0);
  CHECK((s1.y - s1.x).norm() == 0.0);
  const NagStep s2 = nag_step(s1.y, s1.x, 2, 0.1, grad);
  const Vec x2 = s1.y - 0.1 * grad(s1.y);
  CHECK((s2.x - x2).norm() == 0.0);
  CHECK((s2.y - (x2 + 0.25 * (x2 - s1.x))).norm() < 1e-15);

  auto zero = [](const Vec& x) { return Vec::Zero(x.size()).eval(); };
  Vec y = x0, xp = x0;
  for (int k = 1; k < 20; ++k) {
    const NagStep s = nag_step(y, xp, k, 0.3, zero);
    CHECK(s.x == x0);
    y = s.y;
    xp = s.x;
  }
}

TEST_CASE("Adam step") {
  const AdamParams p;
  AdamState s{Vec::Constant(1, 2.0), Vec::Zero(1), Vec::Zero(1)};
  const AdamState z = adam_step(s, 0, p, Vec::Zero(1));
  CHECK(z.x == s.x);
  const AdamState a = adam_step(s, 0, p, Vec::Constant(1, 3.0));
  CHECK(a.m[0] == Approx(0.1 * 3));
  CHECK(a.v[0] == Approx(0.001 * 9));
  // Bias correction makes the first step h g / (|g| + eps).
  CHECK(s.x[0] - a.x[0] == Approx(p.h * 3 / (3 + p.eps)).epsilon(1e-12));

  // Scalar recomputation over a few steps.
  double x = 2, m = 0, v = 0;
  AdamState t = s;
  for (int k = 0; k < 5; ++k) {
    const double g = std::sin(x) + 0.3;
    m = p.beta1 * m + (1 - p.beta1) * g;
    v = p.beta2 * v + (1 - p.beta2) * g * g;
    const double mh = m / (1 - std::pow(p.beta1, k + 1)), vh = v / (1 - std::pow(p.beta2, k + 1));
    x -= p.h * mh / (std::sqrt(vh) + p.eps);
    t = adam_step(t, k, p, Vec::Constant(1, std::sin(t.x[0]) + 0.3));
    CHECK(t.x[0] == Approx(x).epsilon(1e-14));
  }
}

TEST_CASE("Adam step magnitude is bounded by the learning rate") {
  const AdamParams p;
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n;
  std::uniform_real_distribution<double> scale(-6, 6);
  for (int trial = 0; trial < 200; ++trial) {
    AdamState s{Vec::Zero(4), Vec::Zero(4), Vec::Zero(4)};
    const double sc = std::pow(10.0, scale(rng));
    for (int k = 0; k < 30; ++k) {
      Vec g(4);
      for (int i = 0; i < 4; ++i) g[i] = sc * n(rng) + (trial % 2 ? sc : 0);
      const AdamState next = adam_step(s, k, p, g);
      // |m_hat| / sqrt(v_hat) <= (1 - b1) / sqrt(1 - b2) for the first steps; 3.2 covers it.
      CHECK((next.x - s.x).lpNorm<Eigen::Infinity>() <= 3.2 * p.h);
      s = next;
    }
  }
}

TEST_CASE("baseline runs") {
  const auto p = make_ill_conditioned();
  const BaselineResult nag =
      run_baseline(BaselineKind::NAG, p, Vec::Ones(3), 0.005, 1e-8, 100000, true);
  CHECK(nag.converged);
  CHECK(nag.final_error <= 1e-8);
  MESSAGE("NAG on the ill-conditioned quadratic: ", nag.iters, " iterations");
  CHECK(nag.iters == 12958);  // regression baseline
  CHECK(nag.trace.size() == static_cast<size_t>(nag.iters + 1));

  const BaselineResult gd = run_baseline(BaselineKind::GD, p, Vec::Ones(3), 0.005, 1e-8, 1000000);
  CHECK(gd.converged);
  CHECK(gd.iters > nag.iters);

  const BaselineResult blow = run_baseline(BaselineKind::GD, p, Vec::Ones(3), 0.02, 1e-8, 100000);
  CHECK(blow.diverged);
  CHECK_FALSE(blow.converged);

  for (BaselineKind k : {BaselineKind::GD, BaselineKind::NAG, BaselineKind::Adam})
    CHECK(parse_baseline(to_string(k)) == k);
  CHECK_THROWS_AS(parse_baseline("sgd"), ConfigError);
}
