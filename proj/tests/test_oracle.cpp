#include <doctest.h>

#include <cmath>
#include <limits>

#include "symopt/oracle.hpp"

using namespace symopt;

namespace {

ObjectiveProblem constant_problem(int d) {
  ObjectiveProblem p;
  p.name = "constant";
  p.dim = d;
  p.eval = [](const Vec&) { return 2.0; };
  p.grad = [d](const Vec&) { return Vec::Zero(d).eval(); };
  p.known_minimum = 2.0;
  return p;
}

}  // namespace

TEST_CASE("zero gradient is an equilibrium") {
  const Vec q0 = Vec::LinSpaced(3, -1, 1);
  for (const BregmanConfig& cfg : {BregmanConfig::poly(3, 1), BregmanConfig::expo(0.5, 1)}) {
    const auto traj = integrate_el(cfg, constant_problem(3), q0, 1, 10, 0.01);
    CHECK_FALSE(traj.diverged);
    for (const Vec& q : traj.q) CHECK(q == q0);
    CHECK(traj.position_at(5.5) == q0);
  }
}

TEST_CASE("RK4 convergence order") {
  const auto prob = make_ill_conditioned();
  const Vec q0 = Vec::Ones(3);
  for (const BregmanConfig& cfg : {BregmanConfig::poly(2, 0.01), BregmanConfig::expo(0.5, 0.01)}) {
    Vec end[3];
    const double hs[3] = {0.02, 0.01, 0.005};
    for (int i = 0; i < 3; ++i) end[i] = integrate_el(cfg, prob, q0, 1, 5, hs[i]).q.back();
    const double order = std::log2((end[0] - end[1]).norm() / (end[1] - end[2]).norm());
    CAPTURE(order);
    CHECK(order >= 3.7);
  }
}

TEST_CASE("trajectory bookkeeping") {
  const auto prob = make_quartic(2);
  const auto traj = integrate_el(BregmanConfig::poly(2, 0.25), prob, Vec::Zero(2), 1, 3, 0.01, 5);
  CHECK(traj.times.front() == 1.0);
  CHECK(traj.t_end() == doctest::Approx(3.0));
  CHECK(traj.times.size() == 41);
  for (size_t i = 1; i < traj.times.size(); ++i) CHECK(traj.times[i] > traj.times[i - 1]);
  CHECK((traj.position_at(traj.times[7]) - traj.q[7]).norm() < 1e-14);
  CHECK_THROWS_AS(traj.position_at(0.5), std::domain_error);
  CHECK_THROWS_AS(traj.position_at(3.5), std::domain_error);
  CHECK_THROWS_AS(integrate_el(BregmanConfig::poly(2, 1), prob, Vec::Zero(2), 0.5, 3, 0.01),
                  ConfigError);
  CHECK_THROWS_AS(
      integrate_el(BregmanConfig::expo_to_poly(1, 2, 1), prob, Vec::Zero(2), 1, 3, 0.01),
      ConfigError);
}

TEST_CASE("blow-up truncates the trajectory") {
  const auto traj = integrate_el(BregmanConfig::expo(2, 1), make_ill_conditioned(), Vec::Ones(3), 1,
                                 40, 0.05);
  CHECK(traj.diverged);
  CHECK(traj.t_end() < 40);
  for (const Vec& q : traj.q) CHECK(q.allFinite());
}

TEST_CASE("rate envelope") {
  const auto prob = make_ill_conditioned();
  const auto poly = integrate_el(BregmanConfig::poly(2, 0.01), prob, Vec::Ones(3), 1, 60, 0.005);
  const RateFit pf = rate_envelope(poly, prob, 1.0);
  CHECK_FALSE(pf.unreliable);
  CHECK(pf.points > 10);
  CHECK(pf.slope < -1.5);

  const auto flat = integrate_el(BregmanConfig::poly(2, 1), constant_problem(2), Vec::Ones(2), 1, 10, 0.01);
  CHECK(rate_envelope(flat, constant_problem(2), 2.0).unreliable);
}

TEST_CASE("time dilation") {
  const auto prob = make_ill_conditioned();
  const double same = check_time_dilation(BregmanConfig::poly(2, 0.1), BregmanConfig::poly(2, 0.1),
                                          prob, 5, 1e-4);
  CAPTURE(same);
  CHECK(same <= 1e-6);
  const double fine = check_time_dilation(BregmanConfig::poly(4, 0.1), BregmanConfig::poly(2, 0.1),
                                          prob, 5, 1e-3);
  const double coarse = check_time_dilation(BregmanConfig::poly(4, 0.1), BregmanConfig::poly(2, 0.1),
                                            prob, 5, 1e-2);
  CAPTURE(fine);
  CAPTURE(coarse);
  CHECK(coarse > fine);
  CHECK_THROWS_AS(check_time_dilation(BregmanConfig::poly(4, 0.1), BregmanConfig::poly(2, 0.2),
                                      prob, 5),
                  ConfigError);
}

TEST_CASE("error sign changes") {
  const auto prob = make_ill_conditioned();
  const auto traj = integrate_el(BregmanConfig::poly(2, 0.25), prob, Vec::Ones(3), 1, 20, 0.01);
  CHECK(count_error_sign_changes(traj, prob, 1, 20) > 0);
  const auto flat = integrate_el(BregmanConfig::poly(2, 1), constant_problem(2), Vec::Ones(2), 1, 10, 0.01);
  CHECK(count_error_sign_changes(flat, constant_problem(2), 1, 10) == 0);
}

TEST_CASE("smaller C suppresses oscillations") {
  const auto prob = make_quartic(10);
  for (const BregmanConfig& base : {BregmanConfig::poly(6, 1), BregmanConfig::expo(0.5, 1)}) {
    int prev = std::numeric_limits<int>::max();
    for (double C : {1e-1, 1e-3, 1e-5}) {
      BregmanConfig cfg = base;
      cfg.C = C;
      const auto traj = integrate_el(cfg, prob, Vec::Zero(10), 1, 50, 1e-4, 10);
      REQUIRE_FALSE(traj.diverged);
      const int changes = count_error_sign_changes(traj, prob, 1, 50);
      CAPTURE(C);
      CAPTURE(changes);
      CHECK(changes <= prev);
      prev = changes;
    }
  }
}
