#include "symopt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace symopt {

namespace {

void require_el_family(const BregmanConfig& cfg) {
  if (cfg.family != Family::Poly && cfg.family != Family::Expo)
    throw ConfigError("the continuous oracle supports the poly and expo families only");
  if (cfg.adaptive()) throw ConfigError("the continuous oracle integrates the untransformed dynamics");
}

}  // namespace

Vec OracleTrajectory::position_at(double t) const {
  if (times.empty() || t < times.front() || t > times.back())
    throw std::domain_error("time outside the oracle trajectory");
  auto it = std::upper_bound(times.begin(), times.end(), t);
  std::size_t i = it == times.begin() ? 0 : static_cast<std::size_t>(it - times.begin()) - 1;
  if (i + 1 >= times.size()) return q.back();
  const double dt = times[i + 1] - times[i];
  const double s = (t - times[i]) / dt;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  return h00 * q[i] + (h10 * dt) * v[i] + h01 * q[i + 1] + (h11 * dt) * v[i + 1];
}

OracleTrajectory integrate_el(const BregmanConfig& cfg, const ObjectiveProblem& problem,
                              const Vec& q0, double t0, double T, double h_ode, int stride) {
  require_el_family(cfg);
  if (!(t0 >= 1)) throw ConfigError("oracle start time must be at least 1");
  if (!(T > t0)) throw ConfigError("oracle horizon must exceed the start time");
  if (!(h_ode > 0)) throw ConfigError("oracle step must be positive");
  if (stride < 1) throw ConfigError("oracle stride must be positive");
  if (q0.size() != problem.dim) throw ConfigError("initial point has the wrong dimension");

  OracleTrajectory traj;
  traj.problem = problem.name;
  traj.cfg = cfg;
  traj.h_ode = h_ode;
  traj.stride = stride;

  const auto accel = [&](double t, const Vec& q, const Vec& v) {
    return el_acceleration(cfg, t, v, problem.grad(q));
  };

  Vec q = q0, v = Vec::Zero(q0.size());
  traj.times.push_back(t0);
  traj.q.push_back(q);
  traj.v.push_back(v);
  const long steps = static_cast<long>(std::ceil((T - t0) / h_ode - 1e-9));
  for (long n = 0; n < steps; ++n) {
    const double t = t0 + n * h_ode;
    const Vec k1q = v;
    const Vec k1v = accel(t, q, v);
    const Vec q2 = q + 0.5 * h_ode * k1q, v2 = v + 0.5 * h_ode * k1v;
    const Vec k2v = accel(t + 0.5 * h_ode, q2, v2);
    const Vec q3 = q + 0.5 * h_ode * v2, v3 = v + 0.5 * h_ode * k2v;
    const Vec k3v = accel(t + 0.5 * h_ode, q3, v3);
    const Vec q4 = q + h_ode * v3, v4 = v + h_ode * k3v;
    const Vec k4v = accel(t + h_ode, q4, v4);
    q += (h_ode / 6) * (k1q + 2 * v2 + 2 * v3 + v4);
    v += (h_ode / 6) * (k1v + 2 * k2v + 2 * k3v + k4v);
    if (!q.allFinite() || !v.allFinite()) {
      traj.diverged = true;
      break;
    }
    if ((n + 1) % stride == 0 || n + 1 == steps) {
      traj.times.push_back(t0 + (n + 1) * h_ode);
      traj.q.push_back(q);
      traj.v.push_back(v);
    }
  }
  return traj;
}

RateFit rate_envelope(const OracleTrajectory& traj, const ObjectiveProblem& problem,
                      double f_star) {
  RateFit fit;
  if (traj.times.size() < 3) {
    fit.unreliable = true;
    return fit;
  }
  const bool poly = traj.cfg.family == Family::Poly;
  const double T = traj.times.back();
  const double t_lo = std::max(traj.times.front(), T / 10);
  const double floor = 1e2 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(f_star));

  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    if (t < t_lo) continue;
    const double err = problem.eval(traj.q[i]) - f_star;
    if (!(err > floor)) {
      fit.unreliable = true;
      continue;
    }
    xs.push_back(poly ? std::log(t) : t);
    ys.push_back(std::log(err));
  }
  if (xs.size() < 3) {
    fit.unreliable = true;
    return fit;
  }

  // Trailing-window running maximum (monotone deque).
  const double window = (xs.back() - xs.front()) / 20;
  std::vector<double> env(xs.size());
  std::deque<std::size_t> dq;
  std::size_t lo = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    while (!dq.empty() && ys[dq.back()] <= ys[i]) dq.pop_back();
    dq.push_back(i);
    while (xs[i] - xs[lo] > window) ++lo;
    while (dq.front() < lo) dq.pop_front();
    env[i] = ys[dq.front()];
  }
  std::size_t start = 0;
  while (start < xs.size() && xs[start] - xs.front() < window) ++start;
  const std::size_t n = xs.size() - start;
  if (n < 3) {
    fit.unreliable = true;
    return fit;
  }
  double mx = 0, my = 0;
  for (std::size_t i = start; i < xs.size(); ++i) mx += xs[i], my += env[i];
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = start; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (env[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  fit.slope = sxy / sxx;
  fit.points = static_cast<int>(n);
  return fit;
}

double check_time_dilation(const BregmanConfig& cfg_p, const BregmanConfig& cfg_target,
                           const ObjectiveProblem& problem, double horizon, double h_ode,
                           const Vec* q0) {
  if (cfg_p.family != Family::Poly || cfg_target.family != Family::Poly)
    throw ConfigError("time dilation check needs two poly configurations");
  if (cfg_p.C != cfg_target.C) throw ConfigError("time dilation check needs equal C");
  if (!(horizon > 1)) throw ConfigError("time dilation horizon must exceed 1");
  const double p = cfg_p.p, pt = cfg_target.p, C = cfg_p.C;
  const double k = pt / p;
  const auto tau = [&](double t) { return std::pow(t, k); };

  const Vec start = q0 ? *q0 : default_start(problem);
  const OracleTrajectory traj =
      integrate_el(BregmanConfig::poly(p, C), problem, start, 1.0, tau(horizon) + 1e-6, h_ode);
  if (traj.diverged) return std::numeric_limits<double>::infinity();

  const double d = 1e-3;
  const auto Y = [&](double t) { return traj.position_at(tau(t)); };
  double worst = 0;
  const int samples = 400;
  const double a = 1 + 2 * d, b = horizon - 2 * d;
  for (int i = 0; i <= samples; ++i) {
    const double t = a + (b - a) * i / samples;
    const Vec ym2 = Y(t - 2 * d), ym1 = Y(t - d), y0 = Y(t), yp1 = Y(t + d), yp2 = Y(t + 2 * d);
    const Vec vel = (ym2 - 8 * ym1 + 8 * yp1 - yp2) / (12 * d);
    const Vec acc = (-ym2 + 16 * ym1 - 30 * y0 + 16 * yp1 - yp2) / (12 * d * d);
    const Vec res =
        acc + ((pt + 1) / t) * vel + (C * pt * pt * std::pow(t, pt - 2)) * problem.grad(y0);
    worst = std::max(worst, res.norm());
  }
  return worst;
}

int count_error_sign_changes(const OracleTrajectory& traj, const ObjectiveProblem& problem,
                             double t_from, double t_to) {
  int changes = 0;
  int last = 0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    if (t < t_from || t > t_to) continue;
    const double rate = problem.grad(traj.q[i]).dot(traj.v[i]);
    const int sign = rate > 0 ? 1 : (rate < 0 ? -1 : 0);
    if (sign == 0) continue;
    if (last != 0 && sign != last) ++changes;
    last = sign;
  }
  return changes;
}

}  // namespace symopt
