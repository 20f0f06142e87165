#include "symopt/reference_opt.hpp"

#include <cmath>

namespace symopt {

Vec gd_step(const Vec& x, const Vec& grad, double h) { return x - h * grad; }

double nag_momentum(int k) { return static_cast<double>(k - 1) / (k + 2); }

NagStep nag_step(const Vec& y_prev, const Vec& x_prev, int k, double h,
                 const std::function<Vec(const Vec&)>& grad_at) {
  NagStep out;
  out.x = y_prev - h * grad_at(y_prev);
  out.y = out.x + nag_momentum(k) * (out.x - x_prev);
  return out;
}

AdamState adam_step(const AdamState& s, int k, const AdamParams& params, const Vec& grad) {
  AdamState out;
  out.m = params.beta1 * s.m + (1 - params.beta1) * grad;
  out.v = params.beta2 * s.v + (1 - params.beta2) * grad.cwiseProduct(grad);
  const double c1 = 1 - std::pow(params.beta1, k + 1);
  const double c2 = 1 - std::pow(params.beta2, k + 1);
  const Vec m_hat = out.m / c1;
  const Vec v_hat = out.v / c2;
  out.x = s.x - params.h * m_hat.cwiseQuotient((v_hat.cwiseSqrt().array() + params.eps).matrix());
  return out;
}

std::string to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::GD: return "gd";
    case BaselineKind::NAG: return "nag";
    case BaselineKind::Adam: return "adam";
  }
  return "?";
}

BaselineKind parse_baseline(const std::string& text) {
  if (text == "gd") return BaselineKind::GD;
  if (text == "nag") return BaselineKind::NAG;
  if (text == "adam") return BaselineKind::Adam;
  throw ConfigError("unknown baseline optimizer '" + text + "'");
}

BaselineResult run_baseline(BaselineKind kind, const ObjectiveProblem& problem, const Vec& x0,
                            double h, double delta, int max_iters, bool keep_trace,
                            const AdamParams& adam) {
  if (!(h > 0)) throw ConfigError("step size must be positive");
  if (!(delta > 0) || max_iters < 1) throw ConfigError("bad termination settings");
  BaselineResult res;
  const auto error_of = [&](double f) {
    return problem.known_minimum ? std::abs(f - *problem.known_minimum) : f;
  };

  Vec x = x0, x_prev = x0, y = x0;
  AdamState as{x0, Vec::Zero(x0.size()), Vec::Zero(x0.size())};
  AdamParams ap = adam;
  ap.h = h;
  double f_prev = problem.eval(x);
  Vec g = problem.grad(x);
  if (keep_trace) res.trace.push_back({0, f_prev, g.norm(), error_of(f_prev)});

  for (int k = 1; k <= max_iters; ++k) {
    switch (kind) {
      case BaselineKind::GD:
        x = gd_step(x, g, h);
        break;
      case BaselineKind::NAG: {
        const NagStep ns = nag_step(y, x_prev, k, h, problem.grad);
        x_prev = ns.x;
        x = ns.x;
        y = ns.y;
        break;
      }
      case BaselineKind::Adam:
        as = adam_step(as, k - 1, ap, g);
        x = as.x;
        break;
    }
    const double f = problem.eval(x);
    g = problem.grad(x);
    res.iters = k;
    res.final_error = error_of(f);
    if (keep_trace) res.trace.push_back({k, f, g.norm(), res.final_error});
    if (!std::isfinite(f) || !g.allFinite() || !x.allFinite()) {
      res.diverged = true;
      return res;
    }
    if (std::abs(f - f_prev) < delta && g.norm() < delta) {
      res.converged = true;
      return res;
    }
    f_prev = f;
  }
  return res;
}

}  // namespace symopt
