#include "symopt/problems.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <random>

#include <Eigen/Cholesky>
#include <Eigen/QR>

namespace symopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_dim(int d, const char* what) {
  if (d < 1) throw ConfigError(std::string(what) + ": dimension must be >= 1");
}

Vec nan_vec(int d) { return Vec::Constant(d, std::numeric_limits<double>::quiet_NaN()); }

double penalty_value(const Penalty& pen, const Vec& x) {
  switch (pen.kind) {
    case Regularization::None: return 0.0;
    case Regularization::L1: return pen.lambda * x.lpNorm<1>();
    case Regularization::L2: return pen.lambda * x.squaredNorm();
  }
  return 0.0;
}

// Zero element of the subdifferential at kinks for l1.
Vec penalty_grad(const Penalty& pen, const Vec& x) {
  switch (pen.kind) {
    case Regularization::None: return Vec::Zero(x.size());
    case Regularization::L1:
      return pen.lambda * x.unaryExpr([](double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); });
    case Regularization::L2: return 2.0 * pen.lambda * x;
  }
  return Vec::Zero(x.size());
}

void require_penalty(const Penalty& pen) {
  if (pen.kind != Regularization::None && !(pen.lambda > 0))
    throw ConfigError("regularization weight must be positive");
}

// log(1 + exp(z)) without overflow.
double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void attach_minimum(ObjectiveProblem& prob) {
  if (prob.known_minimizer) prob.known_minimum = prob.eval(*prob.known_minimizer);
}

}  // namespace

ObjectiveProblem make_quartic(int d) {
  require_dim(d, "quartic");
  auto sigma = std::make_shared<Mat>(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) (*sigma)(i, j) = std::pow(0.9, std::abs(i - j));

  ObjectiveProblem prob;
  prob.name = "quartic";
  prob.dim = d;
  prob.eval = [sigma](const Vec& x) {
    const Vec y = x.array() - 1.0;
    const double s = y.dot(*sigma * y);
    return 1.0 + s * s;
  };
  prob.grad = [sigma](const Vec& x) -> Vec {
    const Vec y = x.array() - 1.0;
    const Vec sy = *sigma * y;
    return 4.0 * y.dot(sy) * sy;
  };
  prob.known_minimizer = Vec::Ones(d);
  prob.known_minimum = 1.0;
  return prob;
}

ObjectiveProblem make_log_barrier() {
  ObjectiveProblem prob;
  prob.name = "logbarrier";
  prob.dim = 2;
  prob.eval = [](const Vec& x) {
    if (!(x[0] > 0 && x[1] > 0)) return kInf;
    return x[0] + x[1] * x[1] - std::log(x[0] * x[1]);
  };
  prob.grad = [](const Vec& x) -> Vec {
    if (!(x[0] > 0 && x[1] > 0)) return nan_vec(2);
    Vec g(2);
    g << 1.0 - 1.0 / x[0], 2.0 * x[1] - 1.0 / x[1];
    return g;
  };
  Vec xstar(2);
  xstar << 1.0, std::numbers::sqrt2 / 2.0;
  prob.known_minimizer = xstar;
  prob.known_minimum = 1.5 + 0.5 * std::numbers::ln2;
  return prob;
}

ObjectiveProblem make_negative_entropy(int d) {
  require_dim(d, "entropy");
  ObjectiveProblem prob;
  prob.name = "entropy";
  prob.dim = d;
  prob.eval = [](const Vec& x) {
    if (!(x.array() > 0).all()) return kInf;
    return (x.array() * x.array().log()).sum();
  };
  prob.grad = [d](const Vec& x) -> Vec {
    if (!(x.array() > 0).all()) return nan_vec(d);
    return x.array().log() + 1.0;
  };
  prob.known_minimizer = Vec::Constant(d, std::exp(-1.0));
  prob.known_minimum = -d / std::numbers::e;
  return prob;
}

ObjectiveProblem make_ill_conditioned() {
  ObjectiveProblem prob;
  prob.name = "illcond";
  prob.dim = 3;
  prob.eval = [](const Vec& x) {
    return 1.0 + 0.01 * x[0] * x[0] + x[1] * x[1] + 100.0 * x[2] * x[2];
  };
  prob.grad = [](const Vec& x) -> Vec {
    Vec g(3);
    g << 0.02 * x[0], 2.0 * x[1], 200.0 * x[2];
    return g;
  };
  prob.known_minimizer = Vec::Zero(3);
  prob.known_minimum = 1.0;
  return prob;
}

ObjectiveProblem make_least_squares(const Mat& A, const Vec& b, Penalty penalty) {
  if (A.rows() < A.cols() || A.cols() < 1)
    throw ConfigError("least squares needs m >= n >= 1");
  if (b.size() != A.rows()) throw ConfigError("least squares: b must have m entries");
  require_penalty(penalty);

  struct Data {
    Mat A, AtA;
    Vec b, Atb;
  };
  auto data = std::make_shared<Data>();
  data->A = A;
  data->b = b;
  data->AtA = A.transpose() * A;
  data->Atb = A.transpose() * b;
  const int n = static_cast<int>(A.cols());

  ObjectiveProblem prob;
  prob.dim = n;
  switch (penalty.kind) {
    case Regularization::None:
      prob.name = "lstsq";
      prob.eval = [data](const Vec& x) {
        return 0.5 * x.dot(data->AtA * x) - data->Atb.dot(x);
      };
      prob.grad = [data](const Vec& x) -> Vec { return data->AtA * x - data->Atb; };
      {
        Eigen::ColPivHouseholderQR<Mat> qr(data->A);
        if (qr.rank() == n) prob.known_minimizer = Vec(data->AtA.ldlt().solve(data->Atb));
      }
      break;
    case Regularization::L2:
      prob.name = "lstsq-l2";
      prob.eval = [data, penalty](const Vec& x) {
        return (data->A * x - data->b).squaredNorm() + penalty_value(penalty, x);
      };
      prob.grad = [data, penalty](const Vec& x) -> Vec {
        return 2.0 * (data->AtA * x - data->Atb) + penalty_grad(penalty, x);
      };
      {
        const Mat M = data->AtA + penalty.lambda * Mat::Identity(n, n);
        prob.known_minimizer = Vec(M.llt().solve(data->Atb));
      }
      break;
    case Regularization::L1:
      prob.name = "lstsq-l1";
      prob.eval = [data, penalty](const Vec& x) {
        return 0.5 * (data->A * x - data->b).squaredNorm() + penalty_value(penalty, x);
      };
      prob.grad = [data, penalty](const Vec& x) -> Vec {
        return data->AtA * x - data->Atb + penalty_grad(penalty, x);
      };
      break;
  }
  attach_minimum(prob);
  return prob;
}

ObjectiveProblem make_least_squares(int m, int n, Penalty penalty, std::uint64_t seed) {
  require_dim(n, "lstsq");
  if (m < n) throw ConfigError("least squares needs m >= n >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Mat A(m, n);
  Vec b(m);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) A(i, j) = normal(rng);
  for (int i = 0; i < m; ++i) b[i] = normal(rng);
  return make_least_squares(A, b, penalty);
}

ObjectiveProblem make_logistic(const Mat& features, const Vec& labels, Penalty penalty) {
  if (features.rows() != labels.size() || features.rows() < 1 || features.cols() < 1)
    throw ConfigError("logistic: need m >= 1 feature rows matching m labels");
  for (double y : labels)
    if (y != 1.0 && y != -1.0) throw ConfigError("logistic: labels must be -1 or +1");
  require_penalty(penalty);

  // Rows scaled by their label: margin_i = y_i w'x_i = (Y X w)_i.
  auto yx = std::make_shared<Mat>(labels.asDiagonal() * features);

  ObjectiveProblem prob;
  prob.name = "logistic";
  prob.dim = static_cast<int>(features.cols());
  prob.eval = [yx, penalty](const Vec& w) {
    const Vec margin = *yx * w;
    double total = 0.0;
    for (double z : margin) total += softplus(-z);
    return total + penalty_value(penalty, w);
  };
  prob.grad = [yx, penalty](const Vec& w) -> Vec {
    const Vec margin = *yx * w;
    const Vec weight = margin.unaryExpr([](double z) { return -sigmoid(-z); });
    return yx->transpose() * weight + penalty_grad(penalty, w);
  };
  return prob;
}

ObjectiveProblem make_logistic(int m, int n, Penalty penalty, std::uint64_t seed) {
  require_dim(n, "logistic");
  require_dim(m, "logistic samples");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Mat X(m, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) X(i, j) = normal(rng);
  Vec w_true(n);
  for (int j = 0; j < n; ++j) w_true[j] = normal(rng);
  Vec y(m);
  for (int i = 0; i < m; ++i) y[i] = (X.row(i).dot(w_true) + 0.5 * normal(rng)) >= 0 ? 1.0 : -1.0;
  return make_logistic(X, y, penalty);
}

ObjectiveProblem make_fermat_weber(const std::vector<Vec>& anchors,
                                   const std::vector<double>& weights) {
  if (anchors.empty() || anchors.size() != weights.size())
    throw ConfigError("fermat-weber: need matching, non-empty anchors and weights");
  const auto n = anchors.front().size();
  if (n < 1) throw ConfigError("fermat-weber: dimension must be >= 1");
  for (const auto& a : anchors)
    if (a.size() != n) throw ConfigError("fermat-weber: anchors differ in dimension");
  for (double w : weights)
    if (!(w > 0)) throw ConfigError("fermat-weber: weights must be positive");

  struct Data {
    std::vector<Vec> anchors;
    std::vector<double> weights;
  };
  auto data = std::make_shared<Data>(Data{anchors, weights});

  ObjectiveProblem prob;
  prob.name = "fermat-weber";
  prob.dim = static_cast<int>(n);
  prob.eval = [data](const Vec& x) {
    double total = 0.0;
    for (std::size_t j = 0; j < data->anchors.size(); ++j)
      total += data->weights[j] * (x - data->anchors[j]).norm();
    return total;
  };
  prob.grad = [data](const Vec& x) -> Vec {
    Vec g = Vec::Zero(x.size());
    for (std::size_t j = 0; j < data->anchors.size(); ++j) {
      const Vec diff = x - data->anchors[j];
      const double dist = diff.norm();
      if (dist > 0) g += data->weights[j] / dist * diff;
    }
    return g;
  };
  return prob;
}

ObjectiveProblem make_fermat_weber(int num_anchors, int n, std::uint64_t seed) {
  require_dim(n, "fermat-weber");
  require_dim(num_anchors, "fermat-weber anchors");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform(0.5, 2.0);
  std::vector<Vec> anchors;
  std::vector<double> weights;
  for (int j = 0; j < num_anchors; ++j) {
    Vec a(n);
    for (int i = 0; i < n; ++i) a[i] = normal(rng);
    anchors.push_back(a);
    weights.push_back(uniform(rng));
  }
  return make_fermat_weber(anchors, weights);
}

ObjectiveProblem make_problem(const ProblemSpec& spec) {
  const auto dim_or = [&](int fallback) { return spec.dim > 0 ? spec.dim : fallback; };
  const auto samples_or = [&](int fallback) { return spec.samples > 0 ? spec.samples : fallback; };
  if (spec.name == "quartic") return make_quartic(dim_or(10));
  if (spec.name == "logbarrier") return make_log_barrier();
  if (spec.name == "entropy") return make_negative_entropy(dim_or(10));
  if (spec.name == "illcond") return make_ill_conditioned();
  if (spec.name == "lstsq") {
    const int n = dim_or(10);
    return make_least_squares(std::max(samples_or(2 * n), n), n, spec.penalty, spec.seed);
  }
  if (spec.name == "logistic") {
    const int n = dim_or(5);
    return make_logistic(samples_or(50), n, spec.penalty, spec.seed);
  }
  if (spec.name == "fermat-weber") return make_fermat_weber(samples_or(5), dim_or(2), spec.seed);
  throw ConfigError("unknown problem '" + spec.name + "'");
}

Vec default_start(const ObjectiveProblem& problem) {
  const int d = problem.dim;
  if (problem.name == "logbarrier") return Vec::Constant(2, 2.0);
  if (problem.name == "entropy") return Vec::Ones(d);
  if (problem.name == "illcond") return Vec::Ones(3);
  if (problem.name == "fermat-weber") return Vec::Constant(d, 3.0);
  return Vec::Zero(d);
}

}  // namespace symopt
