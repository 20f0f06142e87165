#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace symopt {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Bad arguments and inconsistent configurations: invalid dimension, unsupported
// family for an operation, malformed CLI strings, wrong grid shape.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative sub-solve (implicit time update) did not converge.
class NoConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace symopt
