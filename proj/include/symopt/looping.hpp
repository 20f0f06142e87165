#pragma once

#include <string>

#include "symopt/bregman.hpp"
#include "symopt/types.hpp"

namespace symopt {

enum class LoopMode { Off, Multiplicative, Subtractive };

// Temporal looping: pull the physical time back when the next position
// increment is predicted to blow up.
struct LoopingStrategy {
  LoopMode mode = LoopMode::Off;
  double beta = 0.8;  // Multiplicative, in (0, 1); 0.6 to 0.95 works well
  double nu = 2.0;    // Subtractive, > 1
  double eps = 0.001; // time floor

  static LoopingStrategy off() { return {}; }
  static LoopingStrategy multiplicative(double beta, double eps = 0.001);
  static LoopingStrategy subtractive(double nu, double eps = 0.001);

  void validate() const;
};

// "off", "mult:0.8", "sub:2".
LoopingStrategy parse_looping(const std::string& text, double eps = 0.001);
std::string to_string(const LoopingStrategy& strategy);

// Expo: C h^2 eta^2 e^(eta t) |G| > e^(-eta h) |dq|
// Poly: C h^2 p^2 (t + h)^(p+1) |G| > t |dq|
// Non-adaptive Poly and Expo only; anything else is a ConfigError.
bool instability_detected(const BregmanConfig& cfg, double time, double h, const Vec& grad,
                          const Vec& dq);
bool instability_detected(const BregmanConfig& cfg, const ExtendedState& s, double h,
                          const Vec& grad, const Vec& dq);

double reset_time(const LoopingStrategy& strategy, double time, double h);

}  // namespace symopt
