#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "symopt/harness.hpp"

namespace symopt {

enum class AxisName { C, h, p, eta, p_target, eta_target };

std::string to_string(AxisName name);
AxisName parse_axis_name(const std::string& text);

struct Axis {
  AxisName name = AxisName::C;
  double min = 1;
  double max = 1;
  int count = 1;
  bool log = true;

  double value(int i) const;
  std::vector<double> values() const;
};

// Cells are stored row-major over the axes (last axis fastest).
struct SweepGrid {
  std::vector<Axis> axes;
  std::vector<RunResult> cells;

  std::size_t cell_count() const;
  std::vector<int> unravel(std::size_t index) const;
  std::vector<double> params(std::size_t index) const;
  void validate() const;
};

// Base config with the axis values of cell `index` substituted. Setting p
// (or eta) on a non-adaptive base moves p_target (eta_target) along with it.
RunConfig cell_config(const SweepGrid& grid, const RunConfig& base, std::size_t index);

// Single-threaded reference fill.
SweepGrid sweep_serial(SweepGrid grid, const RunConfig& base);

// Cells distributed over OpenMP threads (threads <= 0: runtime default).
// Bitwise identical to sweep_serial.
SweepGrid sweep(SweepGrid grid, const RunConfig& base, int threads = 0);

struct BestCell {
  bool found = false;
  std::size_t index = 0;
  std::vector<double> params;
  long iters = 0;
};

// Fewest iterations among converged cells; ties go to smaller h, then smaller C.
BestCell best_cell(const SweepGrid& grid);

}  // namespace symopt
