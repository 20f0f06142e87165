#pragma once

#include <string>
#include <vector>

#include "symopt/harness.hpp"
#include "symopt/reference_opt.hpp"
#include "symopt/sweep.hpp"

namespace symopt {

// Shortest decimal form that parses back to the same double.
std::string format_double(double x);
double parse_double(const std::string& text);

// Header `axis1[,axis2[,axis3]],status,iters,final_error,restarts,loops`,
// one row per cell in row-major order. Throws std::runtime_error naming the
// path on I/O failure.
void write_csv(const SweepGrid& grid, const std::string& path);

struct SweepRow {
  std::vector<double> params;
  RunStatus status;
  long iters;
  double final_error;
  long restarts;
  long loops;
};

struct SweepTable {
  std::vector<std::string> axis_names;
  std::vector<SweepRow> rows;
};

SweepTable read_csv(const std::string& path);

// True when the table holds exactly the grid's parameters and cell results.
bool table_matches(const SweepTable& table, const SweepGrid& grid);

// iter,f,grad_norm,error,time,restarted,looped
void write_csv(const RunResult& result, const std::string& path);
// iter,f,grad_norm,error
void write_csv(const BaselineResult& result, const std::string& path);

// Cell colors on a log scale of the iteration count; cells that did not
// converge are left blank. Needs exactly two axes (ConfigError otherwise).
void render_heatmap(const SweepGrid& grid, const std::string& path, const std::string& title = "");

}  // namespace symopt
