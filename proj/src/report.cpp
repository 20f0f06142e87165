#include "symopt/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace symopt {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

void check_written(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> parts;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (!line.empty() && line.back() == ',') parts.emplace_back();
  return parts;
}

// Perceptually ordered colormap (viridis anchor points).
std::string colormap(double s) {
  static const double stops[][3] = {{68, 1, 84},    {59, 82, 139},  {33, 145, 140},
                                    {94, 201, 98},  {253, 231, 37}};
  s = std::clamp(s, 0.0, 1.0) * 4;
  const int i = std::min(3, static_cast<int>(s));
  const double u = s - i;
  char buf[8];
  int rgb[3];
  for (int c = 0; c < 3; ++c)
    rgb[c] = static_cast<int>(std::lround(stops[i][c] + u * (stops[i + 1][c] - stops[i][c])));
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double x = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), x);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw std::runtime_error("bad number '" + text + "'");
  return x;
}

void write_csv(const SweepGrid& grid, const std::string& path) {
  auto out = open_out(path);
  for (const Axis& a : grid.axes) out << to_string(a.name) << ',';
  out << "status,iters,final_error,restarts,loops\n";
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    for (double v : grid.params(i)) out << format_double(v) << ',';
    const RunResult& r = grid.cells[i];
    out << to_string(r.status) << ',' << r.iters << ',' << format_double(r.final_error) << ','
        << r.restart_count << ',' << r.loop_count << '\n';
  }
  check_written(out, path);
}

SweepTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  SweepTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("'" + path + "' is empty");
  const std::vector<std::string> header = split(line);
  if (header.size() < 6) throw std::runtime_error("'" + path + "' has no sweep header");
  const std::size_t naxes = header.size() - 5;
  table.axis_names.assign(header.begin(), header.begin() + naxes);
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::vector<std::string> f = split(line);
    if (f.size() != header.size())
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": wrong field count");
    try {
      SweepRow row;
      for (std::size_t k = 0; k < naxes; ++k) row.params.push_back(parse_double(f[k]));
      row.status = parse_run_status(f[naxes]);
      row.iters = std::stol(f[naxes + 1]);
      row.final_error = parse_double(f[naxes + 2]);
      row.restarts = std::stol(f[naxes + 3]);
      row.loops = std::stol(f[naxes + 4]);
      table.rows.push_back(std::move(row));
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return table;
}

bool table_matches(const SweepTable& table, const SweepGrid& grid) {
  if (table.axis_names.size() != grid.axes.size() || table.rows.size() != grid.cells.size())
    return false;
  for (std::size_t k = 0; k < grid.axes.size(); ++k)
    if (table.axis_names[k] != to_string(grid.axes[k].name)) return false;
  const auto same = [](double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); };
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    const SweepRow& row = table.rows[i];
    const RunResult& r = grid.cells[i];
    const std::vector<double> p = grid.params(i);
    for (std::size_t k = 0; k < p.size(); ++k)
      if (!same(row.params[k], p[k])) return false;
    if (row.status != r.status || row.iters != r.iters || !same(row.final_error, r.final_error) ||
        row.restarts != r.restart_count || row.loops != r.loop_count)
      return false;
  }
  return true;
}

void write_csv(const RunResult& result, const std::string& path) {
  auto out = open_out(path);
  out << "iter,f,grad_norm,error,time,restarted,looped\n";
  for (const TraceRow& t : result.trace)
    out << t.iter << ',' << format_double(t.f) << ',' << format_double(t.grad_norm) << ','
        << format_double(t.error) << ',' << format_double(t.time) << ',' << int(t.restarted) << ','
        << int(t.looped) << '\n';
  check_written(out, path);
}

void write_csv(const BaselineResult& result, const std::string& path) {
  auto out = open_out(path);
  out << "iter,f,grad_norm,error\n";
  for (const BaselineTraceRow& t : result.trace)
    out << t.iter << ',' << format_double(t.f) << ',' << format_double(t.grad_norm) << ','
        << format_double(t.error) << '\n';
  check_written(out, path);
}

void render_heatmap(const SweepGrid& grid, const std::string& path, const std::string& title) {
  if (grid.axes.size() != 2) throw ConfigError("a heatmap needs a two-axis sweep");
  if (grid.cells.size() != grid.cell_count()) throw ConfigError("sweep grid has not been filled");
  const Axis& ax = grid.axes[0];
  const Axis& ay = grid.axes[1];
  const double left = 80, top = 40, width = 480, height = 480, bar = 20;
  const double cw = width / ax.count, ch = height / ay.count;

  long lo = std::numeric_limits<long>::max(), hi = 0;
  for (const RunResult& r : grid.cells)
    if (r.status == RunStatus::Converged) lo = std::min(lo, r.iters), hi = std::max(hi, r.iters);
  const double llo = lo <= hi ? std::log(std::max(1L, lo)) : 0;
  const double lhi = lo <= hi ? std::log(std::max(1L, hi)) : 1;
  const auto shade = [&](long iters) {
    if (lhi <= llo) return 0.0;
    return (std::log(std::max(1L, iters)) - llo) / (lhi - llo);
  };

  auto out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << left + width + 140
      << "\" height=\"" << top + height + 70 << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty())
    out << "<text x=\"" << left + width / 2 << "\" y=\"22\" text-anchor=\"middle\">" << title
        << "</text>\n";
  out << "<g id=\"cells\">\n";
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    const RunResult& r = grid.cells[i];
    if (r.status != RunStatus::Converged) continue;
    const std::vector<int> idx = grid.unravel(i);
    const double x = left + idx[0] * cw;
    const double y = top + height - (idx[1] + 1) * ch;
    out << "<rect class=\"cell\" x=\"" << x << "\" y=\"" << y << "\" width=\"" << cw << "\" height=\"" << ch
        << "\" fill=\"" << colormap(shade(r.iters)) << "\"><title>" << r.iters
        << "</title></rect>\n";
  }
  out << "</g>\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width << "\" height=\""
      << height << "\" fill=\"none\" stroke=\"black\"/>\n";

  const auto label = [](const Axis& a, double v) {
    std::ostringstream s;
    if (a.log) s << "1e" << std::lround(std::log10(v));
    else s << v;
    return s.str();
  };
  const auto ticks = [](const Axis& a) {
    std::vector<double> t;
    if (a.log) {
      for (long e = std::lround(std::ceil(std::log10(a.min) - 1e-9));
           e <= std::lround(std::floor(std::log10(a.max) + 1e-9)); ++e)
        t.push_back(std::pow(10.0, e));
      if (t.size() > 8) {
        std::vector<double> thin;
        const std::size_t step = (t.size() + 7) / 8;
        for (std::size_t i = 0; i < t.size(); i += step) thin.push_back(t[i]);
        t = thin;
      }
    } else {
      for (int i = 0; i <= 4; ++i) t.push_back(a.min + (a.max - a.min) * i / 4);
    }
    return t;
  };
  const auto frac = [](const Axis& a, double v) {
    if (a.max == a.min) return 0.5;
    return a.log ? (std::log(v) - std::log(a.min)) / (std::log(a.max) - std::log(a.min))
                 : (v - a.min) / (a.max - a.min);
  };
  for (double v : ticks(ax)) {
    const double x = left + cw / 2 + frac(ax, v) * (width - cw);
    out << "<line x1=\"" << x << "\" y1=\"" << top + height << "\" x2=\"" << x << "\" y2=\""
        << top + height + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << x << "\" y=\"" << top + height + 18 << "\" text-anchor=\"middle\">"
        << label(ax, v) << "</text>\n";
  }
  for (double v : ticks(ay)) {
    const double y = top + height - ch / 2 - frac(ay, v) * (height - ch);
    out << "<line x1=\"" << left - 5 << "\" y1=\"" << y << "\" x2=\"" << left << "\" y2=\"" << y
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << left - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">"
        << label(ay, v) << "</text>\n";
  }
  out << "<text x=\"" << left + width / 2 << "\" y=\"" << top + height + 40
      << "\" text-anchor=\"middle\">" << to_string(ax.name) << "</text>\n";
  out << "<text x=\"20\" y=\"" << top + height / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << top + height / 2 << ")\">" << to_string(ay.name) << "</text>\n";

  // Color bar.
  const double bx = left + width + 30;
  const int nseg = 32;
  for (int i = 0; i < nseg; ++i) {
    const double y = top + height - (i + 1) * height / nseg;
    out << "<rect x=\"" << bx << "\" y=\"" << y << "\" width=\"" << bar << "\" height=\""
        << height / nseg + 0.5 << "\" fill=\"" << colormap((i + 0.5) / nseg) << "\"/>\n";
  }
  if (lo <= hi) {
    out << "<text x=\"" << bx + bar + 6 << "\" y=\"" << top + height << "\">" << lo << "</text>\n";
    out << "<text x=\"" << bx + bar + 6 << "\" y=\"" << top + 10 << "\">" << hi << "</text>\n";
  }
  out << "<text x=\"" << bx << "\" y=\"" << top + height + 40 << "\">iterations</text>\n";
  out << "</svg>\n";
  check_written(out, path);
}

}  // namespace symopt
