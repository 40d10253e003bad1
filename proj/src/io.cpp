#include "contactline/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "contactline/errors.hpp"

namespace contactline::io {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void atomic_write(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ostringstream suffix;
  suffix << ".tmp." << ::getpid() << "." << std::hash<std::thread::id>{}(std::this_thread::get_id());
  fs::path tmp = path;
  tmp += suffix.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("failed writing " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string series_csv(const TimeSeries& series) {
  std::string out{kSeriesHeader};
  out += '\n';
  for (const auto& r : series.records) {
    out += std::to_string(r.step);
    for (double v : {r.t, r.T, r.dt, r.V, r.beta, r.u4, r.u5, r.beta_prime_analytic,
                     r.beta_prime_numeric}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

void write_series_csv(const fs::path& path, const TimeSeries& series) {
  atomic_write(path, series_csv(series));
}

TimeSeries parse_series_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ParseError("series: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kSeriesHeader) throw ParseError("series: unexpected header '" + line + "'");

  TimeSeries series;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> fields;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size())
        throw ParseError("series line " + std::to_string(line_no) + ": bad number '" + cell + "'");
      fields.push_back(v);
    }
    if (fields.size() != 10)
      throw ParseError("series line " + std::to_string(line_no) + ": expected 10 columns");
    Record r;
    r.step = static_cast<std::size_t>(fields[0]);
    r.t = fields[1];
    r.T = fields[2];
    r.dt = fields[3];
    r.V = fields[4];
    r.beta = fields[5];
    r.u4 = fields[6];
    r.u5 = fields[7];
    r.beta_prime_analytic = fields[8];
    r.beta_prime_numeric = fields[9];
    series.records.push_back(r);
  }
  return series;
}

TimeSeries read_series_csv(const fs::path& path) { return parse_series_csv(read_text(path)); }

std::string snapshot_csv(const Grid& grid, std::span<const double> u) {
  std::string out = "x,u\n";
  auto row = [&](double x, double v) {
    out += format_double(x);
    out += ',';
    out += format_double(v);
    out += '\n';
  };
  row(0.0, 0.0);
  for (std::size_t k = 0; k < u.size(); ++k) row(grid.x(static_cast<int>(k) + 1), u[k]);
  row(grid.L, 0.0);
  return out;
}

std::string snapshot_filename(double time) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "u_t%.6g.csv", time);
  return buf;
}

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json config_json(const RunConfig& c) {
  json values = {
      {"ic.a", c.ic.a},
      {"ic.b", c.ic.b},
      {"grid.L", c.grid.L},
      {"grid.N", c.grid.N},
      {"solver.tol", c.solver.tol},
      {"solver.dt_init", c.solver.dt_init},
      {"solver.dt_max", c.solver.dt_max},
      {"solver.dt_min", c.solver.dt_min},
      {"solver.safety", c.solver.safety},
      {"solver.beta_floor", c.solver.beta_floor},
      {"solver.rescale_n", c.solver.rescale_n ? json(*c.solver.rescale_n) : json(nullptr)},
      {"solver.max_rejections", c.solver.max_rejections},
      {"solver.coupling_limit",
       c.solver.coupling_limit ? json(*c.solver.coupling_limit) : json(nullptr)},
      {"stop.V_max", number_or_null(c.solver.V_max)},
      {"stop.t_max", number_or_null(c.solver.t_max)},
      {"stop.T_max", number_or_null(c.solver.T_max)},
      {"stop.max_steps", c.solver.max_steps},
      {"output.dir", c.output_dir},
      {"output.snapshot_times", c.snapshot_times},
  };
  return {{"values", values}, {"sources", c.sources}};
}

json summary_json(const TimeSeries& series, const RunConfig& config) {
  const Record& first = series.records.front();
  const Record& last = series.records.back();
  return {
      {"termination_reason", std::string(to_string(series.reason))},
      {"terminal_time", last.t},
      {"terminal_T", last.T},
      {"step_count", last.step},
      {"rejected_steps", series.rejected_steps},
      {"initial_velocity",
       {{"analytic", initial_velocity(config.ic)}, {"discrete", number_or_null(first.V)}}},
      {"final", {{"V", number_or_null(last.V)}, {"beta", number_or_null(last.beta)}}},
      {"grid", {{"L", config.grid.L}, {"N", config.grid.N}, {"dx", config.grid.dx()}}},
      {"config", config_json(config)},
  };
}

json fit_json(const FitResult& fit) {
  return {
      {"law", std::string(to_string(fit.law))},
      {"t0", fit.t0 ? number_or_null(*fit.t0) : json(nullptr)},
      {"rate", number_or_null(fit.rate)},
      {"amplitude", number_or_null(fit.amplitude)},
      {"q", fit.q ? number_or_null(*fit.q) : json(nullptr)},
      {"mse", number_or_null(fit.mse)},
      {"window", {fit.window_start, fit.window_end}},
      {"count", fit.count},
      {"consistent", fit.consistent},
  };
}

}  // namespace contactline::io
