#include "contactline/commands.hpp"

#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

#include "contactline/errors.hpp"
#include "contactline/io.hpp"

namespace contactline::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

fs::path resolve_output_root(const std::optional<std::string>& flag, const fs::path& fallback) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kOutputEnv); env != nullptr && *env != '\0') return env;
  return fallback;
}

json run_to_directory(const RunConfig& config, const fs::path& dir) {
  RunOptions options;
  options.snapshot_times = config.snapshot_times;
  const TimeSeries series = run_simulation(config.ic, config.grid, config.solver, options);

  fs::create_directories(dir);
  io::write_series_csv(dir / "series.csv", series);
  for (const auto& snap : series.snapshots)
    io::atomic_write(dir / io::snapshot_filename(snap.time), io::snapshot_csv(config.grid, snap.u));
  json summary = io::summary_json(series, config);
  io::atomic_write(dir / "summary.json", summary.dump(2) + "\n");
  return summary;
}

int cmd_simulate(const SimulateArgs& args, std::ostream& log) {
  RunConfig config;
  try {
    config = parse_config(io::read_text(args.config));
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
  if (has_nonnegative_sample(config.ic, config.grid))
    log << "warning: u0 >= 0 somewhere on the grid; the initial film is not monotone\n";

  const fs::path dir = resolve_output_root(args.out, config.output_dir);
  try {
    const json summary = run_to_directory(config, dir);
    log << "termination: " << summary["termination_reason"].get<std::string>()
        << ", terminal time " << summary["terminal_time"].get<double>() << ", "
        << summary["step_count"].get<std::size_t>() << " steps -> " << dir.string() << "\n";
  } catch (const ValidationError& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    log << "numerical fault: " << e.what() << "\n";
    return 2;
  } catch (const fs::filesystem_error& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

json fit_document(const TimeSeries& series, FitLaw law, const std::vector<FitWindow>& windows) {
  const std::vector<double> t = series.times();
  const std::vector<double> T = series.rescaled_times();
  const std::vector<double> V = series.velocities();

  json fits = json::array();
  for (const auto& window : windows) {
    FitResult r;
    switch (law) {
      case FitLaw::Power: r = fit_power_law(t, V, window); break;
      case FitLaw::Log: r = fit_log_law(t, V, window); break;
      case FitLaw::LogLogT: r = fit_loglog_T(T, V, window); break;
    }
    json entry = io::fit_json(r);
    entry["requested_start"] = window.start;
    entry["requested_end"] = window.end ? json(*window.end) : json(nullptr);
    fits.push_back(std::move(entry));
  }
  return {{"law", std::string(to_string(law))}, {"fits", fits}};
}

int cmd_fit(const FitArgs& args, std::ostream& log) {
  const auto law = fit_law_from_string(args.law);
  if (!law) {
    log << "error: unknown law '" << args.law << "' (expected power, log or loglogT)\n";
    return 1;
  }
  if (args.starts.empty()) {
    log << "error: at least one --start is required\n";
    return 1;
  }
  if (!args.ends.empty() && args.ends.size() != 1 && args.ends.size() != args.starts.size()) {
    log << "error: give one --end, or one per --start\n";
    return 1;
  }
  std::vector<FitWindow> windows;
  for (std::size_t k = 0; k < args.starts.size(); ++k) {
    FitWindow w{args.starts[k], std::nullopt};
    if (args.ends.size() == 1) w.end = args.ends.front();
    else if (!args.ends.empty()) w.end = args.ends[k];
    windows.push_back(w);
  }

  TimeSeries series;
  try {
    series = io::read_series_csv(args.series);
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }

  json doc;
  try {
    doc = fit_document(series, *law, windows);
  } catch (const DegenerateFit& e) {
    log << "degenerate fit: " << e.what() << "\n";
    return 3;
  } catch (const InvalidSlope& e) {
    log << "invalid slope: " << e.what() << "\n";
    return 3;
  } catch (const BadSeries& e) {
    log << "degenerate fit: " << e.what() << "\n";
    return 3;
  }

  const fs::path dir = resolve_output_root(args.out, args.series.parent_path());
  try {
    io::atomic_write(dir / "fit.json", doc.dump(2) + "\n");
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
  for (const auto& f : doc["fits"])
    log << f["law"].get<std::string>() << " window [" << f["window"][0] << ", "
        << f["window"][1] << "]: rate " << f["rate"] << ", t0 " << f["t0"] << ", mse "
        << f["mse"] << "\n";
  return 0;
}

std::vector<ABPair> parse_pairs(std::string_view text) {
  std::vector<ABPair> pairs;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    std::string a_text, b_text;
    if (!std::getline(row, a_text, ',') || !std::getline(row, b_text))
      throw ParseError("pairs line " + std::to_string(line_no) + ": expected a,b");
    char* end_a = nullptr;
    char* end_b = nullptr;
    const double a = std::strtod(a_text.c_str(), &end_a);
    const double b = std::strtod(b_text.c_str(), &end_b);
    const bool numeric = end_a != a_text.c_str() && end_b != b_text.c_str() &&
                         std::string(end_a).find_first_not_of(" \t\r") == std::string::npos &&
                         std::string(end_b).find_first_not_of(" \t\r") == std::string::npos;
    if (!numeric) {
      if (pairs.empty() && line_no == 1) continue;  // header
      throw ParseError("pairs line " + std::to_string(line_no) + ": expected two numbers");
    }
    pairs.push_back({a, b});
  }
  return pairs;
}

std::vector<std::string> sweep_directory_names(const std::vector<ABPair>& pairs) {
  auto base = [](const ABPair& p) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "a%.10g_b%.10g", p.a, p.b);
    return std::string(buf);
  };
  std::map<std::string, int> total, seen;
  for (const auto& p : pairs) ++total[base(p)];
  std::vector<std::string> names;
  for (const auto& p : pairs) {
    std::string name = base(p);
    if (total[name] > 1) name += "-" + std::to_string(++seen[name]);
    names.push_back(std::move(name));
  }
  return names;
}

int cmd_sweep(const SweepArgs& args, std::ostream& log) {
  RunConfig base;
  std::vector<ABPair> pairs;
  try {
    base = parse_config(io::read_text(args.config));
    pairs = parse_pairs(io::read_text(args.pairs));
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
  if (pairs.empty()) {
    log << "error: no (a,b) pairs given\n";
    return 1;
  }

  const fs::path root = resolve_output_root(args.out, base.output_dir);
  const std::vector<std::string> names = sweep_directory_names(pairs);
  std::vector<json> entries(pairs.size());
  const auto count = static_cast<std::ptrdiff_t>(pairs.size());

  // Runs share nothing; each writes only its own directory.
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    RunConfig config = base;
    config.ic = ICParams{pairs[k].a, pairs[k].b};
    config.sources["ic.a"] = "user";
    config.sources["ic.b"] = "user";
    json entry = {{"a", pairs[k].a}, {"b", pairs[k].b}, {"dir", names[k]},
                  {"V0_analytic", initial_velocity(config.ic)}};
    try {
      config.validate();
      const json summary = run_to_directory(config, root / names[k]);
      entry["status"] = "ok";
      entry["V0_discrete"] = summary["initial_velocity"]["discrete"];
      entry["termination_reason"] = summary["termination_reason"];
      entry["terminal_time"] = summary["terminal_time"];
      entry["step_count"] = summary["step_count"];
    } catch (const std::exception& e) {
      entry["status"] = "failed";
      entry["error"] = e.what();
    }
    entries[k] = std::move(entry);
  }

  std::size_t failures = 0;
  for (const auto& e : entries) {
    if (e["status"] != "ok") ++failures;
    log << e["dir"].get<std::string>() << ": " << e["status"].get<std::string>() << "\n";
  }
  try {
    io::atomic_write(root / "index.json", json{{"runs", entries}}.dump(2) + "\n");
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
  return failures == entries.size() ? 1 : 0;
}

}  // namespace contactline::cli
