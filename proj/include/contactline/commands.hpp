#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "contactline/blowup.hpp"
#include "contactline/config.hpp"
#include "contactline/io.hpp"

// Subcommands of the `contactline` tool. Each returns the process exit code:
//   0 success, 1 bad input or configuration, 2 numerical fault,
//   3 degenerate fit.
namespace contactline::cli {

inline constexpr const char* kOutputEnv = "CONTACTLINE_OUT";

// --out beats CONTACTLINE_OUT, which beats the fallback.
std::filesystem::path resolve_output_root(const std::optional<std::string>& flag,
                                          const std::filesystem::path& fallback);

struct SimulateArgs {
  std::filesystem::path config;
  std::optional<std::string> out;
};

struct FitArgs {
  std::filesystem::path series;
  std::string law;
  std::vector<double> starts;
  std::vector<double> ends;  // empty, one shared end, or one per start
  std::optional<std::string> out;
};

struct SweepArgs {
  std::filesystem::path pairs;
  std::filesystem::path config;
  std::optional<std::string> out;
};

int cmd_simulate(const SimulateArgs& args, std::ostream& log);
int cmd_fit(const FitArgs& args, std::ostream& log);
int cmd_sweep(const SweepArgs& args, std::ostream& log);

// Runs one simulation and writes series.csv, snapshots and summary.json into
// `dir`. Shared by simulate and sweep.
nlohmann::json run_to_directory(const RunConfig& config, const std::filesystem::path& dir);

// Fits every window of a series; the document written to fit.json.
nlohmann::json fit_document(const TimeSeries& series, FitLaw law,
                            const std::vector<FitWindow>& windows);

struct ABPair {
  double a;
  double b;
};

// Parses `a,b` rows with an optional header line.
std::vector<ABPair> parse_pairs(std::string_view text);

// Directory names for a sweep; repeated pairs get -1, -2, ... suffixes.
std::vector<std::string> sweep_directory_names(const std::vector<ABPair>& pairs);

}  // namespace contactline::cli
