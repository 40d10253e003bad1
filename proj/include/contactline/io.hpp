#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "contactline/blowup.hpp"
#include "contactline/config.hpp"
#include "contactline/integrator.hpp"
#include "json.hpp"

namespace contactline::io {

inline constexpr std::string_view kSeriesHeader =
    "step,t,T,dt,V,beta,u4,u5,beta_prime_analytic,beta_prime_numeric";

// Decimal text with 17 significant digits; round-trips every double.
std::string format_double(double value);

// Writes to a sibling temporary file and renames it over `path`.
void atomic_write(const std::filesystem::path& path, std::string_view content);

std::string read_text(const std::filesystem::path& path);

std::string series_csv(const TimeSeries& series);
void write_series_csv(const std::filesystem::path& path, const TimeSeries& series);

// Inverse of series_csv; only the records are recovered. Throws ParseError on
// a header mismatch or malformed row.
TimeSeries parse_series_csv(std::string_view text);
TimeSeries read_series_csv(const std::filesystem::path& path);

// Columns x,u over all N+2 nodes, including the pinned end values.
std::string snapshot_csv(const Grid& grid, std::span<const double> u);
std::string snapshot_filename(double time);

nlohmann::json config_json(const RunConfig& config);
nlohmann::json summary_json(const TimeSeries& series, const RunConfig& config);
nlohmann::json fit_json(const FitResult& fit);

}  // namespace contactline::io
