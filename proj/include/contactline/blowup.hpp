#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace contactline {

enum class FitLaw { Power, Log, LogLogT };

std::string_view to_string(FitLaw law);
std::optional<FitLaw> fit_law_from_string(std::string_view text);

// Closed interval of the abscissa used by a fit; an absent end means "to the
// last sample".
struct FitWindow {
  double start = 0.0;
  std::optional<double> end;

  bool contains(double x) const { return x >= start && (!end || x <= *end); }
};

struct FitResult {
  FitLaw law = FitLaw::Power;
  // Power:   |V| ~ amplitude / (t0 - t)^rate
  // Log:     V   ~ rate * log(t0 - t) + amplitude
  // LogLogT: |V| ~ amplitude * T^q, rate = q / (4q - 1)
  std::optional<double> t0;
  double rate = 0.0;
  double amplitude = 0.0;
  std::optional<double> q;
  double mse = 0.0;
  double window_start = 0.0;
  double window_end = 0.0;
  std::size_t count = 0;
  // False when the fitted t0 does not lie beyond the window (the singularity
  // would sit inside the data).
  bool consistent = true;
};

// Least-squares line y = intercept + slope * x.
struct LineFit {
  double slope;
  double intercept;
};

// Throws DegenerateFit for fewer than two points or a constant regressor.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Three-point derivative on a nonuniform grid: centered in the interior and
// second-order one-sided at both ends. Throws BadSeries for fewer than three
// samples or non-increasing times.
std::vector<double> estimate_dVdt(std::span<const double> times, std::span<const double> V);

// Regresses V / V' on t; `dVdt` overrides the finite-difference estimate.
FitResult fit_power_law(std::span<const double> t, std::span<const double> V,
                        const FitWindow& window,
                        std::optional<std::span<const double>> dVdt = std::nullopt);

// Regresses 1 / V' on t; the offset C2 is then fixed by least squares.
FitResult fit_log_law(std::span<const double> t, std::span<const double> V,
                      const FitWindow& window,
                      std::optional<std::span<const double>> dVdt = std::nullopt);

// p = q / (4q - 1); the map is its own inverse. Throws InvalidSlope for q <= 1/4.
double rate_from_loglog_slope(double q);

// Slope q of log|V| against log T over the window, and the implied rate p.
FitResult fit_loglog_T(std::span<const double> T, std::span<const double> V,
                       const FitWindow& window);

// Slope of log|y| against log x over all samples with x > 0 and y != 0.
double loglog_slope(std::span<const double> x, std::span<const double> y);

struct SynthParams {
  double a4 = 1.0;    // limiting u_xxxx(0), > 0
  double a5 = 0.0;    // limiting u_xxxxx(0)
  double beta0 = -1.0;  // < 0
  double beta_floor = 1e-12;

  void validate() const;
};

struct SynthSeries {
  std::vector<double> t;
  std::vector<double> beta;
  std::vector<double> V;
};

// Integrates d(beta)/dt = -a4 / (2 beta) - a5 with an embedded Runge-Kutta
// 4(5) pair and reports V = a4 / beta on the requested times. Throws
// BlowupReached if beta climbs to -beta_floor before the grid ends.
SynthSeries synth_contact_ode(const SynthParams& params, std::span<const double> t_grid,
                              double tolerance = 1e-10);

}  // namespace contactline
