#include "contactline/blowup.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "contactline/errors.hpp"

namespace contactline {

std::string_view to_string(FitLaw law) {
  switch (law) {
    case FitLaw::Power: return "power";
    case FitLaw::Log: return "log";
    case FitLaw::LogLogT: return "loglogT";
  }
  return "power";
}

std::optional<FitLaw> fit_law_from_string(std::string_view text) {
  for (auto law : {FitLaw::Power, FitLaw::Log, FitLaw::LogLogT})
    if (to_string(law) == text) return law;
  return std::nullopt;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw DegenerateFit("line fit needs at least two points");
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  if (!(sxx > 0.0)) throw DegenerateFit("regressor has zero variance");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

std::vector<double> estimate_dVdt(std::span<const double> times, std::span<const double> V) {
  const std::size_t n = times.size();
  if (n < 3 || V.size() != n) throw BadSeries("derivative estimate needs at least three samples");
  for (std::size_t k = 1; k < n; ++k)
    if (!(times[k] > times[k - 1])) throw BadSeries("times must be strictly increasing");

  std::vector<double> d(n);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double h1 = times[k] - times[k - 1];
    const double h2 = times[k + 1] - times[k];
    d[k] = -h2 / (h1 * (h1 + h2)) * V[k - 1] + (h2 - h1) / (h1 * h2) * V[k] +
           h1 / (h2 * (h1 + h2)) * V[k + 1];
  }
  {
    const double h1 = times[1] - times[0];
    const double h2 = times[2] - times[1];
    d[0] = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * V[0] + (h1 + h2) / (h1 * h2) * V[1] -
           h1 / (h2 * (h1 + h2)) * V[2];
  }
  {
    const double h1 = times[n - 2] - times[n - 3];
    const double h2 = times[n - 1] - times[n - 2];
    d[n - 1] = h2 / (h1 * (h1 + h2)) * V[n - 3] - (h1 + h2) / (h1 * h2) * V[n - 2] +
               (h1 + 2.0 * h2) / (h2 * (h1 + h2)) * V[n - 1];
  }
  return d;
}

namespace {

struct WindowData {
  std::vector<double> t, V, dV;
};

WindowData select_window(std::span<const double> t, std::span<const double> V,
                         const FitWindow& window, std::optional<std::span<const double>> dVdt) {
  if (V.size() != t.size()) throw BadSeries("time and velocity columns differ in length");
  std::vector<double> estimated;
  std::span<const double> derivative;
  if (dVdt) {
    if (dVdt->size() != t.size()) throw BadSeries("derivative column differs in length");
    derivative = *dVdt;
  } else {
    estimated = estimate_dVdt(t, V);
    derivative = estimated;
  }
  WindowData w;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!window.contains(t[k])) continue;
    w.t.push_back(t[k]);
    w.V.push_back(V[k]);
    w.dV.push_back(derivative[k]);
  }
  if (w.t.size() < 4)
    throw DegenerateFit("fit window holds " + std::to_string(w.t.size()) +
                        " points; at least 4 are required");
  for (double d : w.dV)
    if (d == 0.0 || !std::isfinite(d)) throw DegenerateFit("dV/dt vanishes inside the fit window");
  return w;
}

double mean_squared_error(std::span<const double> observed, std::span<const double> fitted) {
  double s = 0.0;
  for (std::size_t k = 0; k < observed.size(); ++k)
    s += (observed[k] - fitted[k]) * (observed[k] - fitted[k]);
  // Three fitted parameters in both laws.
  return s / static_cast<double>(observed.size() - 3);
}

FitResult base_result(FitLaw law, const WindowData& w) {
  FitResult r;
  r.law = law;
  r.window_start = w.t.front();
  r.window_end = w.t.back();
  r.count = w.t.size();
  return r;
}

}  // namespace

FitResult fit_power_law(std::span<const double> t, std::span<const double> V,
                        const FitWindow& window, std::optional<std::span<const double>> dVdt) {
  const WindowData w = select_window(t, V, window, dVdt);
  for (double v : w.V)
    if (!(v < 0.0)) throw DegenerateFit("power law needs V < 0 throughout the window");

  // V / V' = t0/p - t/p
  std::vector<double> y(w.t.size());
  for (std::size_t k = 0; k < y.size(); ++k) y[k] = w.V[k] / w.dV[k];
  const LineFit line = fit_line(w.t, y);
  if (line.slope == 0.0) throw DegenerateFit("power-law regression slope is zero");

  FitResult r = base_result(FitLaw::Power, w);
  r.rate = -1.0 / line.slope;
  r.t0 = -line.intercept / line.slope;
  r.consistent = *r.t0 > r.window_end && r.rate > 0.0;

  // log(-V) = log c - p log(t0 - t)
  double sum = 0.0;
  std::vector<double> fitted(w.t.size());
  for (std::size_t k = 0; k < w.t.size(); ++k)
    sum += std::log(-w.V[k]) + r.rate * std::log(std::abs(*r.t0 - w.t[k]));
  r.amplitude = std::exp(sum / static_cast<double>(w.t.size()));
  for (std::size_t k = 0; k < w.t.size(); ++k)
    fitted[k] = -r.amplitude * std::pow(std::abs(*r.t0 - w.t[k]), -r.rate);
  r.mse = mean_squared_error(w.V, fitted);
  return r;
}

FitResult fit_log_law(std::span<const double> t, std::span<const double> V,
                      const FitWindow& window, std::optional<std::span<const double>> dVdt) {
  const WindowData w = select_window(t, V, window, dVdt);

  // 1 / V' = t/C1 - t0/C1
  std::vector<double> y(w.t.size());
  for (std::size_t k = 0; k < y.size(); ++k) y[k] = 1.0 / w.dV[k];
  const LineFit line = fit_line(w.t, y);
  if (line.slope == 0.0) throw DegenerateFit("log-law regression slope is zero");

  FitResult r = base_result(FitLaw::Log, w);
  r.rate = 1.0 / line.slope;
  r.t0 = -line.intercept / line.slope;
  r.consistent = *r.t0 > r.window_end;

  double sum = 0.0;
  for (std::size_t k = 0; k < w.t.size(); ++k)
    sum += w.V[k] - r.rate * std::log(std::abs(*r.t0 - w.t[k]));
  r.amplitude = sum / static_cast<double>(w.t.size());
  std::vector<double> fitted(w.t.size());
  for (std::size_t k = 0; k < w.t.size(); ++k)
    fitted[k] = r.rate * std::log(std::abs(*r.t0 - w.t[k])) + r.amplitude;
  r.mse = mean_squared_error(w.V, fitted);
  return r;
}

double rate_from_loglog_slope(double q) {
  if (!(q > 0.25))
    throw InvalidSlope("log-log slope q = " + std::to_string(q) + " must exceed 1/4");
  return q / (4.0 * q - 1.0);
}

FitResult fit_loglog_T(std::span<const double> T, std::span<const double> V,
                       const FitWindow& window) {
  if (V.size() != T.size()) throw BadSeries("T and V columns differ in length");
  std::vector<double> logT, logV, Tw, Vw;
  for (std::size_t k = 0; k < T.size(); ++k) {
    if (!window.contains(T[k])) continue;
    if (!(T[k] > 0.0) || !(V[k] < 0.0))
      throw DegenerateFit("log-log fit needs T > 0 and V < 0 inside the window");
    Tw.push_back(T[k]);
    Vw.push_back(V[k]);
    logT.push_back(std::log(T[k]));
    logV.push_back(std::log(-V[k]));
  }
  if (Tw.size() < 4)
    throw DegenerateFit("fit window holds " + std::to_string(Tw.size()) +
                        " points; at least 4 are required");
  const LineFit line = fit_line(logT, logV);

  FitResult r;
  r.law = FitLaw::LogLogT;
  r.q = line.slope;
  r.rate = rate_from_loglog_slope(line.slope);
  r.amplitude = std::exp(line.intercept);
  r.window_start = Tw.front();
  r.window_end = Tw.back();
  r.count = Tw.size();
  double s = 0.0;
  for (std::size_t k = 0; k < Tw.size(); ++k) {
    const double fitted = -r.amplitude * std::pow(Tw[k], line.slope);
    s += (Vw[k] - fitted) * (Vw[k] - fitted);
  }
  // Two fitted parameters here.
  r.mse = s / static_cast<double>(Tw.size() - 2);
  return r;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < x.size() && k < y.size(); ++k) {
    if (!(x[k] > 0.0) || y[k] == 0.0) continue;
    lx.push_back(std::log(x[k]));
    ly.push_back(std::log(std::abs(y[k])));
  }
  return fit_line(lx, ly).slope;
}

void SynthParams::validate() const {
  if (!(a4 > 0.0)) throw ValidationError("synth: requires a4 > 0");
  if (!(beta0 < 0.0)) throw ValidationError("synth: requires beta0 < 0");
  if (!std::isfinite(a5)) throw ValidationError("synth: a5 must be finite");
}

SynthSeries synth_contact_ode(const SynthParams& params, std::span<const double> t_grid,
                              double tolerance) {
  namespace odeint = boost::numeric::odeint;
  params.validate();
  if (t_grid.empty()) return {};
  for (std::size_t k = 1; k < t_grid.size(); ++k)
    if (!(t_grid[k] > t_grid[k - 1])) throw BadSeries("t_grid must be strictly increasing");

  using StateType = std::array<double, 1>;
  const double a4 = params.a4;
  const double a5 = params.a5;
  const double floor = params.beta_floor;
  auto rhs = [&](const StateType& b, StateType& dbdt, double) {
    if (!(b[0] < -floor)) throw BlowupReached("beta reached zero inside the time grid");
    dbdt[0] = -a4 / (2.0 * b[0]) - a5;
  };

  SynthSeries out;
  out.t.assign(t_grid.begin(), t_grid.end());
  out.beta.reserve(t_grid.size());
  auto observer = [&](const StateType& b, double) {
    if (!(b[0] < -floor)) throw BlowupReached("beta reached zero inside the time grid");
    out.beta.push_back(b[0]);
  };

  StateType beta{params.beta0};
  // Controlled steps land on every requested time; interpolating dense output
  // instead costs about two digits near the singularity.
  auto stepper =
      odeint::make_controlled(tolerance, tolerance, odeint::runge_kutta_dopri5<StateType>());
  odeint::integrate_times(stepper, rhs, beta, t_grid.begin(), t_grid.end(),
                          (t_grid.back() - t_grid.front()) / 1000.0 + 1e-12, observer);

  out.V.resize(out.beta.size());
  for (std::size_t k = 0; k < out.beta.size(); ++k) out.V[k] = a4 / out.beta[k];
  return out;
}

}  // namespace contactline
