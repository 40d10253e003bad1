#include "contactline/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "contactline/banded.hpp"
#include "contactline/errors.hpp"
#include "contactline/kernels.hpp"

namespace contactline {

void SolverConfig::validate() const {
  if (!(tol > 0.0)) throw ValidationError("solver.tol: requires tol > 0");
  if (!(dt_min > 0.0)) throw ValidationError("solver.dt_min: requires dt_min > 0");
  if (!(dt_min <= dt_init)) throw ValidationError("solver.dt_init: requires dt_min <= dt_init");
  if (!(dt_init <= dt_max)) throw ValidationError("solver.dt_max: requires dt_init <= dt_max");
  if (!(safety > 0.0 && safety <= 1.0))
    throw ValidationError("solver.safety: requires 0 < safety <= 1");
  if (rescale_n && *rescale_n < 1) throw ValidationError("solver.rescale_n: requires n >= 1");
  if (!(V_max > 0.0)) throw ValidationError("stop.V_max: requires V_max > 0");
  if (!(t_max > 0.0)) throw ValidationError("stop.t_max: requires t_max > 0");
  if (!(T_max > 0.0)) throw ValidationError("stop.T_max: requires T_max > 0");
  if (max_steps < 1) throw ValidationError("stop.max_steps: requires max_steps >= 1");
  if (!(beta_floor > 0.0)) throw ValidationError("solver.beta_floor: requires beta_floor > 0");
  if (max_rejections < 1) throw ValidationError("solver.max_rejections: requires >= 1");
  if (coupling_limit && !(*coupling_limit > 0.0))
    throw ValidationError("solver.coupling_limit: requires limit > 0");
}

double SolverConfig::step_ceiling(double V, double dx) const {
  if (!coupling_limit) return dt_max;
  const double dx2 = dx * dx;
  return std::min(dt_max, *coupling_limit * dx2 * dx2 / time_scale(V));
}

double SolverConfig::time_scale(double V) const {
  if (!rescale_n) return 1.0;
  return 1.0 / (1.0 + std::pow(V, 2 * *rescale_n));
}

std::string_view to_string(Termination reason) {
  switch (reason) {
    case Termination::BetaVanished: return "beta-vanished";
    case Termination::DtUnderflow: return "dt-underflow";
    case Termination::VExceeded: return "V-exceeded";
    case Termination::HorizonReached: return "horizon-reached";
    case Termination::StepLimit: return "step-limit";
  }
  return "step-limit";
}

std::optional<Termination> termination_from_string(std::string_view text) {
  for (auto r : {Termination::BetaVanished, Termination::DtUnderflow, Termination::VExceeded,
                 Termination::HorizonReached, Termination::StepLimit})
    if (to_string(r) == text) return r;
  return std::nullopt;
}

namespace {

template <class Get>
std::vector<double> column(const std::vector<Record>& records, Get get) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(get(r));
  return out;
}

}  // namespace

std::vector<double> TimeSeries::times() const {
  return column(records, [](const Record& r) { return r.t; });
}
std::vector<double> TimeSeries::rescaled_times() const {
  return column(records, [](const Record& r) { return r.T; });
}
std::vector<double> TimeSeries::velocities() const {
  return column(records, [](const Record& r) { return r.V; });
}
std::vector<double> TimeSeries::betas() const {
  return column(records, [](const Record& r) { return r.beta; });
}

std::vector<double> trapezoid_step(const LinearSystem& old_sys, const LinearSystem& new_sys,
                                   std::span<const double> u, double dt) {
  std::vector<double> rhs(u.size());
  kernels::trapezoid_rhs_omp(old_sys, u, 0.5 * dt, new_sys.b, rhs);
  const PentaDiagonal lhs = kernels::shifted_identity_omp(new_sys.A, 0.5 * dt);
  return banded_solve(lhs, rhs);
}

std::vector<double> explicit_heun_step(const LinearSystem& sys, std::span<const double> u,
                                       double dt) {
  const std::size_t n = u.size();
  std::vector<double> slope0(n), trial(n), slope1(n), next(n);
  kernels::apply_operator_omp(sys, u, slope0);
  for (std::size_t k = 0; k < n; ++k) trial[k] = u[k] + dt * slope0[k];
  kernels::apply_operator_omp(sys, trial, slope1);
  for (std::size_t k = 0; k < n; ++k) next[k] = u[k] + 0.5 * dt * (slope0[k] + slope1[k]);
  return next;
}

State heun_step_implicit(const State& state, double dt, const Grid& grid,
                         const SolverConfig& config) {
  const double dx = grid.dx();
  const LinearSystem current = assemble_operator(grid, state.V, config.time_scale(state.V));

  // Prediction: the new-level operator is frozen at V_k.
  const std::vector<double> predicted = trapezoid_step(current, current, state.u, dt);
  const double V_pred = compute_velocity(predicted, dx, config.beta_floor);

  // Correction: rebuild the new-level operator from the predicted velocity.
  const LinearSystem corrected = assemble_operator(grid, V_pred, config.time_scale(V_pred));
  State next;
  next.u = trapezoid_step(current, corrected, state.u, dt);
  next.V = compute_velocity(next.u, dx, config.beta_floor);
  next.t = state.t + dt;
  return next;
}

State heun_step_explicit(const State& state, double dt, const Grid& grid, double beta_floor) {
  const LinearSystem sys = assemble_operator(grid, state.V);
  State next;
  next.u = explicit_heun_step(sys, state.u, dt);
  next.V = compute_velocity(next.u, grid.dx(), beta_floor);
  next.t = state.t + dt;
  return next;
}

LocalError estimate_local_error(const State& state, double dt, const Grid& grid,
                                const SolverConfig& config) {
  const State full = heun_step_implicit(state, dt, grid, config);
  const State half = heun_step_implicit(state, 0.5 * dt, grid, config);
  State two_halves = heun_step_implicit(half, 0.5 * dt, grid, config);
  two_halves.t = state.t + dt;
  const double du = kernels::max_abs_diff_omp(two_halves.u, full.u);
  const double dV = std::abs(two_halves.V - full.V) / std::max(1.0, std::abs(two_halves.V));
  const double err = std::max(du, dV) / 3.0;
  return {err, std::move(two_halves)};
}

double adapt_dt(double err, double dt, const SolverConfig& config) {
  if (err < 0.0 || std::isnan(err)) throw Error("adapt_dt: error estimate must be >= 0");
  if (err == 0.0) return config.dt_max;
  const double proposal = config.safety * dt * std::cbrt(config.tol / err);
  if (proposal < config.dt_min)
    throw DtUnderflow("time step fell below dt_min (" + std::to_string(proposal) + ")");
  return std::min(proposal, config.dt_max);
}

namespace {

Record make_record(std::size_t step, double t, double T, double dt, const State& s,
                   const Grid& grid, double beta_floor) {
  const BoundaryTraces tr = boundary_traces(s.u, grid.dx(), beta_floor);
  Record r;
  r.step = step;
  r.t = t;
  r.T = T;
  r.dt = dt;
  r.V = tr.V;
  r.beta = tr.beta;
  r.u4 = tr.u4;
  r.u5 = tr.u5;
  r.beta_prime_analytic = tr.beta_prime;
  return r;
}

// Differences are taken in the integration variable and converted with
// dT/dt = 1 / time_scale(V); near blow-up the physical increments of a
// rescaled run underflow relative to t.
void fill_numeric_beta_prime(std::vector<Record>& records, const SolverConfig& config) {
  const std::size_t n = records.size();
  if (n < 2) {
    for (auto& r : records) r.beta_prime_numeric = r.beta_prime_analytic;
    return;
  }
  auto slope = [&](std::size_t i, std::size_t j, std::size_t at) {
    const double dbeta_dT = (records[j].beta - records[i].beta) / (records[j].T - records[i].T);
    return dbeta_dT / config.time_scale(records[at].V);
  };
  records[0].beta_prime_numeric = slope(0, 1, 0);
  for (std::size_t k = 1; k + 1 < n; ++k) records[k].beta_prime_numeric = slope(k - 1, k + 1, k);
  records[n - 1].beta_prime_numeric = slope(n - 2, n - 1, n - 1);
}

}  // namespace

TimeSeries run_simulation(const ICParams& params, const Grid& grid, const SolverConfig& config,
                          const RunOptions& options) {
  config.validate();
  const double dx = grid.dx();
  State state = sample_initial_state(params, grid, config.beta_floor);

  TimeSeries series;
  series.rescale_n = config.rescale_n;
  series.records.push_back(make_record(0, 0.0, 0.0, 0.0, state, grid, config.beta_floor));

  std::vector<double> pending = options.snapshot_times;
  std::sort(pending.begin(), pending.end());
  std::size_t next_snapshot = 0;
  while (next_snapshot < pending.size() && pending[next_snapshot] <= 0.0) {
    series.snapshots.push_back({pending[next_snapshot], state.u});
    ++next_snapshot;
  }

  const bool rescaled = config.rescale_n.has_value();
  const double horizon = rescaled ? config.T_max : config.t_max;
  double t_phys = 0.0;
  double dt = config.dt_init;
  int rejections = 0;
  std::size_t steps = 0;

  while (true) {
    if (steps >= config.max_steps) {
      series.reason = Termination::StepLimit;
      break;
    }
    double trial_dt = std::min({dt, config.step_ceiling(state.V, dx), horizon - state.t});
    bool hits_snapshot = false;
    if (next_snapshot < pending.size() && state.t + trial_dt >= pending[next_snapshot]) {
      trial_dt = pending[next_snapshot] - state.t;
      hits_snapshot = true;
    }
    trial_dt = std::max(trial_dt, config.dt_min);

    LocalError trial;
    try {
      trial = estimate_local_error(state, trial_dt, grid, config);
    } catch (const BetaNearZero&) {
      series.reason = Termination::BetaVanished;
      break;
    }

    const double beta_new = trial.candidate.u[0] / dx + 0.25 * dx;
    const double beta_old = state.u[0] / dx + 0.25 * dx;
    // A step across beta = 0 leaves the model; shrink instead of accepting it.
    const bool crossed = std::signbit(beta_new) != std::signbit(beta_old);

    if (!crossed && std::isfinite(trial.err) && trial.err <= config.tol) {
      const double dt_phys =
          rescaled ? 0.5 * trial_dt *
                         (config.time_scale(state.V) + config.time_scale(trial.candidate.V))
                   : trial_dt;
      t_phys += dt_phys;
      state = std::move(trial.candidate);
      if (hits_snapshot) state.t = pending[next_snapshot];
      ++steps;
      rejections = 0;
      series.records.push_back(make_record(steps, rescaled ? t_phys : state.t, state.t, trial_dt,
                                           state, grid, config.beta_floor));
      if (hits_snapshot) {
        series.snapshots.push_back({pending[next_snapshot], state.u});
        ++next_snapshot;
      }
      if (!(std::abs(state.V) <= config.V_max)) {
        series.reason = Termination::VExceeded;
        break;
      }
      if (state.t >= horizon || t_phys >= config.t_max) {
        series.reason = Termination::HorizonReached;
        break;
      }
    } else if (++series.rejected_steps, ++rejections >= config.max_rejections) {
      series.reason = Termination::DtUnderflow;
      break;
    }

    try {
      if (crossed || !std::isfinite(trial.err)) {
        dt = 0.25 * trial_dt;
        if (dt < config.dt_min) throw DtUnderflow("time step fell below dt_min");
      } else {
        dt = adapt_dt(trial.err, trial_dt, config);
      }
    } catch (const DtUnderflow&) {
      series.reason = Termination::DtUnderflow;
      break;
    }
  }

  fill_numeric_beta_prime(series.records, config);
  series.final_state = std::move(state);
  return series;
}

std::vector<double> compute_rescaled_time(std::span<const double> t, std::span<const double> V,
                                          int n) {
  if (n < 1) throw ValidationError("rescale exponent n must be >= 1");
  if (t.empty() || t.size() != V.size()) throw BadSeries("rescaled time needs matching, nonempty t and V");
  std::vector<double> T(t.size());
  T[0] = 0.0;
  for (std::size_t k = 1; k < t.size(); ++k) {
    if (!(t[k] > t[k - 1])) throw BadSeries("times must be strictly increasing");
    const double f0 = 1.0 + std::pow(V[k - 1], 2 * n);
    const double f1 = 1.0 + std::pow(V[k], 2 * n);
    T[k] = T[k - 1] + 0.5 * (t[k] - t[k - 1]) * (f0 + f1);
  }
  return T;
}

std::vector<double> compute_rescaled_time(const TimeSeries& series, int n) {
  return compute_rescaled_time(series.times(), series.velocities(), n);
}

std::vector<double> physical_time_from_rescaled(std::span<const double> T,
                                                std::span<const double> V, int n) {
  if (n < 1) throw ValidationError("rescale exponent n must be >= 1");
  if (T.empty() || T.size() != V.size()) throw BadSeries("need matching, nonempty T and V");
  std::vector<double> t(T.size());
  t[0] = 0.0;
  for (std::size_t k = 1; k < T.size(); ++k) {
    if (!(T[k] > T[k - 1])) throw BadSeries("rescaled times must be strictly increasing");
    const double g0 = 1.0 / (1.0 + std::pow(V[k - 1], 2 * n));
    const double g1 = 1.0 / (1.0 + std::pow(V[k], 2 * n));
    t[k] = t[k - 1] + 0.5 * (T[k] - T[k - 1]) * (g0 + g1);
  }
  return t;
}

}  // namespace contactline
