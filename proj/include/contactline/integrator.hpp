#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "contactline/discretization.hpp"
#include "contactline/initial_conditions.hpp"

namespace contactline {

struct SolverConfig {
  double tol = 1e-5;
  double dt_init = 1e-6;
  double dt_max = 0.006;
  double dt_min = 1e-12;
  double safety = 0.9;
  // Present: integrate in T = int (1 + V^{2n}) dt instead of t.
  std::optional<int> rescale_n;
  double V_max = 1e8;
  double t_max = 1e3;
  double T_max = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 10'000'000;
  double beta_floor = kDefaultBetaFloor;
  int max_rejections = 50;
  // The velocity enters the one-pass corrector explicitly; steps much above
  // ~5.5 dx^4 in physical time grow a sawtooth in V. Empty disables the cap.
  std::optional<double> coupling_limit = 4.0;

  void validate() const;

  // Largest step in the integration variable: min(dt_max, limit dx^4 / time_scale(V)).
  double step_ceiling(double V, double dx) const;

  // Factor multiplying the right-hand side: 1 in physical time,
  // 1 / (1 + V^{2n}) in rescaled time.
  double time_scale(double V) const;
};

enum class Termination { BetaVanished, DtUnderflow, VExceeded, HorizonReached, StepLimit };

std::string_view to_string(Termination reason);
std::optional<Termination> termination_from_string(std::string_view text);

struct Record {
  std::size_t step = 0;
  double t = 0.0;
  double T = 0.0;   // rescaled time; equals t for physical-time runs
  double dt = 0.0;  // step in the integration variable; 0 for the initial record
  double V = 0.0;
  double beta = 0.0;
  double u4 = 0.0;
  double u5 = 0.0;
  double beta_prime_analytic = 0.0;
  double beta_prime_numeric = 0.0;
};

struct Snapshot {
  double time;  // integration variable at which it was taken
  std::vector<double> u;
};

struct TimeSeries {
  std::vector<Record> records;  // records[0] is the initial state
  Termination reason = Termination::StepLimit;
  std::optional<int> rescale_n;
  std::size_t rejected_steps = 0;
  std::vector<Snapshot> snapshots;
  State final_state;

  std::vector<double> times() const;
  std::vector<double> rescaled_times() const;
  std::vector<double> velocities() const;
  std::vector<double> betas() const;
};

// (I - dt/2 A_new) x = (I + dt/2 A_old) u + dt/2 (b_old + b_new)
std::vector<double> trapezoid_step(const LinearSystem& old_sys, const LinearSystem& new_sys,
                                   std::span<const double> u, double dt);

// u* = u + dt (A u + b); u_next = u + dt/2 [(A u + b) + (A u* + b)]
std::vector<double> explicit_heun_step(const LinearSystem& sys, std::span<const double> u,
                                       double dt);

// Implicit Heun with one prediction-correction pass. `state.t` advances by dt
// in the integration variable.
State heun_step_implicit(const State& state, double dt, const Grid& grid,
                         const SolverConfig& config);

// Explicit Heun with A frozen at the incoming velocity. Only stable for
// dt <= dx^4 / 8.
State heun_step_explicit(const State& state, double dt, const Grid& grid,
                         double beta_floor = kDefaultBetaFloor);

struct LocalError {
  double err;
  State candidate;  // result of two half steps
};

// Step doubling: err = |two half steps - one full step|_inf / 3.
LocalError estimate_local_error(const State& state, double dt, const Grid& grid,
                                const SolverConfig& config);

// clamp(safety dt (tol/err)^{1/3}, dt_min, dt_max); err == 0 gives dt_max.
// Throws DtUnderflow when the proposal falls below dt_min.
double adapt_dt(double err, double dt, const SolverConfig& config);

struct RunOptions {
  std::vector<double> snapshot_times;  // in the integration variable
};

TimeSeries run_simulation(const ICParams& params, const Grid& grid, const SolverConfig& config,
                          const RunOptions& options = {});

// T(t) = int_0^t (1 + V^{2n}) dt' by the trapezoid rule over (t, V) pairs.
std::vector<double> compute_rescaled_time(std::span<const double> t, std::span<const double> V,
                                          int n);
std::vector<double> compute_rescaled_time(const TimeSeries& series, int n);

// Inverse map: t(T) = int_0^T dT' / (1 + V^{2n}).
std::vector<double> physical_time_from_rescaled(std::span<const double> T,
                                                std::span<const double> V, int n);

}  // namespace contactline
