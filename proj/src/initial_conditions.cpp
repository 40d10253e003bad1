#include "contactline/initial_conditions.hpp"

#include <cmath>

#include "contactline/errors.hpp"

namespace contactline {

void ICParams::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) throw ValidationError("ic.a: requires a > 0");
  if (!(b >= 0.0) || !std::isfinite(b)) throw ValidationError("ic.b: requires b >= 0");
}

double eval_u0(const ICParams& params, double x) {
  const double a = params.a;
  const double bracket = 4.0 + (4.0 * a + 1.0) * x + a * (2.0 * a + 1.0) * x * x +
                         params.b * x * x * x;
  return -0.25 * std::exp(-a * x) * x * bracket;
}

double initial_velocity(const ICParams& params) {
  const double a = params.a;
  return 6.0 * params.b - 4.0 * a * a * a - 3.0 * a * a;
}

State sample_initial_state(const ICParams& params, const Grid& grid, double beta_floor) {
  params.validate();
  // Sampling only needs the two nodes of the velocity formula; the
  // integrator's stencils ask for more through Grid::validate.
  if (!(grid.L > 0.0) || grid.N < 2) throw ValidationError("grid: sampling needs L > 0 and N >= 2");
  State s;
  s.t = 0.0;
  s.u.resize(static_cast<std::size_t>(grid.N));
  for (int n = 1; n <= grid.N; ++n) s.u[static_cast<std::size_t>(n - 1)] = eval_u0(params, grid.x(n));
  s.V = compute_velocity(s.u, grid.dx(), beta_floor);
  return s;
}

bool has_nonnegative_sample(const ICParams& params, const Grid& grid) {
  for (int n = 1; n <= grid.N; ++n)
    if (eval_u0(params, grid.x(n)) >= 0.0) return true;
  return false;
}

}  // namespace contactline
