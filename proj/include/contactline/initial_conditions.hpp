#pragma once

#include "contactline/discretization.hpp"

namespace contactline {

// Two-parameter initial slope profile
//   u0(x) = -(1/4) e^{-ax} x [4 + (4a+1)x + a(2a+1)x^2 + b x^3],
// normalized so that u0(0) = 0, u0'(0) = -1, u0''(0) = -1/2, u0'''(0) = 0.
struct ICParams {
  double a = 0.5;  // decay rate, > 0
  double b = 0.0;  // quartic coefficient, >= 0

  // Throws ValidationError naming the violated bound.
  void validate() const;
};

double eval_u0(const ICParams& params, double x);

// Closed form of u0''''(0) / u0'(0) = 6b - 4a^3 - 3a^2.
double initial_velocity(const ICParams& params);

// Samples u0 on the interior nodes; V comes from the discrete velocity formula.
State sample_initial_state(const ICParams& params, const Grid& grid,
                           double beta_floor = kDefaultBetaFloor);

// True when the sampled profile is nonnegative somewhere in the interior
// (the initial film would not be monotonically decreasing).
bool has_nonnegative_sample(const ICParams& params, const Grid& grid);

}  // namespace contactline
