#include "contactline/discretization.hpp"

#include <cmath>
#include <string>

#include "contactline/errors.hpp"

namespace contactline {

void Grid::validate() const {
  if (!(L > 0.0) || !std::isfinite(L)) throw ValidationError("grid.L: requires L > 0");
  if (N < 5) throw ValidationError("grid.N: requires N >= 5");
}

Grid Grid::with_spacing(double L, double spacing) {
  Grid g;
  g.L = L;
  g.N = static_cast<int>(std::lround(L / spacing)) - 1;
  g.validate();
  return g;
}

GhostValues ghost_values(double u1, double u2, double u3, double uN, double dx) {
  const double dx2 = dx * dx;
  return {
      .minus1 = -u1 - 0.5 * dx2,
      .minus2 = u2 - 4.0 * u1 - dx2,
      .minus3 = -u3 + 12.0 * u2 - 24.0 * u1 + 1.5 * dx2,
      .beyond_end = -uN,
  };
}

double PentaDiagonal::at(std::size_t row, std::size_t col) const {
  if (col + 2 == row) return sub2[row];
  if (col + 1 == row) return sub1[row];
  if (col == row) return diag[row];
  if (col == row + 1) return sup1[row];
  if (col == row + 2) return sup2[row];
  return 0.0;
}

LinearSystem assemble_operator(const Grid& grid, double V, double scale) {
  grid.validate();
  const auto n = static_cast<std::size_t>(grid.N);
  const double dx = grid.dx();
  const double inv4 = scale / (dx * dx * dx * dx);
  const double adv = 0.5 * V * dx * dx * dx;

  LinearSystem sys{PentaDiagonal(n), LoadVector{n, scale / (2.0 * dx * dx)}};
  auto& A = sys.A;
  for (std::size_t k = 0; k < n; ++k) {
    A.sub2[k] = k >= 2 ? -inv4 : 0.0;
    A.sub1[k] = k >= 1 ? (4.0 - adv) * inv4 : 0.0;
    A.diag[k] = -6.0 * inv4;
    A.sup1[k] = k + 1 < n ? (4.0 + adv) * inv4 : 0.0;
    A.sup2[k] = k + 2 < n ? -inv4 : 0.0;
  }
  // u_{-1} = -u_1 - dx^2/2 folds into the diagonal and the load.
  A.diag[0] = -5.0 * inv4;
  // u_{N+2} = -u_N
  A.diag[n - 1] = -5.0 * inv4;
  return sys;
}

std::vector<double> evaluate_stencil(std::span<const double> u, double dx, double V) {
  const auto n = u.size();
  const auto g = ghost_values(u[0], u[1], u[2], u[n - 1], dx);
  // Extended vector indexed by n + 2: u_{-2}, u_{-1}, u_0, u_1..u_N, u_{N+1}, u_{N+2}
  std::vector<double> ext(n + 5, 0.0);
  ext[0] = g.minus2;
  ext[1] = g.minus1;
  ext[2] = 0.0;
  for (std::size_t k = 0; k < n; ++k) ext[k + 3] = u[k];
  ext[n + 3] = 0.0;
  ext[n + 4] = g.beyond_end;

  const double dx4 = dx * dx * dx * dx;
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = k + 3;
    const double advection = V * (ext[j + 1] - ext[j - 1]) / (2.0 * dx);
    const double diffusion =
        (ext[j + 2] - 4.0 * ext[j + 1] + 6.0 * ext[j] - 4.0 * ext[j - 1] + ext[j - 2]) / dx4;
    out[k] = advection - diffusion;
  }
  return out;
}

namespace {

void require_points(std::span<const double> u, std::size_t count) {
  if (u.size() < count)
    throw ValidationError("boundary traces need at least " + std::to_string(count) +
                          " interior points");
}

// 2 dx beta = u_1 - u_{-1}
double velocity_denominator(double u1, double dx) { return 2.0 * u1 + 0.5 * dx * dx; }

// dx^4 u4 = u_2 - 4u_1 + 6u_0 - 4u_{-1} + u_{-2}
double u4_numerator(double u1, double u2, double dx) { return 2.0 * u2 - 4.0 * u1 + dx * dx; }

}  // namespace

double compute_velocity(std::span<const double> u, double dx, double beta_floor) {
  require_points(u, 2);
  const double den = velocity_denominator(u[0], dx);
  if (!(std::abs(den) >= beta_floor * 2.0 * dx))
    throw BetaNearZero("beta vanished: |u_1 - u_{-1}| below floor");
  return 2.0 * u4_numerator(u[0], u[1], dx) / (dx * dx * dx * den);
}

BoundaryTraces boundary_traces(std::span<const double> u, double dx, double beta_floor) {
  require_points(u, 3);
  const double dx2 = dx * dx;
  const double dx4 = dx2 * dx2;
  BoundaryTraces tr{};
  tr.beta = u[0] / dx + 0.25 * dx;
  tr.u4 = u4_numerator(u[0], u[1], dx) / dx4;
  tr.u5 = (2.0 * u[2] - 12.0 * u[1] + 18.0 * u[0] - 3.0 * dx2) / (2.0 * dx4 * dx);
  tr.V = compute_velocity(u, dx, beta_floor);
  tr.beta_prime = -tr.u5 - 0.5 * tr.V;
  return tr;
}

}  // namespace contactline
