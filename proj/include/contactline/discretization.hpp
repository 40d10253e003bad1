#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace contactline {

inline constexpr double kDefaultBetaFloor = 1e-12;

// Uniform mesh x_n = n dx, n = 0..N+1, on [0, L]. The end values u_0 and
// u_{N+1} are pinned to zero and never stored.
struct Grid {
  double L = 40.0;
  int N = 799;

  double dx() const { return L / (N + 1); }
  double x(int n) const { return n * dx(); }

  // Throws ValidationError unless L > 0 and N >= 5.
  void validate() const;

  // Mesh on [0, L] with spacing as close as possible to `spacing`.
  static Grid with_spacing(double L, double spacing);
};

struct State {
  double t = 0.0;
  std::vector<double> u;  // u_1..u_N
  double V = 0.0;
};

// Values eliminated through the boundary conditions:
//   u_xx(0) = -1/2, u_xxx(0) = 0, u_xxxxxx(0) = 0, u_xx(L) = 0.
struct GhostValues {
  double minus1;
  double minus2;
  double minus3;
  double beyond_end;  // u_{N+2}
};

GhostValues ghost_values(double u1, double u2, double u3, double uN, double dx);

// Five diagonals of an N x N banded matrix. Entry k of each array belongs to
// row k; slots that fall outside the matrix are kept at zero.
struct PentaDiagonal {
  std::vector<double> sub2, sub1, diag, sup1, sup2;

  PentaDiagonal() = default;
  explicit PentaDiagonal(std::size_t n)
      : sub2(n, 0.0), sub1(n, 0.0), diag(n, 0.0), sup1(n, 0.0), sup2(n, 0.0) {}

  std::size_t size() const { return diag.size(); }
  double at(std::size_t row, std::size_t col) const;
};

// Load vector of the semi-discrete system; only the first entry is nonzero.
struct LoadVector {
  std::size_t size = 0;
  double first = 0.0;

  double operator[](std::size_t i) const { return i == 0 ? first : 0.0; }
};

// du/dt = A u + b.
struct LinearSystem {
  PentaDiagonal A;
  LoadVector b;
};

// Assembles A(V) and b with the ghost values eliminated. Both are multiplied
// by `scale` (1 for physical time, 1/(1+V^{2n}) in rescaled time).
LinearSystem assemble_operator(const Grid& grid, double V, double scale = 1.0);

// Direct evaluation of the five-point stencil with ghost values substituted.
// Kept independent of assemble_operator so each can check the other.
std::vector<double> evaluate_stencil(std::span<const double> u, double dx, double V);

struct BoundaryTraces {
  double beta;        // u_x(0)
  double u4;          // u_xxxx(0)
  double u5;          // u_xxxxx(0)
  double V;           // u4 / beta
  double beta_prime;  // -u5 - V/2
};

BoundaryTraces boundary_traces(std::span<const double> u, double dx,
                               double beta_floor = kDefaultBetaFloor);

double compute_velocity(std::span<const double> u, double dx,
                        double beta_floor = kDefaultBetaFloor);

}  // namespace contactline
