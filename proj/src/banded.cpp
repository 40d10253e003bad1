#include "contactline/banded.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "contactline/errors.hpp"

namespace contactline {

namespace {
constexpr double kPivotFloor = 1e-300;
}

// Row i occupies rows_[7i .. 7i+6] and holds columns i-2 .. i+4, so column c
// of row i sits at offset c - i + 2. Entries that would fall outside the
// matrix stay zero throughout, which lets the loops below skip bounds checks
// on columns.
BandedLU::BandedLU(const PentaDiagonal& m)
    : n_(m.size()), rows_(n_ * kWidth, 0.0), multipliers_(2 * n_, 0.0), pivots_(n_, 0) {
  double* a = rows_.data();
  for (std::size_t i = 0; i < n_; ++i) {
    double* row = a + i * kWidth;
    if (i >= 2) row[0] = m.sub2[i];
    if (i >= 1) row[1] = m.sub1[i];
    row[2] = m.diag[i];
    if (i + 1 < n_) row[3] = m.sup1[i];
    if (i + 2 < n_) row[4] = m.sup2[i];
  }

  for (std::size_t k = 0; k < n_; ++k) {
    double* rk = a + k * kWidth;
    double* r1 = k + 1 < n_ ? rk + kWidth : nullptr;
    double* r2 = k + 2 < n_ ? rk + 2 * kWidth : nullptr;

    // Column k sits at offset 2 in row k, 1 in row k+1, 0 in row k+2.
    std::size_t p = k;
    double best = std::abs(rk[2]);
    if (r1 && std::abs(r1[1]) > best) {
      p = k + 1;
      best = std::abs(r1[1]);
    }
    if (r2 && std::abs(r2[0]) > best) {
      p = k + 2;
      best = std::abs(r2[0]);
    }
    if (!(best >= kPivotFloor))
      throw SingularMatrix("singular matrix: pivot underflow at row " + std::to_string(k));

    pivots_[k] = p;
    if (p == k + 1) {
      for (int j = 0; j < 5; ++j) std::swap(rk[2 + j], r1[1 + j]);
    } else if (p == k + 2) {
      for (int j = 0; j < 5; ++j) std::swap(rk[2 + j], r2[0 + j]);
    }

    const double inv_pivot = 1.0 / rk[2];
    if (r1) {
      const double f = r1[1] * inv_pivot;
      multipliers_[2 * k] = f;
      r1[1] = 0.0;
      for (int j = 0; j < 4; ++j) r1[2 + j] -= f * rk[3 + j];
    }
    if (r2) {
      const double f = r2[0] * inv_pivot;
      multipliers_[2 * k + 1] = f;
      r2[0] = 0.0;
      for (int j = 0; j < 4; ++j) r2[1 + j] -= f * rk[3 + j];
    }
  }
}

std::vector<double> BandedLU::solve(std::span<const double> rhs) const {
  if (rhs.size() != n_) throw Error("banded_solve: rhs length does not match matrix size");
  // Four trailing zeros let back substitution read past the last row.
  std::vector<double> x(n_ + 4, 0.0);
  std::copy(rhs.begin(), rhs.end(), x.begin());

  for (std::size_t k = 0; k < n_; ++k) {
    if (pivots_[k] != k) std::swap(x[k], x[pivots_[k]]);
    if (k + 1 < n_) x[k + 1] -= multipliers_[2 * k] * x[k];
    if (k + 2 < n_) x[k + 2] -= multipliers_[2 * k + 1] * x[k];
  }
  const double* a = rows_.data();
  for (std::size_t k = n_; k-- > 0;) {
    const double* rk = a + k * kWidth;
    const double s = x[k] - rk[3] * x[k + 1] - rk[4] * x[k + 2] - rk[5] * x[k + 3] - rk[6] * x[k + 4];
    x[k] = s / rk[2];
  }
  x.resize(n_);
  return x;
}

std::vector<double> banded_solve(const PentaDiagonal& m, std::span<const double> rhs) {
  return BandedLU(m).solve(rhs);
}

}  // namespace contactline
