#include "contactline/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace contactline::kernels {

namespace {

// Row k of A u, reading only entries that exist.
inline double band_row(const PentaDiagonal& A, std::span<const double> u, std::size_t k) {
  const std::size_t n = u.size();
  double s = A.diag[k] * u[k];
  if (k >= 1) s += A.sub1[k] * u[k - 1];
  if (k >= 2) s += A.sub2[k] * u[k - 2];
  if (k + 1 < n) s += A.sup1[k] * u[k + 1];
  if (k + 2 < n) s += A.sup2[k] * u[k + 2];
  return s;
}

using Index = std::ptrdiff_t;

}  // namespace

void apply_operator_serial(const LinearSystem& sys, std::span<const double> u,
                           std::span<double> out) {
  for (std::size_t k = 0; k < u.size(); ++k) out[k] = band_row(sys.A, u, k) + sys.b[k];
}

void apply_operator_omp(const LinearSystem& sys, std::span<const double> u,
                        std::span<double> out) {
  const auto n = static_cast<Index>(u.size());
#pragma omp parallel for schedule(static) if (u.size() >= kParallelThreshold)
  for (Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = band_row(sys.A, u, k) + sys.b[k];
  }
}

void trapezoid_rhs_serial(const LinearSystem& sys, std::span<const double> u, double half_dt,
                          const LoadVector& new_load, std::span<double> out) {
  for (std::size_t k = 0; k < u.size(); ++k)
    out[k] = u[k] + half_dt * (band_row(sys.A, u, k) + sys.b[k] + new_load[k]);
}

void trapezoid_rhs_omp(const LinearSystem& sys, std::span<const double> u, double half_dt,
                       const LoadVector& new_load, std::span<double> out) {
  const auto n = static_cast<Index>(u.size());
#pragma omp parallel for schedule(static) if (u.size() >= kParallelThreshold)
  for (Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = u[k] + half_dt * (band_row(sys.A, u, k) + sys.b[k] + new_load[k]);
  }
}

double max_abs_diff_serial(std::span<const double> x, std::span<const double> y) {
  double m = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) m = std::max(m, std::abs(x[k] - y[k]));
  return m;
}

double max_abs_diff_omp(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<Index>(x.size());
  double m = 0.0;
#pragma omp parallel for reduction(max : m) schedule(static) if (x.size() >= kParallelThreshold)
  for (Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    m = std::max(m, std::abs(x[k] - y[k]));
  }
  return m;
}

PentaDiagonal shifted_identity_serial(const PentaDiagonal& A, double alpha) {
  PentaDiagonal M(A.size());
  for (std::size_t k = 0; k < A.size(); ++k) {
    M.sub2[k] = -alpha * A.sub2[k];
    M.sub1[k] = -alpha * A.sub1[k];
    M.diag[k] = 1.0 - alpha * A.diag[k];
    M.sup1[k] = -alpha * A.sup1[k];
    M.sup2[k] = -alpha * A.sup2[k];
  }
  return M;
}

PentaDiagonal shifted_identity_omp(const PentaDiagonal& A, double alpha) {
  PentaDiagonal M(A.size());
  const auto n = static_cast<Index>(A.size());
#pragma omp parallel for schedule(static) if (A.size() >= kParallelThreshold)
  for (Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    M.sub2[k] = -alpha * A.sub2[k];
    M.sub1[k] = -alpha * A.sub1[k];
    M.diag[k] = 1.0 - alpha * A.diag[k];
    M.sup1[k] = -alpha * A.sup1[k];
    M.sup2[k] = -alpha * A.sup2[k];
  }
  return M;
}

}  // namespace contactline::kernels
