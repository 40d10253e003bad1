#pragma once

#include <span>

#include "contactline/discretization.hpp"

// Data-parallel vector kernels used by the time stepper. Each kernel has a
// serial reference and an OpenMP version; tests require them to agree.
namespace contactline::kernels {

// Below this length the OpenMP versions run on one thread.
inline constexpr std::size_t kParallelThreshold = 1 << 14;

// out = A u + b
void apply_operator_serial(const LinearSystem& sys, std::span<const double> u,
                           std::span<double> out);
void apply_operator_omp(const LinearSystem& sys, std::span<const double> u,
                        std::span<double> out);

// out = u + h (A u + b) + h b_new: the explicit half of a trapezoidal step,
// with the load taken at both time levels.
void trapezoid_rhs_serial(const LinearSystem& sys, std::span<const double> u,
                          double half_dt, const LoadVector& new_load,
                          std::span<double> out);
void trapezoid_rhs_omp(const LinearSystem& sys, std::span<const double> u,
                       double half_dt, const LoadVector& new_load,
                       std::span<double> out);

// max_i |x_i - y_i|
double max_abs_diff_serial(std::span<const double> x, std::span<const double> y);
double max_abs_diff_omp(std::span<const double> x, std::span<const double> y);

// I - alpha A
PentaDiagonal shifted_identity_serial(const PentaDiagonal& A, double alpha);
PentaDiagonal shifted_identity_omp(const PentaDiagonal& A, double alpha);

}  // namespace contactline::kernels
