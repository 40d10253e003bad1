#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "contactline/discretization.hpp"

namespace contactline {

// LU factorization of a pentadiagonal matrix with partial pivoting inside the
// band. Row interchanges widen the upper band from 2 to 4.
class BandedLU {
 public:
  // Throws SingularMatrix if a pivot magnitude drops below 1e-300.
  explicit BandedLU(const PentaDiagonal& m);

  std::vector<double> solve(std::span<const double> rhs) const;

  std::size_t size() const { return n_; }

 private:
  static constexpr std::size_t kWidth = 7;  // columns i-2 .. i+4 of row i
  std::size_t n_;
  std::vector<double> rows_;
  std::vector<double> multipliers_;  // two per elimination step
  std::vector<std::size_t> pivots_;
};

std::vector<double> banded_solve(const PentaDiagonal& m, std::span<const double> rhs);

}  // namespace contactline
