#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "contactline/kernels.hpp"

namespace {

using namespace contactline;

class KernelAgreement : public ::testing::TestWithParam<int> {
 protected:
  void SetUp() override {
    const int N = GetParam();
    sys = assemble_operator(Grid{40.0, N}, -2.5);
    std::mt19937_64 rng(static_cast<unsigned>(N));
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    u.resize(N);
    v.resize(N);
    for (auto& x : u) x = dist(rng);
    for (auto& x : v) x = dist(rng);
  }
  LinearSystem sys;
  std::vector<double> u, v;
};

// Each output entry is computed by the same expression in both versions, so
// agreement is exact.
TEST_P(KernelAgreement, ApplyOperator) {
  std::vector<double> a(u.size()), b(u.size());
  kernels::apply_operator_serial(sys, u, a);
  kernels::apply_operator_omp(sys, u, b);
  EXPECT_EQ(a, b);
}

TEST_P(KernelAgreement, TrapezoidRhs) {
  std::vector<double> a(u.size()), b(u.size());
  const LoadVector next{sys.b.size, 0.75 * sys.b.first};
  kernels::trapezoid_rhs_serial(sys, u, 3e-5, next, a);
  kernels::trapezoid_rhs_omp(sys, u, 3e-5, next, b);
  EXPECT_EQ(a, b);
}

TEST_P(KernelAgreement, MaxAbsDiff) {
  EXPECT_EQ(kernels::max_abs_diff_serial(u, v), kernels::max_abs_diff_omp(u, v));
}

TEST_P(KernelAgreement, ShiftedIdentity) {
  const auto a = kernels::shifted_identity_serial(sys.A, 1e-4);
  const auto b = kernels::shifted_identity_omp(sys.A, 1e-4);
  EXPECT_EQ(a.sub2, b.sub2);
  EXPECT_EQ(a.sub1, b.sub1);
  EXPECT_EQ(a.diag, b.diag);
  EXPECT_EQ(a.sup1, b.sup1);
  EXPECT_EQ(a.sup2, b.sup2);
}

INSTANTIATE_TEST_SUITE_P(Sizes, KernelAgreement,
                         ::testing::Values(7, 799, static_cast<int>(kernels::kParallelThreshold) + 5,
                                           1 << 17));

TEST(Kernels, TrapezoidRhsDefinition) {
  const auto sys = assemble_operator(Grid{6.0, 5}, 1.0);
  const std::vector<double> u = {0.1, -0.2, 0.3, -0.4, 0.5};
  const double h = 0.01;
  const LoadVector next{5, 2.0};
  std::vector<double> Au(5), out(5);
  kernels::apply_operator_serial(sys, u, Au);
  kernels::trapezoid_rhs_serial(sys, u, h, next, out);
  for (std::size_t k = 0; k < 5; ++k) EXPECT_DOUBLE_EQ(out[k], u[k] + h * Au[k] + h * next[k]);
}

TEST(Kernels, ShiftedIdentityDefinition) {
  const auto sys = assemble_operator(Grid{6.0, 5}, 1.0);
  const auto M = kernels::shifted_identity_serial(sys.A, 0.5);
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t c = 0; c < 5; ++c)
      EXPECT_DOUBLE_EQ(M.at(r, c), (r == c ? 1.0 : 0.0) - 0.5 * sys.A.at(r, c));
}

}  // namespace
