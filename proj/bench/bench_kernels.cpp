#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "contactline/banded.hpp"
#include "contactline/discretization.hpp"
#include "contactline/kernels.hpp"

namespace {

using namespace contactline;

std::vector<double> random_vector(std::size_t n) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

LinearSystem system_of_size(benchmark::State& state) {
  const Grid grid{40.0, static_cast<int>(state.range(0))};
  return assemble_operator(grid, -1.25);
}

void BM_ApplyOperatorSerial(benchmark::State& state) {
  const auto sys = system_of_size(state);
  const auto u = random_vector(sys.A.size());
  std::vector<double> out(u.size());
  for (auto _ : state) {
    kernels::apply_operator_serial(sys, u, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ApplyOperatorOmp(benchmark::State& state) {
  const auto sys = system_of_size(state);
  const auto u = random_vector(sys.A.size());
  std::vector<double> out(u.size());
  for (auto _ : state) {
    kernels::apply_operator_omp(sys, u, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TrapezoidRhsSerial(benchmark::State& state) {
  const auto sys = system_of_size(state);
  const auto u = random_vector(sys.A.size());
  std::vector<double> out(u.size());
  for (auto _ : state) {
    kernels::trapezoid_rhs_serial(sys, u, 1e-4, sys.b, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TrapezoidRhsOmp(benchmark::State& state) {
  const auto sys = system_of_size(state);
  const auto u = random_vector(sys.A.size());
  std::vector<double> out(u.size());
  for (auto _ : state) {
    kernels::trapezoid_rhs_omp(sys, u, 1e-4, sys.b, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_MaxAbsDiffSerial(benchmark::State& state) {
  const auto x = random_vector(static_cast<std::size_t>(state.range(0)));
  auto y = x;
  y.back() += 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(kernels::max_abs_diff_serial(x, y));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_MaxAbsDiffOmp(benchmark::State& state) {
  const auto x = random_vector(static_cast<std::size_t>(state.range(0)));
  auto y = x;
  y.back() += 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(kernels::max_abs_diff_omp(x, y));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

// The banded solve is inherently sequential; listed for scale.
void BM_BandedSolve(benchmark::State& state) {
  const auto sys = system_of_size(state);
  const auto M = kernels::shifted_identity_serial(sys.A, 1e-4);
  const auto rhs = random_vector(M.size());
  for (auto _ : state) benchmark::DoNotOptimize(banded_solve(M, rhs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

constexpr long kSmall = 799;
constexpr long kLarge = 1 << 20;

BENCHMARK(BM_ApplyOperatorSerial)->Arg(kSmall)->Arg(kLarge);
BENCHMARK(BM_ApplyOperatorOmp)->Arg(kSmall)->Arg(kLarge);
BENCHMARK(BM_TrapezoidRhsSerial)->Arg(kSmall)->Arg(kLarge);
BENCHMARK(BM_TrapezoidRhsOmp)->Arg(kSmall)->Arg(kLarge);
BENCHMARK(BM_MaxAbsDiffSerial)->Arg(kSmall)->Arg(kLarge);
BENCHMARK(BM_MaxAbsDiffOmp)->Arg(kSmall)->Arg(kLarge);
BENCHMARK(BM_BandedSolve)->Arg(kSmall)->Arg(1 << 16);

}  // namespace

BENCHMARK_MAIN();
