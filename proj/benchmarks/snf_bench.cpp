#include <benchmark/benchmark.h>

#include <random>

#include "hocoalg/intlinalg.hpp"

namespace {

using hocoalg::Integer;
using hocoalg::IntMatrix;

// Square matrix with +-1 entries at the given density (in percent).
IntMatrix random_sparse(std::size_t n, double percent, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 100);
  std::bernoulli_distribution sign(0.5);
  std::vector<IntMatrix::Entry> e;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (u(rng) < percent) e.push_back({i, j, Integer(sign(rng) ? 1 : -1)});
    }
  }
  return IntMatrix::from_triplets(n, n, std::move(e));
}

void BM_SmithWithTransforms(benchmark::State& state) {
  const IntMatrix m = random_sparse(static_cast<std::size_t>(state.range(0)), 2.0, 606);
  for (auto _ : state) benchmark::DoNotOptimize(hocoalg::smith_normal_form(m));
  state.counters["nnz"] = static_cast<double>(m.nnz());
}

void BM_SmithInvariantsOnly(benchmark::State& state) {
  const IntMatrix m = random_sparse(static_cast<std::size_t>(state.range(0)), 2.0, 606);
  for (auto _ : state) benchmark::DoNotOptimize(hocoalg::smith_invariants(m));
}

void BM_KernelBasis(benchmark::State& state) {
  const IntMatrix m = random_sparse(static_cast<std::size_t>(state.range(0)), 5.0, 17);
  for (auto _ : state) benchmark::DoNotOptimize(hocoalg::kernel_basis(m));
}

}  // namespace

BENCHMARK(BM_SmithWithTransforms)->Arg(50)->Arg(100)->Arg(200)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SmithInvariantsOnly)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelBasis)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);
