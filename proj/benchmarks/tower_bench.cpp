#include <benchmark/benchmark.h>

#include <memory>

#include "hocoalg/sab.hpp"
#include "hocoalg/tower.hpp"

namespace {

using namespace hocoalg;

SAbPtr k_z_1() { return std::make_shared<const SimplicialAbelianGroup>(eilenberg_maclane(Moduli{0}, 1, 5)); }

void BM_TotResConstant(benchmark::State& state) {
  const auto obj = constant_cosimplicial(k_z_1(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(tot_res_tower(obj, static_cast<int>(state.range(0)), 2));
}

void BM_TotResInsertion(benchmark::State& state) {
  const auto obj = insertion_cosimplicial(k_z_1(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(tot_res_tower(obj, static_cast<int>(state.range(0)), 2));
}

void BM_PostnikovTwoSphere(benchmark::State& state) {
  const int bound = static_cast<int>(state.range(0));
  const auto a = std::make_shared<const SimplicialAbelianGroup>(free_reduced(sphere(2), bound));
  for (auto _ : state) benchmark::DoNotOptimize(postnikov_tower(a, bound));
}

void BM_CobarIdentities(benchmark::State& state) {
  const auto obj = cobar(sphere(2), 3, 4);
  for (auto _ : state) benchmark::DoNotOptimize(check_cosimplicial_identities(obj, 10, 1));
}

}  // namespace

BENCHMARK(BM_TotResConstant)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TotResInsertion)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PostnikovTwoSphere)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CobarIdentities)->Unit(benchmark::kMillisecond);
