#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "dice/level_quotient.hpp"
#include "dice/order_engine.hpp"
#include "dice/presets.hpp"

namespace {

const dice::DiceGroup& tetra() {
  static const dice::DiceGroup g(dice::tetrahedron().config);
  return g;
}

std::vector<dice::ReducedWord> samples(std::size_t max_wlen) {
  std::mt19937_64 rng(3);
  std::vector<dice::ReducedWord> out;
  for (int k = 0; k < 64; ++k) out.push_back(dice::sample_element(tetra(), 1, max_wlen, rng));
  return out;
}

// Cold memo: every element solved from scratch.
void BM_OrderCold(benchmark::State& state) {
  const auto xs = samples(static_cast<std::size_t>(state.range(0)));
  std::size_t k = 0;
  for (auto _ : state) {
    dice::OrderContext ctx(tetra());
    benchmark::DoNotOptimize(dice::order(tetra(), xs[k++ % xs.size()], ctx));
  }
}
BENCHMARK(BM_OrderCold)->Arg(2)->Arg(4)->Arg(6)->Arg(8);

void BM_OrderWarm(benchmark::State& state) {
  const auto xs = samples(static_cast<std::size_t>(state.range(0)));
  dice::OrderContext ctx(tetra());
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(dice::order(tetra(), xs[k++ % xs.size()], ctx));
}
BENCHMARK(BM_OrderWarm)->Arg(6);

void BM_Multiply(benchmark::State& state) {
  const auto xs = samples(6);
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tetra().multiply(xs[k % xs.size()], xs[(k + 1) % xs.size()]));
    ++k;
  }
}
BENCHMARK(BM_Multiply);

void BM_QuotientFull(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<dice::LevelPermutation> gens;
  for (const char* w : {"w", "a1", "a2", "a3"}) gens.push_back(dice::project(tetra(), tetra().parse(1, w), n));
  for (auto _ : state) benchmark::DoNotOptimize(dice::group_order(gens));
}
BENCHMARK(BM_QuotientFull)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_SchreierSims(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<dice::LevelPermutation> gens;
  for (const char* w : {"w", "a1", "a2", "a3"}) gens.push_back(dice::project(tetra(), tetra().parse(1, w), n));
  for (auto _ : state) benchmark::DoNotOptimize(dice::schreier_sims_order(gens));
}
BENCHMARK(BM_SchreierSims)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
