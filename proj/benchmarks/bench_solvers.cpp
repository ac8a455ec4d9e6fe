#include <benchmark/benchmark.h>

#include <random>

#include "nsplit/gadgets.hpp"
#include "nsplit/solve1d.hpp"
#include "nsplit/solvend.hpp"
#include "nsplit/stringing.hpp"

using namespace nsplit;

namespace {

NecklaceGrid random_word(int n, int k, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<ColorId> cells;
  for (int i = 0; i < n / 2; ++i) {
    const ColorId c = static_cast<ColorId>(rng() % static_cast<unsigned>(k));
    cells.push_back(c);
    cells.push_back(c);
  }
  std::shuffle(cells.begin(), cells.end(), rng);
  return NecklaceGrid({n}, k, cells);
}

void BM_min_cuts_fair(benchmark::State& state) {
  const auto g = random_word(static_cast<int>(state.range(0)), 4, 12345);
  for (auto _ : state) benchmark::DoNotOptimize(solve1d::min_cuts_fair(g));
}
BENCHMARK(BM_min_cuts_fair)->Arg(16)->Arg(24)->Arg(32);

void BM_oracle_brute(benchmark::State& state) {
  const auto g = random_word(static_cast<int>(state.range(0)), 4, 12345);
  for (auto _ : state) benchmark::DoNotOptimize(solve1d::oracle_brute(g, 4));
}
BENCHMARK(BM_oracle_brute)->Arg(12)->Arg(16);

void BM_min_total_lines(benchmark::State& state) {
  std::mt19937 rng(777);
  std::vector<ColorId> cells;
  const int side = static_cast<int>(state.range(0));
  for (int i = 0; i < side * side / 2; ++i) {
    const ColorId c = static_cast<ColorId>(rng() % 3u);
    cells.push_back(c);
    cells.push_back(c);
  }
  std::shuffle(cells.begin(), cells.end(), rng);
  const NecklaceGrid g({side, side}, 3, cells);
  for (auto _ : state) benchmark::DoNotOptimize(solvend::min_total_lines(g));
}
BENCHMARK(BM_min_total_lines)->Arg(4)->Arg(6);

void BM_split_via_stringing(benchmark::State& state) {
  std::mt19937 rng(99);
  const int side = static_cast<int>(state.range(0));
  std::vector<ColorId> cells;
  for (int i = 0; i < side * side / 2; ++i) {
    const ColorId c = static_cast<ColorId>(rng() % 3u);
    cells.push_back(c);
    cells.push_back(c);
  }
  std::shuffle(cells.begin(), cells.end(), rng);
  const NecklaceGrid g({side, side}, 3, cells);
  for (auto _ : state) benchmark::DoNotOptimize(stringing::split_via_stringing(g));
}
BENCHMARK(BM_split_via_stringing)->Arg(8)->Arg(16);

void BM_certify_min_lines(benchmark::State& state) {
  PointSet ps;
  ps.dim = 2;
  ps.palette = 1;
  for (auto xy : {std::pair{0, 0}, {0, 1}, {0, 2}, {1, 1}})
    ps.points.push_back(Point{{xy.first, xy.second}, 0});
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gadgets::certify_min_lines(ps, m));
}
BENCHMARK(BM_certify_min_lines)->Arg(1)->Arg(2);

}  // namespace

BENCHMARK_MAIN();
