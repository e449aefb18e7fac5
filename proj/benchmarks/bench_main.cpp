#include <cmath>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "polydep/census.hpp"
#include "polydep/depend.hpp"
#include "polydep/factorize.hpp"
#include "polydep/lattice.hpp"
#include "polydep/roots.hpp"
#include "polydep/volume.hpp"

using namespace polydep;

namespace {

std::vector<IntPolynomial> random_monic(int n, long H, int count) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> c(-H, H);
  std::vector<IntPolynomial> out;
  while (static_cast<int>(out.size()) < count) {
    std::vector<Integer> v(n + 1);
    for (auto& x : v) x = c(rng);
    v[n] = 1;
    if (v[0] != 0) out.emplace_back(v);
  }
  return out;
}

void BM_FastIsolateQuartic(benchmark::State& state) {
  auto polys = random_monic(4, 30, 256);
  std::vector<std::vector<double>> coeffs;
  for (const auto& f : polys) {
    std::vector<double> d;
    for (const auto& c : f.coeffs()) d.push_back(c.get_d());
    coeffs.push_back(d);
  }
  std::vector<FastRoot> out;
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fast_isolate(coeffs[i++ % coeffs.size()].data(), 4, out));
  }
}
BENCHMARK(BM_FastIsolateQuartic);

void BM_IsolateRoots(benchmark::State& state) {
  auto polys = random_monic(static_cast<int>(state.range(0)), 30, 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(isolate_roots(polys[i++ % polys.size()], 64));
}
BENCHMARK(BM_IsolateRoots)->Arg(4)->Arg(8);

void BM_Factor(benchmark::State& state) {
  auto polys = random_monic(static_cast<int>(state.range(0)), 30, 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(factor(polys[i++ % polys.size()]));
}
BENCHMARK(BM_Factor)->Arg(4)->Arg(8);

void BM_MultiplicativeDependence(benchmark::State& state) {
  auto polys = random_monic(static_cast<int>(state.range(0)), 20, 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(multiplicative_dependence(polys[i++ % polys.size()]));
}
BENCHMARK(BM_MultiplicativeDependence)->Arg(2)->Arg(3)->Arg(4);

void BM_LllReduce(benchmark::State& state) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> c(-1000, 1000);
  int d = static_cast<int>(state.range(0));
  IntegerMatrix b;
  for (int i = 0; i < d; ++i) {
    IntegerVector row(d + 1, 0);
    row[i] = 1;
    row[d] = c(rng) * 1000003;
    b.rows.push_back(row);
  }
  for (auto _ : state) benchmark::DoNotOptimize(lll_reduce(b));
}
BENCHMARK(BM_LllReduce)->Arg(4)->Arg(8);

void BM_CensusMonicQuartic(benchmark::State& state) {
  CensusSpec s;
  s.degree = 4;
  s.height = state.range(0);
  s.classes = {ClassLabel::parse("M")};
  for (auto _ : state) benchmark::DoNotOptimize(run_census(s));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(std::pow(2 * s.height + 1, 4)));
}
BENCHMARK(BM_CensusMonicQuartic)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Nu(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(nu(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Nu)->Arg(4)->Arg(10);

}  // namespace
BENCHMARK_MAIN();
