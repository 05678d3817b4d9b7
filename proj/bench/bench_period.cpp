#include <benchmark/benchmark.h>

#include <random>

#include "tautgen/period_engine.hpp"

using namespace tautgen;

namespace {

const AMatrix& p2() {
  static const AMatrix a = a_matrix(anticanonical_sections(projective_space_fan(2)));
  return a;
}

const AMatrix& p3() {
  static const AMatrix a = a_matrix(anticanonical_sections(projective_space_fan(3)));
  return a;
}

void series_parallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(period_series(p2(), state.range(0)));
}

void series_serial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(reference::period_series(p2(), state.range(0)));
}

void verify_parallel(benchmark::State& state) {
  auto sys = build_toric_gkz(p3());
  for (const auto& op : binomial_generators_bounded(p3(), 2)) sys.add_polynomial("binomial", op);
  auto p = period_series(p3(), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_system(sys, p));
}

void quadrature_parallel(benchmark::State& state) {
  std::mt19937_64 rng(1);
  auto c = sample_dominant(p2(), 0.25, rng);
  for (auto _ : state) benchmark::DoNotOptimize(numeric_period(p2(), c, static_cast<int>(state.range(0))));
}

void quadrature_serial(benchmark::State& state) {
  std::mt19937_64 rng(1);
  auto c = sample_dominant(p2(), 0.25, rng);
  for (auto _ : state) benchmark::DoNotOptimize(reference::numeric_period(p2(), c, static_cast<int>(state.range(0))));
}

}  // namespace

BENCHMARK(series_parallel)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(series_serial)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(verify_parallel)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(quadrature_parallel)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(quadrature_serial)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
