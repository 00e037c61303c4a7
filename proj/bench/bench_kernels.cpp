#include "pwalk/ergodic.hpp"
#include "pwalk/kernels.hpp"
#include "pwalk/parse.hpp"
#include "pwalk/weyl.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <thread>

using namespace pwalk;

namespace {

std::vector<double> random_phases(std::size_t n) {
  std::mt19937_64 rng(7);
  std::vector<double> out(n);
  for (auto& x : out) x = std::ldexp(double(rng() >> 11), -53);
  return out;
}

std::size_t jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

void BM_UnitPhaseSerial(benchmark::State& state) {
  const auto phases = random_phases(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::mean_unit_phase_serial(phases, 8));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_UnitPhaseParallel(benchmark::State& state) {
  const auto phases = random_phases(state.range(0));
  const ParallelConfig cfg{jobs(), 8};
  for (auto _ : state) benchmark::DoNotOptimize(kernels::mean_unit_phase_parallel(phases, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

struct CorrelationInput {
  std::vector<double> samples;
  std::vector<std::vector<double>> offsets;
  kernels::Box box{{0.1}, {0.3}};
};

CorrelationInput correlation_input(std::size_t m, std::size_t n) {
  CorrelationInput in;
  in.samples = random_phases(m);
  in.offsets = {random_phases(n), random_phases(n)};
  return in;
}

void BM_CorrelationSerial(benchmark::State& state) {
  const auto in = correlation_input(state.range(0), 2000);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::correlation_sum_serial(in.samples, in.offsets, in.box, 8));
}

void BM_CorrelationParallel(benchmark::State& state) {
  const auto in = correlation_input(state.range(0), 2000);
  const ParallelConfig cfg{jobs(), 8};
  for (auto _ : state) benchmark::DoNotOptimize(kernels::correlation_sum_parallel(in.samples, in.offsets, in.box, cfg));
}

void BM_WeylSerial(benchmark::State& state) {
  const PolyVector p = parse_poly_list("n^2", {"n"});
  const std::vector<Frequency> theta{Frequency::named("sqrt2")};
  for (auto _ : state) benchmark::DoNotOptimize(weyl_sum_serial(p, theta, state.range(0)));
}

void BM_WeylParallel(benchmark::State& state) {
  const PolyVector p = parse_poly_list("n^2", {"n"});
  const std::vector<Frequency> theta{Frequency::named("sqrt2")};
  const ParallelConfig cfg{jobs(), 8};
  for (auto _ : state) benchmark::DoNotOptimize(weyl_sum(p, theta, state.range(0), cfg));
}

}  // namespace

BENCHMARK(BM_UnitPhaseSerial)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_UnitPhaseParallel)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_CorrelationSerial)->Arg(1024)->Arg(4096);
BENCHMARK(BM_CorrelationParallel)->Arg(1024)->Arg(4096);
BENCHMARK(BM_WeylSerial)->Arg(10000);
BENCHMARK(BM_WeylParallel)->Arg(10000);

BENCHMARK_MAIN();
