// SPDX-License-Identifier: Apache-2.0
//
// OpenMP kernels against their serial references.
#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>

#include "phasekit/injectivity.hpp"
#include "phasekit/sweep.hpp"
#include "phasekit/zoo.hpp"

namespace {

using namespace phasekit;

SweepGrid grid_of(std::int64_t n) {
  SweepGrid g;
  g.theta_steps = static_cast<std::size_t>(n);
  g.param_name = "gamma";
  g.param_steps = static_cast<std::size_t>(n);
  return g;
}

const ChannelSpecifier& arm_a() {
  static const ChannelSpecifier s = parse_channel_spec("builtin:amplitude_damping");
  return s;
}
const ChannelSpecifier& arm_b() {
  static const ChannelSpecifier s = parse_channel_spec("builtin:z_dephasing");
  return s;
}

void BM_SweepParallel(benchmark::State& state) {
  const SweepGrid g = grid_of(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sweep(arm_a(), arm_b(), g));
  state.counters["threads"] = omp_get_max_threads();
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_SweepSerial(benchmark::State& state) {
  const SweepGrid g = grid_of(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sweep_serial(arm_a(), arm_b(), g));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

KrausFamily qutrit_channel() {
  std::mt19937_64 rng(17);
  return random_channel(3, 3, 2, rng);
}

void BM_CollisionParallel(benchmark::State& state) {
  const KrausFamily f = qutrit_channel();
  CollisionSearchOptions opts;
  opts.restarts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pure_collision_search(f, opts));
  state.counters["threads"] = omp_get_max_threads();
}

void BM_CollisionSerial(benchmark::State& state) {
  const KrausFamily f = qutrit_channel();
  CollisionSearchOptions opts;
  opts.restarts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pure_collision_search_serial(f, opts));
}

}  // namespace

BENCHMARK(BM_SweepParallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CollisionParallel)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CollisionSerial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
