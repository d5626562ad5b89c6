// Serial reference kernels against the OpenMP versions on the desk grid.

#include <map>
#include <utility>

#include <benchmark/benchmark.h>

#include "kinwave/config.hpp"
#include "kinwave/coupling.hpp"
#include "kinwave/kernels.hpp"

using namespace kinwave;

namespace {

// Desk preset advanced `steps` steps, so the field history is nontrivial.
const SimulationState& desk_state(int n, int steps) {
  static std::map<std::pair<int, int>, SimulationState> cache;
  auto it = cache.find({n, steps});
  if (it == cache.end()) {
    Config c = desk_config();
    c.grid.nx = c.grid.nv = n;
    RunOptions o = options_from(c);
    o.keep_f_history = false;
    it = cache.emplace(std::pair{n, steps},
                       run(with_steps(make_grid(c), steps), c.data, o).state).first;
  }
  return it->second;
}

void BM_fill_analytic_reference(benchmark::State& st) {
  const auto& s = desk_state(st.range(0), st.range(1));
  Array2D out;
  for (auto _ : st) {
    kernels::fill_analytic_reference(out, s.grid, s.data.f0, s.field_history, s.step);
    benchmark::DoNotOptimize(out.data().data());
  }
}

void BM_fill_analytic(benchmark::State& st) {
  const auto& s = desk_state(st.range(0), st.range(1));
  Array2D out;
  for (auto _ : st) {
    kernels::fill_analytic(out, s.grid, s.data.f0, s.field_history, s.step);
    benchmark::DoNotOptimize(out.data().data());
  }
}

void BM_fill_depth_one_reference(benchmark::State& st) {
  const auto& s = desk_state(st.range(0), st.range(1));
  Array2D out;
  for (auto _ : st) {
    kernels::fill_depth_one_reference(out, s.distribution.values, s.grid, s.data.f0,
                                      s.field_history, s.step, false);
    benchmark::DoNotOptimize(out.data().data());
  }
}

void BM_fill_depth_one(benchmark::State& st) {
  const auto& s = desk_state(st.range(0), st.range(1));
  Array2D out;
  for (auto _ : st) {
    kernels::fill_depth_one(out, s.distribution.values, s.grid, s.data.f0, s.field_history,
                            s.step, false);
    benchmark::DoNotOptimize(out.data().data());
  }
}

void BM_moments_reference(benchmark::State& st) {
  const auto& s = desk_state(st.range(0), st.range(1));
  std::vector<double> rho, j;
  for (auto _ : st) {
    kernels::moments_reference(s.distribution.values, s.grid, rho, j);
    benchmark::DoNotOptimize(j.data());
  }
}

void BM_moments(benchmark::State& st) {
  const auto& s = desk_state(st.range(0), st.range(1));
  std::vector<double> rho, j;
  for (auto _ : st) {
    kernels::moments(s.distribution.values, s.grid, rho, j);
    benchmark::DoNotOptimize(j.data());
  }
}

}  // namespace

BENCHMARK(BM_fill_analytic_reference)->Args({256, 20})->Args({256, 100})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fill_analytic)->Args({256, 20})->Args({256, 100})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fill_depth_one_reference)->Args({256, 20})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fill_depth_one)->Args({256, 20})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_moments_reference)->Args({256, 20})->Args({512, 0})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_moments)->Args({256, 20})->Args({512, 0})->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
