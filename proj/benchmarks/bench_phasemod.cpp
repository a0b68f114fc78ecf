// Copyright (c) 2026 The phasemod authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0.txt
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <cmath>

#include "phasemod/experiments.hpp"

using namespace phasemod;

namespace {

std::vector<double> smooth_samples(std::size_t m) {
  std::vector<double> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double s = grid_point(j, m);
    out[j] = std::log(1.25 - std::cos(s)) + 0.1 * std::cos(7 * s);
  }
  return out;
}

void BM_HilbertSeries(benchmark::State& state) {
  const auto f = smooth_samples(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(periodic_hilbert(f, HilbertMethod::series));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HilbertSeries)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity(benchmark::oNLogN);

void BM_HilbertQuadrature(benchmark::State& state) {
  const auto f = smooth_samples(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(periodic_hilbert(f, HilbertMethod::quadrature));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HilbertQuadrature)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Complexity(benchmark::oNSquared);

void BM_Analyze(benchmark::State& state) {
  const auto p = params_from_k(static_cast<double>(state.range(0)));
  const int n = *p.n_harmonic;
  const auto sig = SampledSignal::sample([&](double s) { return braced_amplitude(p, s); }, 16384);
  for (auto _ : state) benchmark::DoNotOptimize(analyze(sig, n));
}
BENCHMARK(BM_Analyze)->Arg(1)->Arg(17);

void BM_RootCheck(benchmark::State& state) {
  const auto sig = evaluate_model(params_from_k(static_cast<double>(state.range(0))), 16384);
  for (auto _ : state) benchmark::DoNotOptimize(root_check(*sig.helicity));
}
BENCHMARK(BM_RootCheck)->Arg(1)->Arg(17)->Arg(40);

void BM_LogCoefficients(benchmark::State& state) {
  const auto sig = evaluate_model(params_from_k(1), 64);
  for (auto _ : state) benchmark::DoNotOptimize(log_coefficients(*sig.helicity, 50, 16384));
}
BENCHMARK(BM_LogCoefficients);

void BM_ReciprocityCase(benchmark::State& state) {
  const auto p = params_from_k(static_cast<double>(state.range(0)));
  const auto m = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(run_reciprocity_case(p, m));
}
BENCHMARK(BM_ReciprocityCase)->Args({1, 4096})->Args({17, 16384})->Unit(benchmark::kMillisecond);

void BM_Rk4Period(benchmark::State& state) {
  const auto p = params_from_k(17);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_ode(p, {0.0, 1.0}, 0.0, kTwoPi, kDefaultStep));
}
BENCHMARK(BM_Rk4Period)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
