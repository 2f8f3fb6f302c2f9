// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "mqft/oracle.hpp"
#include "mqft/pipeline.hpp"
#include "mqft/rng.hpp"
#include "mqft/stats.hpp"

namespace {

void BM_IdealSerialTransform(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto rng = mqft::make_stream(1, 0);
  const auto word = mqft::PhaseWord::random(n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mqft::run_serial_mqft(word));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n));
}
BENCHMARK(BM_IdealSerialTransform)->Arg(255)->Arg(1024)->Arg(4096);

void BM_NoisySerialTransform(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto rng = mqft::make_stream(2, 0);
  const auto word = mqft::PhaseWord::random(n, rng);
  auto noise = mqft::NoiseParams::paper_profile();
  for (auto _ : state) {
    benchmark::DoNotOptimize(mqft::run_serial_mqft(word, noise, rng));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n));
}
BENCHMARK(BM_NoisySerialTransform)->Arg(255)->Arg(1024);

void BM_MajorityTransform(benchmark::State& state) {
  auto rng = mqft::make_stream(3, 0);
  const auto word = mqft::PhaseWord::random(1024, rng);
  mqft::NoiseParams noise;
  noise.p_override = 0.07;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mqft::run_serial_mqft(word, noise, rng, 10));
  }
}
BENCHMARK(BM_MajorityTransform);

void BM_OracleDistribution(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto circuit = mqft::build_qft_circuit(n);
  const auto input = mqft::product_input_state(n, 1.0 / 3.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mqft::outcome_distribution(circuit, input));
  }
}
BENCHMARK(BM_OracleDistribution)->Arg(4)->Arg(8);

void BM_ConfidenceBounds(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        mqft::confidence_bounds(1024, 24, 23, 1, 30, 1024, 0.05));
  }
}
BENCHMARK(BM_ConfidenceBounds);

}  // namespace

BENCHMARK_MAIN();
