// Copyright 2026 The flowpipe Authors
//
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

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <map>
#include <random>
#include <string>
#include <vector>

#include "qa/bm25.hpp"
#include "qa/eval.hpp"

namespace {

// Zipf-ish synthetic corpus: a few very common terms and a long tail.
const qa::InvertedIndex& corpus(std::size_t n_docs) {
  static std::map<std::size_t, qa::InvertedIndex> cache;
  auto it = cache.find(n_docs);
  if (it != cache.end()) return it->second;
  std::mt19937 rng(42);
  std::vector<std::string> vocab;
  for (int i = 0; i < 5000; ++i) vocab.push_back("w" + std::to_string(i));
  std::vector<double> weights;
  for (int i = 0; i < 5000; ++i) weights.push_back(1.0 / (i + 1));
  std::discrete_distribution<int> term(weights.begin(), weights.end());
  std::uniform_int_distribution<int> len(20, 120);
  qa::InvertedIndex idx("bench");
  for (std::size_t d = 0; d < n_docs; ++d) {
    std::string text;
    for (int t = len(rng); t > 0; --t) text += vocab[term(rng)] + " ";
    idx.add({"d" + std::to_string(d), "", std::move(text)});
  }
  return cache.emplace(n_docs, std::move(idx)).first->second;
}

const std::vector<std::string> kQuery{"w3", "w17", "w250", "w1200"};

void BM_ScoreAllSerial(benchmark::State& state) {
  const auto& idx = corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qa::score_all_serial(idx, {}, kQuery));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ScoreAllParallel(benchmark::State& state) {
  const auto& idx = corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qa::score_all_parallel(idx, {}, kQuery));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

std::vector<qa::ScoredResult> results(std::size_t n) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<qa::ScoredResult> rs;
  for (std::size_t i = 0; i < n; ++i) rs.push_back({u(rng), u(rng), i == 0 || u(rng) < 0.8});
  return rs;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto rs = results(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qa::optimal_threshold(rs));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto rs = results(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qa::optimal_threshold_parallel(rs));
}

}  // namespace

BENCHMARK(BM_ScoreAllSerial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScoreAllParallel)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
