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

#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qa {

/// Bag-of-tokens F1 over normalize_answer() tokens, max over golds. An empty
/// gold list stands for the single gold "". Two empty token bags score 1.
double token_f1(std::string_view prediction, const std::vector<std::string>& golds);
bool exact_match(std::string_view prediction, const std::vector<std::string>& golds);

struct ScoredResult {
  double score = 0.0;           // top answer score, 0 when nothing was returned
  double f1_if_answered = 0.0;
  bool has_gold = false;
};

struct CurvePoint {
  double threshold = 0.0;  // +inf answers nothing
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct ThresholdChoice {
  double threshold = 0.0;
  double best_f1 = 0.0;
  std::vector<CurvePoint> curve;  // ascending threshold, +inf last
};

/// Sweeps every distinct score plus +inf. At threshold t an example is
/// answered iff score >= t; precision = sum f1 / #answered, recall =
/// sum f1 / #has_gold. The best F1 wins, ties going to the larger t.
/// Throws EmptyResults and NoGold.
ThresholdChoice optimal_threshold(std::span<const ScoredResult> results);
/// Same sweep with candidates split across OpenMP threads; identical output.
ThresholdChoice optimal_threshold_parallel(std::span<const ScoredResult> results);

struct EvalExample {
  std::string question;
  std::vector<std::string> gold_answers;  // empty: unanswerable
  std::string corpus_id;
  int line = 0;
};

/// Throws MalformedExample naming the 1-based line; EmptyResults when the
/// stream holds no example.
std::vector<EvalExample> load_examples(std::istream& jsonl);

struct ExampleOutcome {
  EvalExample example;
  std::string prediction;
  double score = 0.0;
  double f1 = 0.0;
  bool em = false;
  double latency_ms = 0.0;
  std::string error;  // gateway error code; empty on success
};

struct EvalReport {
  std::vector<ExampleOutcome> outcomes;
  ThresholdChoice threshold;
  double exact_match = 0.0;  // sum of em over answered / #has_gold, at the chosen threshold
  double p50_ms = 0.0;
  double p95_ms = 0.0;
  std::size_t errors = 0;
  unsigned concurrency = 1;
};

/// Pure summary of recorded outcomes; run_eval's report is exactly this.
EvalReport summarize(std::vector<ExampleOutcome> outcomes, unsigned concurrency);

struct EvalConfig {
  std::string gateway;  // e.g. http://127.0.0.1:8080
  std::string entry = "ask";
  std::int64_t k = 3;
  unsigned concurrency = 1;
  std::chrono::milliseconds timeout{30000};
};

/// Posts each example to the gateway and records the top answer. Throws
/// GatewayUnreachable when the gateway cannot be reached.
EvalReport run_eval(const EvalConfig& config, const std::vector<EvalExample>& examples);

std::string report_json(const EvalReport& report);
/// Aligned text table: F1, T_50, T_95 (seconds).
std::string report_table(const EvalReport& report);
/// One JSON line per example; enough to rebuild the report with summarize().
std::string dump_jsonl(const EvalReport& report);
std::vector<ExampleOutcome> parse_dump(std::istream& jsonl);

}  // namespace qa
