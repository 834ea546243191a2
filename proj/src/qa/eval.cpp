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

#include "qa/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "flow/metrics.hpp"
#include "qa/error.hpp"
#include "qa/text.hpp"

namespace qa {

namespace {

using ojson = nlohmann::ordered_json;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{normalize_answer(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

double bag_f1(const std::vector<std::string>& pred, const std::vector<std::string>& gold) {
  if (pred.empty() && gold.empty()) return 1.0;
  if (pred.empty() || gold.empty()) return 0.0;
  std::map<std::string, int> counts;
  for (const auto& w : gold) ++counts[w];
  int common = 0;
  for (const auto& w : pred) {
    auto it = counts.find(w);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  if (common == 0) return 0.0;
  const double p = static_cast<double>(common) / static_cast<double>(pred.size());
  const double r = static_cast<double>(common) / static_cast<double>(gold.size());
  return 2.0 * p * r / (p + r);
}

std::vector<double> candidates(std::span<const ScoredResult> results) {
  if (results.empty()) throw Error(Errc::EmptyResults, "no results to sweep");
  if (std::none_of(results.begin(), results.end(), [](const ScoredResult& r) { return r.has_gold; }))
    throw Error(Errc::NoGold, "no example has a gold answer");
  std::vector<double> c;
  for (const auto& r : results) c.push_back(r.score);
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  c.push_back(kInf);
  return c;
}

CurvePoint evaluate_at(std::span<const ScoredResult> results, double tau, std::size_t n_gold) {
  double sum = 0.0;
  std::size_t answered = 0;
  for (const auto& r : results) {
    if (r.score >= tau) {
      sum += r.f1_if_answered;
      ++answered;
    }
  }
  CurvePoint pt;
  pt.threshold = tau;
  pt.precision = answered ? sum / static_cast<double>(answered) : 0.0;
  pt.recall = sum / static_cast<double>(n_gold);
  pt.f1 = pt.precision + pt.recall > 0.0 ? 2.0 * pt.precision * pt.recall / (pt.precision + pt.recall) : 0.0;
  return pt;
}

ThresholdChoice pick(std::vector<CurvePoint> curve) {
  ThresholdChoice out;
  out.best_f1 = -1.0;
  for (const auto& pt : curve) {
    if (pt.f1 >= out.best_f1) {
      out.best_f1 = pt.f1;
      out.threshold = pt.threshold;
    }
  }
  out.curve = std::move(curve);
  return out;
}

std::size_t gold_count(std::span<const ScoredResult> results) {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [](const ScoredResult& r) { return r.has_gold; }));
}

ojson number_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

std::string require_string(const nlohmann::json& j, const char* key, int line) {
  if (!j.contains(key) || !j[key].is_string())
    throw Error(Errc::MalformedExample, "line " + std::to_string(line) + ": missing string field \"" + key + "\"");
  return j[key].get<std::string>();
}

}  // namespace

double token_f1(std::string_view prediction, const std::vector<std::string>& golds) {
  const auto pred = words(prediction);
  if (golds.empty()) return bag_f1(pred, {});
  double best = 0.0;
  for (const auto& g : golds) best = std::max(best, bag_f1(pred, words(g)));
  return best;
}

bool exact_match(std::string_view prediction, const std::vector<std::string>& golds) {
  const std::string p = normalize_answer(prediction);
  if (golds.empty()) return p.empty();
  return std::any_of(golds.begin(), golds.end(), [&](const std::string& g) { return normalize_answer(g) == p; });
}

ThresholdChoice optimal_threshold(std::span<const ScoredResult> results) {
  const auto c = candidates(results);
  const std::size_t n_gold = gold_count(results);
  std::vector<CurvePoint> curve;
  curve.reserve(c.size());
  for (double tau : c) curve.push_back(evaluate_at(results, tau, n_gold));
  return pick(std::move(curve));
}

ThresholdChoice optimal_threshold_parallel(std::span<const ScoredResult> results) {
  const auto c = candidates(results);
  const std::size_t n_gold = gold_count(results);
  std::vector<CurvePoint> curve(c.size());
  const auto n = static_cast<std::int64_t>(c.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) curve[i] = evaluate_at(results, c[i], n_gold);
  return pick(std::move(curve));
}

std::vector<EvalExample> load_examples(std::istream& jsonl) {
  std::vector<EvalExample> out;
  std::string line;
  int line_no = 0;
  while (std::getline(jsonl, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
      throw Error(Errc::MalformedExample, "line " + std::to_string(line_no) + ": not a JSON object");
    EvalExample ex;
    ex.line = line_no;
    ex.question = require_string(j, "question", line_no);
    ex.corpus_id = require_string(j, "corpus_id", line_no);
    if (ex.question.empty())
      throw Error(Errc::MalformedExample, "line " + std::to_string(line_no) + ": empty question");
    if (!j.contains("gold_answers") || !j["gold_answers"].is_array())
      throw Error(Errc::MalformedExample, "line " + std::to_string(line_no) + ": gold_answers must be an array");
    for (const auto& g : j["gold_answers"]) {
      if (!g.is_string())
        throw Error(Errc::MalformedExample, "line " + std::to_string(line_no) + ": gold answers must be strings");
      ex.gold_answers.push_back(g.get<std::string>());
    }
    out.push_back(std::move(ex));
  }
  if (out.empty()) throw Error(Errc::EmptyResults, "example file holds no examples");
  return out;
}

EvalReport summarize(std::vector<ExampleOutcome> outcomes, unsigned concurrency) {
  EvalReport rep;
  rep.concurrency = concurrency;
  std::vector<ScoredResult> scored;
  std::vector<double> latencies;
  for (const auto& o : outcomes) {
    scored.push_back(ScoredResult{o.score, o.f1, !o.example.gold_answers.empty()});
    latencies.push_back(o.latency_ms);
    if (!o.error.empty()) ++rep.errors;
  }
  rep.threshold = optimal_threshold(scored);
  std::size_t n_gold = 0, em = 0;
  for (const auto& o : outcomes) {
    if (!o.example.gold_answers.empty()) ++n_gold;
    if (o.score >= rep.threshold.threshold && o.em) ++em;
  }
  rep.exact_match = static_cast<double>(em) / static_cast<double>(n_gold);
  rep.p50_ms = flow::percentile(latencies, 50);
  rep.p95_ms = flow::percentile(latencies, 95);
  rep.outcomes = std::move(outcomes);
  return rep;
}

EvalReport run_eval(const EvalConfig& config, const std::vector<EvalExample>& examples) {
  using clock = std::chrono::steady_clock;
  {
    httplib::Client probe(config.gateway);
    probe.set_connection_timeout(std::chrono::seconds(2));
    if (!probe.Get("/healthz")) throw Error(Errc::GatewayUnreachable, config.gateway);
  }

  std::vector<ExampleOutcome> outcomes(examples.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> unreachable{false};
  const std::string path = "/entry/" + config.entry;

  auto worker = [&] {
    httplib::Client cli(config.gateway);
    cli.set_connection_timeout(config.timeout);
    cli.set_read_timeout(config.timeout);
    cli.set_write_timeout(config.timeout);
    for (std::size_t i = next++; i < examples.size() && !unreachable; i = next++) {
      const EvalExample& ex = examples[i];
      ojson body;
      body["input"]["question"] = ex.question;
      body["input"]["corpus_id"] = ex.corpus_id;
      body["input"]["k"] = config.k;
      body["input"]["threshold"] = 0.0;

      ExampleOutcome& out = outcomes[i];
      out.example = ex;
      const auto t0 = clock::now();
      auto res = cli.Post(path, body.dump(), "application/json");
      out.latency_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
      if (!res) {
        unreachable = true;
        return;
      }
      auto reply = nlohmann::json::parse(res->body, nullptr, false);
      if (res->status != 200) {
        out.error = (!reply.is_discarded() && reply.contains("error")) ? reply["error"].value("code", "HTTP_ERROR")
                                                                         : "HTTP_" + std::to_string(res->status);
      } else if (!reply.is_discarded()) {
        const auto& answers = reply["output"]["answers"];
        if (!answers.empty()) {
          out.prediction = answers[0]["text"].get<std::string>();
          out.score = answers[0]["score"].get<double>();
        }
      }
      out.f1 = token_f1(out.prediction, ex.gold_answers);
      out.em = exact_match(out.prediction, ex.gold_answers);
      if (out.prediction.empty() && out.score == 0.0) {
        out.f1 = 0.0;
        out.em = false;
      }
    }
  };

  const unsigned c = std::max(1u, config.concurrency);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < c; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (unreachable) throw Error(Errc::GatewayUnreachable, config.gateway);
  return summarize(std::move(outcomes), c);
}

std::string report_json(const EvalReport& r) {
  ojson j;
  j["examples"] = r.outcomes.size();
  j["errors"] = r.errors;
  j["threshold"] = number_or_null(r.threshold.threshold);
  j["best_f1"] = r.threshold.best_f1;
  j["exact_match"] = r.exact_match;
  j["p50_ms"] = r.p50_ms;
  j["p95_ms"] = r.p95_ms;
  j["concurrency"] = r.concurrency;
  j["latency_mode"] = r.concurrency > 1 ? "under_load" : "sequential";
  ojson curve = ojson::array();
  for (const auto& pt : r.threshold.curve) {
    ojson p;
    p["threshold"] = number_or_null(pt.threshold);
    p["precision"] = pt.precision;
    p["recall"] = pt.recall;
    p["f1"] = pt.f1;
    curve.push_back(std::move(p));
  }
  j["curve"] = std::move(curve);
  return j.dump(2) + "\n";
}

std::string report_table(const EvalReport& r) {
  const char* mode = r.concurrency > 1 ? " (under load)" : "";
  char buf[512];
  std::string out;
  std::snprintf(buf, sizeof buf, "%-10s %8s %8s %10s %10s\n", "examples", "F1", "EM", "T_50 (s)", "T_95 (s)");
  out += buf;
  std::snprintf(buf, sizeof buf, "%-10zu %8.3f %8.3f %10.3f %10.3f\n", r.outcomes.size(), r.threshold.best_f1,
                r.exact_match, r.p50_ms / 1000.0, r.p95_ms / 1000.0);
  out += buf;
  if (std::isfinite(r.threshold.threshold))
    std::snprintf(buf, sizeof buf, "threshold %.6g%s\n", r.threshold.threshold, mode);
  else
    std::snprintf(buf, sizeof buf, "threshold +inf%s\n", mode);
  out += buf;
  return out;
}

std::string dump_jsonl(const EvalReport& r) {
  std::string out;
  for (const auto& o : r.outcomes) {
    ojson j;
    j["line"] = o.example.line;
    j["question"] = o.example.question;
    j["corpus_id"] = o.example.corpus_id;
    j["gold_answers"] = o.example.gold_answers;
    j["prediction"] = o.prediction;
    j["score"] = o.score;
    j["f1"] = o.f1;
    j["em"] = o.em;
    j["latency_ms"] = o.latency_ms;
    j["error"] = o.error;
    out += j.dump() + "\n";
  }
  return out;
}

std::vector<ExampleOutcome> parse_dump(std::istream& jsonl) {
  std::vector<ExampleOutcome> out;
  std::string line;
  while (std::getline(jsonl, line)) {
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line);
    ExampleOutcome o;
    o.example.line = j.at("line").get<int>();
    o.example.question = j.at("question").get<std::string>();
    o.example.corpus_id = j.at("corpus_id").get<std::string>();
    o.example.gold_answers = j.at("gold_answers").get<std::vector<std::string>>();
    o.prediction = j.at("prediction").get<std::string>();
    o.score = j.at("score").get<double>();
    o.f1 = j.at("f1").get<double>();
    o.em = j.at("em").get<bool>();
    o.latency_ms = j.at("latency_ms").get<double>();
    o.error = j.at("error").get<std::string>();
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace qa
