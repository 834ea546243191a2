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

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <thread>

#include <json.hpp>

#include "flow/error.hpp"
#include "flow/metrics.hpp"
#include "oracles.hpp"

using namespace flow;

TEST_CASE("nearest-rank examples") {
  std::vector<double> xs{15, 20, 35, 40, 50};
  CHECK(percentile(xs, 5) == 15);
  CHECK(percentile(xs, 30) == 20);
  CHECK(percentile(xs, 40) == 20);
  CHECK(percentile(xs, 50) == 35);
  CHECK(percentile(xs, 100) == 50);
  std::vector<double> one{3.5};
  CHECK(percentile(one, 1) == 3.5);
  CHECK(percentile(one, 100) == 3.5);
  std::vector<double> unsorted{9, 1, 5, 3, 7};
  CHECK(percentile(unsorted, 50) == 5);
}

TEST_CASE("percentile domain") {
  std::vector<double> empty;
  try {
    percentile(empty, 50);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EmptySamples);
  }
  std::vector<double> xs{1, 2};
  CHECK_THROWS(percentile(xs, 0));
  CHECK_THROWS(percentile(xs, 101));
}

TEST_CASE("percentile agrees with the rank oracle on random samples") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 10000; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 200)(rng);
    std::vector<double> xs(n);
    // Few distinct values so ties are common.
    std::uniform_int_distribution<int> v(0, 40);
    for (auto& x : xs) x = v(rng) * 0.5;
    const int k = std::uniform_int_distribution<int>(1, 100)(rng);
    REQUIRE(percentile(xs, k) == oracle::percentile(xs, k));
  }
}

TEST_CASE("percentile is monotone in k") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> d(10, 3);
  std::vector<double> xs(137);
  for (auto& x : xs) x = d(rng);
  for (int k = 1; k < 100; ++k) CHECK(percentile(xs, k) <= percentile(xs, k + 1));
}

TEST_CASE("report over injected samples") {
  MetricsRegistry reg({"reader", "idle"}, {"ask"});
  for (int i = 1; i <= 10; ++i) reg.add_sample("reader", {10.0 * i, InvocationStatus::Ok});
  reg.add_sample("late", {1.0, InvocationStatus::Timeout});
  reg.record_request("ask", false);
  reg.record_request("ask", true);
  auto j = nlohmann::json::parse(metrics_report(reg));
  CHECK(j["nodes"]["reader"]["count"] == 10);
  CHECK(j["nodes"]["reader"]["errors"] == 0);
  CHECK(j["nodes"]["reader"]["p50_ms"] == 50.0);
  CHECK(j["nodes"]["reader"]["p95_ms"] == 100.0);
  CHECK(j["nodes"]["idle"]["count"] == 0);
  CHECK(j["nodes"]["idle"]["p50_ms"].is_null());
  CHECK(j["nodes"]["late"]["errors"] == 1);
  CHECK(j["entries"]["ask"]["requests"] == 2);
  CHECK(j["entries"]["ask"]["errors"] == 1);
  // Declared nodes first, in declaration order.
  const std::string raw = metrics_report(reg);
  CHECK(raw.find("\"reader\"") < raw.find("\"idle\""));
  CHECK(raw.find("\"idle\"") < raw.find("\"late\""));
}

TEST_CASE("record_metrics appends one sample per invocation") {
  MetricsRegistry reg;
  ExecutionTrace t;
  t.records.push_back({"a", -1, 0, 2.0, InvocationStatus::Ok, "", {}, {}, false});
  t.records.push_back({"b", 0, 2, 3.0, InvocationStatus::Ok, "", {}, {}, false});
  t.records.push_back({"b", 1, 2, 4.0, InvocationStatus::NodeError, "x", {}, {}, false});
  record_metrics(reg, t);
  auto snap = reg.snapshot();
  REQUIRE(snap.nodes.size() == 2);
  CHECK(snap.nodes[0].samples.size() == 1);
  CHECK(snap.nodes[1].samples.size() == 2);
  CHECK(snap.nodes[1].samples[1].status == InvocationStatus::NodeError);
}

TEST_CASE("concurrent writers lose nothing") {
  MetricsRegistry reg({"n"}, {"e"});
  std::vector<std::thread> ts;
  for (int t = 0; t < 8; ++t)
    ts.emplace_back([&] {
      for (int i = 0; i < 500; ++i) {
        reg.add_sample("n", {1.0, InvocationStatus::Ok});
        reg.record_request("e", i % 2 == 0);
      }
    });
  for (auto& t : ts) t.join();
  auto j = nlohmann::json::parse(metrics_report(reg));
  CHECK(j["nodes"]["n"]["count"] == 4000);
  CHECK(j["entries"]["e"]["requests"] == 4000);
  CHECK(j["entries"]["e"]["errors"] == 2000);
}
