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

#include "flow/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "flow/error.hpp"

namespace flow {

double percentile(std::span<const double> samples, double k) {
  if (samples.empty()) throw Error(Errc::EmptySamples, "percentile of an empty sample set");
  if (!(k > 0 && k <= 100)) throw std::invalid_argument("percentile rank must be in (0, 100]");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  // k * n is exact for integral k, so the division rounds only once.
  auto rank = static_cast<std::size_t>(std::ceil(k * n / 100.0));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

MetricsRegistry::MetricsRegistry(std::vector<std::string> nodes, std::vector<std::string> entries) {
  for (auto& n : nodes) nodes_.push_back(NodeStats{std::move(n), {}});
  for (auto& e : entries) entries_.push_back(EntryStats{std::move(e), 0, 0});
}

MetricsRegistry::NodeStats& MetricsRegistry::node_slot(std::string_view node) {
  for (auto& n : nodes_)
    if (n.name == node) return n;
  nodes_.push_back(NodeStats{std::string(node), {}});
  return nodes_.back();
}

void MetricsRegistry::add_sample(std::string_view node, LatencySample sample) {
  std::lock_guard lock(mu_);
  node_slot(node).samples.push_back(sample);
}

void MetricsRegistry::record_request(std::string_view entry, bool failed) {
  std::lock_guard lock(mu_);
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const EntryStats& e) { return e.name == entry; });
  if (it == entries_.end()) {
    entries_.push_back(EntryStats{std::string(entry), 0, 0});
    it = entries_.end() - 1;
  }
  ++it->requests;
  if (failed) ++it->errors;
}

MetricsRegistry::Snapshot MetricsRegistry::snapshot() const {
  std::lock_guard lock(mu_);
  return Snapshot{nodes_, entries_};
}

void record_metrics(MetricsRegistry& registry, const ExecutionTrace& trace) {
  for (const auto& r : trace.records) registry.add_sample(r.node, LatencySample{r.duration_ms, r.status});
}

std::string metrics_report(const MetricsRegistry& registry) {
  using ojson = nlohmann::ordered_json;
  auto snap = registry.snapshot();
  ojson doc = ojson::object();
  ojson nodes = ojson::object();
  for (const auto& n : snap.nodes) {
    std::vector<double> d;
    d.reserve(n.samples.size());
    std::size_t errors = 0;
    for (const auto& s : n.samples) {
      d.push_back(s.duration_ms);
      if (s.status != InvocationStatus::Ok) ++errors;
    }
    ojson o = ojson::object();
    o["count"] = d.size();
    o["errors"] = errors;
    o["p50_ms"] = d.empty() ? ojson(nullptr) : ojson(percentile(d, 50));
    o["p95_ms"] = d.empty() ? ojson(nullptr) : ojson(percentile(d, 95));
    nodes[n.name] = std::move(o);
  }
  doc["nodes"] = std::move(nodes);
  ojson entries = ojson::object();
  for (const auto& e : snap.entries) {
    ojson o = ojson::object();
    o["requests"] = e.requests;
    o["errors"] = e.errors;
    entries[e.name] = std::move(o);
  }
  doc["entries"] = std::move(entries);
  return doc.dump();
}

}  // namespace flow
