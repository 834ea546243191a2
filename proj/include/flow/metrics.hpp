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

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flow/trace.hpp"

namespace flow {

/// Nearest-rank percentile: the ceil(k/100 * n)-th smallest sample.
/// k must lie in (0, 100]. Throws EmptySamples.
double percentile(std::span<const double> samples, double k);

struct LatencySample {
  double duration_ms = 0;
  InvocationStatus status = InvocationStatus::Ok;
};

/// Process-wide latency log. Append-only; every accessor takes the lock, so
/// readers always see a consistent snapshot.
class MetricsRegistry {
 public:
  MetricsRegistry() = default;
  MetricsRegistry(std::vector<std::string> nodes, std::vector<std::string> entries);

  void add_sample(std::string_view node, LatencySample sample);
  void record_request(std::string_view entry, bool failed);

  struct NodeStats {
    std::string name;
    std::vector<LatencySample> samples;
  };
  struct EntryStats {
    std::string name;
    std::uint64_t requests = 0;
    std::uint64_t errors = 0;
  };
  struct Snapshot {
    std::vector<NodeStats> nodes;
    std::vector<EntryStats> entries;
  };

  Snapshot snapshot() const;

 private:
  NodeStats& node_slot(std::string_view node);

  mutable std::mutex mu_;
  std::vector<NodeStats> nodes_;
  std::vector<EntryStats> entries_;
};

/// Appends one sample per invocation record, tagged with its status.
void record_metrics(MetricsRegistry& registry, const ExecutionTrace& trace);

/// JSON: {"nodes":{NAME:{"count","errors","p50_ms","p95_ms"}},"entries":{NAME:{"requests","errors"}}}.
/// Percentiles are null for nodes without samples.
std::string metrics_report(const MetricsRegistry& registry);

}  // namespace flow
