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

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "flow/flow_graph.hpp"
#include "flow/flow_spec.hpp"
#include "flow/gateway.hpp"
#include "flow/node_kit.hpp"
#include "flow/runtime.hpp"
#include "qa/bm25.hpp"
#include "qa/reader.hpp"

namespace qa {

struct StackOptions {
  /// Overrides the flow file's `parallel` flag on the reader node.
  std::optional<bool> reader_parallel;
  /// Per-node timeout overrides.
  std::map<std::string, int> timeout_ms;
  /// Replacement handlers by node name; others use the demo handlers.
  std::map<std::string, flow::NodeHandler> handlers;
  int max_span_tokens = kDefaultMaxSpanTokens;
  std::size_t node_workers = 16;
  /// Gateway port; unset starts no gateway, 0 picks a free port.
  std::optional<int> gateway_port;
  std::string host = "127.0.0.1";
};

/// The demo pipeline in one process: every node served over HTTP on a free
/// port, the flow recompiled against those ports, and optionally a gateway.
class QaStack {
 public:
  QaStack(std::shared_ptr<const CorpusSet> corpora, StackOptions options = {});
  ~QaStack();

  const flow::FlowSpec& spec() const noexcept { return spec_; }
  std::shared_ptr<const flow::FlowGraph> graph() const noexcept { return graph_; }
  const flow::Orchestrator& orchestrator() const noexcept { return *orchestrator_; }
  flow::Gateway* gateway() noexcept { return gateway_.get(); }
  flow::NodeServer& node(const std::string& name) { return *servers_.at(name); }
  std::string gateway_url() const;

  /// Stops the gateway, then every node.
  void stop();

 private:
  flow::FlowSpec spec_;
  std::map<std::string, std::unique_ptr<flow::NodeServer>> servers_;
  std::shared_ptr<const flow::FlowGraph> graph_;
  std::unique_ptr<flow::Orchestrator> orchestrator_;
  std::unique_ptr<flow::Gateway> gateway_;
};

}  // namespace qa
