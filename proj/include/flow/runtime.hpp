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
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flow/flow_graph.hpp"
#include "flow/trace.hpp"
#include "flow/transport.hpp"
#include "flow/value.hpp"

namespace flow {

enum class OrchestratorErrc { Timeout, NodeError, Transport, BadRequest };

std::string_view to_string(OrchestratorErrc c) noexcept;

struct OrchestratorError {
  OrchestratorErrc code = OrchestratorErrc::BadRequest;
  std::string node;  // empty for request-level errors
  std::string message;
  std::vector<std::string> chain;  // entry-to-failure path, ending at `node`
};

struct ExecuteOptions {
  bool debug = false;
  std::size_t max_fanout = 64;
};

struct ExecutionResult {
  std::optional<Value> output;
  std::optional<OrchestratorError> error;
  ExecutionTrace trace;

  bool ok() const noexcept { return output.has_value(); }
};

/// Outcome of one node call.
struct Invocation {
  InvocationRecord record;
  std::optional<Value> output;
  std::optional<OrchestratorError> error;
};

/// Encodes `input`, posts it to the node's /invoke endpoint and decodes the
/// reply against the service output schema. `origin` anchors start offsets.
Invocation invoke_node(Transport& transport, const SchemaSet& schemas, const GraphNode& node, const Value& input,
                       std::chrono::steady_clock::time_point origin, bool debug);

/// Result of running one node over every element frame of a region.
struct FanoutResult {
  std::vector<std::optional<Invocation>> frames;  // unset when never started or abandoned
  std::optional<std::size_t> failed;             // earliest failing frame index
};

/// Runs `call(i)` for i in [0, n). Sequential mode stops at the first failure.
/// Parallel mode starts every frame at once, reports the lowest-index failure
/// and waits at most `grace` for siblings still in flight after it.
/// `call` must own everything it touches: abandoned calls outlive this function.
FanoutResult run_fanout(std::size_t n, bool parallel, std::function<Invocation(std::size_t)> call,
                        std::chrono::milliseconds grace = std::chrono::seconds(1));

class Orchestrator {
 public:
  explicit Orchestrator(std::shared_ptr<const FlowGraph> graph,
                        std::shared_ptr<Transport> transport = std::make_shared<HttpTransport>());

  ExecutionResult execute(std::string_view entry, const Value& input, const ExecuteOptions& options = {}) const;

  /// Decodes a wire body against the entry input first; decode failures are
  /// reported as BAD_REQUEST without calling any node.
  ExecutionResult execute_wire(std::string_view entry, std::string_view input_json,
                               const ExecuteOptions& options = {}) const;

  const FlowGraph& graph() const noexcept { return *graph_; }

 private:
  std::shared_ptr<const FlowGraph> graph_;
  std::shared_ptr<Transport> transport_;
};

}  // namespace flow
