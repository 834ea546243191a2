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

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "flow/flow_spec.hpp"
#include "flow/idl.hpp"

namespace flow {

/// Execution frame of a node: the root frame (runs once per request) or a
/// fan-out region (runs once per element of the region's origin list).
struct Frame {
  int region = -1;

  bool is_root() const noexcept { return region < 0; }
  friend bool operator==(const Frame&, const Frame&) = default;
};

struct TypedEdge {
  Mapping mapping;
  FieldKind element_kind;    // kind of the value moved per delivery
  bool element_list = false;  // that value is itself a list
  Frame source_frame;         // region when the source is per-element
  int source_node = -1;       // index into FlowGraph::nodes, -1 for entry/const
  int sink_node = -1;
};

struct FanoutRegion {
  int id = 0;
  Endpoint origin;  // the repeated field being fanned over (path ends at it)
  std::vector<std::string> members;
  std::vector<std::string> gather_sinks;
};

struct GraphNode {
  NodeDecl decl;
  ServiceSchema service;
  Frame frame;
  std::vector<std::size_t> inputs;  // edge indices feeding this node
  std::vector<std::string> chain;   // upstream path from the entry, ending at this node
  int entry = -1;                   // owning entry index, -1 when never scheduled
};

struct GraphEntry {
  EntryDecl decl;
  std::vector<std::size_t> plan;     // node indices in topological order
  std::vector<std::size_t> outputs;  // edge indices feeding the entry output
};

struct CompileOptions {
  /// Nodes not reachable from any entry input are reported as errors.
  bool unreachable_is_error = true;
};

/// Compiled, validated dataflow graph. Immutable; share freely across
/// concurrent executions.
struct FlowGraph {
  std::shared_ptr<const SchemaSet> schemas;
  std::vector<GraphNode> nodes;  // declaration order
  std::vector<TypedEdge> edges;  // mapping order
  std::vector<FanoutRegion> regions;
  std::vector<std::size_t> topo_order;
  std::vector<GraphEntry> entries;
  DeployConfig deploy;

  const GraphNode* node(std::string_view name) const;
  const GraphEntry* entry(std::string_view name) const;
};

FlowGraph compile(std::shared_ptr<const SchemaSet> schemas, const FlowSpec& spec, CompileOptions options = {});

/// Throws UnknownNode.
Frame frame_of(const FlowGraph& graph, std::string_view node);

/// Canonical JSON description: nodes, edges, regions, topo_order, entries.
std::string describe(const FlowGraph& graph);

}  // namespace flow
