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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "flow/idl.hpp"

namespace flow {

struct NodeDecl {
  std::string name;
  std::string service;
  std::string address;  // host:port
  int timeout_ms = 5000;
  bool parallel = false;
  std::optional<std::string> image;
  int line = 0;  // declaration line, not part of equality

  std::string host() const;
  int port() const;

  friend bool operator==(const NodeDecl& a, const NodeDecl& b) {
    return a.name == b.name && a.service == b.service && a.address == b.address &&
           a.timeout_ms == b.timeout_ms && a.parallel == b.parallel && a.image == b.image;
  }
};

struct EntryDecl {
  std::string name;
  std::string input;
  std::string output;

  friend bool operator==(const EntryDecl&, const EntryDecl&) = default;
};

/// One side of a mapping. Sources are entry inputs, node outputs or JSON
/// constants; sinks are node inputs or entry outputs.
struct Endpoint {
  enum class Kind { EntryInput, EntryOutput, NodeInput, NodeOutput, Constant };

  Kind kind = Kind::Constant;
  std::string owner;  // entry or node name
  FieldPath path;
  nlohmann::json constant;  // Kind::Constant only

  bool is_entry() const noexcept { return kind == Kind::EntryInput || kind == Kind::EntryOutput; }
  bool is_node() const noexcept { return kind == Kind::NodeInput || kind == Kind::NodeOutput; }

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

std::string to_string(const Endpoint& e);

struct Mapping {
  Endpoint source;
  Endpoint sink;
  bool gather = false;  // sink written as `...[]`: append one element per frame
  int line = 0;

  friend bool operator==(const Mapping& a, const Mapping& b) {
    return a.source == b.source && a.sink == b.sink && a.gather == b.gather;
  }
};

std::string to_string(const Mapping& m);

struct DeployConfig {
  std::optional<std::string> registry;
  int gateway_port = 8080;

  friend bool operator==(const DeployConfig&, const DeployConfig&) = default;
};

struct FlowSpec {
  std::vector<NodeDecl> nodes;
  std::vector<EntryDecl> entries;
  std::vector<Mapping> mappings;
  DeployConfig deploy;

  const NodeDecl* node(std::string_view name) const;
  const EntryDecl* entry(std::string_view name) const;

  friend bool operator==(const FlowSpec&, const FlowSpec&) = default;
};

/// Parses the stanza format:
///
///   [node NAME]   service, address, timeout_ms, parallel, image
///   [entry NAME]  input, output
///   [map]         SOURCE -> SINK   |   const JSON -> SINK
///   [deploy]      registry, gateway_port
///
/// Field-level typing of mapping paths is left to compile().
FlowSpec parse_flow(std::string_view source, const SchemaSet& schemas);

std::string print_flow(const FlowSpec& spec);

}  // namespace flow
