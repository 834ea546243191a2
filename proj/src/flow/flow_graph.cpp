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

#include "flow/flow_graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include <json.hpp>

namespace flow {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(Errc code, const std::string& msg, int line = 0) {
  if (line > 0) throw Error(code, msg, SourcePos{line, 0});
  throw Error(code, msg);
}

std::string element_name(const FieldKind& kind, bool list) {
  return (list ? "repeated " : "") + kind.name();
}

bool constant_fits(const json& c, const FieldKind& kind, bool list) {
  if (list) {
    if (!c.is_array()) return false;
    return std::all_of(c.begin(), c.end(), [&](const json& item) { return constant_fits(item, kind, false); });
  }
  if (c.is_array() || !kind.is_scalar()) return false;
  switch (*kind.scalar) {
    case ScalarKind::String: return c.is_string();
    case ScalarKind::Bool: return c.is_boolean();
    case ScalarKind::Float64: return c.is_number();
    case ScalarKind::Int64:
      if (c.is_number_unsigned()) return c.get<std::uint64_t>() <= static_cast<std::uint64_t>(kMaxWireInt);
      if (c.is_number_integer()) {
        auto v = c.get<std::int64_t>();
        return v <= kMaxWireInt && v >= -kMaxWireInt;
      }
      return false;
  }
  return false;
}

class Compiler {
 public:
  Compiler(std::shared_ptr<const SchemaSet> schemas, const FlowSpec& spec, CompileOptions opts)
      : schemas_(std::move(schemas)), spec_(spec), opts_(opts) {
    g_.schemas = schemas_;
    g_.deploy = spec.deploy;
  }

  FlowGraph run() {
    for (const auto& n : spec_.nodes) {
      GraphNode gn;
      gn.decl = n;
      gn.service = schemas_->require_service(n.service);
      node_index_[n.name] = static_cast<int>(g_.nodes.size());
      g_.nodes.push_back(std::move(gn));
    }
    for (const auto& e : spec_.entries) {
      schemas_->require_message(e.input);
      schemas_->require_message(e.output);
      g_.entries.push_back(GraphEntry{e, {}, {}});
    }
    type_edges();
    check_coverage();
    check_cycles();
    topo_sort();
    assign_frames();
    assign_entries();
    build_chains();
    return std::move(g_);
  }

 private:
  int entry_index(const std::string& name) const {
    for (std::size_t i = 0; i < g_.entries.size(); ++i)
      if (g_.entries[i].decl.name == name) return static_cast<int>(i);
    return -1;
  }

  const std::string& message_of(const Endpoint& e) const {
    switch (e.kind) {
      case Endpoint::Kind::EntryInput: return g_.entries[entry_index(e.owner)].decl.input;
      case Endpoint::Kind::EntryOutput: return g_.entries[entry_index(e.owner)].decl.output;
      case Endpoint::Kind::NodeInput: return g_.nodes[node_index_.at(e.owner)].service.input;
      case Endpoint::Kind::NodeOutput: return g_.nodes[node_index_.at(e.owner)].service.output;
      case Endpoint::Kind::Constant: break;
    }
    throw std::logic_error("constant endpoint has no message");
  }

  PathType resolve(const Endpoint& e, int line) const {
    try {
      return type_at_path(*schemas_, message_of(e), e.path);
    } catch (const Error& err) {
      fail(err.code(), to_string(e) + ": " + err.detail(), line);
    }
  }

  void type_edges() {
    for (const auto& m : spec_.mappings) {
      TypedEdge edge;
      edge.mapping = m;
      PathType sink = resolve(m.sink, m.line);
      bool sink_list = sink.list;
      if (m.gather) {
        if (!sink.list)
          fail(Errc::TypeMismatch,
               to_string(m) + ": gather sink '" + to_string(m.sink) + "' is not a repeated field", m.line);
        sink_list = false;
      }
      edge.element_kind = sink.kind;
      edge.element_list = sink_list;

      if (m.source.kind == Endpoint::Kind::Constant) {
        if (!m.gather && !constant_fits(m.source.constant, sink.kind, sink_list))
          fail(Errc::TypeMismatch,
               to_string(m) + ": expected " + element_name(sink.kind, sink_list) + ", found constant " +
                   m.source.constant.dump(),
               m.line);
      } else {
        PathType src = resolve(m.source, m.line);
        if (src.traversals > 1)
          fail(Errc::NestedFanout, to_string(m) + ": source path traverses more than one '[]'", m.line);
        if (!(src.kind == sink.kind) || src.list != sink_list)
          fail(Errc::TypeMismatch,
               to_string(m) + ": expected " + element_name(sink.kind, sink_list) + ", found " +
                   element_name(src.kind, src.list),
               m.line);
        if (m.source.kind == Endpoint::Kind::NodeOutput) edge.source_node = node_index_.at(m.source.owner);
      }
      if (m.sink.kind == Endpoint::Kind::NodeInput) {
        edge.sink_node = node_index_.at(m.sink.owner);
        g_.nodes[edge.sink_node].inputs.push_back(g_.edges.size());
      } else {
        g_.entries[entry_index(m.sink.owner)].outputs.push_back(g_.edges.size());
      }
      g_.edges.push_back(std::move(edge));
    }
  }

  // Every field of `msg` must be bound exactly once, either directly or by
  // binding all of its subfields.
  void cover(const MessageSchema& msg, const std::vector<std::pair<FieldPath, int>>& bound, const std::string& prefix,
             const std::string& owner, bool entry_output) const {
    for (const auto& f : msg.fields) {
      std::string here = prefix.empty() ? f.name : prefix + "." + f.name;
      int exact = 0;
      int exact_line = 0;
      std::vector<std::pair<FieldPath, int>> deeper;
      for (const auto& [p, line] : bound) {
        if (p.front().field != f.name) continue;
        if (p.size() == 1) {
          ++exact;
          exact_line = line;
        } else {
          deeper.emplace_back(FieldPath(p.begin() + 1, p.end()), line);
        }
      }
      if (exact > 1 || (exact == 1 && !deeper.empty()))
        fail(Errc::MultiplyBoundInput, owner + "." + here + " is bound by more than one mapping", exact_line);
      if (exact == 1) continue;
      if (!deeper.empty() && !f.repeated && !f.kind.is_scalar()) {
        cover(schemas_->require_message(f.kind.message), deeper, here, owner, entry_output);
        continue;
      }
      if (entry_output) fail(Errc::DanglingEntryOutput, owner + "." + here + " is never bound");
      fail(Errc::UnboundInput, owner + "." + here + " is never bound");
    }
  }

  void check_coverage() const {
    for (const auto& n : g_.nodes) {
      if (n.inputs.empty()) fail(Errc::UnboundInput, "node '" + n.decl.name + "' has no mapped inputs", n.decl.line);
      std::vector<std::pair<FieldPath, int>> bound;
      for (auto ei : n.inputs) bound.emplace_back(g_.edges[ei].mapping.sink.path, g_.edges[ei].mapping.line);
      cover(schemas_->require_message(n.service.input), bound, "", n.decl.name + ".input", false);
    }
    for (const auto& e : g_.entries) {
      std::vector<std::pair<FieldPath, int>> bound;
      for (auto ei : e.outputs) bound.emplace_back(g_.edges[ei].mapping.sink.path, g_.edges[ei].mapping.line);
      cover(schemas_->require_message(e.decl.output), bound, "", "entry." + e.decl.name + ".output", true);
    }
  }

  std::vector<std::vector<int>> successors() const {
    std::vector<std::vector<int>> succ(g_.nodes.size());
    for (const auto& e : g_.edges)
      if (e.source_node >= 0 && e.sink_node >= 0) succ[e.source_node].push_back(e.sink_node);
    for (auto& s : succ) {
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    return succ;
  }

  void check_cycles() const {
    auto succ = successors();
    std::vector<int> state(g_.nodes.size(), 0);
    std::vector<int> stack;
    std::function<void(int)> visit = [&](int u) {
      state[u] = 1;
      stack.push_back(u);
      for (int v : succ[u]) {
        if (state[v] == 1) {
          std::string path;
          auto it = std::find(stack.begin(), stack.end(), v);
          for (; it != stack.end(); ++it) path += g_.nodes[*it].decl.name + " -> ";
          path += g_.nodes[v].decl.name;
          fail(Errc::CycleDetected, "dependency cycle: " + path, g_.nodes[v].decl.line);
        }
        if (state[v] == 0) visit(v);
      }
      stack.pop_back();
      state[u] = 2;
    };
    for (std::size_t i = 0; i < g_.nodes.size(); ++i)
      if (state[i] == 0) visit(static_cast<int>(i));
  }

  void topo_sort() {
    auto succ = successors();
    std::vector<int> indeg(g_.nodes.size(), 0);
    for (const auto& s : succ)
      for (int v : s) ++indeg[v];
    std::set<int> ready;
    for (std::size_t i = 0; i < indeg.size(); ++i)
      if (indeg[i] == 0) ready.insert(static_cast<int>(i));
    while (!ready.empty()) {
      int u = *ready.begin();
      ready.erase(ready.begin());
      g_.topo_order.push_back(u);
      for (int v : succ[u])
        if (--indeg[v] == 0) ready.insert(v);
    }
  }

  int region_for_origin(const Endpoint& source) {
    Endpoint origin = source;
    auto it = std::find_if(origin.path.begin(), origin.path.end(), [](const PathSegment& s) { return s.traverse; });
    origin.path.erase(it + 1, origin.path.end());
    origin.path.back().traverse = false;
    std::string key = to_string(origin);
    for (const auto& r : g_.regions)
      if (to_string(r.origin) == key) return r.id;
    FanoutRegion r;
    r.id = static_cast<int>(g_.regions.size());
    r.origin = std::move(origin);
    g_.regions.push_back(std::move(r));
    return g_.regions.back().id;
  }

  bool traverses(const Endpoint& e) const {
    return std::any_of(e.path.begin(), e.path.end(), [](const PathSegment& s) { return s.traverse; });
  }

  Frame source_frame(const TypedEdge& edge) {
    const Endpoint& src = edge.mapping.source;
    if (src.kind == Endpoint::Kind::Constant) return {};
    if (edge.source_node >= 0) {
      Frame producer = g_.nodes[edge.source_node].frame;
      if (!producer.is_root()) {
        if (traverses(src))
          fail(Errc::NestedFanout,
               to_string(edge.mapping) + ": fans out over the output of '" + src.owner +
                   "', which already runs per element",
               edge.mapping.line);
        return producer;
      }
    }
    if (traverses(src)) return Frame{region_for_origin(src)};
    return {};
  }

  void assign_frames() {
    for (std::size_t ni : g_.topo_order) {
      GraphNode& node = g_.nodes[ni];
      std::set<int> regions;
      for (auto ei : node.inputs) {
        auto& edge = g_.edges[ei];
        edge.source_frame = source_frame(edge);
        if (!edge.mapping.gather && !edge.source_frame.is_root()) regions.insert(edge.source_frame.region);
      }
      if (regions.size() > 1)
        fail(Errc::MixedFrames, "node '" + node.decl.name + "' draws per-element inputs from more than one fan-out region",
             node.decl.line);
      if (!regions.empty()) {
        node.frame = Frame{*regions.begin()};
        g_.regions[node.frame.region].members.push_back(node.decl.name);
      }
      for (auto ei : node.inputs) check_gather(g_.edges[ei], node.frame);
    }
    for (auto& entry : g_.entries) {
      for (auto ei : entry.outputs) {
        auto& edge = g_.edges[ei];
        edge.source_frame = source_frame(edge);
        if (!edge.mapping.gather && !edge.source_frame.is_root())
          fail(Errc::MixedFrames,
               to_string(edge.mapping) + ": entry outputs run in the root frame; per-element values must be gathered",
               edge.mapping.line);
        check_gather(edge, Frame{});
      }
    }
  }

  void check_gather(const TypedEdge& edge, Frame sink_frame) {
    if (!edge.mapping.gather) return;
    if (edge.source_frame.is_root())
      fail(Errc::GatherOutsideRegion, to_string(edge.mapping) + ": gather source is not inside a fan-out region",
           edge.mapping.line);
    if (!sink_frame.is_root())
      fail(Errc::NestedFanout, to_string(edge.mapping) + ": gather into a node that itself runs per element",
           edge.mapping.line);
    auto& sinks = g_.regions[edge.source_frame.region].gather_sinks;
    std::string s = to_string(edge.mapping.sink);
    if (std::find(sinks.begin(), sinks.end(), s) == sinks.end()) sinks.push_back(s);
  }

  void assign_entries() {
    auto succ = successors();
    std::vector<std::vector<int>> pred(g_.nodes.size());
    for (std::size_t u = 0; u < succ.size(); ++u)
      for (int v : succ[u]) pred[v].push_back(static_cast<int>(u));

    const std::size_t ne = g_.entries.size();
    std::vector<std::set<int>> forward(ne);
    for (const auto& edge : g_.edges) {
      if (edge.mapping.source.kind != Endpoint::Kind::EntryInput) continue;
      int ei = entry_index(edge.mapping.source.owner);
      if (edge.sink_node >= 0) {
        forward[ei].insert(edge.sink_node);
      } else if (edge.mapping.sink.owner != edge.mapping.source.owner) {
        fail(Errc::MixedFrames,
             to_string(edge.mapping) + ": entry '" + edge.mapping.sink.owner + "' cannot read another entry's input",
             edge.mapping.line);
      }
    }
    for (auto& f : forward) {
      std::vector<int> work(f.begin(), f.end());
      while (!work.empty()) {
        int u = work.back();
        work.pop_back();
        for (int v : succ[u])
          if (f.insert(v).second) work.push_back(v);
      }
    }
    std::vector<int> owner(g_.nodes.size(), -1);
    for (std::size_t e = 0; e < ne; ++e)
      for (int n : forward[e]) {
        if (owner[n] >= 0 && owner[n] != static_cast<int>(e))
          fail(Errc::MixedFrames,
               "node '" + g_.nodes[n].decl.name + "' is reachable from entries '" + g_.entries[owner[n]].decl.name +
                   "' and '" + g_.entries[e].decl.name + "'",
               g_.nodes[n].decl.line);
        owner[n] = static_cast<int>(e);
      }
    for (std::size_t n = 0; n < g_.nodes.size(); ++n)
      if (owner[n] < 0 && opts_.unreachable_is_error)
        fail(Errc::UnreachableNode, "node '" + g_.nodes[n].decl.name + "' is not reachable from any entry",
             g_.nodes[n].decl.line);

    // Execution set: forward closure plus everything it (or an entry output) depends on.
    for (std::size_t e = 0; e < ne; ++e) {
      std::set<int> needed = forward[e];
      for (auto oi : g_.entries[e].outputs)
        if (g_.edges[oi].source_node >= 0) needed.insert(g_.edges[oi].source_node);
      std::vector<int> work(needed.begin(), needed.end());
      while (!work.empty()) {
        int u = work.back();
        work.pop_back();
        for (int p : pred[u])
          if (needed.insert(p).second) work.push_back(p);
      }
      for (int n : needed) {
        if (owner[n] >= 0 && owner[n] != static_cast<int>(e))
          fail(Errc::MixedFrames,
               "node '" + g_.nodes[n].decl.name + "' is needed by entries '" + g_.entries[owner[n]].decl.name +
                   "' and '" + g_.entries[e].decl.name + "'",
               g_.nodes[n].decl.line);
        owner[n] = static_cast<int>(e);
      }
    }
    for (std::size_t n = 0; n < g_.nodes.size(); ++n) g_.nodes[n].entry = owner[n];
    for (auto ni : g_.topo_order)
      if (owner[ni] >= 0) g_.entries[owner[ni]].plan.push_back(ni);
  }

  void build_chains() {
    std::vector<std::size_t> pos(g_.nodes.size());
    for (std::size_t i = 0; i < g_.topo_order.size(); ++i) pos[g_.topo_order[i]] = i;
    for (auto ni : g_.topo_order) {
      GraphNode& node = g_.nodes[ni];
      int best = -1;
      for (auto ei : node.inputs) {
        int p = g_.edges[ei].source_node;
        if (p < 0) continue;
        if (best < 0 || g_.nodes[p].chain.size() > g_.nodes[best].chain.size() ||
            (g_.nodes[p].chain.size() == g_.nodes[best].chain.size() && pos[p] < pos[best]))
          best = p;
      }
      if (best >= 0) node.chain = g_.nodes[best].chain;
      node.chain.push_back(node.decl.name);
    }
  }

  std::shared_ptr<const SchemaSet> schemas_;
  const FlowSpec& spec_;
  CompileOptions opts_;
  FlowGraph g_;
  std::map<std::string, int> node_index_;
};

}  // namespace

const GraphNode* FlowGraph::node(std::string_view name) const {
  for (const auto& n : nodes)
    if (n.decl.name == name) return &n;
  return nullptr;
}

const GraphEntry* FlowGraph::entry(std::string_view name) const {
  for (const auto& e : entries)
    if (e.decl.name == name) return &e;
  return nullptr;
}

FlowGraph compile(std::shared_ptr<const SchemaSet> schemas, const FlowSpec& spec, CompileOptions options) {
  return Compiler(std::move(schemas), spec, options).run();
}

Frame frame_of(const FlowGraph& graph, std::string_view node) {
  if (const auto* n = graph.node(node)) return n->frame;
  throw Error(Errc::UnknownNode, "unknown node '" + std::string(node) + "'");
}

std::string describe(const FlowGraph& graph) {
  using ojson = nlohmann::ordered_json;
  auto frame_name = [](Frame f) { return f.is_root() ? std::string("root") : "region:" + std::to_string(f.region); };
  ojson doc = ojson::object();
  ojson nodes = ojson::array();
  for (const auto& n : graph.nodes) {
    ojson o = ojson::object();
    o["name"] = n.decl.name;
    o["service"] = n.service.name;
    o["input"] = n.service.input;
    o["output"] = n.service.output;
    o["address"] = n.decl.address;
    o["timeout_ms"] = n.decl.timeout_ms;
    o["parallel"] = n.decl.parallel;
    o["frame"] = frame_name(n.frame);
    o["entry"] = n.entry >= 0 ? ojson(graph.entries[n.entry].decl.name) : ojson(nullptr);
    nodes.push_back(std::move(o));
  }
  doc["nodes"] = std::move(nodes);
  ojson edges = ojson::array();
  for (const auto& e : graph.edges) {
    ojson o = ojson::object();
    o["source"] = to_string(e.mapping.source);
    o["sink"] = to_string(e.mapping.sink);
    o["gather"] = e.mapping.gather;
    o["kind"] = e.element_kind.name();
    o["list"] = e.element_list;
    o["frame"] = frame_name(e.source_frame);
    edges.push_back(std::move(o));
  }
  doc["edges"] = std::move(edges);
  ojson regions = ojson::array();
  for (const auto& r : graph.regions) {
    ojson o = ojson::object();
    o["id"] = r.id;
    o["origin"] = to_string(r.origin);
    o["members"] = r.members;
    o["gather_sinks"] = r.gather_sinks;
    regions.push_back(std::move(o));
  }
  doc["regions"] = std::move(regions);
  ojson order = ojson::array();
  for (auto i : graph.topo_order) order.push_back(graph.nodes[i].decl.name);
  doc["topo_order"] = std::move(order);
  ojson entries = ojson::array();
  for (const auto& e : graph.entries) {
    ojson o = ojson::object();
    o["name"] = e.decl.name;
    o["input"] = e.decl.input;
    o["output"] = e.decl.output;
    ojson plan = ojson::array();
    for (auto i : e.plan) plan.push_back(graph.nodes[i].decl.name);
    o["plan"] = std::move(plan);
    entries.push_back(std::move(o));
  }
  doc["entries"] = std::move(entries);
  return doc.dump();
}

}  // namespace flow
