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

#include "flow/runtime.hpp"

#include <condition_variable>
#include <mutex>
#include <thread>

#include <json.hpp>

namespace flow {

std::string_view to_string(InvocationStatus s) noexcept {
  switch (s) {
    case InvocationStatus::Ok: return "ok";
    case InvocationStatus::Timeout: return "timeout";
    case InvocationStatus::NodeError: return "node_error";
    case InvocationStatus::TransportError: return "transport_error";
  }
  return "?";
}

std::string_view to_string(OrchestratorErrc c) noexcept {
  switch (c) {
    case OrchestratorErrc::Timeout: return "TIMEOUT";
    case OrchestratorErrc::NodeError: return "NODE_ERROR";
    case OrchestratorErrc::Transport: return "TRANSPORT";
    case OrchestratorErrc::BadRequest: return "BAD_REQUEST";
  }
  return "?";
}

namespace {

using clock = std::chrono::steady_clock;
using json = nlohmann::json;

double ms_between(clock::time_point a, clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

std::optional<std::string> error_envelope_message(const std::string& body) {
  try {
    auto j = json::parse(body);
    if (!j.is_object() || !j.contains("error")) return std::nullopt;
    const auto& e = j["error"];
    if (!e.is_object() || !e.contains("message") || !e["message"].is_string()) return std::nullopt;
    if (e.contains("code") && !e["code"].is_string()) return std::nullopt;
    return e["message"].get<std::string>();
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

void snapshot(std::optional<std::string>& slot, const std::string& text, bool& truncated) {
  if (text.size() > kSnapshotLimit) {
    slot = text.substr(0, kSnapshotLimit);
    truncated = true;
  } else {
    slot = text;
  }
}

OrchestratorError BadRequest(std::string message) {
  return OrchestratorError{OrchestratorErrc::BadRequest, {}, std::move(message), {}};
}

Value constant_value(const json& c, const FieldKind& kind, bool list) {
  if (list) {
    Value::List items;
    for (const auto& item : c) items.push_back(constant_value(item, kind, false));
    return Value(std::move(items));
  }
  switch (*kind.scalar) {
    case ScalarKind::String: return Value(c.get<std::string>());
    case ScalarKind::Bool: return Value(c.get<bool>());
    case ScalarKind::Int64: return Value(c.get<std::int64_t>());
    case ScalarKind::Float64: return Value(c.get<double>());
  }
  return {};
}

const Value& navigate(const Value& root, const FieldPath& path, std::size_t frame) {
  const Value* v = &root;
  for (const auto& seg : path) {
    v = &v->at(seg.field);
    if (seg.traverse) v = &v->as_list().at(frame);
  }
  return *v;
}

void assign(Value& root, const FieldPath& path, Value v) {
  Value* cur = &root;
  for (const auto& seg : path) cur = &cur->at(seg.field);
  *cur = std::move(v);
}

// Per-request execution state. Never shared across requests.
class Execution {
 public:
  Execution(std::shared_ptr<const FlowGraph> graph, std::shared_ptr<Transport> transport, const GraphEntry& entry,
            const ExecuteOptions& opts)
      : graph_(std::move(graph)),
        g_(*graph_),
        transport_(std::move(transport)),
        entry_(entry),
        opts_(opts),
        root_out_(g_.nodes.size()),
        member_out_(g_.nodes.size()),
        region_len_(g_.regions.size()) {}

  ExecutionResult run(const Value& input) {
    ExecutionResult result;
    start_ = clock::now();
    const SchemaSet& schemas = *g_.schemas;
    try {
      validate(schemas, schemas.require_message(entry_.decl.input), input);
    } catch (const Error& e) {
      result.error = BadRequest(e.detail());
      return result;
    }
    input_ = &input;

    for (auto ni : entry_.plan) {
      auto err = g_.nodes[ni].frame.is_root() ? run_root(ni, result.trace) : run_member(ni, result.trace);
      if (err) {
        result.error = std::move(err);
        result.trace.total_duration_ms = ms_between(start_, clock::now());
        return result;
      }
    }

    const MessageSchema& out_schema = schemas.require_message(entry_.decl.output);
    Value out = zero_value(schemas, out_schema);
    for (auto ei : entry_.outputs) assign(out, g_.edges[ei].mapping.sink.path, deliver(g_.edges[ei], 0));
    result.trace.total_duration_ms = ms_between(start_, clock::now());
    try {
      validate(schemas, out_schema, out);
    } catch (const Error& e) {
      result.error = OrchestratorError{OrchestratorErrc::NodeError, {}, "entry output failed validation: " + e.detail(), {}};
      return result;
    }
    result.output = std::move(out);
    return result;
  }

 private:
  std::size_t region_length(int region) {
    auto& len = region_len_[region];
    if (!len) {
      const Endpoint& origin = g_.regions[region].origin;
      const Value& list = navigate(source_root(origin, 0), origin.path, 0);
      len = list.as_list().size();
    }
    return *len;
  }

  const Value& source_root(const Endpoint& src, std::size_t frame) const {
    if (src.kind == Endpoint::Kind::EntryInput) return *input_;
    const GraphNode* producer = g_.node(src.owner);
    auto idx = static_cast<std::size_t>(producer - g_.nodes.data());
    if (producer->frame.is_root()) return *root_out_[idx];
    return member_out_[idx][frame];
  }

  // The value an edge delivers into the frame `frame` of its sink.
  Value deliver(const TypedEdge& edge, std::size_t frame) {
    const Endpoint& src = edge.mapping.source;
    if (edge.mapping.gather) {
      Value::List items;
      std::size_t n = region_length(edge.source_frame.region);
      items.reserve(n);
      for (std::size_t i = 0; i < n; ++i) items.push_back(navigate(source_root(src, i), src.path, i));
      return Value(std::move(items));
    }
    if (src.kind == Endpoint::Kind::Constant) return constant_value(src.constant, edge.element_kind, edge.element_list);
    return navigate(source_root(src, frame), src.path, frame);
  }

  Value build_input(const GraphNode& node, std::size_t frame) {
    const SchemaSet& schemas = *g_.schemas;
    Value in = zero_value(schemas, schemas.require_message(node.service.input));
    for (auto ei : node.inputs) assign(in, g_.edges[ei].mapping.sink.path, deliver(g_.edges[ei], frame));
    return in;
  }

  std::optional<OrchestratorError> run_root(std::size_t ni, ExecutionTrace& trace) {
    const GraphNode& node = g_.nodes[ni];
    Invocation inv = invoke_node(*transport_, *g_.schemas, node, build_input(node, 0), start_, opts_.debug);
    trace.records.push_back(std::move(inv.record));
    if (inv.error) return std::move(inv.error);
    root_out_[ni] = std::move(inv.output);
    return std::nullopt;
  }

  std::optional<OrchestratorError> run_member(std::size_t ni, ExecutionTrace& trace) {
    const GraphNode& node = g_.nodes[ni];
    std::size_t n = region_length(node.frame.region);
    if (n > opts_.max_fanout)
      return BadRequest("fan-out of " + std::to_string(n) + " elements for node '" + node.decl.name +
                        "' exceeds the limit of " + std::to_string(opts_.max_fanout));
    auto inputs = std::make_shared<std::vector<Value>>();
    inputs->reserve(n);
    for (std::size_t i = 0; i < n; ++i) inputs->push_back(build_input(node, i));

    auto call = [graph = graph_, transport = transport_, inputs, ni, origin = start_,
                 debug = opts_.debug](std::size_t i) {
      Invocation inv = invoke_node(*transport, *graph->schemas, graph->nodes[ni], (*inputs)[i], origin, debug);
      inv.record.frame = static_cast<int>(i);
      return inv;
    };
    FanoutResult fr = run_fanout(n, node.decl.parallel, call);

    std::optional<OrchestratorError> err;
    member_out_[ni].reserve(n);
    for (std::size_t i = 0; i < fr.frames.size(); ++i) {
      auto& slot = fr.frames[i];
      if (!slot) {
        if (!fr.failed || !node.decl.parallel) continue;
        // Still running after the grace period.
        InvocationRecord rec;
        rec.node = node.decl.name;
        rec.frame = static_cast<int>(i);
        rec.duration_ms = ms_between(start_, clock::now());
        rec.status = InvocationStatus::TransportError;
        rec.message = "abandoned after a sibling frame failed";
        trace.records.push_back(std::move(rec));
        continue;
      }
      trace.records.push_back(std::move(slot->record));
      if (fr.failed && *fr.failed == i) err = std::move(slot->error);
      if (!fr.failed) member_out_[ni].push_back(std::move(*slot->output));
    }
    return err;
  }

  std::shared_ptr<const FlowGraph> graph_;
  const FlowGraph& g_;
  std::shared_ptr<Transport> transport_;
  const GraphEntry& entry_;
  ExecuteOptions opts_;
  clock::time_point start_;
  const Value* input_ = nullptr;
  std::vector<std::optional<Value>> root_out_;
  std::vector<std::vector<Value>> member_out_;
  std::vector<std::optional<std::size_t>> region_len_;
};

}  // namespace

Invocation invoke_node(Transport& transport, const SchemaSet& schemas, const GraphNode& node, const Value& input,
                       std::chrono::steady_clock::time_point origin, bool debug) {
  Invocation inv;
  InvocationRecord& rec = inv.record;
  rec.node = node.decl.name;
  auto fail = [&](OrchestratorErrc code, InvocationStatus status, std::string message) {
    rec.status = status;
    rec.message = message;
    inv.error = OrchestratorError{code, node.decl.name, std::move(message), node.chain};
  };

  std::string body;
  try {
    body = encode(schemas, schemas.require_message(node.service.input), input);
  } catch (const Error& e) {
    rec.start_offset_ms = ms_between(origin, clock::now());
    fail(OrchestratorErrc::BadRequest, InvocationStatus::NodeError, "request validation failed: " + e.detail());
    return inv;
  }
  if (debug) snapshot(rec.input_snapshot, body, rec.truncated);

  auto t0 = clock::now();
  rec.start_offset_ms = ms_between(origin, t0);
  TransportResult tr = transport.post(node.decl, "/invoke", body);
  rec.duration_ms = ms_between(t0, clock::now());

  if (!tr.response) {
    if (tr.failure == TransportFailure::Timeout)
      fail(OrchestratorErrc::Timeout, InvocationStatus::Timeout, tr.message);
    else
      fail(OrchestratorErrc::Transport, InvocationStatus::TransportError, tr.message);
    return inv;
  }
  const WireResponse& resp = *tr.response;
  if (debug) snapshot(rec.output_snapshot, resp.body, rec.truncated);
  if (resp.status < 200 || resp.status >= 300) {
    if (auto msg = error_envelope_message(resp.body))
      fail(OrchestratorErrc::NodeError, InvocationStatus::NodeError, *msg);
    else
      fail(OrchestratorErrc::Transport, InvocationStatus::TransportError,
           "HTTP " + std::to_string(resp.status) + " without an error envelope");
    return inv;
  }
  try {
    inv.output = decode(schemas, schemas.require_message(node.service.output), resp.body);
  } catch (const Error& e) {
    fail(OrchestratorErrc::NodeError, InvocationStatus::NodeError, "response validation failed: " + e.detail());
    inv.output.reset();
  }
  return inv;
}

FanoutResult run_fanout(std::size_t n, bool parallel, std::function<Invocation(std::size_t)> call,
                        std::chrono::milliseconds grace) {
  FanoutResult out;
  out.frames.resize(n);
  if (!parallel) {
    for (std::size_t i = 0; i < n; ++i) {
      out.frames[i] = call(i);
      if (out.frames[i]->error) {
        out.failed = i;
        break;
      }
    }
    return out;
  }

  struct Shared {
    std::mutex mu;
    std::condition_variable cv;
    std::vector<std::optional<Invocation>> frames;
    std::size_t done = 0;
  };
  auto shared = std::make_shared<Shared>();
  shared->frames.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::thread([shared, call, i] {
      Invocation inv = call(i);
      std::lock_guard lock(shared->mu);
      shared->frames[i] = std::move(inv);
      ++shared->done;
      shared->cv.notify_all();
    }).detach();
  }

  // Decided once every frame before the earliest failure has succeeded.
  auto decided = [&]() -> bool {
    for (std::size_t i = 0; i < n; ++i) {
      if (!shared->frames[i]) return false;
      if (shared->frames[i]->error) {
        out.failed = i;
        return true;
      }
    }
    return true;
  };

  std::unique_lock lock(shared->mu);
  shared->cv.wait(lock, decided);
  if (out.failed) {
    auto deadline = std::chrono::steady_clock::now() + grace;
    shared->cv.wait_until(lock, deadline, [&] { return shared->done == n; });
  }
  for (std::size_t i = 0; i < n; ++i)
    if (shared->frames[i]) out.frames[i] = std::move(shared->frames[i]);
  return out;
}

Orchestrator::Orchestrator(std::shared_ptr<const FlowGraph> graph, std::shared_ptr<Transport> transport)
    : graph_(std::move(graph)), transport_(std::move(transport)) {}

ExecutionResult Orchestrator::execute(std::string_view entry, const Value& input, const ExecuteOptions& options) const {
  const GraphEntry* e = graph_->entry(entry);
  if (!e) {
    ExecutionResult r;
    r.error = BadRequest("unknown entry");
    return r;
  }
  return Execution(graph_, transport_, *e, options).run(input);
}

ExecutionResult Orchestrator::execute_wire(std::string_view entry, std::string_view input_json,
                                           const ExecuteOptions& options) const {
  const GraphEntry* e = graph_->entry(entry);
  ExecutionResult r;
  if (!e) {
    r.error = BadRequest("unknown entry");
    return r;
  }
  const SchemaSet& schemas = *graph_->schemas;
  Value input;
  try {
    input = decode(schemas, schemas.require_message(e->decl.input), input_json);
  } catch (const Error& err) {
    r.error = BadRequest(err.detail());
    return r;
  }
  return Execution(graph_, transport_, *e, options).run(input);
}

}  // namespace flow
