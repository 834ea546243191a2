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

#include "flow/gateway.hpp"

#include <httplib.h>

#include "http_listen.hpp"

namespace flow {

namespace {

using ojson = nlohmann::ordered_json;

Gateway::Reply error_reply(int status, const OrchestratorError& err, const ExecutionTrace* trace = nullptr) {
  ojson body = ojson::object();
  body["error"] = error_json(err);
  if (trace) body["trace"] = trace_json(*trace);
  return {status, body.dump()};
}

std::vector<std::string> node_names(const FlowGraph& g) {
  std::vector<std::string> out;
  for (const auto& n : g.nodes) out.push_back(n.decl.name);
  return out;
}

std::vector<std::string> entry_names(const FlowGraph& g) {
  std::vector<std::string> out;
  for (const auto& e : g.entries) out.push_back(e.decl.name);
  return out;
}

}  // namespace

int http_status(OrchestratorErrc code) {
  switch (code) {
    case OrchestratorErrc::BadRequest: return 400;
    case OrchestratorErrc::Timeout: return 504;
    case OrchestratorErrc::NodeError: return 502;
    case OrchestratorErrc::Transport: return 502;
  }
  return 500;
}

ojson trace_json(const ExecutionTrace& trace) {
  ojson arr = ojson::array();
  for (const auto& r : trace.records) {
    ojson o = ojson::object();
    o["node"] = r.node;
    o["frame"] = r.frame;
    o["start_offset_ms"] = r.start_offset_ms;
    o["duration_ms"] = r.duration_ms;
    o["status"] = to_string(r.status);
    if (!r.message.empty()) o["message"] = r.message;
    if (r.input_snapshot) o["input_snapshot"] = *r.input_snapshot;
    if (r.output_snapshot) o["output_snapshot"] = *r.output_snapshot;
    if (r.truncated) o["truncated"] = true;
    arr.push_back(std::move(o));
  }
  return arr;
}

ojson error_json(const OrchestratorError& err) {
  ojson o = ojson::object();
  o["code"] = to_string(err.code);
  if (!err.node.empty()) o["node"] = err.node;
  o["message"] = err.message;
  if (!err.chain.empty()) o["chain"] = err.chain;
  return o;
}

Gateway::Gateway(std::shared_ptr<const FlowGraph> graph, GatewayOptions options, std::shared_ptr<Transport> transport)
    : graph_(graph),
      options_(std::move(options)),
      orchestrator_(graph, std::move(transport)),
      metrics_(node_names(*graph), entry_names(*graph)) {
  ojson doc = ojson::parse(describe(*graph_));
  doc["metadata"] = options_.metadata;
  graph_doc_ = doc.dump();
}

Gateway::~Gateway() { stop(); }

Gateway::Reply Gateway::handle_entry(const std::string& entry, const std::string& body, bool debug) {
  const GraphEntry* e = graph_->entry(entry);
  if (!e) return error_reply(404, OrchestratorError{OrchestratorErrc::BadRequest, {}, "unknown entry", {}});

  ojson req;
  try {
    req = ojson::parse(body);
  } catch (const ojson::parse_error&) {
    metrics_.record_request(entry, true);
    return error_reply(400, OrchestratorError{OrchestratorErrc::BadRequest, {}, "body is not valid JSON", {}});
  }
  if (!req.is_object() || req.size() != 1 || !req.contains("input")) {
    metrics_.record_request(entry, true);
    return error_reply(400, OrchestratorError{OrchestratorErrc::BadRequest, {},
                                              "body must be an object with exactly one key, \"input\"", {}});
  }

  ExecuteOptions opts;
  opts.debug = debug;
  opts.max_fanout = options_.max_fanout;
  ExecutionResult result = orchestrator_.execute_wire(entry, req["input"].dump(), opts);
  record_metrics(metrics_, result.trace);
  metrics_.record_request(entry, !result.ok());

  if (!result.ok()) return error_reply(http_status(result.error->code), *result.error, debug ? &result.trace : nullptr);

  const SchemaSet& schemas = *graph_->schemas;
  std::string out_text;
  try {
    out_text = encode(schemas, schemas.require_message(e->decl.output), *result.output);
  } catch (const Error& err) {
    return error_reply(502, OrchestratorError{OrchestratorErrc::NodeError, {}, err.detail(), {}});
  }
  ojson reply = ojson::object();
  reply["output"] = ojson::parse(out_text);
  if (debug) reply["trace"] = trace_json(result.trace);
  return {200, reply.dump()};
}

int Gateway::start(int port) {
  server_ = std::make_unique<httplib::Server>();
  const std::size_t workers = options_.workers;
  server_->new_task_queue = [workers] { return new httplib::ThreadPool(workers); };
  detail::exclusive_bind(*server_);
  server_->set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
  server_->Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server_->Post(R"(/entry/([^/?]+))", [this](const httplib::Request& req, httplib::Response& res) {
    bool debug = req.has_param("debug") && req.get_param_value("debug") == "true";
    Reply r = handle_entry(req.matches[1], req.body, debug);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  });
  server_->Get("/metrics", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(metrics_report(metrics_), "application/json");
  });
  server_->Get("/graph", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(graph_doc_, "application/json");
  });
  server_->Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"status":"ok"})", "application/json");
  });
  if (port == 0) {
    port_ = server_->bind_to_any_port(options_.host);
  } else {
    port_ = server_->bind_to_port(options_.host, port) ? port : -1;
  }
  if (port_ <= 0) throw Error(Errc::PortInUse, "cannot bind " + options_.host + ":" + std::to_string(port));
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port_;
}

void Gateway::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

void Gateway::wait() {
  if (thread_.joinable()) thread_.join();
}

}  // namespace flow
