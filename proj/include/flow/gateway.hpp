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

#include <memory>
#include <string>
#include <thread>

#include <json.hpp>

#include "flow/flow_graph.hpp"
#include "flow/metrics.hpp"
#include "flow/runtime.hpp"

namespace httplib {
class Server;
}

namespace flow {

struct GatewayOptions {
  std::string host = "0.0.0.0";
  std::size_t workers = 32;
  std::size_t max_fanout = 64;
  /// Extra object published under "metadata" in GET /graph (e.g. corpora).
  nlohmann::json metadata = nlohmann::json::object();
};

/// HTTP status for an orchestrator error code.
int http_status(OrchestratorErrc code);

/// Wire rendering of a trace, as carried in debug responses.
nlohmann::ordered_json trace_json(const ExecutionTrace& trace);
nlohmann::ordered_json error_json(const OrchestratorError& error);

/// REST surface over compiled entry points:
///   POST /entry/{name}[?debug=true]  {"input": ...} -> {"output": ..., "trace": [...]?}
///   GET  /metrics  GET /graph  GET /healthz
class Gateway {
 public:
  Gateway(std::shared_ptr<const FlowGraph> graph, GatewayOptions options = {},
          std::shared_ptr<Transport> transport = std::make_shared<HttpTransport>());
  ~Gateway();

  Gateway(const Gateway&) = delete;
  Gateway& operator=(const Gateway&) = delete;

  /// Port 0 picks a free port. Returns the bound port; throws PortInUse.
  int start(int port);
  void stop();
  void wait();

  int port() const noexcept { return port_; }
  MetricsRegistry& metrics() noexcept { return metrics_; }

  struct Reply {
    int status = 200;
    std::string body;
  };
  /// Request handling without HTTP; `body` is the raw POST body.
  Reply handle_entry(const std::string& entry, const std::string& body, bool debug);

 private:
  std::shared_ptr<const FlowGraph> graph_;
  GatewayOptions options_;
  Orchestrator orchestrator_;
  MetricsRegistry metrics_;
  std::string graph_doc_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace flow
