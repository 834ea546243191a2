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

#include <atomic>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "flow/idl.hpp"
#include "flow/transport.hpp"
#include "flow/value.hpp"

namespace httplib {
class Server;
}

namespace flow {

/// Raised by handlers to report a domain failure; becomes a 500 envelope.
class HandlerError : public std::runtime_error {
 public:
  explicit HandlerError(std::string message, std::string code = "HANDLER_ERROR")
      : std::runtime_error(std::move(message)), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

using NodeHandler = std::function<Value(const Value&)>;

struct NodeOptions {
  std::size_t workers = 8;
  bool single_flight = false;  // serialize handler calls
  std::string host = "0.0.0.0";
};

std::string error_envelope(std::string_view code, std::string_view message);

/// Serves one service at POST /invoke plus GET /healthz. Requests are
/// validated before the handler runs and replies are validated before they
/// leave, so a handler only ever sees schema-valid input.
class NodeServer {
 public:
  NodeServer(std::shared_ptr<const SchemaSet> schemas, ServiceSchema service, NodeHandler handler,
             NodeOptions options = {});
  ~NodeServer();

  NodeServer(const NodeServer&) = delete;
  NodeServer& operator=(const NodeServer&) = delete;

  /// Binds and starts serving in the background. Port 0 picks a free port.
  /// Returns the bound port; throws PortInUse.
  int start(int port);
  void stop();
  /// Blocks until stop() is called from elsewhere.
  void wait();

  int port() const noexcept { return port_; }
  std::string address() const { return "127.0.0.1:" + std::to_string(port_); }
  std::size_t handled() const noexcept { return handled_.load(); }

  /// The /invoke logic without HTTP.
  WireResponse handle(const std::string& body);

 private:
  std::shared_ptr<const SchemaSet> schemas_;
  ServiceSchema service_;
  NodeHandler handler_;
  NodeOptions options_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  std::mutex flight_;
  std::atomic<std::size_t> handled_{0};
  int port_ = 0;
};

/// Deployment-facing description of a node: what it serves and where.
struct NodeManifest {
  std::string service;
  int port = 0;
  std::string invoke_path = "/invoke";
  std::string health_path = "/healthz";

  friend bool operator==(const NodeManifest&, const NodeManifest&) = default;
};

NodeManifest node_manifest(const ServiceSchema& service, int port);
std::string to_json(const NodeManifest& m);
NodeManifest parse_node_manifest(std::string_view json_text);

}  // namespace flow
