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

#include "flow/node_kit.hpp"

#include <httplib.h>

#include "http_listen.hpp"
#include <json.hpp>

namespace flow {

std::string error_envelope(std::string_view code, std::string_view message) {
  nlohmann::ordered_json j;
  j["error"]["code"] = code;
  j["error"]["message"] = message;
  return j.dump();
}

NodeServer::NodeServer(std::shared_ptr<const SchemaSet> schemas, ServiceSchema service, NodeHandler handler,
                       NodeOptions options)
    : schemas_(std::move(schemas)),
      service_(std::move(service)),
      handler_(std::move(handler)),
      options_(std::move(options)) {}

NodeServer::~NodeServer() { stop(); }

WireResponse NodeServer::handle(const std::string& body) {
  const auto& in_schema = schemas_->require_message(service_.input);
  const auto& out_schema = schemas_->require_message(service_.output);
  Value input;
  try {
    input = decode(*schemas_, in_schema, body);
  } catch (const Error& e) {
    return {400, error_envelope("BAD_REQUEST", e.detail())};
  }
  Value output;
  try {
    ++handled_;
    if (options_.single_flight) {
      std::lock_guard lock(flight_);
      output = handler_(input);
    } else {
      output = handler_(input);
    }
  } catch (const HandlerError& e) {
    return {500, error_envelope(e.code(), e.what())};
  } catch (const std::exception& e) {
    return {500, error_envelope("HANDLER_ERROR", e.what())};
  }
  try {
    return {200, encode(*schemas_, out_schema, output)};
  } catch (const Error& e) {
    return {500, error_envelope("HANDLER_ERROR", "output validation failed: " + e.detail())};
  }
}

int NodeServer::start(int port) {
  server_ = std::make_unique<httplib::Server>();
  const std::size_t workers = options_.workers;
  server_->new_task_queue = [workers] { return new httplib::ThreadPool(workers); };
  detail::exclusive_bind(*server_);
  server_->Post("/invoke", [this](const httplib::Request& req, httplib::Response& res) {
    WireResponse r = handle(req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
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

void NodeServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

void NodeServer::wait() {
  if (thread_.joinable()) thread_.join();
}

NodeManifest node_manifest(const ServiceSchema& service, int port) { return NodeManifest{service.name, port}; }

std::string to_json(const NodeManifest& m) {
  nlohmann::ordered_json j;
  j["service"] = m.service;
  j["port"] = m.port;
  j["invoke_path"] = m.invoke_path;
  j["health_path"] = m.health_path;
  return j.dump();
}

NodeManifest parse_node_manifest(std::string_view json_text) {
  auto j = nlohmann::json::parse(json_text);
  return NodeManifest{j.at("service").get<std::string>(), j.at("port").get<int>(),
                      j.at("invoke_path").get<std::string>(), j.at("health_path").get<std::string>()};
}

}  // namespace flow
