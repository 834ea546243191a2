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

#include "flow/transport.hpp"

#include <chrono>

#include <httplib.h>

namespace flow {

TransportResult HttpTransport::post(const NodeDecl& node, std::string_view path, const std::string& body) {
  using clock = std::chrono::steady_clock;
  const auto timeout = std::chrono::milliseconds(node.timeout_ms);

  httplib::Client client(node.host(), node.port());
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  client.set_keep_alive(false);

  auto start = clock::now();
  auto res = client.Post(std::string(path), body, "application/json");
  auto elapsed = clock::now() - start;

  TransportResult out;
  if (res) {
    out.response = WireResponse{res->status, res->body};
    return out;
  }
  auto err = res.error();
  bool timed_out = err == httplib::Error::ConnectionTimeout ||
                   ((err == httplib::Error::Read || err == httplib::Error::Write) && elapsed >= timeout * 9 / 10);
  out.failure = timed_out ? TransportFailure::Timeout : TransportFailure::Connection;
  out.message = timed_out ? "no reply within " + std::to_string(node.timeout_ms) + " ms"
                          : "request to " + node.address + " failed: " + httplib::to_string(err);
  return out;
}

void InProcessTransport::bind(std::string address, Handler handler) {
  std::lock_guard lock(mu_);
  handlers_[std::move(address)] = std::move(handler);
}

TransportResult InProcessTransport::post(const NodeDecl& node, std::string_view, const std::string& body) {
  Handler handler;
  {
    std::lock_guard lock(mu_);
    auto it = handlers_.find(node.address);
    if (it == handlers_.end()) {
      TransportResult out;
      out.failure = TransportFailure::Connection;
      out.message = "nothing bound at " + node.address;
      return out;
    }
    handler = it->second;
  }
  TransportResult out;
  out.response = handler(body);
  return out;
}

}  // namespace flow
