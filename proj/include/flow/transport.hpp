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

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "flow/flow_spec.hpp"

namespace flow {

struct WireResponse {
  int status = 0;
  std::string body;
};

enum class TransportFailure { None, Timeout, Connection };

struct TransportResult {
  std::optional<WireResponse> response;
  TransportFailure failure = TransportFailure::None;
  std::string message;
};

/// Delivers one request body to a node and returns its raw reply. The node's
/// timeout_ms bounds the whole exchange.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual TransportResult post(const NodeDecl& node, std::string_view path, const std::string& body) = 0;
};

/// HTTP/1.1 with one connection per call.
class HttpTransport final : public Transport {
 public:
  TransportResult post(const NodeDecl& node, std::string_view path, const std::string& body) override;
};

/// Routes calls to in-process handlers keyed by node address. No timeouts;
/// used to exercise the orchestrator without sockets.
class InProcessTransport final : public Transport {
 public:
  using Handler = std::function<WireResponse(const std::string& body)>;

  void bind(std::string address, Handler handler);
  TransportResult post(const NodeDecl& node, std::string_view path, const std::string& body) override;

 private:
  std::mutex mu_;
  std::map<std::string, Handler, std::less<>> handlers_;
};

}  // namespace flow
