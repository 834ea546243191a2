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

#include "qa/stack.hpp"

#include <json.hpp>

#include "qa/services.hpp"

namespace qa {

QaStack::QaStack(std::shared_ptr<const CorpusSet> corpora, StackOptions options) {
  auto schemas = demo_schemas();
  spec_ = flow::parse_flow(demo_flow(), *schemas);

  std::map<std::string, flow::NodeHandler> handlers = {
      {"retrieval", retrieval_handler(corpora)},
      {"reader", reader_handler(options.max_span_tokens)},
      {"dedup", dedup_handler()},
      {"combiner", combiner_handler()},
  };
  for (auto& [name, h] : options.handlers) handlers[name] = h;

  for (auto& decl : spec_.nodes) {
    flow::NodeOptions nopts;
    nopts.workers = options.node_workers;
    nopts.host = options.host;
    auto server = std::make_unique<flow::NodeServer>(schemas, schemas->require_service(decl.service),
                                                     handlers.at(decl.name), nopts);
    const int port = server->start(0);
    decl.address = options.host + ":" + std::to_string(port);
    if (auto t = options.timeout_ms.find(decl.name); t != options.timeout_ms.end()) decl.timeout_ms = t->second;
    if (decl.name == "reader" && options.reader_parallel) decl.parallel = *options.reader_parallel;
    servers_.emplace(decl.name, std::move(server));
  }

  graph_ = std::make_shared<const flow::FlowGraph>(flow::compile(schemas, spec_));
  orchestrator_ = std::make_unique<flow::Orchestrator>(graph_);

  if (options.gateway_port) {
    flow::GatewayOptions gopts;
    gopts.host = options.host;
    nlohmann::json names = nlohmann::json::array();
    for (const auto& [name, index] : *corpora) names.push_back(name);
    gopts.metadata["corpora"] = names;
    gateway_ = std::make_unique<flow::Gateway>(graph_, gopts);
    gateway_->start(*options.gateway_port);
  }
}

QaStack::~QaStack() { stop(); }

std::string QaStack::gateway_url() const {
  return gateway_ ? "http://127.0.0.1:" + std::to_string(gateway_->port()) : std::string{};
}

void QaStack::stop() {
  if (gateway_) gateway_->stop();
  for (auto& [name, s] : servers_) s->stop();
}

}  // namespace qa
