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

// One binary per demo service, selected at build time by QA_NODE_KIND.
#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "flow/node_kit.hpp"
#include "qa/bm25.hpp"
#include "qa/services.hpp"
#include "tool_util.hpp"

#define QA_STR2(x) #x
#define QA_STR(x) QA_STR2(x)

int main(int argc, char** argv) {
  const std::string kind = QA_STR(QA_NODE_KIND);
  CLI::App app{kind + " node"};
  int port = 0;
  std::string host = "0.0.0.0";
  std::size_t workers = 8;
  std::vector<std::string> corpus_args;
  int max_span_tokens = qa::kDefaultMaxSpanTokens;
  double k1 = 1.2, b = 0.75;

  app.add_option("--port", port, "Listen port")->required();
  app.add_option("--host", host)->capture_default_str();
  app.add_option("--workers", workers, "Handler worker threads")->capture_default_str();
  if (kind == "ir") {
    app.add_option("--corpus", corpus_args, "name=path.jsonl, repeatable")->required();
    app.add_option("--k1", k1)->capture_default_str()->check(CLI::NonNegativeNumber);
    app.add_option("--b", b)->capture_default_str()->check(CLI::Range(0.0, 1.0));
  }
  if (kind == "reader")
    app.add_option("--max-span-tokens", max_span_tokens)->capture_default_str()->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  try {
    auto schemas = qa::demo_schemas();
    flow::NodeHandler handler;
    std::string service;
    if (kind == "ir") {
      auto corpora = std::make_shared<qa::CorpusSet>();
      for (const auto& arg : corpus_args) {
        auto eq = arg.find('=');
        if (eq == std::string::npos || eq == 0) throw std::runtime_error("--corpus expects name=path, got " + arg);
        const std::string name = arg.substr(0, eq), path = arg.substr(eq + 1);
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot read " + path);
        auto index = qa::ingest(name, in);
        std::cout << "corpus " << name << ": " << index.size() << " paragraphs" << std::endl;
        corpora->insert_or_assign(name, std::move(index));
      }
      handler = qa::retrieval_handler(corpora, qa::Bm25Params{k1, b});
      service = "Retrieval";
    } else if (kind == "reader") {
      handler = qa::reader_handler(max_span_tokens);
      service = "Reader";
    } else if (kind == "dedup") {
      handler = qa::dedup_handler();
      service = "Dedup";
    } else {
      handler = qa::combiner_handler();
      service = "Combiner";
    }
    flow::NodeOptions opts;
    opts.workers = workers;
    opts.host = host;
    const sigset_t signals = tools::block_stop_signals();
    flow::NodeServer server(schemas, schemas->require_service(service), handler, opts);
    const int bound = server.start(port);
    std::cout << service << " listening on " << host << ":" << bound << std::endl;
    tools::wait_for_stop(signals, [&] { server.stop(); });
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
