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

// Runs the whole demo pipeline in one process: four nodes plus the gateway.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qa/stack.hpp"
#include "tool_util.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Serve the retrieve-and-read demo pipeline in one process"};
  int port = 8080;
  std::vector<std::string> corpus_args;
  bool sequential = false;
  app.add_option("--port", port, "Gateway port")->capture_default_str();
  app.add_option("--corpus", corpus_args, "name=path.jsonl, repeatable")->required();
  app.add_flag("--sequential", sequential, "Call the reader one passage at a time");
  CLI11_PARSE(app, argc, argv);

  try {
    auto corpora = std::make_shared<qa::CorpusSet>();
    for (const auto& arg : corpus_args) {
      auto eq = arg.find('=');
      if (eq == std::string::npos || eq == 0) throw std::runtime_error("--corpus expects name=path, got " + arg);
      std::ifstream in(arg.substr(eq + 1));
      if (!in) throw std::runtime_error("cannot read " + arg.substr(eq + 1));
      corpora->insert_or_assign(arg.substr(0, eq), qa::ingest(arg.substr(0, eq), in));
    }
    qa::StackOptions opts;
    opts.gateway_port = port;
    if (sequential) opts.reader_parallel = false;
    const sigset_t signals = tools::block_stop_signals();
    qa::QaStack stack(corpora, opts);
    for (const auto& n : stack.spec().nodes) std::cout << n.name << " at " << n.address << "\n";
    std::cout << "gateway at " << stack.gateway_url() << std::endl;
    tools::wait_for_stop(signals, [&] { stack.stop(); });
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
