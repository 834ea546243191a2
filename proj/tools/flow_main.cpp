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

#include <iostream>
#include <memory>

#include <CLI11.hpp>
#include <json.hpp>

#include "flow/deploy.hpp"
#include "flow/error.hpp"
#include "flow/flow_graph.hpp"
#include "flow/flow_spec.hpp"
#include "flow/gateway.hpp"
#include "flow/idl.hpp"
#include "tool_util.hpp"

namespace {

struct Loaded {
  std::shared_ptr<const flow::SchemaSet> schemas;
  flow::FlowSpec spec;
};

std::shared_ptr<const flow::SchemaSet> load_idl(const std::string& path) {
  return std::make_shared<const flow::SchemaSet>(flow::parse_idl(tools::read_file(path)));
}

Loaded load(const std::string& idl, const std::string& spec) {
  auto schemas = load_idl(idl);
  return {schemas, flow::parse_flow(tools::read_file(spec), *schemas)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compile, inspect, deploy and serve computation flows"};
  app.require_subcommand(1);

  std::string idl, spec, out = "deploy", host = "0.0.0.0";
  std::vector<std::string> corpora;
  int port = 8080;
  std::size_t workers = 32, max_fanout = 64;
  bool allow_unreachable = false;

  auto* check = app.add_subcommand("check", "Parse the IDL and, with --spec, compile the flow");
  check->add_option("--idl", idl, "Interface definitions")->required();
  check->add_option("--spec", spec, "Flow specification");
  check->add_flag("--allow-unreachable", allow_unreachable, "Accept nodes no entry reaches");

  auto* describe = app.add_subcommand("describe", "Print the compiled graph as JSON");
  describe->add_option("--idl", idl)->required();
  describe->add_option("--spec", spec)->required();

  auto* print = app.add_subcommand("print", "Print the canonical IDL, or the flow with --spec");
  print->add_option("--idl", idl)->required();
  print->add_option("--spec", spec);

  auto* deploy = app.add_subcommand("deploy", "Write compose.yaml, k8s.yaml and launch.sh");
  deploy->add_option("--idl", idl)->required();
  deploy->add_option("--spec", spec)->required();
  deploy->add_option("--out", out, "Output directory")->capture_default_str();

  auto* serve = app.add_subcommand("serve", "Run the REST gateway for a flow");
  serve->add_option("--idl", idl)->required();
  serve->add_option("--spec", spec)->required();
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--workers", workers)->capture_default_str();
  serve->add_option("--max-fanout", max_fanout)->capture_default_str();
  serve->add_option("--corpora", corpora, "Corpus names published in /graph metadata")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) {
      auto schemas = load_idl(idl);
      std::cout << "idl ok: " << schemas->messages().size() << " messages, " << schemas->services().size()
                << " services\n";
      if (!spec.empty()) {
        auto s = flow::parse_flow(tools::read_file(spec), *schemas);
        flow::CompileOptions copts;
        copts.unreachable_is_error = !allow_unreachable;
        auto g = flow::compile(schemas, s, copts);
        std::cout << "flow ok: " << g.nodes.size() << " nodes, " << g.edges.size() << " edges, " << g.regions.size()
                  << " fan-out regions, " << g.entries.size() << " entries\n";
      }
    } else if (*describe) {
      auto l = load(idl, spec);
      std::cout << flow::describe(flow::compile(l.schemas, l.spec)) << "\n";
    } else if (*print) {
      auto schemas = load_idl(idl);
      if (spec.empty())
        std::cout << flow::print_idl(*schemas);
      else
        std::cout << flow::print_flow(flow::parse_flow(tools::read_file(spec), *schemas));
    } else if (*deploy) {
      auto l = load(idl, spec);
      flow::compile(l.schemas, l.spec);
      flow::write_deploy_artifacts(l.spec, *l.schemas, out);
      std::cout << "wrote " << out << "/compose.yaml, " << out << "/k8s.yaml, " << out << "/launch.sh\n";
    } else if (*serve) {
      auto l = load(idl, spec);
      auto graph = std::make_shared<const flow::FlowGraph>(flow::compile(l.schemas, l.spec));
      flow::GatewayOptions gopts;
      gopts.host = host;
      gopts.workers = workers;
      gopts.max_fanout = max_fanout;
      gopts.metadata["corpora"] = corpora;
      const sigset_t signals = tools::block_stop_signals();
      flow::Gateway gateway(graph, gopts);
      const int bound = gateway.start(port);
      std::cout << "gateway listening on " << host << ":" << bound << std::endl;
      tools::wait_for_stop(signals, [&] { gateway.stop(); });
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
