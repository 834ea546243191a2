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

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>

#include "fixtures.hpp"
#include "flow/deploy.hpp"

using namespace flow;
namespace fs = std::filesystem;

namespace {

std::shared_ptr<const SchemaSet> demo_schemas() { return fixture::schemas(fixture::read("flows/qa.idl")); }

FlowSpec demo_spec() { return parse_flow(fixture::read("flows/qa.flow"), *demo_schemas()); }

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("demo artifacts match the frozen goldens") {
  auto s = demo_schemas();
  FlowSpec spec = demo_spec();
  CHECK(generate_compose(spec, *s) == fixture::read("tests/golden/compose.yaml"));
  CHECK(generate_k8s(spec, *s) == fixture::read("tests/golden/k8s.yaml"));
  CHECK(generate_launch(spec) == fixture::read("tests/golden/launch.sh"));
}

TEST_CASE("generation is deterministic") {
  auto s = demo_schemas();
  CHECK(generate_compose(demo_spec(), *s) == generate_compose(demo_spec(), *s));
  CHECK(generate_k8s(demo_spec(), *s) == generate_k8s(demo_spec(), *s));
  CHECK(generate_launch(demo_spec()) == generate_launch(demo_spec()));
}

TEST_CASE("k8s has a Deployment and a Service per node plus the gateway") {
  const std::string k = generate_k8s(demo_spec(), *demo_schemas());
  CHECK(count(k, "kind: Deployment\n") == 5);
  CHECK(count(k, "kind: Service\n") == 5);
  CHECK(k.find("name: flow-gateway\n") != std::string::npos);
}

TEST_CASE("images") {
  auto s = demo_schemas();
  FlowSpec spec = demo_spec();
  CHECK(node_image(spec, spec.nodes[0]) == "example.io/retrieval:latest");
  CHECK(gateway_image(spec) == "example.io/flow-gateway:latest");

  spec.nodes[1].image = "ghcr.io/acme/reader:1.2";
  CHECK(node_image(spec, spec.nodes[1]) == "ghcr.io/acme/reader:1.2");
  CHECK(generate_compose(spec, *s).find("image: \"ghcr.io/acme/reader:1.2\"") != std::string::npos);

  spec.deploy.registry.reset();
  CHECK(gateway_image(spec) == "flow-gateway:latest");
  CHECK(node_image(spec, spec.nodes[1]) == "ghcr.io/acme/reader:1.2");
  try {
    generate_compose(spec, *s);
    FAIL("no MissingImage");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MissingImage);
    CHECK(std::string(e.what()).find("retrieval") != std::string::npos);
  }
  CHECK_THROWS_AS(generate_k8s(spec, *s), Error);
}

TEST_CASE("a flow without nodes deploys only the gateway") {
  auto s = fixture::schemas("message M { string s = 1; }\n");
  FlowSpec spec = parse_flow("[entry e]\ninput = M\noutput = M\n[map]\nentry.e.input.s -> entry.e.output.s\n", *s);
  const std::string c = generate_compose(spec, *s);
  CHECK(c.find("flow-gateway:") != std::string::npos);
  CHECK(c.find("depends_on") == std::string::npos);
  const std::string k = generate_k8s(spec, *s);
  CHECK(count(k, "kind: Deployment\n") == 1);
}

TEST_CASE("node names become valid object names") {
  auto s = demo_schemas();
  FlowSpec spec = demo_spec();
  spec.nodes[0].name = "Query_Rewriter";
  const std::string k = generate_k8s(spec, *s);
  CHECK(k.find("name: query-rewriter\n") != std::string::npos);
  CHECK(generate_launch(spec).find("${QUERY_REWRITER_CMD:-$BIN_DIR/Query_Rewriter-node}") != std::string::npos);
}

TEST_CASE("written artifacts") {
  const fs::path dir = fs::temp_directory_path() / "flowpipe_deploy_test";
  fs::remove_all(dir);
  write_deploy_artifacts(demo_spec(), *demo_schemas(), dir);
  for (const char* f : {"compose.yaml", "k8s.yaml", "launch.sh"}) CHECK(fs::exists(dir / f));
  CHECK((fs::status(dir / "launch.sh").permissions() & fs::perms::owner_exec) != fs::perms::none);
  const std::string cmd = "bash -n '" + (dir / "launch.sh").string() + "'";
  CHECK(std::system(cmd.c_str()) == 0);
  fs::remove_all(dir);
}
