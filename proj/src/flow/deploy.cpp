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

#include "flow/deploy.hpp"

#include <cctype>
#include <fstream>

#include "flow/node_kit.hpp"

namespace flow {

namespace {

constexpr const char* kGatewayName = "flow-gateway";
constexpr const char* kHeader = "# Generated by `flow deploy`. Do not edit.\n";

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Kubernetes object names: lowercase RFC 1123 labels.
std::string k8s_name(const std::string& s) {
  std::string out;
  for (char c : s) out += c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string env_name(const std::string& node) {
  std::string out;
  for (char c : node) out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out + "_CMD";
}

std::string gateway_command_json(const FlowSpec& spec) {
  return "[\"serve\", \"--spec\", \"/etc/flow/flow.spec\", \"--idl\", \"/etc/flow/schema.idl\", \"--port\", \"" +
         std::to_string(spec.deploy.gateway_port) + "\"]";
}

}  // namespace

std::string node_image(const FlowSpec& spec, const NodeDecl& node) {
  if (node.image) return *node.image;
  if (spec.deploy.registry) return *spec.deploy.registry + "/" + node.name + ":latest";
  throw Error(Errc::MissingImage, "node '" + node.name + "' has no image and [deploy] sets no registry");
}

std::string gateway_image(const FlowSpec& spec) {
  if (spec.deploy.registry) return *spec.deploy.registry + "/" + kGatewayName + ":latest";
  return std::string(kGatewayName) + ":latest";
}

std::string generate_compose(const FlowSpec& spec, const SchemaSet& schemas) {
  std::string out = kHeader;
  out += "services:\n";
  for (const auto& n : spec.nodes) {
    NodeManifest m = node_manifest(schemas.require_service(n.service), n.port());
    const std::string port = std::to_string(m.port);
    out += "  " + n.name + ":\n";
    out += "    # service " + m.service + "\n";
    out += "    image: " + quoted(node_image(spec, n)) + "\n";
    out += "    command: [\"--port\", \"" + port + "\"]\n";
    out += "    ports:\n";
    out += "      - \"" + port + ":" + port + "\"\n";
    out += "    healthcheck:\n";
    out += "      test: [\"CMD\", \"curl\", \"-fsS\", \"http://localhost:" + port + m.health_path + "\"]\n";
    out += "      interval: 2s\n";
    out += "      retries: 15\n";
  }
  const std::string gport = std::to_string(spec.deploy.gateway_port);
  out += "  " + std::string(kGatewayName) + ":\n";
  out += "    image: " + quoted(gateway_image(spec)) + "\n";
  out += "    command: " + gateway_command_json(spec) + "\n";
  out += "    ports:\n";
  out += "      - \"" + gport + ":" + gport + "\"\n";
  if (!spec.nodes.empty()) {
    out += "    depends_on:\n";
    for (const auto& n : spec.nodes) {
      out += "      " + n.name + ":\n";
      out += "        condition: service_healthy\n";
    }
  }
  return out;
}

namespace {

void k8s_pair(std::string& out, const std::string& name, const std::string& image, const std::string& args,
              int port, const std::string& health_path) {
  const std::string p = std::to_string(port);
  out += "---\n";
  out += "apiVersion: apps/v1\n";
  out += "kind: Deployment\n";
  out += "metadata:\n";
  out += "  name: " + name + "\n";
  out += "  labels:\n";
  out += "    app: " + name + "\n";
  out += "spec:\n";
  out += "  replicas: 1\n";
  out += "  selector:\n";
  out += "    matchLabels:\n";
  out += "      app: " + name + "\n";
  out += "  template:\n";
  out += "    metadata:\n";
  out += "      labels:\n";
  out += "        app: " + name + "\n";
  out += "    spec:\n";
  out += "      containers:\n";
  out += "        - name: " + name + "\n";
  out += "          image: " + quoted(image) + "\n";
  out += "          args: " + args + "\n";
  out += "          ports:\n";
  out += "            - containerPort: " + p + "\n";
  out += "          livenessProbe:\n";
  out += "            httpGet:\n";
  out += "              path: " + health_path + "\n";
  out += "              port: " + p + "\n";
  out += "---\n";
  out += "apiVersion: v1\n";
  out += "kind: Service\n";
  out += "metadata:\n";
  out += "  name: " + name + "\n";
  out += "spec:\n";
  out += "  selector:\n";
  out += "    app: " + name + "\n";
  out += "  ports:\n";
  out += "    - port: " + p + "\n";
  out += "      targetPort: " + p + "\n";
}

}  // namespace

std::string generate_k8s(const FlowSpec& spec, const SchemaSet& schemas) {
  std::string out = kHeader;
  for (const auto& n : spec.nodes) {
    NodeManifest m = node_manifest(schemas.require_service(n.service), n.port());
    k8s_pair(out, k8s_name(n.name), node_image(spec, n), "[\"--port\", \"" + std::to_string(m.port) + "\"]", m.port,
             m.health_path);
  }
  k8s_pair(out, kGatewayName, gateway_image(spec), gateway_command_json(spec), spec.deploy.gateway_port, "/healthz");
  return out;
}

std::string generate_launch(const FlowSpec& spec) {
  std::string out = "#!/usr/bin/env bash\n";
  out += kHeader;
  out += "#\n";
  out += "# Starts every node, then the gateway, waiting for /healthz after each launch.\n";
  out += "# A node's command defaults to $BIN_DIR/<node>-node; override it with <NODE>_CMD,\n";
  out += "# e.g. RETRIEVAL_CMD=\"ir-node --corpus wiki=wiki.jsonl\".\n";
  out += "set -euo pipefail\n\n";
  out += "BIN_DIR=\"${BIN_DIR:-$(cd \"$(dirname \"$0\")\" && pwd)}\"\n";
  out += "FLOW_SPEC=\"${FLOW_SPEC:-flow.spec}\"\n";
  out += "FLOW_IDL=\"${FLOW_IDL:-schema.idl}\"\n";
  out += "PIDS=()\n\n";
  out += "cleanup() {\n";
  out += "  if [ \"${#PIDS[@]}\" -gt 0 ]; then kill \"${PIDS[@]}\" 2>/dev/null || true; fi\n";
  out += "}\n";
  out += "trap cleanup EXIT INT TERM\n\n";
  out += "wait_healthy() {\n";
  out += "  local name=\"$1\" url=\"$2\"\n";
  out += "  for _ in $(seq 1 50); do\n";
  out += "    if curl -fsS \"$url\" >/dev/null 2>&1; then\n";
  out += "      echo \"$name is up\"\n";
  out += "      return 0\n";
  out += "    fi\n";
  out += "    sleep 0.2\n";
  out += "  done\n";
  out += "  echo \"$name did not become healthy at $url\" >&2\n";
  out += "  return 1\n";
  out += "}\n";
  for (const auto& n : spec.nodes) {
    const std::string port = std::to_string(n.port());
    out += "\n# " + n.name + " (service " + n.service + ")\n";
    out += "${" + env_name(n.name) + ":-$BIN_DIR/" + n.name + "-node} --port " + port + " &\n";
    out += "PIDS+=($!)\n";
    out += "wait_healthy " + n.name + " \"http://" + n.host() + ":" + port + "/healthz\"\n";
  }
  const std::string gport = std::to_string(spec.deploy.gateway_port);
  out += "\n# gateway\n";
  out += "\"$BIN_DIR/flow\" serve --spec \"$FLOW_SPEC\" --idl \"$FLOW_IDL\" --port " + gport + " &\n";
  out += "PIDS+=($!)\n";
  out += "wait_healthy gateway \"http://127.0.0.1:" + gport + "/healthz\"\n";
  out += "\nwait\n";
  return out;
}

void write_deploy_artifacts(const FlowSpec& spec, const SchemaSet& schemas, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const char* name, const std::string& text) {
    std::ofstream f(dir / name, std::ios::binary);
    f << text;
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
  };
  write("compose.yaml", generate_compose(spec, schemas));
  write("k8s.yaml", generate_k8s(spec, schemas));
  write("launch.sh", generate_launch(spec));
  std::filesystem::permissions(dir / "launch.sh", std::filesystem::perms::owner_exec | std::filesystem::perms::group_exec |
                                                      std::filesystem::perms::others_exec,
                               std::filesystem::perm_options::add);
}

}  // namespace flow
