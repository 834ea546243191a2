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

#include <filesystem>
#include <string>

#include "flow/flow_spec.hpp"
#include "flow/idl.hpp"

namespace flow {

// All generators are pure functions of their inputs; output is emitted from
// fixed templates so identical specs give identical bytes.

/// Image for a node: its `image` key, else `<registry>/<node>:latest`.
/// Throws MissingImage when neither is set.
std::string node_image(const FlowSpec& spec, const NodeDecl& node);
std::string gateway_image(const FlowSpec& spec);

std::string generate_compose(const FlowSpec& spec, const SchemaSet& schemas);
std::string generate_k8s(const FlowSpec& spec, const SchemaSet& schemas);
std::string generate_launch(const FlowSpec& spec);

/// Writes compose.yaml, k8s.yaml and launch.sh under `dir`.
void write_deploy_artifacts(const FlowSpec& spec, const SchemaSet& schemas, const std::filesystem::path& dir);

}  // namespace flow
