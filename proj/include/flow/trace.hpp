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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flow {

enum class InvocationStatus { Ok, Timeout, NodeError, TransportError };

std::string_view to_string(InvocationStatus s) noexcept;

/// Debug snapshots larger than this are cut and flagged as truncated.
inline constexpr std::size_t kSnapshotLimit = 64 * 1024;

struct InvocationRecord {
  std::string node;
  int frame = -1;  // element index for fan-out members, -1 for the root frame
  double start_offset_ms = 0;
  double duration_ms = 0;
  InvocationStatus status = InvocationStatus::Ok;
  std::string message;  // failure detail, empty on success
  std::optional<std::string> input_snapshot;
  std::optional<std::string> output_snapshot;
  bool truncated = false;
};

struct ExecutionTrace {
  std::vector<InvocationRecord> records;
  double total_duration_ms = 0;
};

}  // namespace flow
