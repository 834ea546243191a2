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
#include <stdexcept>
#include <string>
#include <string_view>

namespace flow {

enum class Errc {
  // schema language
  SyntaxError,
  DuplicateName,
  UnknownTypeReference,
  DuplicateFieldNumber,
  RecursiveMessage,
  // wire values
  FieldTypeMismatch,
  UnknownField,
  MissingField,
  ValidationError,
  TraversalOfScalar,
  MissingTraversalMarker,
  // flow files
  UnknownService,
  UnknownMessage,
  DuplicateNode,
  DuplicateEntry,
  MalformedPath,
  MalformedConstant,
  // graph compilation
  TypeMismatch,
  UnboundInput,
  MultiplyBoundInput,
  CycleDetected,
  NestedFanout,
  MixedFrames,
  GatherOutsideRegion,
  UnreachableNode,
  DanglingEntryOutput,
  UnknownNode,
  // metrics / deploy
  EmptySamples,
  MissingImage,
  PortInUse,
};

std::string_view to_string(Errc code) noexcept;

struct SourcePos {
  int line = 0;
  int column = 0;
};

/// Error raised by every framework-side operation. The code is stable and
/// meant to be matched on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message, std::optional<SourcePos> pos = std::nullopt);

  Errc code() const noexcept { return code_; }
  const std::optional<SourcePos>& pos() const noexcept { return pos_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
  std::optional<SourcePos> pos_;
};

}  // namespace flow
