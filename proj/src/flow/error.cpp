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

#include "flow/error.hpp"

namespace flow {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::DuplicateName: return "DuplicateName";
    case Errc::UnknownTypeReference: return "UnknownTypeReference";
    case Errc::DuplicateFieldNumber: return "DuplicateFieldNumber";
    case Errc::RecursiveMessage: return "RecursiveMessage";
    case Errc::FieldTypeMismatch: return "FieldTypeMismatch";
    case Errc::UnknownField: return "UnknownField";
    case Errc::MissingField: return "MissingField";
    case Errc::ValidationError: return "ValidationError";
    case Errc::TraversalOfScalar: return "TraversalOfScalar";
    case Errc::MissingTraversalMarker: return "MissingTraversalMarker";
    case Errc::UnknownService: return "UnknownService";
    case Errc::UnknownMessage: return "UnknownMessage";
    case Errc::DuplicateNode: return "DuplicateNode";
    case Errc::DuplicateEntry: return "DuplicateEntry";
    case Errc::MalformedPath: return "MalformedPath";
    case Errc::MalformedConstant: return "MalformedConstant";
    case Errc::TypeMismatch: return "TypeMismatch";
    case Errc::UnboundInput: return "UnboundInput";
    case Errc::MultiplyBoundInput: return "MultiplyBoundInput";
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::NestedFanout: return "NestedFanout";
    case Errc::MixedFrames: return "MixedFrames";
    case Errc::GatherOutsideRegion: return "GatherOutsideRegion";
    case Errc::UnreachableNode: return "UnreachableNode";
    case Errc::DanglingEntryOutput: return "DanglingEntryOutput";
    case Errc::UnknownNode: return "UnknownNode";
    case Errc::EmptySamples: return "EmptySamples";
    case Errc::MissingImage: return "MissingImage";
    case Errc::PortInUse: return "PortInUse";
  }
  return "Unknown";
}

namespace {

std::string format_what(Errc code, const std::string& message, const std::optional<SourcePos>& pos) {
  std::string out{to_string(code)};
  if (pos) {
    out += " at line " + std::to_string(pos->line);
    if (pos->column > 0) out += ", column " + std::to_string(pos->column);
  }
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(Errc code, std::string message, std::optional<SourcePos> pos)
    : std::runtime_error(format_what(code, message, pos)),
      code_(code),
      detail_(std::move(message)),
      pos_(pos) {}

}  // namespace flow
