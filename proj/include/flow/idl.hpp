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

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flow/error.hpp"
#include "flow/value.hpp"

namespace flow {

enum class ScalarKind { String, Int64, Float64, Bool };

std::string_view to_string(ScalarKind k) noexcept;

/// Field type: either a scalar kind or the name of another message.
struct FieldKind {
  std::optional<ScalarKind> scalar;
  std::string message;

  static FieldKind of(ScalarKind k) { return {k, {}}; }
  static FieldKind of(std::string message_name) { return {std::nullopt, std::move(message_name)}; }

  bool is_scalar() const noexcept { return scalar.has_value(); }
  std::string name() const;

  friend bool operator==(const FieldKind&, const FieldKind&) = default;
};

struct FieldSchema {
  std::string name;
  FieldKind kind;
  bool repeated = false;
  int number = 0;

  friend bool operator==(const FieldSchema&, const FieldSchema&) = default;
};

struct MessageSchema {
  std::string name;
  std::vector<FieldSchema> fields;

  const FieldSchema* field(std::string_view name) const;

  friend bool operator==(const MessageSchema&, const MessageSchema&) = default;
};

struct ServiceSchema {
  std::string name;
  std::string input;
  std::string output;

  friend bool operator==(const ServiceSchema&, const ServiceSchema&) = default;
};

/// Every message and service from one IDL source, in declaration order.
/// Immutable once returned by parse_idl.
class SchemaSet {
 public:
  SchemaSet() = default;
  SchemaSet(std::vector<MessageSchema> messages, std::vector<ServiceSchema> services);

  const std::vector<MessageSchema>& messages() const noexcept { return messages_; }
  const std::vector<ServiceSchema>& services() const noexcept { return services_; }

  const MessageSchema* message(std::string_view name) const;
  const ServiceSchema* service(std::string_view name) const;

  /// Lookup that throws UnknownMessage / UnknownService.
  const MessageSchema& require_message(std::string_view name) const;
  const ServiceSchema& require_service(std::string_view name) const;

  friend bool operator==(const SchemaSet& a, const SchemaSet& b) {
    return a.messages_ == b.messages_ && a.services_ == b.services_;
  }

 private:
  std::vector<MessageSchema> messages_;
  std::vector<ServiceSchema> services_;
  std::map<std::string, std::size_t, std::less<>> message_index_;
  std::map<std::string, std::size_t, std::less<>> service_index_;
};

SchemaSet parse_idl(std::string_view source);

/// Canonical rendering; parse_idl(print_idl(s)) == s.
std::string print_idl(const SchemaSet& schemas);

// ---------------------------------------------------------------------------
// Field paths

struct PathSegment {
  std::string field;
  bool traverse = false;  // "[]" suffix

  friend bool operator==(const PathSegment&, const PathSegment&) = default;
};

using FieldPath = std::vector<PathSegment>;

/// Parses `a.b[].c`. Throws MalformedPath.
FieldPath parse_field_path(std::string_view text);
std::string to_string(const FieldPath& path);

struct PathType {
  FieldKind kind;
  int traversals = 0;
  bool list = false;  // terminal value is a list (repeated field, no trailing "[]")

  friend bool operator==(const PathType&, const PathType&) = default;
};

/// Resolves a path against a message. Throws UnknownField, TraversalOfScalar
/// or MissingTraversalMarker.
PathType type_at_path(const SchemaSet& schemas, std::string_view message, const FieldPath& path);

// ---------------------------------------------------------------------------
// Wire encoding

struct DecodeOptions {
  /// Fill absent non-repeated fields with "" / 0 / 0.0 / false (and nested
  /// defaults) instead of raising MissingField.
  bool zero_defaults = false;
};

inline constexpr std::int64_t kMaxWireInt = (std::int64_t{1} << 53) - 1;

Value decode(const SchemaSet& schemas, const MessageSchema& schema, std::string_view wire,
             DecodeOptions options = {});

/// Canonical JSON: keys in declaration order, shortest round-trip floats.
/// Throws ValidationError when the value does not conform.
std::string encode(const SchemaSet& schemas, const MessageSchema& schema, const Value& value);

/// Records must hold every field exactly once, in declaration order.
/// Throws ValidationError with the offending path.
void validate(const SchemaSet& schemas, const MessageSchema& schema, const Value& value);

/// Zero value for a message: every field present, lists empty.
Value zero_value(const SchemaSet& schemas, const MessageSchema& schema);

}  // namespace flow
