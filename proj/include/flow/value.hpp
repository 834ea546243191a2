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

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace flow {

/// Dynamic message instance: a scalar leaf, a list, or a record whose fields
/// are kept in schema declaration order. Values are plain data; they carry no
/// reference to the schema they were validated against.
class Value {
 public:
  using List = std::vector<Value>;
  using Record = std::vector<std::pair<std::string, Value>>;

  enum class Type { String, Int, Float, Bool, List, Record };

  Value() : data_(std::string{}) {}
  Value(std::string s) : data_(std::move(s)) {}
  Value(const char* s) : data_(std::string{s}) {}
  Value(std::int64_t i) : data_(i) {}
  Value(int i) : data_(static_cast<std::int64_t>(i)) {}
  Value(double d) : data_(d) {}
  Value(bool b) : data_(b) {}
  Value(List l) : data_(std::move(l)) {}
  Value(Record r) : data_(std::move(r)) {}

  static Value list() { return Value(List{}); }
  static Value record() { return Value(Record{}); }

  Type type() const noexcept { return static_cast<Type>(data_.index()); }
  bool is_string() const noexcept { return type() == Type::String; }
  bool is_int() const noexcept { return type() == Type::Int; }
  bool is_float() const noexcept { return type() == Type::Float; }
  bool is_bool() const noexcept { return type() == Type::Bool; }
  bool is_list() const noexcept { return type() == Type::List; }
  bool is_record() const noexcept { return type() == Type::Record; }

  const std::string& as_string() const { return std::get<std::string>(data_); }
  std::int64_t as_int() const { return std::get<std::int64_t>(data_); }
  double as_float() const { return std::get<double>(data_); }
  bool as_bool() const { return std::get<bool>(data_); }
  const List& as_list() const { return std::get<List>(data_); }
  List& as_list() { return std::get<List>(data_); }
  const Record& as_record() const { return std::get<Record>(data_); }
  Record& as_record() { return std::get<Record>(data_); }

  /// Record field lookup; nullptr when absent or when this is not a record.
  const Value* find(std::string_view field) const;
  Value* find(std::string_view field);

  /// Record field access; throws std::out_of_range when absent.
  const Value& at(std::string_view field) const;
  Value& at(std::string_view field);

  /// Sets a record field, appending it when absent.
  Value& set(std::string_view field, Value v);

  friend bool operator==(const Value& a, const Value& b) { return a.data_ == b.data_; }

 private:
  std::variant<std::string, std::int64_t, double, bool, List, Record> data_;
};

std::string_view to_string(Value::Type t) noexcept;

}  // namespace flow
