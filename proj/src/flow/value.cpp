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

#include "flow/value.hpp"

#include <stdexcept>

namespace flow {

const Value* Value::find(std::string_view field) const {
  if (!is_record()) return nullptr;
  for (const auto& [name, v] : as_record())
    if (name == field) return &v;
  return nullptr;
}

Value* Value::find(std::string_view field) {
  return const_cast<Value*>(static_cast<const Value*>(this)->find(field));
}

const Value& Value::at(std::string_view field) const {
  if (const auto* v = find(field)) return *v;
  throw std::out_of_range("no field '" + std::string(field) + "'");
}

Value& Value::at(std::string_view field) {
  if (auto* v = find(field)) return *v;
  throw std::out_of_range("no field '" + std::string(field) + "'");
}

Value& Value::set(std::string_view field, Value v) {
  if (auto* existing = find(field)) {
    *existing = std::move(v);
    return *existing;
  }
  auto& rec = as_record();
  rec.emplace_back(std::string(field), std::move(v));
  return rec.back().second;
}

std::string_view to_string(Value::Type t) noexcept {
  switch (t) {
    case Value::Type::String: return "string";
    case Value::Type::Int: return "int64";
    case Value::Type::Float: return "float64";
    case Value::Type::Bool: return "bool";
    case Value::Type::List: return "list";
    case Value::Type::Record: return "record";
  }
  return "?";
}

}  // namespace flow
