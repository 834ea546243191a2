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

// JSON wire codec for schema-typed values.

#include <cmath>

#include <json.hpp>

#include "flow/idl.hpp"

namespace flow {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string join(const std::string& prefix, const std::string& name) {
  return prefix.empty() ? name : prefix + "." + name;
}

class Decoder {
 public:
  Decoder(const SchemaSet& schemas, DecodeOptions opts) : schemas_(schemas), opts_(opts) {}

  Value message(const MessageSchema& schema, const json& j, const std::string& where) const {
    if (!j.is_object())
      throw Error(Errc::FieldTypeMismatch,
                  (where.empty() ? std::string("message") : "'" + where + "'") + " must be a JSON object");
    for (const auto& [key, _] : j.items())
      if (!schema.field(key))
        throw Error(Errc::UnknownField, "'" + join(where, key) + "' is not a field of " + schema.name);
    Value::Record rec;
    rec.reserve(schema.fields.size());
    for (const auto& f : schema.fields) {
      std::string path = join(where, f.name);
      auto it = j.find(f.name);
      if (it == j.end()) {
        if (f.repeated) {
          rec.emplace_back(f.name, Value::list());
        } else if (opts_.zero_defaults) {
          rec.emplace_back(f.name, zero_field(f));
        } else {
          throw Error(Errc::MissingField, "'" + path + "' is missing");
        }
        continue;
      }
      if (f.repeated) {
        if (!it->is_array()) throw Error(Errc::FieldTypeMismatch, "'" + path + "' must be an array");
        Value::List items;
        items.reserve(it->size());
        for (std::size_t i = 0; i < it->size(); ++i)
          items.push_back(element(f, (*it)[i], path + "[" + std::to_string(i) + "]"));
        rec.emplace_back(f.name, Value(std::move(items)));
      } else {
        rec.emplace_back(f.name, element(f, *it, path));
      }
    }
    return Value(std::move(rec));
  }

 private:
  Value zero_field(const FieldSchema& f) const {
    if (!f.kind.is_scalar()) return zero_value(schemas_, schemas_.require_message(f.kind.message));
    switch (*f.kind.scalar) {
      case ScalarKind::String: return Value(std::string{});
      case ScalarKind::Int64: return Value(std::int64_t{0});
      case ScalarKind::Float64: return Value(0.0);
      case ScalarKind::Bool: return Value(false);
    }
    return {};
  }

  Value element(const FieldSchema& f, const json& j, const std::string& path) const {
    auto mismatch = [&](const char* want) {
      return Error(Errc::FieldTypeMismatch, "'" + path + "' must be " + want);
    };
    if (!f.kind.is_scalar()) return message(schemas_.require_message(f.kind.message), j, path);
    switch (*f.kind.scalar) {
      case ScalarKind::String:
        if (!j.is_string()) throw mismatch("a string");
        return Value(j.get<std::string>());
      case ScalarKind::Bool:
        if (!j.is_boolean()) throw mismatch("a boolean");
        return Value(j.get<bool>());
      case ScalarKind::Int64: {
        if (j.is_number_unsigned()) {
          auto u = j.get<std::uint64_t>();
          if (u > static_cast<std::uint64_t>(kMaxWireInt)) throw mismatch("an integer of magnitude < 2^53");
          return Value(static_cast<std::int64_t>(u));
        }
        if (!j.is_number_integer()) throw mismatch("an integer");
        auto i = j.get<std::int64_t>();
        if (i > kMaxWireInt || i < -kMaxWireInt) throw mismatch("an integer of magnitude < 2^53");
        return Value(i);
      }
      case ScalarKind::Float64:
        if (!j.is_number()) throw mismatch("a number");
        return Value(j.get<double>());
    }
    return {};
  }

  const SchemaSet& schemas_;
  DecodeOptions opts_;
};

class Validator {
 public:
  explicit Validator(const SchemaSet& schemas) : schemas_(schemas) {}

  void message(const MessageSchema& schema, const Value& v, const std::string& where) const {
    if (!v.is_record()) fail(where, "must be a record");
    const auto& rec = v.as_record();
    if (rec.size() != schema.fields.size())
      fail(where, "has " + std::to_string(rec.size()) + " fields, expected " +
                      std::to_string(schema.fields.size()));
    for (std::size_t i = 0; i < rec.size(); ++i) {
      const auto& f = schema.fields[i];
      const std::string path = join(where, f.name);
      if (rec[i].first != f.name)
        fail(where, "field " + std::to_string(i) + " is '" + rec[i].first + "', expected '" + f.name + "'");
      if (f.repeated) {
        if (!rec[i].second.is_list()) fail(path, "must be a list");
        const auto& items = rec[i].second.as_list();
        for (std::size_t k = 0; k < items.size(); ++k)
          element(f, items[k], path + "[" + std::to_string(k) + "]");
      } else {
        element(f, rec[i].second, path);
      }
    }
  }

 private:
  [[noreturn]] static void fail(const std::string& path, const std::string& why) {
    throw Error(Errc::ValidationError, (path.empty() ? std::string("value") : "'" + path + "'") + " " + why);
  }

  void element(const FieldSchema& f, const Value& v, const std::string& path) const {
    if (!f.kind.is_scalar()) {
      message(schemas_.require_message(f.kind.message), v, path);
      return;
    }
    switch (*f.kind.scalar) {
      case ScalarKind::String:
        if (!v.is_string()) fail(path, "must be a string");
        break;
      case ScalarKind::Bool:
        if (!v.is_bool()) fail(path, "must be a bool");
        break;
      case ScalarKind::Int64:
        if (!v.is_int()) fail(path, "must be an int64");
        if (v.as_int() > kMaxWireInt || v.as_int() < -kMaxWireInt) fail(path, "exceeds the wire integer range");
        break;
      case ScalarKind::Float64:
        if (!v.is_float()) fail(path, "must be a float64");
        if (!std::isfinite(v.as_float())) fail(path, "must be finite");
        break;
    }
  }

  const SchemaSet& schemas_;
};

ordered_json to_json(const Value& v) {
  switch (v.type()) {
    case Value::Type::String: return v.as_string();
    case Value::Type::Int: return v.as_int();
    case Value::Type::Float: return v.as_float();
    case Value::Type::Bool: return v.as_bool();
    case Value::Type::List: {
      ordered_json arr = ordered_json::array();
      for (const auto& item : v.as_list()) arr.push_back(to_json(item));
      return arr;
    }
    case Value::Type::Record: {
      ordered_json obj = ordered_json::object();
      for (const auto& [name, field] : v.as_record()) obj[name] = to_json(field);
      return obj;
    }
  }
  return nullptr;
}

}  // namespace

Value decode(const SchemaSet& schemas, const MessageSchema& schema, std::string_view wire,
             DecodeOptions options) {
  json j;
  try {
    j = json::parse(wire);
  } catch (const json::parse_error& e) {
    throw Error(Errc::FieldTypeMismatch, std::string("body is not valid JSON: ") + e.what());
  }
  return Decoder(schemas, options).message(schema, j, "");
}

void validate(const SchemaSet& schemas, const MessageSchema& schema, const Value& value) {
  Validator(schemas).message(schema, value, "");
}

std::string encode(const SchemaSet& schemas, const MessageSchema& schema, const Value& value) {
  validate(schemas, schema, value);
  return to_json(value).dump();
}

Value zero_value(const SchemaSet& schemas, const MessageSchema& schema) {
  return Decoder(schemas, DecodeOptions{true}).message(schema, json::object(), "");
}

}  // namespace flow
