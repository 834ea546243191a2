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

#include "flow/idl.hpp"

#include <cctype>
#include <charconv>
#include <functional>
#include <set>

namespace flow {

std::string_view to_string(ScalarKind k) noexcept {
  switch (k) {
    case ScalarKind::String: return "string";
    case ScalarKind::Int64: return "int64";
    case ScalarKind::Float64: return "float64";
    case ScalarKind::Bool: return "bool";
  }
  return "?";
}

std::string FieldKind::name() const {
  return scalar ? std::string(to_string(*scalar)) : message;
}

const FieldSchema* MessageSchema::field(std::string_view n) const {
  for (const auto& f : fields)
    if (f.name == n) return &f;
  return nullptr;
}

SchemaSet::SchemaSet(std::vector<MessageSchema> messages, std::vector<ServiceSchema> services)
    : messages_(std::move(messages)), services_(std::move(services)) {
  for (std::size_t i = 0; i < messages_.size(); ++i) message_index_.emplace(messages_[i].name, i);
  for (std::size_t i = 0; i < services_.size(); ++i) service_index_.emplace(services_[i].name, i);
}

const MessageSchema* SchemaSet::message(std::string_view name) const {
  auto it = message_index_.find(name);
  return it == message_index_.end() ? nullptr : &messages_[it->second];
}

const ServiceSchema* SchemaSet::service(std::string_view name) const {
  auto it = service_index_.find(name);
  return it == service_index_.end() ? nullptr : &services_[it->second];
}

const MessageSchema& SchemaSet::require_message(std::string_view name) const {
  if (const auto* m = message(name)) return *m;
  throw Error(Errc::UnknownMessage, "unknown message '" + std::string(name) + "'");
}

const ServiceSchema& SchemaSet::require_service(std::string_view name) const {
  if (const auto* s = service(name)) return *s;
  throw Error(Errc::UnknownService, "unknown service '" + std::string(name) + "'");
}

namespace {

std::optional<ScalarKind> scalar_named(std::string_view name) {
  if (name == "string") return ScalarKind::String;
  if (name == "int64") return ScalarKind::Int64;
  if (name == "float64") return ScalarKind::Float64;
  if (name == "bool") return ScalarKind::Bool;
  return std::nullopt;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

enum class Tok { Ident, Int, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      SourcePos pos{line_, col_};
      if (i_ >= src_.size()) {
        out.push_back({Tok::End, "end of input", pos});
        return out;
      }
      char c = src_[i_];
      if (is_ident_start(c)) {
        std::size_t start = i_;
        while (i_ < src_.size() && is_ident_char(src_[i_])) advance();
        out.push_back({Tok::Ident, std::string(src_.substr(start, i_ - start)), pos});
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
        std::size_t start = i_;
        advance();
        while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) advance();
        out.push_back({Tok::Int, std::string(src_.substr(start, i_ - start)), pos});
      } else if (c == '{' || c == '}' || c == '=' || c == ';') {
        advance();
        out.push_back({Tok::Punct, std::string(1, c), pos});
      } else {
        throw Error(Errc::SyntaxError, std::string("unexpected character '") + c + "'", pos);
      }
    }
  }

 private:
  void advance() {
    if (src_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip_space_and_comments() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && i_ + 1 < src_.size() && src_[i_ + 1] == '/') {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

struct DeclPos {
  SourcePos name;
  std::vector<SourcePos> field_types;
  std::vector<SourcePos> field_numbers;
  SourcePos input;
  SourcePos output;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  SchemaSet run() {
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (t.kind == Tok::Ident && t.text == "message") {
        parse_message();
      } else if (t.kind == Tok::Ident && t.text == "service") {
        parse_service();
      } else {
        fail(t, "expected 'message' or 'service'");
      }
    }
    check();
    return SchemaSet(std::move(messages_), std::move(services_));
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_++]; }

  [[noreturn]] static void fail(const Token& t, const std::string& what) {
    throw Error(Errc::SyntaxError, what + ", found '" + t.text + "'", t.pos);
  }

  const Token& expect_punct(char p) {
    const Token& t = next();
    if (t.kind != Tok::Punct || t.text[0] != p) fail(t, std::string("expected '") + p + "'");
    return t;
  }

  const Token& expect_ident(const char* what) {
    const Token& t = next();
    if (t.kind != Tok::Ident) fail(t, std::string("expected ") + what);
    return t;
  }

  void expect_keyword(const char* kw) {
    const Token& t = next();
    if (t.kind != Tok::Ident || t.text != kw) fail(t, std::string("expected '") + kw + "'");
  }

  const Token& declared_name() {
    const Token& t = expect_ident("identifier");
    if (scalar_named(t.text) || t.text == "message" || t.text == "service" || t.text == "repeated")
      fail(t, "reserved word used as a type name");
    if (!names_.insert(t.text).second)
      throw Error(Errc::DuplicateName, "'" + t.text + "' is declared more than once", t.pos);
    return t;
  }

  void parse_message() {
    next();
    const Token& name = declared_name();
    MessageSchema msg{name.text, {}};
    DeclPos pos{name.pos, {}, {}, {}, {}};
    expect_punct('{');
    std::set<std::string> field_names;
    std::set<int> numbers;
    while (!(peek().kind == Tok::Punct && peek().text == "}")) {
      FieldSchema f;
      if (peek().kind == Tok::Ident && peek().text == "repeated") {
        next();
        f.repeated = true;
      }
      const Token& type = expect_ident("field type");
      if (auto s = scalar_named(type.text))
        f.kind = FieldKind::of(*s);
      else
        f.kind = FieldKind::of(type.text);
      const Token& fname = expect_ident("field name");
      f.name = fname.text;
      expect_punct('=');
      const Token& num = next();
      if (num.kind != Tok::Int) fail(num, "expected field number");
      int value = 0;
      auto [p, ec] = std::from_chars(num.text.data(), num.text.data() + num.text.size(), value);
      if (ec != std::errc{} || p != num.text.data() + num.text.size() || value < 1)
        throw Error(Errc::SyntaxError, "field number must be a positive integer, found '" + num.text + "'",
                    num.pos);
      f.number = value;
      expect_punct(';');
      if (!field_names.insert(f.name).second)
        throw Error(Errc::DuplicateName,
                    "field '" + f.name + "' is declared twice in message '" + msg.name + "'", fname.pos);
      if (!numbers.insert(f.number).second)
        throw Error(Errc::DuplicateFieldNumber,
                    "field number " + num.text + " is used twice in message '" + msg.name + "'", num.pos);
      pos.field_types.push_back(type.pos);
      pos.field_numbers.push_back(num.pos);
      msg.fields.push_back(std::move(f));
    }
    expect_punct('}');
    messages_.push_back(std::move(msg));
    message_pos_.push_back(std::move(pos));
  }

  void parse_service() {
    next();
    const Token& name = declared_name();
    ServiceSchema svc{name.text, {}, {}};
    DeclPos pos{name.pos, {}, {}, {}, {}};
    expect_punct('{');
    expect_keyword("input");
    const Token& in = expect_ident("message name");
    svc.input = in.text;
    pos.input = in.pos;
    expect_punct(';');
    expect_keyword("output");
    const Token& out = expect_ident("message name");
    svc.output = out.text;
    pos.output = out.pos;
    expect_punct(';');
    expect_punct('}');
    services_.push_back(std::move(svc));
    service_pos_.push_back(pos);
  }

  bool is_message(const std::string& n) const {
    for (const auto& m : messages_)
      if (m.name == n) return true;
    return false;
  }

  void check() const {
    for (std::size_t mi = 0; mi < messages_.size(); ++mi) {
      const auto& m = messages_[mi];
      for (std::size_t fi = 0; fi < m.fields.size(); ++fi) {
        const auto& f = m.fields[fi];
        if (!f.kind.is_scalar() && !is_message(f.kind.message))
          throw Error(Errc::UnknownTypeReference, "unknown type '" + f.kind.message + "'",
                      message_pos_[mi].field_types[fi]);
      }
    }
    for (std::size_t si = 0; si < services_.size(); ++si) {
      const auto& s = services_[si];
      if (!is_message(s.input))
        throw Error(Errc::UnknownTypeReference, "unknown type '" + s.input + "'", service_pos_[si].input);
      if (!is_message(s.output))
        throw Error(Errc::UnknownTypeReference, "unknown type '" + s.output + "'", service_pos_[si].output);
    }
    check_recursion();
  }

  void check_recursion() const {
    // 0 = unvisited, 1 = on stack, 2 = done
    std::vector<int> state(messages_.size(), 0);
    auto index_of = [&](const std::string& n) {
      for (std::size_t i = 0; i < messages_.size(); ++i)
        if (messages_[i].name == n) return i;
      return messages_.size();
    };
    std::vector<std::string> stack;
    std::function<void(std::size_t)> visit = [&](std::size_t i) {
      state[i] = 1;
      stack.push_back(messages_[i].name);
      for (const auto& f : messages_[i].fields) {
        if (f.kind.is_scalar()) continue;
        std::size_t j = index_of(f.kind.message);
        if (state[j] == 1) {
          std::string cycle;
          bool on = false;
          for (const auto& s : stack) {
            if (s == f.kind.message) on = true;
            if (on) cycle += s + " -> ";
          }
          cycle += f.kind.message;
          throw Error(Errc::RecursiveMessage, "message nesting is recursive: " + cycle, message_pos_[j].name);
        }
        if (state[j] == 0) visit(j);
      }
      stack.pop_back();
      state[i] = 2;
    };
    for (std::size_t i = 0; i < messages_.size(); ++i)
      if (state[i] == 0) visit(i);
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  std::set<std::string> names_;
  std::vector<MessageSchema> messages_;
  std::vector<ServiceSchema> services_;
  std::vector<DeclPos> message_pos_;
  std::vector<DeclPos> service_pos_;
};

}  // namespace

SchemaSet parse_idl(std::string_view source) {
  return Parser(Lexer(source).run()).run();
}

std::string print_idl(const SchemaSet& schemas) {
  std::string out;
  bool first = true;
  for (const auto& m : schemas.messages()) {
    if (!first) out += '\n';
    first = false;
    out += "message " + m.name + " {\n";
    for (const auto& f : m.fields) {
      out += "  ";
      if (f.repeated) out += "repeated ";
      out += f.kind.name() + " " + f.name + " = " + std::to_string(f.number) + ";\n";
    }
    out += "}\n";
  }
  for (const auto& s : schemas.services()) {
    if (!first) out += '\n';
    first = false;
    out += "service " + s.name + " {\n  input " + s.input + ";\n  output " + s.output + ";\n}\n";
  }
  return out;
}

FieldPath parse_field_path(std::string_view text) {
  FieldPath path;
  std::size_t i = 0;
  auto bad = [&](const std::string& why) -> Error {
    return Error(Errc::MalformedPath, "'" + std::string(text) + "': " + why);
  };
  if (text.empty()) throw bad("empty path");
  for (;;) {
    std::size_t start = i;
    if (i >= text.size() || !is_ident_start(text[i])) throw bad("expected field name");
    while (i < text.size() && is_ident_char(text[i])) ++i;
    PathSegment seg{std::string(text.substr(start, i - start)), false};
    if (text.substr(i, 2) == "[]") {
      seg.traverse = true;
      i += 2;
    }
    path.push_back(std::move(seg));
    if (i == text.size()) break;
    if (text[i] != '.') throw bad("unexpected character");
    ++i;
  }
  return path;
}

std::string to_string(const FieldPath& path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += '.';
    out += path[i].field;
    if (path[i].traverse) out += "[]";
  }
  return out;
}

PathType type_at_path(const SchemaSet& schemas, std::string_view message, const FieldPath& path) {
  const MessageSchema* msg = &schemas.require_message(message);
  PathType result;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto& seg = path[i];
    const FieldSchema* f = msg->field(seg.field);
    if (!f)
      throw Error(Errc::UnknownField, "message '" + msg->name + "' has no field '" + seg.field + "'");
    if (seg.traverse && !f->repeated)
      throw Error(Errc::TraversalOfScalar, "'[]' applied to non-repeated field '" + seg.field + "'");
    if (seg.traverse) ++result.traversals;
    bool last = i + 1 == path.size();
    if (!last) {
      if (f->repeated && !seg.traverse)
        throw Error(Errc::MissingTraversalMarker,
                    "path descends through repeated field '" + seg.field + "' without '[]'");
      if (f->kind.is_scalar())
        throw Error(Errc::UnknownField, "scalar field '" + seg.field + "' has no subfields");
      msg = &schemas.require_message(f->kind.message);
    } else {
      result.kind = f->kind;
      result.list = f->repeated && !seg.traverse;
    }
  }
  if (path.empty()) throw Error(Errc::UnknownField, "empty path");
  return result;
}

}  // namespace flow
