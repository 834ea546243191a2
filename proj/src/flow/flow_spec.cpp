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

#include "flow/flow_spec.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <set>

namespace flow {

namespace {

using json = nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

// Drops a trailing `# comment`, ignoring '#' inside JSON string literals.
std::string_view strip_comment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
    } else if (c == '"') {
      in_string = true;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

bool valid_address(std::string_view addr) {
  auto colon = addr.rfind(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  for (char c : addr.substr(0, colon))
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_')) return false;
  auto port = parse_int(addr.substr(colon + 1));
  return port && *port >= 1 && *port <= 65535;
}

bool bare_safe(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || std::string_view("._/:@-+").find(c) != std::string_view::npos))
      return false;
  return true;
}

std::string render_string(const std::string& s) { return bare_safe(s) ? s : json(s).dump(); }

enum class Section { None, Node, Entry, Map, Deploy };

struct RawMapping {
  std::string source;
  std::string sink;
  int line;
};

class FlowParser {
 public:
  FlowParser(std::string_view src, const SchemaSet& schemas) : src_(src), schemas_(schemas) {}

  FlowSpec run() {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= src_.size()) {
      std::size_t nl = src_.find('\n', pos);
      std::string_view raw = src_.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      ++line_no;
      line(trim(strip_comment(raw)), line_no);
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    finish_section();
    for (const auto& m : raw_mappings_) spec_.mappings.push_back(resolve_mapping(m));
    return std::move(spec_);
  }

 private:
  [[noreturn]] static void fail(Errc code, const std::string& msg, int line) {
    throw Error(code, msg, SourcePos{line, 0});
  }

  void line(std::string_view text, int n) {
    if (text.empty()) return;
    if (text.front() == '[') {
      header(text, n);
      return;
    }
    switch (section_) {
      case Section::None: fail(Errc::SyntaxError, "content before the first section header", n);
      case Section::Map: mapping_line(text, n); return;
      default: key_value(text, n); return;
    }
  }

  void header(std::string_view text, int n) {
    if (text.back() != ']') fail(Errc::SyntaxError, "unterminated section header", n);
    finish_section();
    std::string_view inner = trim(text.substr(1, text.size() - 2));
    auto space = inner.find_first_of(" \t");
    std::string_view kind = inner.substr(0, space);
    std::string_view name = space == std::string_view::npos ? std::string_view{} : trim(inner.substr(space));
    section_line_ = n;
    keys_.clear();
    if (kind == "node" || kind == "entry") {
      if (!is_identifier(name)) fail(Errc::SyntaxError, "expected a name in [" + std::string(kind) + " NAME]", n);
      if (name == "entry" || name == "const")
        fail(Errc::SyntaxError, "'" + std::string(name) + "' is reserved", n);
      section_ = kind == "node" ? Section::Node : Section::Entry;
      section_name_ = std::string(name);
      if (section_ == Section::Node) {
        if (spec_.node(section_name_)) fail(Errc::DuplicateNode, "node '" + section_name_ + "' declared twice", n);
        spec_.nodes.push_back(NodeDecl{section_name_, {}, {}, 5000, false, std::nullopt, n});
      } else {
        if (spec_.entry(section_name_))
          fail(Errc::DuplicateEntry, "entry '" + section_name_ + "' declared twice", n);
        spec_.entries.push_back(EntryDecl{section_name_, {}, {}});
      }
    } else if ((kind == "map" || kind == "deploy") && name.empty()) {
      section_ = kind == "map" ? Section::Map : Section::Deploy;
      if (section_ == Section::Deploy) {
        if (seen_deploy_) fail(Errc::SyntaxError, "[deploy] declared twice", n);
        seen_deploy_ = true;
      }
    } else {
      fail(Errc::SyntaxError, "unknown section '[" + std::string(inner) + "]'", n);
    }
  }

  void finish_section() {
    auto need = [&](const char* key) {
      if (!keys_.count(key))
        fail(Errc::SyntaxError, std::string("missing key '") + key + "' in [" +
                                    (section_ == Section::Node ? "node " : "entry ") + section_name_ + "]",
             section_line_);
    };
    if (section_ == Section::Node) {
      need("service");
      need("address");
    } else if (section_ == Section::Entry) {
      need("input");
      need("output");
    }
    section_ = Section::None;
  }

  static std::string string_value(std::string_view v, int n) {
    if (!v.empty() && v.front() == '"') {
      try {
        auto j = json::parse(v);
        if (j.is_string()) return j.get<std::string>();
      } catch (const json::parse_error&) {
      }
      fail(Errc::SyntaxError, "malformed quoted string", n);
    }
    if (v.empty()) fail(Errc::SyntaxError, "empty value", n);
    return std::string(v);
  }

  void key_value(std::string_view text, int n) {
    auto eq = text.find('=');
    if (eq == std::string_view::npos) fail(Errc::SyntaxError, "expected 'key = value'", n);
    std::string key(trim(text.substr(0, eq)));
    std::string_view value = trim(text.substr(eq + 1));
    if (!keys_.insert(key).second) fail(Errc::SyntaxError, "key '" + key + "' repeated", n);

    if (section_ == Section::Node) {
      NodeDecl& node = spec_.nodes.back();
      if (key == "service") {
        node.service = string_value(value, n);
        if (!schemas_.service(node.service))
          fail(Errc::UnknownService, "unknown service '" + node.service + "'", n);
      } else if (key == "address") {
        node.address = string_value(value, n);
        if (!valid_address(node.address)) fail(Errc::SyntaxError, "malformed address '" + node.address + "'", n);
      } else if (key == "timeout_ms") {
        auto v = parse_int(value);
        if (!v || *v < 1) fail(Errc::SyntaxError, "timeout_ms must be a positive integer", n);
        node.timeout_ms = *v;
      } else if (key == "parallel") {
        if (value == "true") node.parallel = true;
        else if (value == "false") node.parallel = false;
        else fail(Errc::SyntaxError, "parallel must be true or false", n);
      } else if (key == "image") {
        node.image = string_value(value, n);
      } else {
        fail(Errc::SyntaxError, "unknown node key '" + key + "'", n);
      }
    } else if (section_ == Section::Entry) {
      EntryDecl& entry = spec_.entries.back();
      std::string name = string_value(value, n);
      if (key != "input" && key != "output") fail(Errc::SyntaxError, "unknown entry key '" + key + "'", n);
      if (!schemas_.message(name)) fail(Errc::UnknownMessage, "unknown message '" + name + "'", n);
      (key == "input" ? entry.input : entry.output) = name;
    } else {
      if (key == "registry") {
        spec_.deploy.registry = string_value(value, n);
      } else if (key == "gateway_port") {
        auto v = parse_int(value);
        if (!v || *v < 1 || *v > 65535) fail(Errc::SyntaxError, "gateway_port must be in [1, 65535]", n);
        spec_.deploy.gateway_port = *v;
      } else {
        fail(Errc::SyntaxError, "unknown deploy key '" + key + "'", n);
      }
    }
  }

  void mapping_line(std::string_view text, int n) {
    auto arrow = text.rfind("->");
    if (arrow == std::string_view::npos) fail(Errc::SyntaxError, "expected 'SOURCE -> SINK'", n);
    raw_mappings_.push_back(
        RawMapping{std::string(trim(text.substr(0, arrow))), std::string(trim(text.substr(arrow + 2))), n});
  }

  Endpoint endpoint(std::string_view text, bool is_source, bool& gather, int n) const {
    auto bad = [&](const std::string& why) {
      fail(Errc::MalformedPath, "'" + std::string(text) + "': " + why, n);
    };
    Endpoint ep;
    std::string_view rest = text;
    auto take = [&]() {
      auto dot = rest.find('.');
      if (dot == std::string_view::npos) bad("expected OWNER.input|output.FIELD");
      std::string_view head = rest.substr(0, dot);
      rest.remove_prefix(dot + 1);
      return head;
    };
    std::string_view owner = take();
    bool entry = owner == "entry";
    if (entry) owner = take();
    std::string_view dir = take();
    if (dir != "input" && dir != "output") bad("expected 'input' or 'output' after the owner");
    ep.owner = std::string(owner);
    if (entry) {
      if (!spec_.entry(ep.owner)) bad("unknown entry '" + ep.owner + "'");
      ep.kind = dir == "input" ? Endpoint::Kind::EntryInput : Endpoint::Kind::EntryOutput;
    } else {
      if (!spec_.node(ep.owner)) bad("unknown node '" + ep.owner + "'");
      ep.kind = dir == "input" ? Endpoint::Kind::NodeInput : Endpoint::Kind::NodeOutput;
    }
    bool sink_kind = ep.kind == Endpoint::Kind::NodeInput || ep.kind == Endpoint::Kind::EntryOutput;
    if (is_source && sink_kind) bad("a " + std::string(entry ? "entry output" : "node input") + " cannot be a source");
    if (!is_source && !sink_kind) bad("a " + std::string(entry ? "entry input" : "node output") + " cannot be a sink");
    try {
      ep.path = parse_field_path(rest);
    } catch (const Error& e) {
      fail(Errc::MalformedPath, e.detail(), n);
    }
    if (!is_source) {
      for (std::size_t i = 0; i + 1 < ep.path.size(); ++i)
        if (ep.path[i].traverse) bad("'[]' in a sink is only allowed at the end");
      if (ep.path.back().traverse) {
        gather = true;
        ep.path.back().traverse = false;
      }
    }
    return ep;
  }

  static void check_constant(const json& j, int n, bool top) {
    if (j.is_array() && top) {
      for (const auto& item : j) check_constant(item, n, false);
      return;
    }
    if (!(j.is_string() || j.is_number() || j.is_boolean()))
      fail(Errc::MalformedConstant, "constants must be JSON scalars or arrays of scalars", n);
  }

  Mapping resolve_mapping(const RawMapping& raw) const {
    Mapping m;
    m.line = raw.line;
    std::string_view src = raw.source;
    if (src.substr(0, 6) == "const " || src.substr(0, 6) == "const\t" || src == "const") {
      m.source.kind = Endpoint::Kind::Constant;
      try {
        m.source.constant = json::parse(trim(src.substr(5)));
      } catch (const json::parse_error&) {
        fail(Errc::MalformedConstant, "'" + std::string(trim(src.substr(5))) + "' is not valid JSON", raw.line);
      }
      check_constant(m.source.constant, raw.line, true);
    } else {
      bool ignored = false;
      m.source = endpoint(src, true, ignored, raw.line);
    }
    m.sink = endpoint(raw.sink, false, m.gather, raw.line);
    return m;
  }

  std::string_view src_;
  const SchemaSet& schemas_;
  FlowSpec spec_;
  Section section_ = Section::None;
  std::string section_name_;
  int section_line_ = 0;
  std::set<std::string> keys_;
  bool seen_deploy_ = false;
  std::vector<RawMapping> raw_mappings_;
};

}  // namespace

std::string NodeDecl::host() const { return address.substr(0, address.rfind(':')); }

int NodeDecl::port() const { return parse_int(std::string_view(address).substr(address.rfind(':') + 1)).value_or(0); }

const NodeDecl* FlowSpec::node(std::string_view name) const {
  for (const auto& n : nodes)
    if (n.name == name) return &n;
  return nullptr;
}

const EntryDecl* FlowSpec::entry(std::string_view name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

std::string to_string(const Endpoint& e) {
  switch (e.kind) {
    case Endpoint::Kind::Constant: return "const " + e.constant.dump();
    case Endpoint::Kind::EntryInput: return "entry." + e.owner + ".input." + to_string(e.path);
    case Endpoint::Kind::EntryOutput: return "entry." + e.owner + ".output." + to_string(e.path);
    case Endpoint::Kind::NodeInput: return e.owner + ".input." + to_string(e.path);
    case Endpoint::Kind::NodeOutput: return e.owner + ".output." + to_string(e.path);
  }
  return {};
}

std::string to_string(const Mapping& m) {
  return to_string(m.source) + " -> " + to_string(m.sink) + (m.gather ? "[]" : "");
}

FlowSpec parse_flow(std::string_view source, const SchemaSet& schemas) {
  return FlowParser(source, schemas).run();
}

std::string print_flow(const FlowSpec& spec) {
  std::string out;
  for (const auto& n : spec.nodes) {
    out += "[node " + n.name + "]\n";
    out += "service = " + n.service + "\n";
    out += "address = " + n.address + "\n";
    out += "timeout_ms = " + std::to_string(n.timeout_ms) + "\n";
    out += std::string("parallel = ") + (n.parallel ? "true" : "false") + "\n";
    if (n.image) out += "image = " + render_string(*n.image) + "\n";
    out += "\n";
  }
  for (const auto& e : spec.entries) {
    out += "[entry " + e.name + "]\n";
    out += "input = " + e.input + "\n";
    out += "output = " + e.output + "\n\n";
  }
  out += "[map]\n";
  for (const auto& m : spec.mappings) out += to_string(m) + "\n";
  out += "\n[deploy]\n";
  if (spec.deploy.registry) out += "registry = " + render_string(*spec.deploy.registry) + "\n";
  out += "gateway_port = " + std::to_string(spec.deploy.gateway_port) + "\n";
  return out;
}

}  // namespace flow
