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

// One minimal flow per graph-compiler error, all over the same toy schema.

#include <string>
#include <utility>
#include <vector>

#include "flow/error.hpp"

namespace catalog {

inline constexpr const char* kIdl = R"(
message Item { repeated string tags = 1; string name = 2; }
message In { string s = 1; int64 n = 2; repeated string xs = 3; repeated Item items = 4; }
message Out { string s = 1; }
message ListOut { repeated string ss = 1; }
message SIn { string s = 1; }
message SOut { string s = 1; }
message NIn { int64 n = 1; }
message LIn { repeated string ss = 1; }
message PairIn { string a = 1; string b = 2; }
service Str { input SIn; output SOut; }
service Num { input NIn; output SOut; }
service Lst { input LIn; output SOut; }
service Pair { input PairIn; output SOut; }
)";

inline std::string nodes(std::vector<std::pair<std::string, std::string>> decls) {
  std::string out;
  int port = 1;
  for (const auto& [name, service] : decls)
    out += "[node " + name + "]\nservice = " + service + "\naddress = h:" + std::to_string(port++) + "\n";
  return out;
}

inline std::string entry(const std::string& output = "Out") {
  return "[entry e]\ninput = In\noutput = " + output + "\n";
}

struct Case {
  flow::Errc code;
  std::string source;
};

inline std::vector<Case> cases() {
  return {
      {flow::Errc::TypeMismatch,
       nodes({{"a", "Num"}}) + entry() + "[map]\nentry.e.input.s -> a.input.n\na.output.s -> entry.e.output.s\n"},
      {flow::Errc::UnboundInput,
       nodes({{"p", "Pair"}}) + entry() + "[map]\nentry.e.input.s -> p.input.a\np.output.s -> entry.e.output.s\n"},
      {flow::Errc::MultiplyBoundInput,
       nodes({{"a", "Str"}}) + entry() +
           "[map]\nentry.e.input.s -> a.input.s\nconst \"k\" -> a.input.s\na.output.s -> entry.e.output.s\n"},
      {flow::Errc::CycleDetected,
       nodes({{"a", "Str"}, {"b", "Str"}}) + entry() +
           "[map]\na.output.s -> b.input.s\nb.output.s -> a.input.s\nb.output.s -> entry.e.output.s\n"},
      {flow::Errc::NestedFanout,
       nodes({{"a", "Str"}}) + entry("ListOut") +
           "[map]\nentry.e.input.items[].tags[] -> a.input.s\na.output.s -> entry.e.output.ss[]\n"},
      {flow::Errc::MixedFrames,
       nodes({{"p", "Pair"}}) + entry("ListOut") +
           "[map]\nentry.e.input.xs[] -> p.input.a\nentry.e.input.items[].name -> p.input.b\n"
           "p.output.s -> entry.e.output.ss[]\n"},
      {flow::Errc::GatherOutsideRegion,
       nodes({{"l", "Lst"}}) + entry() + "[map]\nentry.e.input.s -> l.input.ss[]\nl.output.s -> entry.e.output.s\n"},
      {flow::Errc::UnreachableNode,
       nodes({{"a", "Str"}}) + entry() + "[map]\nconst \"k\" -> a.input.s\nentry.e.input.s -> entry.e.output.s\n"},
      {flow::Errc::DanglingEntryOutput, nodes({{"a", "Str"}}) + entry() + "[map]\nentry.e.input.s -> a.input.s\n"},
  };
}

}  // namespace catalog
