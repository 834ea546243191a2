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

#include "qa/error.hpp"

namespace qa {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::MalformedLine: return "MalformedLine";
    case Errc::DuplicateDocId: return "DuplicateDocId";
    case Errc::UnknownDoc: return "UnknownDoc";
    case Errc::UnknownCorpus: return "UnknownCorpus";
    case Errc::EmptyResults: return "EmptyResults";
    case Errc::NoGold: return "NoGold";
    case Errc::GatewayUnreachable: return "GatewayUnreachable";
    case Errc::MalformedExample: return "MalformedExample";
  }
  return "Unknown";
}

}  // namespace qa
