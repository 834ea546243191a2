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
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qa {

/// A token with byte offsets into the text it was cut from.
struct Token {
  std::string term;
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

/// The 33-word English stopword list, sorted.
std::span<const std::string_view> stopwords() noexcept;
bool is_stopword(std::string_view term) noexcept;

/// ASCII-lowercased runs of alphanumeric bytes with stopwords dropped. Bytes
/// >= 0x80 count as alphanumeric, so UTF-8 sequences never split a token.
std::vector<Token> tokenize(std::string_view text);

/// Distinct terms of `text`, sorted.
std::vector<std::string> content_terms(std::string_view text);

/// Lowercase, delete ASCII punctuation, drop the articles a/an/the, collapse
/// whitespace.
std::string normalize_answer(std::string_view text);

}  // namespace qa
