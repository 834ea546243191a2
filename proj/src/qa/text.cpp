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

#include "qa/text.hpp"

#include <algorithm>
#include <array>

namespace qa {

namespace {

constexpr std::array<std::string_view, 33> kStopwords = {
    "a",    "an",   "and",   "are",  "as",    "at",    "be",   "but",  "by",   "for",  "if",
    "in",   "into", "is",    "it",   "no",    "not",   "of",   "on",   "or",   "such", "that",
    "the",  "their", "then", "there", "these", "they", "this", "to",   "was",  "will", "with",
};

bool word_byte(unsigned char c) noexcept {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

char lower(char c) noexcept { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool space(char c) noexcept { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool punct(char c) noexcept {
  unsigned char u = static_cast<unsigned char>(c);
  return (u >= 33 && u <= 47) || (u >= 58 && u <= 64) || (u >= 91 && u <= 96) || (u >= 123 && u <= 126);
}

}  // namespace

std::span<const std::string_view> stopwords() noexcept { return kStopwords; }

bool is_stopword(std::string_view term) noexcept {
  return std::binary_search(kStopwords.begin(), kStopwords.end(), term);
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!word_byte(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    std::string term;
    while (j < text.size() && word_byte(static_cast<unsigned char>(text[j]))) term += lower(text[j++]);
    if (!is_stopword(term)) out.push_back(Token{std::move(term), i, j});
    i = j;
  }
  return out;
}

std::vector<std::string> content_terms(std::string_view text) {
  std::vector<std::string> out;
  for (auto& t : tokenize(text)) out.push_back(std::move(t.term));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string normalize_answer(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!punct(c)) s += lower(c);
  std::string out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (space(s[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && !space(s[j])) ++j;
    std::string_view w(s.data() + i, j - i);
    if (w != "a" && w != "an" && w != "the") {
      if (!out.empty()) out += ' ';
      out += w;
    }
    i = j;
  }
  return out;
}

}  // namespace qa
