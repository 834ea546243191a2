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

namespace qa {

/// An extracted span. `text` is passage[begin_char, end_char) in bytes and
/// score + no_answer_score == 1.
struct Answer {
  std::string text;
  std::int64_t begin_char = 0;
  std::int64_t end_char = 0;
  double score = 0.0;
  double no_answer_score = 1.0;
  std::string doc_id;

  friend bool operator==(const Answer&, const Answer&) = default;
};

inline constexpr int kDefaultMaxSpanTokens = 30;

/// Best span of at most `max_span_tokens` passage tokens, scored by F1 of its
/// tokens against the question's content terms: with m distinct question
/// terms in a span of L tokens and q question terms, score = 2m / (L + q).
/// Ties go to the earlier start, then the shorter span. A zero best score
/// yields an empty answer at offset 0.
Answer read_span(std::string_view question, std::string_view passage, std::string_view doc_id,
                 int max_span_tokens = kDefaultMaxSpanTokens);

}  // namespace qa
