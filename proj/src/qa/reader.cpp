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

#include "qa/reader.hpp"

#include <algorithm>
#include <vector>

#include "qa/text.hpp"

namespace qa {

Answer read_span(std::string_view question, std::string_view passage, std::string_view doc_id,
                 int max_span_tokens) {
  Answer none;
  none.doc_id = std::string(doc_id);
  const std::vector<std::string> q = content_terms(question);
  const std::vector<Token> toks = tokenize(passage);
  if (q.empty() || toks.empty() || max_span_tokens < 1) return none;

  // Question-term id per passage token, -1 for others.
  std::vector<int> id(toks.size(), -1);
  for (std::size_t i = 0; i < toks.size(); ++i) {
    auto it = std::lower_bound(q.begin(), q.end(), toks[i].term);
    if (it != q.end() && *it == toks[i].term) id[i] = static_cast<int>(it - q.begin());
  }

  const std::int64_t qn = static_cast<std::int64_t>(q.size());
  std::int64_t best_m = 0, best_len = 1;
  std::size_t best_i = 0, best_j = 0;
  std::vector<int> seen(q.size(), -1);
  for (std::size_t i = 0; i < toks.size(); ++i) {
    std::int64_t m = 0;
    const std::size_t stop = std::min(toks.size(), i + static_cast<std::size_t>(max_span_tokens));
    for (std::size_t j = i; j < stop; ++j) {
      if (id[j] >= 0 && seen[id[j]] != static_cast<int>(i)) {
        seen[id[j]] = static_cast<int>(i);
        ++m;
      }
      const std::int64_t len = static_cast<std::int64_t>(j - i + 1);
      // m/(len+q) > best_m/(best_len+q), exactly; equal ratios keep the earlier start and shorter span.
      if (m * (best_len + qn) > best_m * (len + qn)) {
        best_m = m;
        best_len = len;
        best_i = i;
        best_j = j;
      }
    }
  }
  if (best_m == 0) return none;

  Answer a;
  a.begin_char = static_cast<std::int64_t>(toks[best_i].begin);
  a.end_char = static_cast<std::int64_t>(toks[best_j].end);
  a.text = std::string(passage.substr(toks[best_i].begin, toks[best_j].end - toks[best_i].begin));
  a.score = 2.0 * static_cast<double>(best_m) / static_cast<double>(best_len + qn);
  a.no_answer_score = 1.0 - a.score;
  a.doc_id = std::string(doc_id);
  return a;
}

}  // namespace qa
