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

#include "qa/postproc.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "qa/text.hpp"

namespace qa {

namespace {

bool preferred(const Answer& a, const Answer& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.doc_id != b.doc_id) return a.doc_id < b.doc_id;
  return a.begin_char < b.begin_char;
}

}  // namespace

std::vector<Answer> dedup(const std::vector<Answer>& answers) {
  std::map<std::string, std::size_t> winner;
  for (std::size_t i = 0; i < answers.size(); ++i) {
    std::string key = normalize_answer(answers[i].text);
    if (key.empty()) continue;
    auto [it, inserted] = winner.try_emplace(std::move(key), i);
    if (!inserted && preferred(answers[i], answers[it->second])) it->second = i;
  }
  std::vector<std::size_t> kept;
  for (const auto& [key, i] : winner) kept.push_back(i);
  std::sort(kept.begin(), kept.end());
  std::vector<Answer> out;
  for (std::size_t i : kept) out.push_back(answers[i]);
  return out;
}

std::vector<Answer> combine(const std::vector<Answer>& answers, double threshold, std::size_t top_n) {
  std::vector<Answer> out;
  for (const auto& a : answers)
    if (a.score >= threshold) out.push_back(a);
  std::stable_sort(out.begin(), out.end(), preferred);
  if (out.size() > top_n) out.resize(top_n);
  return out;
}

}  // namespace qa
