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
#include <vector>

#include "qa/reader.hpp"

namespace qa {

/// Keeps one answer per normalize_answer() key: the highest score, then the
/// lowest doc_id, then the lowest begin_char, then the first seen. Kept
/// answers stay in input order; answers that normalize to "" are dropped.
std::vector<Answer> dedup(const std::vector<Answer>& answers);

/// Answers with score >= threshold, ordered by score desc, doc_id asc,
/// begin_char asc, cut to `top_n`.
std::vector<Answer> combine(const std::vector<Answer>& answers, double threshold, std::size_t top_n);

}  // namespace qa
