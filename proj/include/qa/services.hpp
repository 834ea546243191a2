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

#include <memory>
#include <string_view>

#include "flow/idl.hpp"
#include "flow/node_kit.hpp"
#include "flow/value.hpp"
#include "qa/bm25.hpp"
#include "qa/reader.hpp"

namespace qa {

/// The demo schema and flow, compiled into the library from flows/.
std::string_view demo_idl() noexcept;
std::string_view demo_flow() noexcept;
std::shared_ptr<const flow::SchemaSet> demo_schemas();

flow::Value to_value(const Answer& a);
Answer answer_from_value(const flow::Value& v);

/// Retrieval: {query, k, corpus_id} -> {docs}. Unknown corpora fail with
/// code UNKNOWN_CORPUS; negative k with BAD_K.
flow::NodeHandler retrieval_handler(std::shared_ptr<const CorpusSet> corpora, Bm25Params params = {});
flow::NodeHandler reader_handler(int max_span_tokens = kDefaultMaxSpanTokens);
flow::NodeHandler dedup_handler();
/// Negative top_n fails with code BAD_TOP_N.
flow::NodeHandler combiner_handler();

}  // namespace qa
