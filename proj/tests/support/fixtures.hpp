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

#include <chrono>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

#include "flow/idl.hpp"
#include "flow/node_kit.hpp"
#include "qa/bm25.hpp"

#ifndef FLOWPIPE_SOURCE_DIR
#error "FLOWPIPE_SOURCE_DIR must point at the repository root"
#endif

namespace fixture {

inline std::string path(const std::string& rel) { return std::string(FLOWPIPE_SOURCE_DIR) + "/" + rel; }

inline std::string read(const std::string& rel) {
  std::ifstream f(path(rel), std::ios::binary);
  if (!f) throw std::runtime_error("missing fixture " + rel);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline qa::InvertedIndex demo_index() {
  std::ifstream in(path("data/corpus.jsonl"));
  return qa::ingest("demo", in);
}

inline std::shared_ptr<const qa::CorpusSet> demo_corpora() {
  auto c = std::make_shared<qa::CorpusSet>();
  c->emplace("demo", demo_index());
  return c;
}

inline std::shared_ptr<const flow::SchemaSet> schemas(std::string_view idl) {
  return std::make_shared<const flow::SchemaSet>(flow::parse_idl(idl));
}

/// Reader stand-in that sleeps, then answers with the passage's doc id.
inline flow::NodeHandler sleeping_reader(std::chrono::milliseconds delay) {
  return [delay](const flow::Value& in) {
    std::this_thread::sleep_for(delay);
    const std::string& id = in.at("doc_id").as_string();
    return flow::Value(flow::Value::Record{
        {"answer", flow::Value(flow::Value::Record{{"text", id},
                                                   {"begin_char", std::int64_t{0}},
                                                   {"end_char", static_cast<std::int64_t>(id.size())},
                                                   {"score", 0.5},
                                                   {"no_answer_score", 0.5},
                                                   {"doc_id", id}})}});
  };
}

/// Retrieval stand-in returning `n` synthetic passages regardless of query.
inline flow::NodeHandler fixed_retrieval(int n) {
  return [n](const flow::Value&) {
    flow::Value::List docs;
    for (int i = 0; i < n; ++i) {
      std::string id = "p" + std::to_string(i);
      docs.push_back(flow::Value(flow::Value::Record{
          {"doc_id", id}, {"title", id}, {"text", "passage " + id}, {"score", 1.0}}));
    }
    return flow::Value(flow::Value::Record{{"docs", flow::Value(std::move(docs))}});
  };
}

}  // namespace fixture
