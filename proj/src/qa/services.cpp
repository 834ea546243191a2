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

#include "qa/services.hpp"

#include "qa/error.hpp"
#include "qa/postproc.hpp"

namespace qa {

using flow::Value;

std::shared_ptr<const flow::SchemaSet> demo_schemas() {
  static const auto schemas = std::make_shared<const flow::SchemaSet>(flow::parse_idl(demo_idl()));
  return schemas;
}

Value to_value(const Answer& a) {
  return Value(Value::Record{{"text", a.text},
                             {"begin_char", a.begin_char},
                             {"end_char", a.end_char},
                             {"score", a.score},
                             {"no_answer_score", a.no_answer_score},
                             {"doc_id", a.doc_id}});
}

Answer answer_from_value(const Value& v) {
  return Answer{v.at("text").as_string(),      v.at("begin_char").as_int(), v.at("end_char").as_int(),
                v.at("score").as_float(),      v.at("no_answer_score").as_float(),
                v.at("doc_id").as_string()};
}

namespace {

std::vector<Answer> answers_of(const Value& list) {
  std::vector<Answer> out;
  for (const auto& a : list.as_list()) out.push_back(answer_from_value(a));
  return out;
}

Value answers_value(const std::vector<Answer>& answers) {
  Value::List out;
  for (const auto& a : answers) out.push_back(to_value(a));
  return Value(Value::Record{{"answers", Value(std::move(out))}});
}

}  // namespace

flow::NodeHandler retrieval_handler(std::shared_ptr<const CorpusSet> corpora, Bm25Params params) {
  return [corpora = std::move(corpora), params](const Value& in) {
    const std::string& corpus = in.at("corpus_id").as_string();
    auto it = corpora->find(corpus);
    if (it == corpora->end()) throw flow::HandlerError("no such corpus: " + corpus, "UNKNOWN_CORPUS");
    const std::int64_t k = in.at("k").as_int();
    if (k < 0) throw flow::HandlerError("k must be >= 0", "BAD_K");
    Value::List docs;
    for (auto& d : retrieve(it->second, params, in.at("query").as_string(), static_cast<std::size_t>(k))) {
      docs.push_back(Value(Value::Record{{"doc_id", std::move(d.doc_id)},
                                         {"title", std::move(d.title)},
                                         {"text", std::move(d.text)},
                                         {"score", d.score}}));
    }
    return Value(Value::Record{{"docs", Value(std::move(docs))}});
  };
}

flow::NodeHandler reader_handler(int max_span_tokens) {
  return [max_span_tokens](const Value& in) {
    Answer a = read_span(in.at("question").as_string(), in.at("text").as_string(), in.at("doc_id").as_string(),
                         max_span_tokens);
    return Value(Value::Record{{"answer", to_value(a)}});
  };
}

flow::NodeHandler dedup_handler() {
  return [](const Value& in) { return answers_value(dedup(answers_of(in.at("answers")))); };
}

flow::NodeHandler combiner_handler() {
  return [](const Value& in) {
    const std::int64_t top_n = in.at("top_n").as_int();
    if (top_n < 0) throw flow::HandlerError("top_n must be >= 0", "BAD_TOP_N");
    return answers_value(
        combine(answers_of(in.at("answers")), in.at("threshold").as_float(), static_cast<std::size_t>(top_n)));
  };
}

}  // namespace qa
