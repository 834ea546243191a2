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

#include "qa/bm25.hpp"

#include <omp.h>
#include <algorithm>
#include <cmath>
#include <istream>

#include <json.hpp>

#include "qa/error.hpp"
#include "qa/text.hpp"

namespace qa {

namespace {

// Below this many documents the OpenMP team costs more than it saves.
constexpr std::size_t kParallelMinDocs = 4096;

bool blank(std::string_view line) {
  return line.find_first_not_of(" \t\r\f\v") == std::string_view::npos;
}

double contribution(double idf_q, std::uint32_t tf, std::uint32_t dl, double avgdl, const Bm25Params& p) {
  const double f = tf;
  return idf_q * (f * (p.k1 + 1.0)) / (f + p.k1 * (1.0 - p.b + p.b * (dl / avgdl)));
}

}  // namespace

void InvertedIndex::add(Paragraph paragraph) {
  if (by_id_.count(paragraph.doc_id)) throw Error(Errc::DuplicateDocId, paragraph.doc_id);
  const auto doc = static_cast<std::uint32_t>(docs_.size());
  std::map<std::uint32_t, std::uint32_t> counts;
  std::uint32_t length = 0;
  for (const auto& tok : tokenize(paragraph.text)) {
    auto [it, inserted] = vocab_.try_emplace(tok.term, static_cast<std::uint32_t>(postings_.size()));
    if (inserted) postings_.emplace_back();
    ++counts[it->second];
    ++length;
  }
  auto& fwd = forward_.emplace_back();
  for (auto [term, tf] : counts) {
    postings_[term].push_back(Posting{doc, tf});
    fwd.emplace_back(term, tf);
  }
  by_id_.emplace(paragraph.doc_id, docs_.size());
  docs_.push_back(std::move(paragraph));
  lengths_.push_back(length);
  total_length_ += length;
}

double InvertedIndex::avgdl() const noexcept {
  return docs_.empty() ? 0.0 : static_cast<double>(total_length_) / static_cast<double>(docs_.size());
}

std::optional<std::size_t> InvertedIndex::find(std::string_view doc_id) const {
  auto it = by_id_.find(std::string(doc_id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::span<const Posting> InvertedIndex::postings(std::string_view term) const {
  auto it = vocab_.find(term);
  if (it == vocab_.end()) return {};
  return postings_[it->second];
}

std::uint32_t InvertedIndex::tf(std::string_view term, std::size_t doc) const {
  auto it = vocab_.find(term);
  if (it == vocab_.end()) return 0;
  const auto& fwd = forward_.at(doc);
  auto p = std::lower_bound(fwd.begin(), fwd.end(), std::make_pair(it->second, std::uint32_t{0}));
  return (p != fwd.end() && p->first == it->second) ? p->second : 0;
}

InvertedIndex ingest(std::string corpus_id, std::istream& jsonl) {
  InvertedIndex index(std::move(corpus_id));
  std::string line;
  int line_no = 0;
  while (std::getline(jsonl, line)) {
    ++line_no;
    if (blank(line)) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
      throw Error(Errc::MalformedLine, "line " + std::to_string(line_no) + ": not a JSON object");
    for (const char* key : {"id", "title", "text"}) {
      if (!j.contains(key) || !j[key].is_string())
        throw Error(Errc::MalformedLine,
                    "line " + std::to_string(line_no) + ": missing string field \"" + key + "\"");
    }
    const std::string id = j["id"].get<std::string>();
    const std::string title = j["title"].get<std::string>();
    const std::string text = j["text"].get<std::string>();

    // A paragraph is a maximal run of non-blank lines, kept verbatim.
    int para = 0;
    std::size_t pos = 0, start = std::string::npos, end = 0;
    while (pos <= text.size()) {
      std::size_t nl = text.find('\n', pos);
      if (nl == std::string::npos) nl = text.size();
      std::string_view l(text.data() + pos, nl - pos);
      if (blank(l)) {
        if (start != std::string::npos) {
          index.add(Paragraph{id + "#" + std::to_string(para++), title, text.substr(start, end - start)});
          start = std::string::npos;
        }
      } else {
        if (start == std::string::npos) start = pos;
        end = nl;
      }
      pos = nl + 1;
    }
    if (start != std::string::npos)
      index.add(Paragraph{id + "#" + std::to_string(para++), title, text.substr(start, end - start)});
  }
  return index;
}

double idf(std::size_t n_docs, std::size_t df) {
  const double N = static_cast<double>(n_docs);
  const double n = static_cast<double>(df);
  return std::log(1.0 + (N - n + 0.5) / (n + 0.5));
}

double bm25_score(const InvertedIndex& index, const Bm25Params& params, std::span<const std::string> terms,
                  std::string_view doc_id) {
  auto doc = index.find(doc_id);
  if (!doc) throw Error(Errc::UnknownDoc, std::string(doc_id));
  double score = 0.0;
  for (const auto& t : terms) {
    std::uint32_t tf = index.tf(t, *doc);
    if (tf == 0) continue;
    score += contribution(idf(index.size(), index.df(t)), tf, index.doc_length(*doc), index.avgdl(), params);
  }
  return score;
}

// Term-at-a-time: walk each posting list once.
std::vector<double> score_all_serial(const InvertedIndex& index, const Bm25Params& params,
                                     std::span<const std::string> terms) {
  std::vector<double> scores(index.size(), 0.0);
  const double avgdl = index.avgdl();
  for (const auto& t : terms) {
    auto plist = index.postings(t);
    const double w = idf(index.size(), plist.size());
    for (const Posting& p : plist) scores[p.doc] += contribution(w, p.tf, index.doc_length(p.doc), avgdl, params);
  }
  return scores;
}

// Document-at-a-time: each thread owns a slice of documents.
std::vector<double> score_all_parallel(const InvertedIndex& index, const Bm25Params& params,
                                       std::span<const std::string> terms) {
  const std::size_t n = index.size();
  std::vector<double> scores(n, 0.0);
  std::vector<std::span<const Posting>> lists;
  std::vector<double> weights;
  for (const auto& t : terms) {
    lists.push_back(index.postings(t));
    weights.push_back(idf(n, lists.back().size()));
  }
  const double avgdl = index.avgdl();
  // Each thread owns a contiguous doc range and walks every posting list
  // inside it, so a document still sees its terms in query order.
#pragma omp parallel
  {
    const auto threads = static_cast<std::size_t>(omp_get_num_threads());
    const auto self = static_cast<std::size_t>(omp_get_thread_num());
    const std::size_t lo = n * self / threads;
    const std::size_t hi = n * (self + 1) / threads;
    for (std::size_t q = 0; q < lists.size(); ++q) {
      auto it = std::lower_bound(lists[q].begin(), lists[q].end(), lo,
                                 [](const Posting& p, std::size_t d) { return p.doc < d; });
      for (; it != lists[q].end() && it->doc < hi; ++it)
        scores[it->doc] += contribution(weights[q], it->tf, index.doc_length(it->doc), avgdl, params);
    }
  }
  return scores;
}

std::vector<RetrievedDoc> retrieve(const InvertedIndex& index, const Bm25Params& params, std::string_view query,
                                   std::size_t k) {
  if (k == 0) return {};
  const std::vector<std::string> terms = content_terms(query);
  if (terms.empty()) return {};
  const std::vector<double> scores = index.size() >= kParallelMinDocs ? score_all_parallel(index, params, terms)
                                                                       : score_all_serial(index, params, terms);
  std::vector<std::size_t> hits;
  for (std::size_t d = 0; d < scores.size(); ++d)
    if (scores[d] > 0.0) hits.push_back(d);
  auto better = [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return index.doc(a).doc_id < index.doc(b).doc_id;
  };
  const std::size_t take = std::min(k, hits.size());
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(take), hits.end(), better);
  std::vector<RetrievedDoc> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    const Paragraph& p = index.doc(hits[i]);
    out.push_back(RetrievedDoc{p.doc_id, p.title, p.text, scores[hits[i]]});
  }
  return out;
}

}  // namespace qa
