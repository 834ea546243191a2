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
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qa {

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

/// One retrieval unit: a paragraph of a source document.
struct Paragraph {
  std::string doc_id;  // "<id>#<paragraph index>"
  std::string title;
  std::string text;
};

struct Posting {
  std::uint32_t doc = 0;
  std::uint32_t tf = 0;  // >= 1
};

/// Immutable once built. Documents are referenced by insertion index.
class InvertedIndex {
 public:
  explicit InvertedIndex(std::string corpus_id = {}) : corpus_id_(std::move(corpus_id)) {}

  /// Throws DuplicateDocId.
  void add(Paragraph paragraph);

  const std::string& corpus_id() const noexcept { return corpus_id_; }
  std::size_t size() const noexcept { return docs_.size(); }
  double avgdl() const noexcept;
  const Paragraph& doc(std::size_t i) const { return docs_.at(i); }
  std::uint32_t doc_length(std::size_t i) const { return lengths_.at(i); }
  std::optional<std::size_t> find(std::string_view doc_id) const;

  /// Postings in ascending doc order; empty for unknown terms.
  std::span<const Posting> postings(std::string_view term) const;
  /// Document frequency n(q).
  std::size_t df(std::string_view term) const { return postings(term).size(); }
  /// f(q, D); 0 when absent.
  std::uint32_t tf(std::string_view term, std::size_t doc) const;

 private:
  std::string corpus_id_;
  std::vector<Paragraph> docs_;
  std::vector<std::uint32_t> lengths_;
  std::uint64_t total_length_ = 0;
  std::map<std::string, std::uint32_t, std::less<>> vocab_;
  std::vector<std::vector<Posting>> postings_;                          // by term id
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> forward_;  // per doc: (term id, tf), sorted
  std::unordered_map<std::string, std::size_t> by_id_;
};

/// Reads `{"id","title","text"}` lines, one paragraph unit per blank-line
/// separated block. Throws MalformedLine (1-based) and DuplicateDocId.
InvertedIndex ingest(std::string corpus_id, std::istream& jsonl);

/// ln(1 + (N - n + 0.5) / (n + 0.5)); non-negative for 0 <= n <= N.
double idf(std::size_t n_docs, std::size_t df);

/// Sum over `terms`, in order, of IDF(q) * tf*(k1+1) / (tf + k1*(1 - b + b*|D|/avgdl)).
/// Throws UnknownDoc.
double bm25_score(const InvertedIndex& index, const Bm25Params& params, std::span<const std::string> terms,
                  std::string_view doc_id);

/// Scores of every document. Both kernels add each document's per-term
/// contributions in `terms` order, so their results are bit-identical.
std::vector<double> score_all_serial(const InvertedIndex& index, const Bm25Params& params,
                                     std::span<const std::string> terms);
std::vector<double> score_all_parallel(const InvertedIndex& index, const Bm25Params& params,
                                       std::span<const std::string> terms);

struct RetrievedDoc {
  std::string doc_id;
  std::string title;
  std::string text;
  double score = 0.0;
};

/// Top `k` paragraphs with score > 0, by score descending then doc_id
/// ascending. Query terms are the distinct content terms of `query`.
std::vector<RetrievedDoc> retrieve(const InvertedIndex& index, const Bm25Params& params, std::string_view query,
                                   std::size_t k);

/// Named indexes served by one retrieval node.
using CorpusSet = std::map<std::string, InvertedIndex, std::less<>>;

}  // namespace qa
