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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "qa/bm25.hpp"
#include "qa/error.hpp"
#include "qa/text.hpp"

using namespace qa;

namespace {

InvertedIndex from_jsonl(const std::string& text) {
  std::istringstream in(text);
  return ingest("t", in);
}

qa::Errc ingest_error(const std::string& text) {
  try {
    from_jsonl(text);
  } catch (const qa::Error& e) {
    return e.code();
  }
  FAIL("ingested");
  return qa::Errc::MalformedLine;
}

InvertedIndex from_texts(const std::vector<std::string>& texts) {
  InvertedIndex idx("t");
  for (std::size_t i = 0; i < texts.size(); ++i) idx.add({"d" + std::to_string(i), "", texts[i]});
  return idx;
}

}  // namespace

TEST_CASE("ingest splits paragraphs on blank lines") {
  auto idx = from_jsonl(
      R"({"id":"a","title":"A","text":"one two\nthree\n\n  \nfour five"})"
      "\n\n"
      R"({"id":"b","title":"B","text":"six"})"
      "\n");
  REQUIRE(idx.size() == 3);
  CHECK(idx.doc(0).doc_id == "a#0");
  CHECK(idx.doc(0).text == "one two\nthree");
  CHECK(idx.doc(0).title == "A");
  CHECK(idx.doc(1).doc_id == "a#1");
  CHECK(idx.doc(1).text == "four five");
  CHECK(idx.doc(2).doc_id == "b#0");
  CHECK(idx.find("a#1") == std::optional<std::size_t>(1));
  CHECK_FALSE(idx.find("a"));
  CHECK(idx.corpus_id() == "t");
}

TEST_CASE("ingest errors") {
  CHECK(ingest_error("{\"id\":\"a\",\"title\":\"\",\"text\":\"x\"}\nnope\n") == qa::Errc::MalformedLine);
  CHECK(ingest_error("{\"id\":\"a\",\"text\":\"x\"}\n") == qa::Errc::MalformedLine);
  CHECK(ingest_error("{\"id\":1,\"title\":\"\",\"text\":\"x\"}\n") == qa::Errc::MalformedLine);
  CHECK(ingest_error("{\"id\":\"a\",\"title\":\"\",\"text\":\"x\"}\n{\"id\":\"a\",\"title\":\"\",\"text\":\"y\"}\n") ==
        qa::Errc::DuplicateDocId);
  try {
    from_jsonl("\n{\"id\":\"a\",\"title\":\"\",\"text\":\"x\"}\n[1]\n");
  } catch (const qa::Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("index statistics match a recount") {
  auto idx = fixture::demo_index();
  REQUIRE(idx.size() > 20);
  double total = 0;
  for (std::size_t d = 0; d < idx.size(); ++d) {
    auto toks = oracle::tokens(idx.doc(d).text);
    CHECK(idx.doc_length(d) == toks.size());
    total += static_cast<double>(toks.size());
    std::map<std::string, unsigned> tf;
    for (auto& t : toks) ++tf[t.term];
    for (auto& [term, f] : tf) CHECK(idx.tf(term, d) == f);
  }
  CHECK(idx.avgdl() == Catch::Approx(total / static_cast<double>(idx.size())).epsilon(1e-12));
  for (const char* term : {"harbor", "lighthouse", "river"}) {
    std::size_t n = 0;
    for (std::size_t d = 0; d < idx.size(); ++d) n += idx.tf(term, d) > 0;
    CHECK(idx.df(term) == n);
    auto p = idx.postings(term);
    CHECK(std::is_sorted(p.begin(), p.end(), [](auto& a, auto& b) { return a.doc < b.doc; }));
  }
  CHECK(idx.postings("zzzz").empty());
  CHECK(idx.df("the") == 0);
}

TEST_CASE("idf") {
  CHECK(idf(3, 1) == Catch::Approx(std::log(8.0 / 3.0)).epsilon(1e-15));
  CHECK(idf(10, 10) > 0);
  CHECK(idf(1, 0) == Catch::Approx(std::log(1 + 1.5 / 0.5)));
}

TEST_CASE("bm25_score matches the reference formula on a small corpus") {
  const std::vector<std::string> texts{"the river bridge", "river river island", "stone tower by the river",
                                       "winter market", "bridge"};
  auto idx = from_texts(texts);
  auto ref = oracle::bm25_corpus(texts);
  for (const auto& q : std::vector<std::vector<std::string>>{{"river"}, {"bridge", "river"}, {"market"}, {"nothing"}})
    for (std::size_t d = 0; d < texts.size(); ++d)
      CHECK(std::abs(bm25_score(idx, {}, q, "d" + std::to_string(d)) - oracle::bm25(ref, q, d)) <= 1e-9);
  CHECK_THROWS_AS(bm25_score(idx, {}, std::vector<std::string>{"x"}, "nope"), qa::Error);
}

TEST_CASE("serial and parallel kernels are bit-identical") {
  std::mt19937 rng(3);
  const std::vector<std::string> vocab{"harbor", "lighthouse", "river", "bridge", "island", "ferry", "tower",
                                       "stone",  "winter",     "market", "salt", "keeper"};
  std::vector<std::string> texts;
  for (int d = 0; d < 3000; ++d) {
    std::string t;
    const int len = std::uniform_int_distribution<int>(1, 60)(rng);
    for (int i = 0; i < len; ++i) t += vocab[std::uniform_int_distribution<std::size_t>(0, vocab.size() - 1)(rng)] + " ";
    texts.push_back(t);
  }
  auto idx = from_texts(texts);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::string> q;
    for (int i = 0; i < 1 + trial % 5; ++i) q.push_back(vocab[std::uniform_int_distribution<std::size_t>(0, 11)(rng)]);
    auto a = score_all_serial(idx, {}, q);
    auto b = score_all_parallel(idx, {}, q);
    REQUIRE(a.size() == b.size());
    for (std::size_t d = 0; d < a.size(); ++d) REQUIRE(a[d] == b[d]);
  }
}

TEST_CASE("retrieve orders by score then doc id and truncates to k") {
  auto idx = fixture::demo_index();
  std::vector<std::string> texts;
  for (std::size_t d = 0; d < idx.size(); ++d) texts.push_back(idx.doc(d).text);
  auto ref = oracle::bm25_corpus(texts);
  for (const char* query : {"harbor lighthouse", "Who was the keeper of the lighthouse?", "winter market river",
                            "stone bridge island ferry tower"}) {
    const auto terms = content_terms(query);
    std::vector<std::pair<double, std::string>> want;
    for (std::size_t d = 0; d < idx.size(); ++d) {
      double s = oracle::bm25(ref, terms, d);
      if (s > 0) want.push_back({-s, idx.doc(d).doc_id});
    }
    std::sort(want.begin(), want.end(), [](auto& a, auto& b) {
      if (std::abs(a.first - b.first) > 1e-9) return a.first < b.first;
      return a.second < b.second;
    });
    auto all = retrieve(idx, {}, query, 1000);
    REQUIRE(all.size() == want.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      CHECK(all[i].doc_id == want[i].second);
      CHECK(std::abs(all[i].score + want[i].first) <= 1e-9);
      CHECK(all[i].text == idx.doc(*idx.find(all[i].doc_id)).text);
    }
    for (std::size_t k : {0, 1, 3, 5}) {
      auto top = retrieve(idx, {}, query, k);
      REQUIRE(top.size() == std::min(k, all.size()));
      for (std::size_t i = 0; i < top.size(); ++i) CHECK(top[i].doc_id == all[i].doc_id);
    }
  }
}

TEST_CASE("queries without content terms retrieve nothing") {
  auto idx = fixture::demo_index();
  CHECK(retrieve(idx, {}, "the of and", 5).empty());
  CHECK(retrieve(idx, {}, "", 5).empty());
  CHECK(retrieve(idx, {}, "zzzyx qqq", 5).empty());
}

TEST_CASE("retrieval does not mutate the index") {
  auto idx = fixture::demo_index();
  const auto before_avg = idx.avgdl();
  const auto before_df = idx.df("harbor");
  for (int i = 0; i < 20; ++i) retrieve(idx, {}, "harbor lighthouse river", 3);
  CHECK(idx.avgdl() == before_avg);
  CHECK(idx.df("harbor") == before_df);
}
