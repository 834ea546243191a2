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

#include <random>

#include "flow/idl.hpp"
#include "random_values.hpp"

using namespace flow;

namespace {

const SchemaSet& qs() {
  static const SchemaSet s = parse_idl(R"(
    message Q { string text = 1; }
    message Doc { string id = 1; float64 score = 2; }
    message R { repeated Doc docs = 1; }
    message N { int64 n = 1; bool flag = 2; float64 x = 3; }
  )");
  return s;
}

Errc decode_error(std::string_view msg, std::string_view wire) {
  try {
    decode(qs(), qs().require_message(msg), wire);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("decode accepted " << wire);
  return Errc::SyntaxError;
}

}  // namespace

TEST_CASE("decode scalars") {
  Value v = decode(qs(), qs().require_message("Q"), R"({"text":"hi"})");
  CHECK(v == Value(Value::Record{{"text", "hi"}}));
}

TEST_CASE("decode rejects wrong types, unknown keys and missing fields") {
  CHECK(decode_error("Q", R"({"text":3})") == Errc::FieldTypeMismatch);
  CHECK(decode_error("Q", R"({"text":"a","extra":1})") == Errc::UnknownField);
  CHECK(decode_error("Q", R"({})") == Errc::MissingField);
  CHECK(decode_error("N", R"({"n":1.5,"flag":true,"x":1})") == Errc::FieldTypeMismatch);
  CHECK(decode_error("N", R"({"n":9007199254740992,"flag":true,"x":1})") == Errc::FieldTypeMismatch);
  CHECK(decode_error("N", R"({"n":-9007199254740992,"flag":true,"x":1})") == Errc::FieldTypeMismatch);
  CHECK(decode_error("N", R"({"n":1,"flag":1,"x":1})") == Errc::FieldTypeMismatch);
  CHECK(decode_error("R", R"({"docs":{}})") == Errc::FieldTypeMismatch);
  CHECK(decode_error("R", R"({"docs":[{"id":"a"}]})") == Errc::MissingField);
  CHECK(decode_error("Q", R"(["text"])") == Errc::FieldTypeMismatch);
  CHECK_THROWS_AS(decode(qs(), qs().require_message("Q"), "{not json"), Error);
}

TEST_CASE("int64 bounds are inclusive at 2^53-1") {
  Value v = decode(qs(), qs().require_message("N"), R"({"n":9007199254740991,"flag":false,"x":2})");
  CHECK(v.at("n").as_int() == kMaxWireInt);
  CHECK(v.at("x").as_float() == 2.0);
}

TEST_CASE("empty repeated field is valid") {
  Value v = decode(qs(), qs().require_message("R"), R"({"docs":[]})");
  CHECK(v.at("docs").as_list().empty());
}

TEST_CASE("zero defaults fill absent fields when enabled") {
  DecodeOptions o;
  o.zero_defaults = true;
  Value v = decode(qs(), qs().require_message("N"), "{}", o);
  CHECK(v.at("n").as_int() == 0);
  CHECK(v.at("flag").as_bool() == false);
  CHECK(v.at("x").as_float() == 0.0);
  Value r = decode(qs(), qs().require_message("R"), "{}", o);
  CHECK(r.at("docs").as_list().empty());
}

TEST_CASE("encode is canonical") {
  CHECK(encode(qs(), qs().require_message("Q"), Value(Value::Record{{"text", "hi"}})) == R"({"text":"hi"})");
  Value n(Value::Record{{"n", std::int64_t{7}}, {"flag", true}, {"x", 0.1}});
  CHECK(encode(qs(), qs().require_message("N"), n) == R"({"n":7,"flag":true,"x":0.1})");
  // Records carry fields in declaration order; anything else is not a value of N.
  Value shuffled(Value::Record{{"x", 0.1}, {"flag", true}, {"n", std::int64_t{7}}});
  CHECK_THROWS_AS(encode(qs(), qs().require_message("N"), shuffled), Error);
}

TEST_CASE("encode validates") {
  CHECK_THROWS_AS(encode(qs(), qs().require_message("Q"), Value(Value::Record{{"text", std::int64_t{1}}})), Error);
  CHECK_THROWS_AS(encode(qs(), qs().require_message("Q"), Value(Value::Record{})), Error);
  try {
    encode(qs(), qs().require_message("Q"), Value(Value::Record{{"text", 1.0}}));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ValidationError);
  }
}

TEST_CASE("encode/decode round-trip on 1000 random values") {
  const SchemaSet s = parse_idl(gen::kRoundTripIdl);
  const MessageSchema& tree = s.require_message("Tree");
  std::mt19937_64 rng(20260415);
  for (int i = 0; i < 1000; ++i) {
    Value v = gen::value(s, tree, rng);
    const std::string a = encode(s, tree, v);
    const Value back = decode(s, tree, a);
    REQUIRE(back == v);
    REQUIRE(encode(s, tree, back) == a);  // canonical text is a fixed point
    REQUIRE(encode(s, tree, v) == a);     // byte-deterministic
  }
}
