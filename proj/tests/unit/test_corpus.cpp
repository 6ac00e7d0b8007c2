// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "mwpgen/corpus.hpp"
#include "mwpgen/error.hpp"
#include "mwpgen/utf8.hpp"
#include "support.hpp"

using namespace mwpgen;
using testing_support::data_path;

namespace {

Corpus corpus_of(std::vector<std::string> lines, Language lang = Language::english) {
  return make_corpus(lines, lang);
}

// Independent codepoint splitter: lead byte decides the length.
std::set<std::string> distinct_codepoints(const std::vector<std::string>& lines) {
  std::set<std::string> out;
  for (const auto& s : lines) {
    for (std::size_t i = 0; i < s.size();) {
      const auto b = static_cast<unsigned char>(s[i]);
      const std::size_t n = b < 0x80 ? 1 : b < 0xE0 ? 2 : b < 0xF0 ? 3 : 4;
      out.insert(s.substr(i, n));
      i += n;
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("corpus") {
  TEST_CASE("utf8 validation rejects malformed sequences") {
    CHECK(utf8::is_valid("plain ascii"));
    CHECK(utf8::is_valid("නිමල් ළඟ"));
    CHECK(utf8::find_invalid("ab\xC0\x80") == 2u);         // overlong
    CHECK(utf8::find_invalid("\xED\xA0\x80") == 0u);       // surrogate
    CHECK(utf8::find_invalid("ok\xE0\xB6") == 2u);         // truncated
    CHECK(utf8::find_invalid("\xF4\x90\x80\x80") == 0u);   // above U+10FFFF
    CHECK(utf8::contains_sinhala("x ක y"));
    CHECK_FALSE(utf8::contains_sinhala("x y"));
  }

  TEST_CASE("load_corpus drops blank lines, trims, keeps order") {
    const auto dir = testing_support::scratch_dir("corpus_load");
    testing_support::spit(dir / "c.txt", "  first question?  \n\n\tsecond one?\r\n");
    const Corpus c = load_corpus(dir / "c.txt", Language::english);
    REQUIRE(c.questions.size() == 2);
    CHECK(c.questions[0] == "first question?");
    CHECK(c.questions[1] == "second one?");
  }

  TEST_CASE("load_corpus keeps the example question verbatim") {
    const auto dir = testing_support::scratch_dir("corpus_verbatim");
    const std::string q =
        "Harry has 9 oranges and Mary has 3 less oranges than Harry, how many oranges does Mary have";
    testing_support::spit(dir / "c.txt", q + "\n");
    CHECK(load_corpus(dir / "c.txt", Language::english).questions == std::vector<std::string>{q});
  }

  TEST_CASE("load_corpus round-trips Sinhala bytes") {
    const Corpus c = load_corpus(data_path("sinhala_100.txt"), Language::sinhala);
    REQUIRE(c.questions.size() == 100);
    const std::string raw = testing_support::slurp(data_path("sinhala_100.txt"));
    std::string joined;
    for (const auto& q : c.questions) joined += q + "\n";
    CHECK(joined == raw);
  }

  TEST_CASE("load_corpus reports the byte offset of invalid UTF-8") {
    const auto dir = testing_support::scratch_dir("corpus_bad_utf8");
    testing_support::spit(dir / "c.txt", "good\nba\xFF" "d\n");
    try {
      load_corpus(dir / "c.txt", Language::english);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("byte offset 7") != std::string::npos);
    }
    CHECK_THROWS_AS(load_corpus(dir / "missing.txt", Language::english), ValidationError);
  }

  TEST_CASE("character vocabulary of \"aba\"") {
    const Vocabulary v = build_vocabulary(corpus_of({"aba"}), TokenMode::character);
    // The separator always occupies id 0; content tokens are {a, b}.
    CHECK(v.size() == 3);
    CHECK(v.token(0) == "\n");
    CHECK(v.token(1) == "a");
    CHECK(v.token(2) == "b");
    CHECK_FALSE(v.oov_id().has_value());
  }

  TEST_CASE("character vocabulary matches an independent distinct-codepoint count") {
    for (const auto& [file, lang] : {std::pair{"synthetic_english_300.txt", Language::english},
                                     std::pair{"sinhala_100.txt", Language::sinhala}}) {
      const Corpus c = load_corpus(data_path(file), lang);
      const Vocabulary v = build_vocabulary(c, TokenMode::character);
      const auto oracle = distinct_codepoints(c.questions);
      CHECK(v.size() == oracle.size() + 1);
      for (const auto& cp : oracle) CHECK(v.find(cp).has_value());
      // Sorted by UTF-8 bytes after the separator.
      CHECK(std::is_sorted(v.tokens().begin() + 1, v.tokens().end()));
    }
  }

  TEST_CASE("character encode/decode round trip, unknown codepoint rejected") {
    const Corpus c = load_corpus(data_path("toy_english.txt"), Language::english);
    const Vocabulary v = build_vocabulary(c, TokenMode::character);
    for (const auto& q : c.questions) {
      const auto ids = v.encode(q);
      CHECK(v.decode(ids) == q);
      CHECK(v.encode(v.decode(ids)) == ids);
    }
    CHECK_THROWS_AS(v.encode("Z~"), VocabularyMismatch);
  }

  TEST_CASE("word vocabulary ordering and OOV threshold") {
    const Corpus c = corpus_of({"b a a c", "a b orange"});
    const Vocabulary v = build_vocabulary(c, TokenMode::word, 2);
    // counts: a=3, b=2, c=1, orange=1
    REQUIRE(v.size() == 4);
    CHECK(v.token(1) == "a");
    CHECK(v.token(2) == "b");
    CHECK(v.token(3) == "<unk>");
    CHECK(v.encode("orange") == std::vector<int>{*v.oov_id()});

    const Vocabulary all = build_vocabulary(c, TokenMode::word, 1);
    CHECK(all.tokens() == std::vector<std::string>{"\n", "a", "b", "c", "orange", "<unk>"});
  }

  TEST_CASE("word tokenization detaches punctuation and rejoins") {
    CHECK(split_word_strings("have?") == std::vector<std::string>{"have", "?"});
    CHECK(split_word_strings("0.625 kg flour") == std::vector<std::string>{"0.625", "kg", "flour"});
    const Corpus c = load_corpus(data_path("toy_english.txt"), Language::english);
    const Vocabulary v = build_vocabulary(c, TokenMode::word);
    for (const auto& q : c.questions) CHECK(v.decode(v.encode(q)) == q);
  }

  TEST_CASE("vocabulary construction is deterministic") {
    const Corpus c = load_corpus(data_path("synthetic_english_300.txt"), Language::english);
    CHECK(build_vocabulary(c, TokenMode::character) == build_vocabulary(c, TokenMode::character));
    CHECK(build_vocabulary(c, TokenMode::word) == build_vocabulary(c, TokenMode::word));
    CHECK_THROWS_AS(build_vocabulary(corpus_of({}), TokenMode::character), ValidationError);
  }

  TEST_CASE("encode_windows enumerates windows") {
    const std::vector<std::vector<int>> seq{{1, 2, 3, 4}};
    const auto ds = encode_windows(seq, 2, 1);
    REQUIRE(ds.size() == 2);
    CHECK(std::vector<int>(ds.input(0).begin(), ds.input(0).end()) == std::vector<int>{1, 2});
    CHECK(ds.target(0) == 3);
    CHECK(std::vector<int>(ds.input(1).begin(), ds.input(1).end()) == std::vector<int>{2, 3});
    CHECK(ds.target(1) == 4);
  }

  TEST_CASE("window count: L=3, stride 3 over 10 tokens") {
    std::vector<std::vector<int>> seq{{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}};
    const auto ds = encode_windows(seq, 3, 3);
    // Starts 0, 3, 6 all have a following target token.
    REQUIRE(ds.size() == 3);
    CHECK(ds.input(1)[0] == 3);
    CHECK(ds.target(2) == 9);
  }

  TEST_CASE("window count formula and degenerate cases") {
    for (int t = 1; t <= 25; ++t) {
      std::vector<std::vector<int>> seq{std::vector<int>(static_cast<std::size_t>(t), 1)};
      for (int L = 1; L <= 8; ++L) {
        for (int s = 1; s <= 4; ++s) {
          const auto ds = encode_windows(seq, L, s);
          const std::size_t expect = t > L ? static_cast<std::size_t>((t - L - 1) / s + 1) : 0;
          CHECK(ds.size() == expect);
        }
      }
    }
    const auto empty = encode_windows(std::vector<std::vector<int>>{std::vector<int>(20, 1)}, 30, 1);
    CHECK(empty.empty());
    CHECK(empty.too_short_warning);
  }

  TEST_CASE("windows match an independent slicing oracle and never cross questions") {
    const Corpus c = load_corpus(data_path("toy_english.txt"), Language::english);
    const Vocabulary v = build_vocabulary(c, TokenMode::character);
    const int L = 7;
    const int stride = 2;
    const auto ds = encode_windows(c, v, L, stride);
    std::size_t k = 0;
    for (const auto& q : c.questions) {
      std::vector<std::string> cps = utf8::split_codepoints(q);
      cps.emplace_back("\n");
      for (std::size_t start = 0; start + L < cps.size(); start += stride, ++k) {
        REQUIRE(k < ds.size());
        for (int j = 0; j < L; ++j) CHECK(v.token(ds.input(k)[static_cast<std::size_t>(j)]) == cps[start + j]);
        CHECK(v.token(ds.target(k)) == cps[start + L]);
      }
    }
    CHECK(k == ds.size());
    for (int id : ds.inputs) CHECK(id < static_cast<int>(v.size()));
  }

  TEST_CASE("split_dataset sizes and determinism") {
    std::vector<std::vector<int>> seq{std::vector<int>(101)};
    for (int i = 0; i < 101; ++i) seq[0][static_cast<std::size_t>(i)] = i;
    const auto ds = encode_windows(seq, 1, 1);
    REQUIRE(ds.size() == 100);
    const auto [train, val] = split_dataset(ds, 0.1, 7);
    CHECK(train.size() == 90);
    CHECK(val.size() == 10);
    const auto [train2, val2] = split_dataset(ds, 0.1, 7);
    CHECK(train.inputs == train2.inputs);
    CHECK(val.targets == val2.targets);
    const auto [all, none] = split_dataset(ds, 0.0, 7);
    CHECK(all.size() == 100);
    CHECK(none.empty());
    CHECK_THROWS_AS(split_dataset(ds, 1.0, 7), ValidationError);
  }
}
