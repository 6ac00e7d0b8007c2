// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mwpgen Authors

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "mwpgen/error.hpp"
#include "mwpgen/linguistics.hpp"
#include "support.hpp"

using namespace mwpgen;

namespace {

std::vector<std::string> surfaces(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

std::vector<PosTag> tags_of(std::string_view q) {
  std::vector<PosTag> out;
  for (const auto& t : tokenize_and_tag(q)) out.push_back(t.tag);
  return out;
}

// Reference Treebank tags folded onto the tagger's subset.
PosTag fold_penn(const std::string& penn) {
  if (penn == "VBP") return PosTag::VB;
  if (penn == "VBN") return PosTag::VBD;
  if (penn == "," || penn == "." || penn == ":") return PosTag::PUNCT;
  if (auto t = parse_pos_tag(penn)) return *t;
  return PosTag::OTHER;
}

}  // namespace

TEST_SUITE("linguistics") {
  TEST_CASE("tokenize") {
    CHECK(tokenize("how much more flour than sugar did Dina use").size() == 9);
    CHECK(surfaces(tokenize("0.625 kg flour")) == std::vector<std::string>{"0.625", "kg", "flour"});
    CHECK(surfaces(tokenize("Harry, how many oranges?")) ==
          std::vector<std::string>{"Harry", ",", "how", "many", "oranges", "?"});
    CHECK(surfaces(tokenize("It costs 2.5.")) == std::vector<std::string>{"It", "costs", "2.5", "."});
    CHECK(tokenize("   ").empty());
  }

  TEST_CASE("token spans point back into the question") {
    const std::string q = "Nimal bought 2 kg flour,  how much?";
    for (const auto& t : tokenize(q)) {
      CHECK(q.substr(t.span.begin, t.span.end - t.span.begin) == t.surface);
    }
  }

  TEST_CASE("tags on the worked examples") {
    CHECK(tags_of("Harry has 9 oranges") ==
          std::vector<PosTag>{PosTag::NNP, PosTag::VBZ, PosTag::CD, PosTag::NNS});
    const auto t = tokenize_and_tag("how much more cement than water did vimal use");
    CHECK(t[2].tag == PosTag::JJR);
    CHECK(t[4].tag == PosTag::IN);
    CHECK(t[3].tag == PosTag::NN);
  }

  TEST_CASE("CD holds exactly for decimal tokens") {
    for (const std::string q :
         {"Three consecutive integers have the sum of 152, what are the integers?",
          "Nimal bought 0.625 kg flour and 1 kg sugar.", "A 12.5 l tank holds 3 l more than 9.0 l?",
          "Harry has 9 oranges and Mary has 3 less oranges than Harry"}) {
      for (const auto& t : tokenize_and_tag(q)) {
        CHECK_MESSAGE((t.tag == PosTag::CD) == is_decimal_number(t.surface), t.surface);
      }
    }
  }

  TEST_CASE("Sinhala is rejected by the tagger") {
    CHECK_THROWS_AS(tokenize_and_tag("කමල් ළඟ අඹ 5 ක් ඇත"), UnsupportedLanguage);
  }

  TEST_CASE("tag names round trip") {
    for (int i = 0; i <= static_cast<int>(PosTag::OTHER); ++i) {
      const auto tag = static_cast<PosTag>(i);
      CHECK(parse_pos_tag(to_string(tag)) == tag);
    }
    CHECK_FALSE(parse_pos_tag("XYZ").has_value());
  }

  TEST_CASE("tagger agreement with the reference annotation") {
    std::istringstream in(testing_support::slurp(testing_support::data_path("tagger_fixture.txt")));
    std::string line;
    std::size_t total = 0;
    std::size_t agree = 0;
    LexiconTagger tagger;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream words(line);
      std::string pair;
      std::vector<std::pair<std::string, std::string>> ref;
      std::string question;
      while (words >> pair) {
        const auto slash = pair.rfind('/');
        ref.emplace_back(pair.substr(0, slash), pair.substr(slash + 1));
      }
      std::vector<Token> tokens;
      for (const auto& [w, penn] : ref) tokens.push_back({w, {}});
      const auto tagged = tagger.tag(tokens);
      REQUIRE(tagged.size() == ref.size());
      for (std::size_t i = 0; i < ref.size(); ++i) {
        ++total;
        if (tagged[i].tag == fold_penn(ref[i].second)) {
          ++agree;
        } else {
          MESSAGE(ref[i].first << ": " << to_string(tagged[i].tag) << " vs " << ref[i].second);
        }
      }
    }
    REQUIRE(total > 300);
    const double rate = static_cast<double>(agree) / static_cast<double>(total);
    MESSAGE("agreement " << rate);
    CHECK(rate >= 0.95);
  }

  TEST_CASE("units dictionary lookups") {
    const auto d = builtin_units_dictionary();
    const auto* water = d.find_item("water");
    REQUIRE(water);
    CHECK(std::find(water->units.begin(), water->units.end(), "kg") == water->units.end());
    CHECK(water->units.front() == "l");
    const auto* flour = d.find_item("flour");
    REQUIRE(flour);
    CHECK(std::find(flour->units.begin(), flour->units.end(), "kg") != flour->units.end());
    REQUIRE(d.find_item("Oranges"));
    CHECK(d.find_item("oranges")->units.empty());
    CHECK(d.find_item("plasma") == nullptr);
    CHECK(d.is_unit("kg"));
    CHECK_FALSE(d.is_unit("flour"));
  }

  TEST_CASE("shipped units file matches the builtin dictionary") {
    const auto file = load_units_dictionary(testing_support::data_path("units.tsv"));
    const auto builtin = builtin_units_dictionary();
    REQUIRE(file.items().size() == builtin.items().size());
    for (const auto& [k, e] : builtin.items()) {
      const auto* f = file.find_item(k);
      REQUIRE(f);
      CHECK(f->units == e.units);
      CHECK(f->groups == e.groups);
    }
  }

  TEST_CASE("units dictionary parse errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_units_dictionary("# c\nflour\tkg\nflour\tg\n"),
                         doctest::Contains("line 3"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_units_dictionary("flour\tkg\nsand\tparsecs\n"),
                         doctest::Contains("line 2"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_units_dictionary("sand\tparsecs\n"), doctest::Contains("parsecs"),
                         ValidationError);
    CHECK_THROWS_AS(parse_units_dictionary("a\tb\tc\td\n"), ValidationError);
    const auto d = parse_units_dictionary("@units\tcup\nrice\tcup,kg\tfood\nbeads\t-\n");
    CHECK(d.find_item("rice")->units == std::vector<std::string>{"cup", "kg"});
    CHECK(d.find_item("beads")->units.empty());
  }

  TEST_CASE("quantity phrases") {
    const auto d = builtin_units_dictionary();
    auto phrases = [&](std::string_view q) { return extract_quantity_phrases(tokenize_and_tag(q), d); };

    auto p = phrases("he used 2 kg cement");
    REQUIRE(p.size() == 1);
    CHECK(p[0].value == Decimal::integer(2));
    CHECK(p[0].unit == "kg");
    CHECK(p[0].item == "cement");

    p = phrases("Harry has 9 oranges");
    REQUIRE(p.size() == 1);
    CHECK_FALSE(p[0].unit.has_value());
    CHECK(p[0].item == "oranges");

    p = phrases("the sum of 153, what are they?");
    REQUIRE(p.size() == 1);
    CHECK(p[0].value == Decimal::integer(153));
    CHECK_FALSE(p[0].unit.has_value());
    CHECK_FALSE(p[0].item.has_value());

    const std::string q = "Dina used 0.625 kg of flour and 3 l water";
    p = phrases(q);
    REQUIRE(p.size() == 2);
    CHECK(p[0].value == Decimal(625, 3));
    CHECK(p[0].item == "flour");
    CHECK(q.substr(p[0].span.begin, p[0].span.end - p[0].span.begin) == "0.625 kg of flour");
    CHECK(q.substr(p[1].value_span.begin, p[1].value_span.end - p[1].value_span.begin) == "3");
    REQUIRE(p[1].unit_span);
    CHECK(q.substr(p[1].unit_span->begin, 1) == "l");
  }

  TEST_CASE("decimal arithmetic") {
    const auto a = Decimal::parse("0.625");
    REQUIRE(a);
    CHECK(a->to_string() == "0.625");
    CHECK(a->plus(2).to_string() == "2.625");
    CHECK(*Decimal::parse("2.0") == Decimal::integer(2));
    CHECK(*Decimal::parse("1.25") < *Decimal::parse("1.3"));
    CHECK_FALSE(Decimal::parse("1.").has_value());
    CHECK_FALSE(Decimal::parse("-3").has_value());
    CHECK_FALSE(Decimal::parse("1e5").has_value());
    CHECK(Decimal::parse("007")->to_string() == "7");
  }
}
