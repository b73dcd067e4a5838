// Copyright 2026 The nawgen Authors
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

#include "nawgen/corpus.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "nawgen/textutil.hpp"

using namespace nawgen;

#ifndef NAWGEN_DATA_DIR
#define NAWGEN_DATA_DIR "data"
#endif

namespace {

std::string fuzz_line(std::mt19937_64& rng) {
  static const char* pieces[] = {"a",  "e",  "i",  "o",  "u",  "c",  "ch", "hu",
                                 "qu", "ll", "tt", "k",  "w",  "tz", "x",  "Á",
                                 "É",  "í",  "ó",  "ú",  "ñ",  "C",  "K",  " ",
                                 "H",  "uh", "cc", "hh", "lll"};
  std::string line;
  int len = 1 + static_cast<int>(rng() % 12);
  for (int i = 0; i < len; ++i) {
    line += pieces[rng() % (sizeof(pieces) / sizeof(pieces[0]))];
  }
  return line;
}

}  // namespace

TEST_CASE("normalize applies the documented default rules") {
  const auto& rules = NormalizationRuleSet::default_rules();
  CHECK(normalize("Axcan", rules) == "axkan");
  CHECK(normalize("chihua", rules) == "chiwa");
  CHECK(normalize("kalli", rules) == "kali");
  CHECK(normalize("cihuamichin", rules) == "siwamichin");
  CHECK(normalize("coyotl", rules) == "koyotl");
  CHECK(normalize("oncan", rules) == "onkan");
  CHECK(normalize("quena", rules) == "kena");
  CHECK(normalize("cE ce ci", rules) == "se se si");
  CHECK(normalize("árbol ñpermitido", rules) == "arbol ñpermitido");
  CHECK(normalize("", rules).empty());
}

TEST_CASE("normalize strips control characters and byte-order marks") {
  const auto& rules = NormalizationRuleSet::default_rules();
  CHECK(normalize("\xEF\xBB\xBFnaman\r", rules) == "naman");
  CHECK(normalize("a\x01\x02z", rules) == "az");
  CHECK_THROWS_AS(normalize("\xFF\xFE", rules), ParseError);
}

TEST_CASE("normalize is idempotent and never grows") {
  const auto& rules = NormalizationRuleSet::default_rules();
  std::mt19937_64 rng(31337);
  for (int i = 0; i < 2000; ++i) {
    std::string line = fuzz_line(rng);
    std::string once = normalize(line, rules);
    std::string twice = normalize(once, rules);
    REQUIRE(twice == once);
    REQUIRE(once.size() <= line.size());
  }
}

TEST_CASE("rule table files parse, with flags") {
  NormalizationRuleSet set = NormalizationRuleSet::from_string(
      "#flag lowercase off\n"
      "pattern\tright_context\treplacement\tpriority\n"
      "x\t-\ty\t5\n"
      "a\tbc\tz\t1\n");
  CHECK(!set.lowercase);
  REQUIRE(set.rules.size() == 2);
  CHECK(set.rules[0].pattern == "a");  // ordered by priority
  CHECK(normalize("Xab", set) == "Xzb");
  CHECK(normalize("ax", set) == "ay");  // context bc not met, x rewrites

  CHECK_THROWS_AS(NormalizationRuleSet::from_string("x\ty\n"), ParseError);
}

TEST_CASE("built-in rule table matches the shipped file byte for byte") {
  std::ifstream in(std::string(NAWGEN_DATA_DIR) + "/normalization_rules.tsv",
                   std::ios::binary);
  REQUIRE(in.good());
  std::string shipped((std::istreambuf_iterator<char>(in)), {});
  CHECK(shipped == NormalizationRuleSet::default_rules_tsv());
}

TEST_CASE("compute_stats counts sentences, tokens, and case-folded types") {
  CorpusStats s = compute_stats_of_string("Kema kema nochi.\nAxkan KEMA\n");
  CHECK(s.sentences == 2);
  CHECK(s.tokens == 5);
  CHECK(s.types == 3);  // kema, nochi, axkan
  CHECK(s.tokens_per_sentence == doctest::Approx(2.5));

  CorpusStats empty = compute_stats_of_string("");
  CHECK(empty.sentences == 0);
  CHECK(empty.tokens == 0);
  CHECK(empty.types == 0);
  CHECK(empty.tokens_per_sentence == 0.0);
}

TEST_CASE("only the sentence-final period is stripped") {
  CorpusStats s = compute_stats_of_string("a.b c.\n");
  CHECK(s.tokens == 2);
  CHECK(s.types == 2);  // "a.b" keeps its dot, "c." loses it
  CorpusStats lone = compute_stats_of_string(".\n");
  CHECK(lone.sentences == 1);
  CHECK(lone.tokens == 0);
}

TEST_CASE("stats are additive over concatenation") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    std::string a, b;
    for (int i = 0; i < 5; ++i) a += fuzz_line(rng) + "\n";
    for (int i = 0; i < 3; ++i) b += fuzz_line(rng) + "\n";
    CorpusStats sa = compute_stats_of_string(a);
    CorpusStats sb = compute_stats_of_string(b);
    CorpusStats sab = compute_stats_of_string(a + b);
    CHECK(sab.tokens == sa.tokens + sb.tokens);
    CHECK(sab.sentences == sa.sentences + sb.sentences);
    CHECK(sab.types <= sa.types + sb.types);
  }
}

TEST_CASE("merge normalizes both corpora and keeps sentence counts") {
  const auto& rules = NormalizationRuleSet::default_rules();
  std::istringstream a("Axcan kalli\nCHIHUA nochi\n");
  std::istringstream b("quena\n");
  std::vector<std::string> lines;
  MergeResult r = merge_corpora(a, b, rules, [&](std::string_view line) {
    lines.emplace_back(line);
  });
  CHECK(lines == std::vector<std::string>{"axkan kali", "chiwa nochi", "kena"});
  CHECK(r.authentic.sentences == 2);
  CHECK(r.artificial.sentences == 1);
  CHECK(r.merged.sentences == 3);
  CHECK(r.merged.tokens == r.authentic.tokens + r.artificial.tokens);
}

TEST_CASE("merging an empty artificial stream is the identity") {
  const auto& rules = NormalizationRuleSet::default_rules();
  std::istringstream a("se siwatl\nmiyak xokotl\n");
  std::istringstream b("");
  MergeResult r = merge_corpora(a, b, rules, nullptr);
  CHECK(r.artificial.sentences == 0);
  CHECK(r.merged.sentences == r.authentic.sentences);
  CHECK(r.merged.tokens == r.authentic.tokens);
  CHECK(r.merged.types == r.authentic.types);
}

TEST_CASE("augmentation ratios reproduce the documented proportions") {
  CorpusStats authentic;
  authentic.tokens = 6630000;
  authentic.sentences = 417000;
  CorpusStats artificial;
  artificial.tokens = 4600000;
  artificial.sentences = 809000;
  AugmentationRatios r = augmentation_ratios(authentic, artificial);
  CHECK(r.rho_tokens * 100 == doctest::Approx(69.38).epsilon(0.01));
  CHECK(r.rho_sentences * 100 == doctest::Approx(194.0).epsilon(0.01));

  AugmentationRatios same = augmentation_ratios(authentic, authentic);
  CHECK(same.rho_tokens == doctest::Approx(1.0));
  CHECK(same.rho_sentences == doctest::Approx(1.0));

  CorpusStats zero;
  CHECK_THROWS_AS(augmentation_ratios(zero, artificial), DataError);
}

TEST_CASE("stats row renders in the documented shape") {
  CorpusStats s;
  s.sentences = 30;
  s.tokens = 246;
  s.types = 189;
  s.tokens_per_sentence = 246.0 / 30.0;
  CHECK(s.render_row() == "30 246 189 8.20");
}
