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

#include "nawgen/lexicon.hpp"

#include <random>

#include "doctest.h"
#include "nawgen/textutil.hpp"

using namespace nawgen;

#ifndef NAWGEN_DATA_DIR
#define NAWGEN_DATA_DIR "data"
#endif

TEST_CASE("bundled knowledge base has the expected cardinalities") {
  KnowledgeBase kb =
      KnowledgeBase::from_file(std::string(NAWGEN_DATA_DIR) + "/knowledge_base.tsv");
  CHECK(kb.cardinality("n") == 26);
  CHECK(kb.cardinality("v") == 16);
  CHECK(kb.cardinality("ADV_Q") == 5);
  CHECK(kb.cardinality("POS") == 3);
  CHECK(kb.cardinality("ART") == 3);
  CHECK(kb.cardinality("ADV_T") == 7);
  CHECK(kb.cardinality("ADJ") == 3);
  CHECK(kb.cardinality("PP") == 3);
  CHECK(kb.cardinality("NEG") == 3);
  CHECK(kb.cardinality("PV") == 3);

  // Person-indexed categories keep their fixed order.
  auto surfaces = [&](const std::string& cat) {
    std::vector<std::string> out;
    for (const auto& e : kb.entries_for(cat)) out.push_back(e.surface);
    return out;
  };
  CHECK(surfaces("POS") == std::vector<std::string>{"no", "mo", "i"});
  CHECK(surfaces("PP") == std::vector<std::string>{"na", "ta", "ya"});
  CHECK(surfaces("PV") == std::vector<std::string>{"ni", "ti", ""});
  CHECK(surfaces("NEG") == std::vector<std::string>{"amo", "axkeman", ""});
}

TEST_CASE("load parses tagged entries") {
  KnowledgeBase kb = KnowledgeBase::from_string(
      "surface\tcategory\tanimacy\tgloss\n"
      "nantzin\tn\tanimate\tmother\n");
  const LexicalEntry* e = kb.find("nantzin", "n");
  REQUIRE(e != nullptr);
  CHECK(e->animacy == Animacy::Animate);
  CHECK(e->gloss == "mother");
}

TEST_CASE("load rejects malformed knowledge bases") {
  CHECK_THROWS_AS(KnowledgeBase::from_string(""), ParseError);
  CHECK_THROWS_AS(KnowledgeBase::from_string("surface\tcategory\tanimacy\tgloss\n"),
                  ParseError);  // header only
  CHECK_THROWS_WITH_AS(
      KnowledgeBase::from_string("surface\tcategory\tanimacy\tgloss\n"
                                 "miki\tv\tanimate\tto die\n"
                                 "miki\tv\tanimate\tto die\n"),
      doctest::Contains("duplicate"), DataError);
  CHECK_THROWS_WITH_AS(
      KnowledgeBase::from_string("surface\tcategory\tanimacy\tgloss\n"
                                 "foo\tDET\t-\tbad category\n"),
      doctest::Contains("unknown category"), DataError);
  CHECK_THROWS_WITH_AS(
      KnowledgeBase::from_string("surface\tcategory\tanimacy\tgloss\n"
                                 "miki\tv\t-\tmissing tag\n"),
      doctest::Contains("animacy"), DataError);
}

TEST_CASE("entries_for is ordered and strict") {
  KnowledgeBase kb = KnowledgeBase::from_string(
      "surface\tcategory\tanimacy\tgloss\n"
      "no\tPOS\t-\tmy\n"
      "mo\tPOS\t-\tyour\n"
      "i\tPOS\t-\this\n");
  auto& pos = kb.entries_for("POS");
  REQUIRE(pos.size() == 3);
  CHECK(pos[0].surface == "no");
  CHECK(pos[2].surface == "i");
  CHECK_THROWS_AS(kb.entries_for("x"), DataError);
}

TEST_CASE("same surface may appear in two categories") {
  KnowledgeBase kb = KnowledgeBase::from_string(
      "surface\tcategory\tanimacy\tgloss\n"
      "miyak\tADJ\t-\tmany\n"
      "miyak\tADV_Q\t-\ta lot\n");
  CHECK(kb.find("miyak", "ADJ") != nullptr);
  CHECK(kb.find("miyak", "ADV_Q") != nullptr);
}

TEST_CASE("render/load round-trips random knowledge bases") {
  std::mt19937_64 rng(42);
  const char* cats[] = {"n", "v", "ADJ", "ADV_T", "NEG"};
  for (int trial = 0; trial < 20; ++trial) {
    KnowledgeBase kb;
    int entries = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < entries; ++i) {
      LexicalEntry e;
      const char* cat = cats[rng() % 5];
      e.category = cat;
      e.surface = std::string(cat) + "_w" + std::to_string(i);
      e.animacy = (e.category == "n" || e.category == "v")
                      ? (rng() % 2 ? Animacy::Animate : Animacy::Inanimate)
                      : Animacy::Both;
      e.gloss = "gloss " + std::to_string(i);
      kb.add(std::move(e));
    }
    if (rng() % 2) kb.add({"", "NEG", Animacy::Both, "(none)"});
    KnowledgeBase reloaded = KnowledgeBase::from_string(kb.render());
    CHECK(reloaded == kb);
  }
}
