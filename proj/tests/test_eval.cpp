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

#include "nawgen/eval.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "nawgen/textutil.hpp"

using namespace nawgen;

namespace {

// Independent tau oracle: direct enumeration over all unordered pairs.
double brute_force_tau(const std::vector<int>& a, const std::vector<int>& b) {
  int concordant = 0, discordant = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      int da = a[i] - a[j];
      int db = b[i] - b[j];
      if (da * db > 0) ++concordant;
      if (da * db < 0) ++discordant;
    }
  }
  double pairs = static_cast<double>(a.size() * (a.size() - 1)) / 2.0;
  return (concordant - discordant) / pairs;
}

EmbeddingTable make_table(std::size_t dim,
                          const std::vector<std::pair<std::string, std::vector<double>>>& rows) {
  EmbeddingTable t(dim);
  for (const auto& [w, v] : rows) t.add(w, v);
  return t;
}

// One ranking task whose candidates are single distinct words placed on a
// similarity staircase: candidate k ends up at model rank k+1.
RankingTask staircase_task(const std::string& id, std::vector<int> human) {
  return {id, "ref", {"w0", "w1", "w2", "w3", "w4"}, std::move(human)};
}

EmbeddingTable staircase_table() {
  // cos(ref, wk) decreases with k.
  return make_table(2, {{"ref", {1.0, 0.0}},
                        {"w0", {1.0, 0.1}},
                        {"w1", {1.0, 0.4}},
                        {"w2", {1.0, 0.9}},
                        {"w3", {1.0, 1.6}},
                        {"w4", {1.0, 2.8}}});
}

}  // namespace

TEST_CASE("vector loader enforces the header contract") {
  EmbeddingTable t = EmbeddingTable::from_string("2 3\nfoo 1 2 3\nbar 0 0 1\n");
  CHECK(t.size() == 2);
  CHECK(t.dimension() == 3);
  REQUIRE(t.find("foo"));
  CHECK((*t.find("foo"))[1] == 2.0);
  CHECK(t.find("baz") == nullptr);

  CHECK_THROWS_WITH_AS(EmbeddingTable::from_string("1 3\nfoo 1 2\n"),
                       doctest::Contains("expected 3 components"), ParseError);
  CHECK_THROWS_WITH_AS(EmbeddingTable::from_string("2 2\nfoo 1 2\nfoo 3 4\n"),
                       doctest::Contains("duplicate"), DataError);
  CHECK_THROWS_WITH_AS(EmbeddingTable::from_string("1 2\nfoo nan 2\n"),
                       doctest::Contains("non-finite"), ParseError);
  CHECK_THROWS_AS(EmbeddingTable::from_string("2 2\nfoo 1 2\n"), ParseError);
  CHECK_THROWS_AS(EmbeddingTable::from_string(""), ParseError);
}

TEST_CASE("sentence embedding is the mean of content word vectors") {
  EmbeddingTable t = make_table(2, {{"siwatl", {2.0, 0.0}},
                                    {"nehnemi", {0.0, 4.0}},
                                    {"iwan", {100.0, 100.0}}});
  std::set<std::string> stop = {"iwan", "in", "tlen", "ipan"};

  SUBCASE("a single known word is its own vector") {
    auto e = sentence_embedding("siwatl", t, stop);
    CHECK(e.mean == std::vector<double>{2.0, 0.0});
    CHECK(e.used == 1);
  }
  SUBCASE("stopwords vanish even when they have vectors") {
    auto e = sentence_embedding("iwan in tlen ipan", t, stop);
    CHECK(e.zero());
    CHECK(e.mean == std::vector<double>{0.0, 0.0});
  }
  SUBCASE("two known words average") {
    auto e = sentence_embedding("siwatl nehnemi", t, stop);
    CHECK(e.mean == std::vector<double>{1.0, 2.0});
  }
  SUBCASE("unknown words are skipped and counted") {
    auto e = sentence_embedding("siwatl tekolotl.", t, stop);
    CHECK(e.used == 1);
    CHECK(e.oov == 1);
    CHECK(e.mean == std::vector<double>{2.0, 0.0});
  }
  SUBCASE("case folds and the final period is stripped") {
    auto e = sentence_embedding("Siwatl nehnemi.", t, stop);
    CHECK(e.mean == std::vector<double>{1.0, 2.0});
  }
  SUBCASE("token order does not matter, bit for bit") {
    auto a = sentence_embedding("siwatl nehnemi siwatl", t, stop);
    auto b = sentence_embedding("siwatl siwatl nehnemi", t, stop);
    CHECK(a.mean == b.mean);
  }
}

TEST_CASE("rank_candidates sorts by cosine with stable ties") {
  std::set<std::string> stop;

  SUBCASE("an identical candidate ranks first") {
    EmbeddingTable t = staircase_table();
    RankingTask task{"t", "ref", {"w2", "ref", "w4", "w1", "w3"}, {1, 2, 3, 4, 5}};
    RankingResult r = rank_candidates(task, t, stop);
    CHECK(r.ranks[1] == 1);  // "ref" itself
  }

  SUBCASE("shared content words dominate") {
    // Candidate A shares both content words with the reference, B only one.
    EmbeddingTable t = make_table(3, {{"u", {1, 0, 0}},
                                      {"v", {0, 1, 0}},
                                      {"w", {0, 0, 1}}});
    RankingTask task{"t", "u v", {"u w", "u v", "w w", "v u", "w u"},
                     {1, 2, 3, 4, 5}};
    RankingResult r = rank_candidates(task, t, stop);
    // cos(ref, "u v") = 1 beats cos(ref, "u w") = 0.5.
    CHECK(r.ranks[1] < r.ranks[0]);
    CHECK(r.ranks[3] < r.ranks[0]);  // "v u" embeds identically to "u v"
    CHECK(r.ranks[2] > r.ranks[0]);  // "w w" shares nothing
  }

  SUBCASE("all-tied candidates keep their original order") {
    EmbeddingTable t = make_table(2, {{"x", {1, 1}}});
    RankingTask task{"t", "x", {"x", "x", "x", "x", "x"}, {1, 2, 3, 4, 5}};
    RankingResult r = rank_candidates(task, t, stop);
    CHECK(r.ranks == std::vector<int>{1, 2, 3, 4, 5});
  }

  SUBCASE("a reference with no usable tokens degenerates to original order") {
    EmbeddingTable t = make_table(2, {{"x", {1, 1}}});
    RankingTask task{"t", "zzz", {"x", "x", "x", "x", "x"}, {1, 2, 3, 4, 5}};
    RankingResult r = rank_candidates(task, t, stop);
    CHECK(r.degenerate);
    CHECK(r.ranks == std::vector<int>{1, 2, 3, 4, 5});
  }

  SUBCASE("the ranking is invariant under uniform scaling") {
    EmbeddingTable t = staircase_table();
    RankingTask task = staircase_task("t", {1, 2, 3, 4, 5});
    RankingResult before = rank_candidates(task, t, stop);
    t.scale(37.5);
    RankingResult after = rank_candidates(task, t, stop);
    CHECK(before.ranks == after.ranks);
  }
}

TEST_CASE("kendall tau matches its definition exactly") {
  SUBCASE("identity and reversal over every permutation of five") {
    std::vector<int> perm{1, 2, 3, 4, 5};
    int count = 0;
    do {
      std::vector<int> reversed(perm.size());
      for (std::size_t i = 0; i < perm.size(); ++i) {
        reversed[i] = 6 - perm[i];
      }
      CHECK(kendall_tau(perm, perm) == 1.0);
      CHECK(kendall_tau(perm, reversed) == -1.0);
      ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(count == 120);
  }

  SUBCASE("one adjacent transposition of five gives 0.8") {
    std::vector<int> a{1, 2, 3, 4, 5};
    std::vector<int> b{2, 1, 3, 4, 5};
    CHECK(kendall_tau(a, b) == 0.8);
  }

  SUBCASE("agrees with brute-force pair counting on random pairs") {
    std::mt19937_64 rng(20250609);
    std::vector<int> a{1, 2, 3, 4, 5}, b{1, 2, 3, 4, 5};
    for (int trial = 0; trial < 1500; ++trial) {
      std::shuffle(a.begin(), a.end(), rng);
      std::shuffle(b.begin(), b.end(), rng);
      REQUIRE(kendall_tau(a, b) == doctest::Approx(brute_force_tau(a, b)).epsilon(1e-15));
      REQUIRE(kendall_tau(a, b) == kendall_tau(b, a));
    }
  }

  SUBCASE("identity and reversal hold for sizes two through eight") {
    std::mt19937_64 rng(77);
    for (int n = 2; n <= 8; ++n) {
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 1);
      for (int trial = 0; trial < 40; ++trial) {
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<int> reversed(n);
        for (int i = 0; i < n; ++i) reversed[i] = n + 1 - perm[i];
        CHECK(kendall_tau(perm, perm) == 1.0);
        CHECK(kendall_tau(perm, reversed) == -1.0);
      }
    }
  }

  SUBCASE("invalid input is rejected") {
    CHECK_THROWS_AS(kendall_tau({1, 2, 3}, {1, 2}), DataError);
    CHECK_THROWS_AS(kendall_tau({1}, {1}), DataError);
    CHECK_THROWS_AS(kendall_tau({1, 1, 3}, {1, 2, 3}), DataError);
    CHECK_THROWS_AS(kendall_tau({0, 1, 2}, {1, 2, 3}), DataError);
  }
}

TEST_CASE("suite evaluation averages per-task taus") {
  EmbeddingTable t = staircase_table();

  SUBCASE("perfect agreement scores one") {
    TaskSuite suite;
    suite.stopwords = {};
    suite.tasks = {staircase_task("t1", {1, 2, 3, 4, 5}),
                   staircase_task("t2", {1, 2, 3, 4, 5})};
    TaskScore score = evaluate_suite(suite, t);
    CHECK(score.mean_tau == 1.0);
  }

  SUBCASE("mean is the arithmetic mean") {
    TaskSuite suite;
    suite.stopwords = {};
    suite.tasks = {staircase_task("t1", {1, 2, 3, 4, 5}),    // tau 1.0
                   staircase_task("t2", {2, 1, 3, 4, 5})};   // tau 0.6? no: 0.8
    TaskScore score = evaluate_suite(suite, t);
    CHECK(score.per_task_tau[0] == 1.0);
    CHECK(score.per_task_tau[1] == 0.8);
    CHECK(score.mean_tau == doctest::Approx(0.9));
  }

  SUBCASE("reversed agreement scores minus one") {
    TaskSuite suite;
    suite.stopwords = {};
    suite.tasks = {staircase_task("t1", {5, 4, 3, 2, 1})};
    CHECK(evaluate_suite(suite, t).mean_tau == -1.0);
  }
}

TEST_CASE("task suite files parse and validate") {
  const char* good =
      "task_id\trole\tposition\thuman_rank\tsentence\n"
      "t1\treference\t-\t-\tse siwatl nehnemi\n"
      "t1\tcandidate\t1\t2\tse siwatl\n"
      "t1\tcandidate\t2\t1\tsiwatl nehnemi\n"
      "t1\tcandidate\t3\t3\tmiyak xokotl\n"
      "t1\tcandidate\t4\t4\tamo kema\n"
      "t1\tcandidate\t5\t5\taxkan\n";
  TaskSuite suite = TaskSuite::from_string(good);
  REQUIRE(suite.tasks.size() == 1);
  CHECK(suite.tasks[0].reference == "se siwatl nehnemi");
  CHECK(suite.tasks[0].human_ranking == std::vector<int>{2, 1, 3, 4, 5});
  CHECK(suite.stopwords == TaskSuite::default_stopwords());

  std::string missing(good);
  missing = missing.substr(0, missing.rfind("t1\tcandidate"));
  CHECK_THROWS_WITH_AS(TaskSuite::from_string(missing),
                       doctest::Contains("missing candidate"), DataError);

  std::string bad_rank(good);
  bad_rank.replace(bad_rank.find("\t5\taxkan"), 2, "\t4");
  CHECK_THROWS_AS(TaskSuite::from_string(bad_rank), std::exception);
}

TEST_CASE("leave-one-out reports max, mean, and spread") {
  SUBCASE("documented three-task example") {
    // Per-task taus 0, 0.5, 1.0: leaving each out gives 0.75, 0.5, 0.25.
    LeaveOneOutEntry entry;
    std::vector<double> taus{0.0, 0.5, 1.0};
    double total = 1.5;
    for (std::size_t skip = 0; skip < taus.size(); ++skip) {
      entry.loo_means.push_back((total - taus[skip]) / 2.0);
    }
    CHECK(entry.loo_means == std::vector<double>{0.75, 0.5, 0.25});
    CHECK(*std::max_element(entry.loo_means.begin(), entry.loo_means.end()) == 0.75);
  }

  SUBCASE("full report over a real suite") {
    EmbeddingTable t = staircase_table();
    TaskSuite suite;
    suite.stopwords = {};
    suite.tasks = {staircase_task("t1", {1, 2, 3, 4, 5}),   // tau 1.0
                   staircase_task("t2", {2, 1, 3, 4, 5}),   // tau 0.8
                   staircase_task("t3", {5, 4, 3, 2, 1})};  // tau -1.0
    auto report = leave_one_out_report(suite, {{"model", &t}});
    REQUIRE(report.variants.size() == 1);
    const auto& v = report.variants[0];
    CHECK(v.full_mean == doctest::Approx(0.8 / 3.0));
    REQUIRE(v.loo_means.size() == 3);
    CHECK(v.loo_means[0] == doctest::Approx(-0.1));   // drop tau=1.0
    CHECK(v.loo_means[1] == doctest::Approx(0.0));    // drop tau=0.8
    CHECK(v.loo_means[2] == doctest::Approx(0.9));    // drop tau=-1.0
    CHECK(v.max_loo == doctest::Approx(0.9));
    // The mean of leave-one-out means equals the full mean.
    CHECK(v.mean_loo == doctest::Approx(v.full_mean));
    CHECK(v.spread == doctest::Approx(1.0));
  }

  SUBCASE("identical taus make max equal mean") {
    EmbeddingTable t = staircase_table();
    TaskSuite suite;
    suite.stopwords = {};
    suite.tasks = {staircase_task("t1", {1, 2, 3, 4, 5}),
                   staircase_task("t2", {1, 2, 3, 4, 5})};
    auto report = leave_one_out_report(suite, {{"model", &t}});
    CHECK(report.variants[0].max_loo == report.variants[0].mean_loo);
    CHECK(report.variants[0].spread == 0.0);
  }

  SUBCASE("an empty variant list is an error") {
    TaskSuite suite;
    suite.tasks = {staircase_task("t1", {1, 2, 3, 4, 5})};
    CHECK_THROWS_AS(leave_one_out_report(suite, {}), DataError);
  }
}
