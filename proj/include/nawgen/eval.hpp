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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace nawgen {

/// Word vectors in the plain text format written by common skip-gram
/// trainers: a "count dimension" header line, then one "word v1 .. vd" row
/// per word.
class EmbeddingTable {
 public:
  static EmbeddingTable load(std::istream& in);
  static EmbeddingTable from_string(std::string_view content);
  static EmbeddingTable from_file(const std::string& path);

  EmbeddingTable() = default;
  EmbeddingTable(std::size_t dimension) : dimension_(dimension) {}

  void add(const std::string& word, std::vector<double> vector);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return vectors_.size(); }
  const std::vector<double>* find(const std::string& word) const;

  /// Multiplies every stored vector by `factor` (used by scale-invariance
  /// checks).
  void scale(double factor);

 private:
  std::size_t dimension_ = 0;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

struct RankingTask {
  std::string id;
  std::string reference;
  std::vector<std::string> candidates;  // exactly 5, by position
  std::vector<int> human_ranking;       // rank of each candidate, 1..5
};

struct TaskSuite {
  std::vector<RankingTask> tasks;
  std::set<std::string> stopwords;  // defaults to iwan, in, tlen, ipan

  /// TSV columns: task_id, role (reference|candidate), position, human_rank,
  /// sentence. Reference rows use "-" for position and rank.
  static TaskSuite from_tsv(std::istream& in);
  static TaskSuite from_string(std::string_view content);
  static TaskSuite from_file(const std::string& path);

  static std::set<std::string> default_stopwords();
};

struct SentenceEmbedding {
  std::vector<double> mean;
  std::size_t used = 0;  // in-vocabulary, non-stopword tokens
  std::size_t oov = 0;   // skipped out-of-vocabulary tokens

  bool zero() const { return used == 0; }
};

/// Mean of the vectors of the in-vocabulary, non-stopword tokens of the
/// case-folded sentence (one sentence-final period stripped). Tokens are
/// accumulated in sorted order so the result is independent of token order.
/// The zero vector when nothing qualifies.
SentenceEmbedding sentence_embedding(std::string_view sentence,
                                     const EmbeddingTable& table,
                                     const std::set<std::string>& stopwords);

struct RankingResult {
  std::vector<int> ranks;  // model rank of each candidate position, 1..n
  std::vector<double> similarities;
  bool degenerate = false;  // reference embedded to zero; original order kept
};

/// Orders candidates by descending cosine similarity to the reference;
/// ties (and zero-norm candidates) keep their original relative order.
RankingResult rank_candidates(const RankingTask& task, const EmbeddingTable& table,
                              const std::set<std::string>& stopwords);

/// Kendall's tau-a between two tie-free rankings of the same n >= 2 items:
/// (concordant - discordant) / (n(n-1)/2), computed by merge-sort inversion
/// counting. Throws DataError on size mismatch or non-permutation input.
double kendall_tau(const std::vector<int>& a, const std::vector<int>& b);

struct TaskScore {
  std::vector<double> per_task_tau;
  double mean_tau = 0.0;
  std::vector<RankingResult> model_rankings;

  std::string render_text(const TaskSuite& suite) const;
};

TaskScore evaluate_suite(const TaskSuite& suite, const EmbeddingTable& table);

struct LeaveOneOutEntry {
  std::string label;
  double full_mean = 0.0;
  std::vector<double> loo_means;  // mean with task i left out
  double max_loo = 0.0;
  double mean_loo = 0.0;
  double spread = 0.0;  // max - min over loo means
};

struct LeaveOneOutReport {
  std::vector<LeaveOneOutEntry> variants;

  std::string render_text() const;
};

/// Evaluates each table variant on the full suite and on every
/// leave-one-task-out subset. Throws DataError on an empty variant list.
LeaveOneOutReport leave_one_out_report(
    const TaskSuite& suite,
    const std::vector<std::pair<std::string, const EmbeddingTable*>>& variants);

}  // namespace nawgen
