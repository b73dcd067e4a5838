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
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "nawgen/textutil.hpp"

namespace nawgen {

namespace {

std::vector<std::string> content_tokens(std::string_view sentence,
                                        const std::set<std::string>& stopwords) {
  auto raw = text::split_tokens(sentence);
  std::vector<std::string> out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::string_view tok = raw[i];
    if (i + 1 == raw.size() && !tok.empty() && tok.back() == '.') {
      tok.remove_suffix(1);
    }
    if (tok.empty()) continue;
    std::string folded = text::to_lower_copy(tok);
    if (stopwords.count(folded)) continue;
    out.push_back(std::move(folded));
  }
  return out;
}

double cosine(const std::vector<double>& u, const std::vector<double>& v) {
  double dot = 0, nu = 0, nv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

// Counts inversions of `values` with merge sort.
std::uint64_t count_inversions(std::vector<int>& values, std::vector<int>& scratch,
                               std::size_t lo, std::size_t hi) {
  if (hi - lo <= 1) return 0;
  std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t inv = count_inversions(values, scratch, lo, mid) +
                      count_inversions(values, scratch, mid, hi);
  std::merge(values.begin() + lo, values.begin() + mid, values.begin() + mid,
             values.begin() + hi, scratch.begin() + lo);
  // Count pairs (left, right) with left > right.
  std::size_t i = lo, j = mid;
  while (i < mid && j < hi) {
    if (values[i] <= values[j]) {
      ++i;
    } else {
      inv += mid - i;
      ++j;
    }
  }
  std::copy(scratch.begin() + lo, scratch.begin() + hi, values.begin() + lo);
  return inv;
}

void require_permutation(const std::vector<int>& r, std::string_view which) {
  std::vector<bool> seen(r.size(), false);
  for (int v : r) {
    if (v < 1 || static_cast<std::size_t>(v) > r.size() || seen[v - 1]) {
      throw DataError("kendall tau: " + std::string(which) +
                      " is not a permutation of 1.." + std::to_string(r.size()));
    }
    seen[v - 1] = true;
  }
}

std::string format3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// EmbeddingTable

EmbeddingTable EmbeddingTable::load(std::istream& in) {
  std::string raw;
  if (!std::getline(in, raw)) throw ParseError("vectors: empty file");
  std::string_view header = text::strip_bom(raw);
  auto head = text::split_tokens(header);
  if (head.size() != 2) {
    throw ParseError("vectors: header must be '<count> <dimension>'");
  }
  std::uint64_t count = 0, dim = 0;
  auto parse_u64 = [](std::string_view s, std::uint64_t& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size();
  };
  if (!parse_u64(head[0], count) || !parse_u64(head[1], dim) || dim == 0) {
    throw ParseError("vectors: bad header '" + std::string(header) + "'");
  }
  EmbeddingTable table(dim);
  std::size_t lineno = 1;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty()) continue;
    auto parts = text::split_tokens(line);
    if (parts.size() != dim + 1) {
      throw ParseError("vectors: line " + std::to_string(lineno) + ": expected " +
                       std::to_string(dim) + " components, got " +
                       std::to_string(parts.size() ? parts.size() - 1 : 0));
    }
    std::vector<double> vec(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      std::string_view s = parts[i + 1];
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), vec[i]);
      if (ec != std::errc{} || p != s.data() + s.size()) {
        throw ParseError("vectors: line " + std::to_string(lineno) +
                         ": bad component '" + std::string(s) + "'");
      }
      if (!std::isfinite(vec[i])) {
        throw ParseError("vectors: line " + std::to_string(lineno) +
                         ": non-finite component");
      }
    }
    table.add(std::string(parts[0]), std::move(vec));
  }
  if (table.size() != count) {
    throw ParseError("vectors: header promises " + std::to_string(count) +
                     " words but the file has " + std::to_string(table.size()));
  }
  return table;
}

EmbeddingTable EmbeddingTable::from_string(std::string_view content) {
  std::istringstream in{std::string(content)};
  return load(in);
}

EmbeddingTable EmbeddingTable::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("vectors: cannot open '" + path + "'");
  return load(in);
}

void EmbeddingTable::add(const std::string& word, std::vector<double> vector) {
  if (vector.size() != dimension_) {
    throw DataError("vectors: '" + word + "' has dimension " +
                    std::to_string(vector.size()) + ", table expects " +
                    std::to_string(dimension_));
  }
  for (double v : vector) {
    if (!std::isfinite(v)) {
      throw DataError("vectors: '" + word + "' has a non-finite component");
    }
  }
  if (!vectors_.emplace(word, std::move(vector)).second) {
    throw DataError("vectors: duplicate word '" + word + "'");
  }
}

const std::vector<double>* EmbeddingTable::find(const std::string& word) const {
  auto it = vectors_.find(word);
  return it == vectors_.end() ? nullptr : &it->second;
}

void EmbeddingTable::scale(double factor) {
  for (auto& [_, vec] : vectors_) {
    for (double& v : vec) v *= factor;
  }
}

// ---------------------------------------------------------------------------
// Task suite

std::set<std::string> TaskSuite::default_stopwords() {
  return {"iwan", "in", "tlen", "ipan"};
}

TaskSuite TaskSuite::from_tsv(std::istream& in) {
  TaskSuite suite;
  suite.stopwords = default_stopwords();
  struct Partial {
    std::string reference;
    bool has_reference = false;
    std::vector<std::string> candidates = std::vector<std::string>(5);
    std::vector<int> ranks = std::vector<int>(5, 0);
    std::vector<bool> filled = std::vector<bool>(5, false);
  };
  std::map<std::string, Partial> partials;
  std::vector<std::string> order;

  std::string raw;
  bool header_seen = false;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (lineno == 1) line = text::strip_bom(line);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::string_view stripped = text::trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    auto cols = text::split_char(line, '\t');
    if (!header_seen) {
      if (cols.size() < 5 || text::trim(cols[0]) != "task_id") {
        throw ParseError("task suite: missing header row (expected "
                         "task_id\\trole\\tposition\\thuman_rank\\tsentence)");
      }
      header_seen = true;
      continue;
    }
    if (cols.size() < 5) {
      throw ParseError("task suite: line " + std::to_string(lineno) +
                       ": expected 5 tab-separated columns");
    }
    std::string id(text::trim(cols[0]));
    std::string role(text::trim(cols[1]));
    std::string sentence(text::trim(cols[4]));
    if (!partials.count(id)) order.push_back(id);
    Partial& p = partials[id];
    if (role == "reference") {
      if (p.has_reference) {
        throw ParseError("task suite: line " + std::to_string(lineno) +
                         ": task " + id + " has two references");
      }
      p.reference = sentence;
      p.has_reference = true;
    } else if (role == "candidate") {
      int pos = 0, rank = 0;
      try {
        pos = std::stoi(std::string(text::trim(cols[2])));
        rank = std::stoi(std::string(text::trim(cols[3])));
      } catch (const std::exception&) {
        throw ParseError("task suite: line " + std::to_string(lineno) +
                         ": position and human_rank must be integers");
      }
      if (pos < 1 || pos > 5 || rank < 1 || rank > 5) {
        throw ParseError("task suite: line " + std::to_string(lineno) +
                         ": position and human_rank must be in 1..5");
      }
      if (p.filled[pos - 1]) {
        throw ParseError("task suite: line " + std::to_string(lineno) +
                         ": task " + id + " repeats position " +
                         std::to_string(pos));
      }
      p.candidates[pos - 1] = sentence;
      p.ranks[pos - 1] = rank;
      p.filled[pos - 1] = true;
    } else {
      throw ParseError("task suite: line " + std::to_string(lineno) +
                       ": role must be reference or candidate");
    }
  }
  if (!header_seen) throw ParseError("task suite: empty file");

  for (const auto& id : order) {
    const Partial& p = partials[id];
    if (!p.has_reference) {
      throw DataError("task suite: task " + id + " has no reference");
    }
    for (int i = 0; i < 5; ++i) {
      if (!p.filled[i]) {
        throw DataError("task suite: task " + id + " is missing candidate " +
                        std::to_string(i + 1));
      }
    }
    std::vector<bool> seen(5, false);
    for (int r : p.ranks) {
      if (seen[r - 1]) {
        throw DataError("task suite: task " + id +
                        ": human ranking is not a permutation of 1..5");
      }
      seen[r - 1] = true;
    }
    suite.tasks.push_back({id, p.reference, p.candidates, p.ranks});
  }
  if (suite.tasks.empty()) throw DataError("task suite: no tasks");
  return suite;
}

TaskSuite TaskSuite::from_string(std::string_view content) {
  std::istringstream in{std::string(content)};
  return from_tsv(in);
}

TaskSuite TaskSuite::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("task suite: cannot open '" + path + "'");
  return from_tsv(in);
}

// ---------------------------------------------------------------------------
// Embedding, ranking, scoring

SentenceEmbedding sentence_embedding(std::string_view sentence,
                                     const EmbeddingTable& table,
                                     const std::set<std::string>& stopwords) {
  SentenceEmbedding result;
  result.mean.assign(table.dimension(), 0.0);
  auto tokens = content_tokens(sentence, stopwords);
  std::sort(tokens.begin(), tokens.end());  // order-independent accumulation
  for (const auto& tok : tokens) {
    const std::vector<double>* vec = table.find(tok);
    if (!vec) {
      ++result.oov;
      continue;
    }
    for (std::size_t i = 0; i < vec->size(); ++i) result.mean[i] += (*vec)[i];
    ++result.used;
  }
  if (result.used > 0) {
    for (double& v : result.mean) v /= static_cast<double>(result.used);
  }
  return result;
}

RankingResult rank_candidates(const RankingTask& task, const EmbeddingTable& table,
                              const std::set<std::string>& stopwords) {
  RankingResult result;
  const std::size_t n = task.candidates.size();
  SentenceEmbedding ref = sentence_embedding(task.reference, table, stopwords);
  result.similarities.resize(n, 0.0);
  result.ranks.assign(n, 0);
  if (ref.zero()) {
    result.degenerate = true;
    for (std::size_t i = 0; i < n; ++i) result.ranks[i] = static_cast<int>(i + 1);
    return result;
  }
  for (std::size_t i = 0; i < n; ++i) {
    SentenceEmbedding cand = sentence_embedding(task.candidates[i], table, stopwords);
    result.similarities[i] = cand.zero() ? 0.0 : cosine(ref.mean, cand.mean);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return result.similarities[a] > result.similarities[b];
  });
  for (std::size_t pos = 0; pos < n; ++pos) {
    result.ranks[order[pos]] = static_cast<int>(pos + 1);
  }
  return result;
}

double kendall_tau(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) {
    throw DataError("kendall tau: rankings have different sizes (" +
                    std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                    ")");
  }
  const std::size_t n = a.size();
  if (n < 2) throw DataError("kendall tau: need at least two items");
  require_permutation(a, "first ranking");
  require_permutation(b, "second ranking");

  // Order items by the first ranking and count inversions of the second.
  std::vector<int> reordered(n);
  for (std::size_t i = 0; i < n; ++i) reordered[a[i] - 1] = b[i];
  std::vector<int> scratch(n);
  std::uint64_t inversions = count_inversions(reordered, scratch, 0, n);

  const auto pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const auto concordant_minus_discordant =
      static_cast<std::int64_t>(pairs) - 2 * static_cast<std::int64_t>(inversions);
  return static_cast<double>(concordant_minus_discordant) /
         static_cast<double>(pairs);
}

TaskScore evaluate_suite(const TaskSuite& suite, const EmbeddingTable& table) {
  if (suite.tasks.empty()) throw DataError("evaluate: empty task suite");
  TaskScore score;
  double sum = 0.0;
  for (const auto& task : suite.tasks) {
    RankingResult ranking = rank_candidates(task, table, suite.stopwords);
    double tau = kendall_tau(task.human_ranking, ranking.ranks);
    score.per_task_tau.push_back(tau);
    score.model_rankings.push_back(std::move(ranking));
    sum += tau;
  }
  score.mean_tau = sum / static_cast<double>(suite.tasks.size());
  return score;
}

std::string TaskScore::render_text(const TaskSuite& suite) const {
  std::string out = "task\ttau\n";
  for (std::size_t i = 0; i < per_task_tau.size(); ++i) {
    out += suite.tasks[i].id;
    out += '\t';
    out += format3(per_task_tau[i]);
    if (model_rankings[i].degenerate) out += "\t(degenerate: empty reference embedding)";
    out += '\n';
  }
  out += "mean\t" + format3(mean_tau) + "\n";
  return out;
}

LeaveOneOutReport leave_one_out_report(
    const TaskSuite& suite,
    const std::vector<std::pair<std::string, const EmbeddingTable*>>& variants) {
  if (variants.empty()) {
    throw DataError("leave-one-out: no embedding variants given");
  }
  LeaveOneOutReport report;
  for (const auto& [label, table] : variants) {
    TaskScore score = evaluate_suite(suite, *table);
    LeaveOneOutEntry entry;
    entry.label = label;
    entry.full_mean = score.mean_tau;
    const std::size_t n = score.per_task_tau.size();
    double total = 0.0;
    for (double t : score.per_task_tau) total += t;
    if (n > 1) {
      for (std::size_t skip = 0; skip < n; ++skip) {
        entry.loo_means.push_back((total - score.per_task_tau[skip]) /
                                  static_cast<double>(n - 1));
      }
    } else {
      entry.loo_means.push_back(score.mean_tau);
    }
    auto [mn, mx] = std::minmax_element(entry.loo_means.begin(), entry.loo_means.end());
    entry.max_loo = *mx;
    entry.spread = *mx - *mn;
    entry.mean_loo =
        std::accumulate(entry.loo_means.begin(), entry.loo_means.end(), 0.0) /
        static_cast<double>(entry.loo_means.size());
    report.variants.push_back(std::move(entry));
  }
  return report;
}

std::string LeaveOneOutReport::render_text() const {
  std::string out = "variant\tfull_mean\tloo_max\tloo_mean\tloo_spread\n";
  for (const auto& v : variants) {
    out += v.label + "\t" + format3(v.full_mean) + "\t" + format3(v.max_loo) +
           "\t" + format3(v.mean_loo) + "\t" + format3(v.spread) + "\n";
  }
  return out;
}

}  // namespace nawgen
