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
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace nawgen {

/// One contextual rewrite: `pattern` rewrites to `replacement` when the
/// code point following the match is in `right_context` (empty = always).
/// Rules are tried in priority order at each position; the first match wins
/// and scanning resumes after its replacement.
struct RewriteRule {
  std::string pattern;
  std::string right_context;  // set of code points, UTF-8 encoded
  std::string replacement;
  int priority = 0;
};

struct NormalizationRuleSet {
  std::vector<RewriteRule> rules;  // sorted by priority, then file order
  bool lowercase = true;
  bool strip_diacritics = true;
  bool collapse_double_consonants = true;

  /// TSV with a header `pattern\tright_context\treplacement\tpriority`;
  /// "-" stands for an empty field, `#flag <name> on|off` lines set flags.
  static NormalizationRuleSet from_tsv(std::istream& in);
  static NormalizationRuleSet from_string(std::string_view tsv);
  static NormalizationRuleSet from_file(const std::string& path);

  /// The shipped default table (c/k, ch kept, hu->w, qu->k, double-consonant
  /// collapse, lowercasing, accent stripping).
  static const NormalizationRuleSet& default_rules();
  static std::string_view default_rules_tsv();
};

/// Applies the spelling-unification pipeline: lowercase, strip accents,
/// rewrite rules left to right, collapse doubled consonants. Removes BOMs
/// and control characters (newline and tab survive). Idempotent. Throws
/// ParseError on malformed UTF-8.
std::string normalize(std::string_view input, const NormalizationRuleSet& rules);

struct CorpusStats {
  std::uint64_t documents = 0;
  std::uint64_t sentences = 0;
  std::uint64_t tokens = 0;
  std::uint64_t types = 0;
  double tokens_per_sentence = 0.0;  // 0 when there are no sentences

  /// "sentences tokens types tokens/sentence", the ratio to 2 decimals.
  std::string render_row() const;
};

/// Streaming accumulator: one sentence per line, tokens split on ASCII
/// whitespace, one sentence-final period stripped, types counted over
/// case-folded tokens.
class StatsAccumulator {
 public:
  void add_line(std::string_view line);
  void add_document() { ++documents_; }

  CorpusStats snapshot() const;

 private:
  std::uint64_t documents_ = 0;
  std::uint64_t sentences_ = 0;
  std::uint64_t tokens_ = 0;
  std::unordered_set<std::string> types_;
};

/// Stats of a one-sentence-per-line stream (documents = 1).
CorpusStats compute_stats(std::istream& in);
CorpusStats compute_stats_of_string(std::string_view content);

struct MergeResult {
  CorpusStats authentic;
  CorpusStats artificial;
  CorpusStats merged;
};

/// Writes normalize(authentic) followed by normalize(artificial), one
/// sentence per line, to `out_line`; returns per-source and merged stats
/// (computed on the normalized text).
MergeResult merge_corpora(std::istream& authentic, std::istream& artificial,
                          const NormalizationRuleSet& rules,
                          const std::function<void(std::string_view)>& out_line);

struct AugmentationRatios {
  double rho_tokens = 0.0;     // artificial tokens / authentic tokens
  double rho_sentences = 0.0;  // artificial sentences / authentic sentences
};

/// Throws DataError when the authentic corpus has zero tokens or sentences.
AugmentationRatios augmentation_ratios(const CorpusStats& authentic,
                                       const CorpusStats& artificial);

}  // namespace nawgen
