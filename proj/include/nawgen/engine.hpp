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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nawgen/grammar.hpp"
#include "nawgen/lexicon.hpp"

namespace nawgen {

/// One lexical choice made while deriving a sentence. Animacy is present for
/// knowledge-base-backed choices and absent for inline grammar alternatives.
struct LexicalUse {
  std::string category;
  std::string surface;
  std::optional<Animacy> animacy;

  bool operator==(const LexicalUse&) const = default;
};

/// One expanded rule instance. `alt_choices` has one slot per rhs element:
/// the 0-based alternative index for preterminal elements (index-resolved for
/// indexed ones), 0 for terminals and structural sub-expansions. Steps are
/// listed in pre-order, so a sentence can be replayed deterministically.
struct DerivationStep {
  std::string rule_id;
  std::vector<int> alt_choices;
  std::vector<std::pair<std::string, int>> person_assignment;  // 1-based

  bool operator==(const DerivationStep&) const = default;
};

struct GeneratedSentence {
  std::string text;
  std::vector<std::string> tokens;
  std::vector<DerivationStep> derivation;
  std::vector<LexicalUse> lexical_uses;
};

struct CountReport {
  std::uint64_t raw_count = 0;
  std::optional<std::uint64_t> filtered_count;
  // Derivation counts keyed by rule id. Both counting routes report the
  // start symbol's rules; the symbolic route also reports inner rules.
  std::map<std::string, std::uint64_t> per_rule_breakdown;

  std::string render_text() const;
};

class FilterPipeline;  // filters.hpp

using SentenceSink = std::function<void(const GeneratedSentence&)>;

/// Replays an explicit derivation into a sentence.
///
/// `steps` lists one DerivationStep per expanded rule in pre-order; the first
/// step's rule id selects the root. Throws DataError for unsatisfied index
/// constraints ("constraint violation"), out-of-range choices ("unknown
/// lexical form"), and traces that are too short or too long.
GeneratedSentence expand(const Grammar& g, const KnowledgeBase& kb,
                         const std::vector<DerivationStep>& steps);

/// Streams every derivation of the start symbol exactly once, in document
/// order: rules in declaration order, person assignments in ascending
/// lexicographic order, element alternatives left to right. When `filters`
/// is non-null, only accepted sentences reach `sink` and the report carries
/// a filtered count. `reject_sink`, when set, receives every rejected
/// sentence together with the rejecting filter's name and reason.
CountReport enumerate_sentences(
    const Grammar& g, const KnowledgeBase& kb, const FilterPipeline* filters,
    const SentenceSink& sink,
    const std::function<void(const GeneratedSentence&, const std::string&,
                             const std::string&)>& reject_sink = nullptr);

/// Computes the derivation count by products and sums over alternative
/// cardinalities without materializing sentences. Equality constraints merge
/// index variables, so PP_i ... PV_j with i=j contributes |index range|
/// assignments rather than a full product. Agrees exactly with
/// enumerate_sentences' raw count; throws DataError on recursive grammars.
CountReport count_symbolic(const Grammar& g, const KnowledgeBase& kb);

struct SampleOptions {
  std::uint64_t seed = 0;
  std::size_t count = 0;
  const FilterPipeline* filters = nullptr;
  // Resampling budget per emitted sentence before giving up.
  std::size_t max_attempts_per_sentence = 10000;
};

/// Draws derivations uniformly (weighted by per-choice-point cardinalities
/// from the symbolic count) and rejects filtered ones. Deterministic for a
/// given seed. Throws DataError when the universe is empty or the retry
/// budget is exhausted.
std::vector<GeneratedSentence> sample_sentences(const Grammar& g,
                                                const KnowledgeBase& kb,
                                                const SampleOptions& options);

/// Convenience for building documented derivations in tests and tools:
/// 0-based alternative index of `surface` within a preterminal category
/// (inline alternatives or knowledge-base entries). Throws DataError with
/// "unknown lexical form" when absent.
int alternative_index(const Grammar& g, const KnowledgeBase& kb,
                      const std::string& category, std::string_view surface);

}  // namespace nawgen
