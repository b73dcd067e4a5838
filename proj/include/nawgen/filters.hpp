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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nawgen/engine.hpp"
#include "nawgen/lexicon.hpp"

namespace nawgen {

struct FilterVerdict {
  bool accepted = true;
  std::optional<std::string> rejecting_filter;
  std::string reason;

  static FilterVerdict accept() { return {}; }
  static FilterVerdict reject(std::string filter, std::string reason) {
    return {false, std::move(filter), std::move(reason)};
  }
};

/// Accepts a sentence iff every noun it uses is animacy-compatible with every
/// verb it uses: animate with animate, inanimate with inanimate, and a
/// dual-tagged ("both") word with either. Noun and verb uses come from the
/// derivation trace, so forms fused into possessive prefixes still count.
/// Untagged noun/verb uses fall back to the knowledge base and raise
/// DataError when no tag can be found there either.
FilterVerdict animacy_filter(const GeneratedSentence& s, const KnowledgeBase* kb);

/// Rejects a sentence in which the same noun surface form occurs twice.
FilterVerdict no_repeat_noun_filter(const GeneratedSentence& s);

/// Ordered conjunction of named predicates; rejection short-circuits and
/// reports the first rejecting filter's name.
class FilterPipeline {
 public:
  using Predicate =
      std::function<FilterVerdict(const GeneratedSentence&, const KnowledgeBase*)>;

  FilterPipeline() = default;

  void add(std::string name, Predicate predicate);

  /// Builds a pipeline from filter names ("animacy", "no_repeat").
  /// Throws DataError on unknown names.
  static FilterPipeline from_names(const std::vector<std::string>& names);

  FilterVerdict apply(const GeneratedSentence& s, const KnowledgeBase* kb) const;

  bool empty() const { return filters_.empty(); }
  std::size_t size() const { return filters_.size(); }
  std::vector<std::string> names() const;

 private:
  std::vector<std::pair<std::string, Predicate>> filters_;
};

inline FilterVerdict apply_pipeline(const FilterPipeline& p,
                                    const GeneratedSentence& s,
                                    const KnowledgeBase* kb) {
  return p.apply(s, kb);
}

}  // namespace nawgen
