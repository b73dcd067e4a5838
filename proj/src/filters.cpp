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

#include "nawgen/filters.hpp"

#include <algorithm>
#include <set>

#include "nawgen/textutil.hpp"

namespace nawgen {

namespace {

bool compatible(Animacy noun, Animacy verb) {
  if (noun == Animacy::Both || verb == Animacy::Both) return true;
  return noun == verb;
}

Animacy resolve_tag(const LexicalUse& use, const KnowledgeBase* kb) {
  if (use.animacy) return *use.animacy;
  if (kb) {
    if (const LexicalEntry* e = kb->find(use.surface, use.category)) {
      return e->animacy;
    }
  }
  throw DataError("animacy filter: untagged lexical use '" + use.surface +
                  "' (" + use.category + ")");
}

}  // namespace

FilterVerdict animacy_filter(const GeneratedSentence& s, const KnowledgeBase* kb) {
  for (const auto& noun : s.lexical_uses) {
    if (noun.category != "n") continue;
    Animacy ntag = resolve_tag(noun, kb);
    for (const auto& verb : s.lexical_uses) {
      if (verb.category != "v") continue;
      Animacy vtag = resolve_tag(verb, kb);
      if (!compatible(ntag, vtag)) {
        return FilterVerdict::reject(
            "animacy", "'" + noun.surface + "' (" +
                           std::string(animacy_name(ntag)) + ") with '" +
                           verb.surface + "' (" + std::string(animacy_name(vtag)) +
                           ")");
      }
    }
  }
  return FilterVerdict::accept();
}

FilterVerdict no_repeat_noun_filter(const GeneratedSentence& s) {
  std::set<std::string_view> seen;
  for (const auto& use : s.lexical_uses) {
    if (use.category != "n") continue;
    if (!seen.insert(use.surface).second) {
      return FilterVerdict::reject("no_repeat",
                                   "noun '" + use.surface + "' occurs twice");
    }
  }
  return FilterVerdict::accept();
}

void FilterPipeline::add(std::string name, Predicate predicate) {
  filters_.emplace_back(std::move(name), std::move(predicate));
}

FilterPipeline FilterPipeline::from_names(const std::vector<std::string>& names) {
  FilterPipeline p;
  for (const auto& name : names) {
    if (name == "animacy") {
      p.add("animacy", animacy_filter);
    } else if (name == "no_repeat") {
      p.add("no_repeat", [](const GeneratedSentence& s, const KnowledgeBase*) {
        return no_repeat_noun_filter(s);
      });
    } else {
      throw DataError("unknown filter '" + name +
                      "' (available: animacy, no_repeat)");
    }
  }
  return p;
}

FilterVerdict FilterPipeline::apply(const GeneratedSentence& s,
                                    const KnowledgeBase* kb) const {
  for (const auto& [name, predicate] : filters_) {
    FilterVerdict v = predicate(s, kb);
    if (!v.accepted) {
      if (!v.rejecting_filter) v.rejecting_filter = name;
      return v;
    }
  }
  return FilterVerdict::accept();
}

std::vector<std::string> FilterPipeline::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : filters_) out.push_back(name);
  return out;
}

}  // namespace nawgen
