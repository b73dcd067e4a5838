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

#include <algorithm>
#include <fstream>
#include <sstream>

#include "nawgen/textutil.hpp"

namespace nawgen {

namespace {

constexpr std::string_view kEmptyToken = "∅";  // ∅

bool is_open_class(std::string_view category) {
  return category == "n" || category == "v";
}

}  // namespace

std::string_view animacy_name(Animacy a) {
  switch (a) {
    case Animacy::Animate: return "animate";
    case Animacy::Inanimate: return "inanimate";
    case Animacy::Both: return "both";
  }
  return "both";
}

const std::vector<std::string>& KnowledgeBase::known_categories() {
  static const std::vector<std::string> cats = {
      "n", "v", "ADJ", "ADV_T", "ADV_Q", "ART", "POS", "PP", "PV", "NEG"};
  return cats;
}

void KnowledgeBase::add(LexicalEntry entry) {
  const auto& cats = known_categories();
  if (std::find(cats.begin(), cats.end(), entry.category) == cats.end()) {
    throw DataError("knowledge base: unknown category '" + entry.category + "'");
  }
  for (char c : entry.surface) {
    if (text::is_ascii_space(c)) {
      throw DataError("knowledge base: surface form '" + entry.surface +
                      "' contains whitespace");
    }
  }
  if (find(entry.surface, entry.category) != nullptr) {
    throw DataError("knowledge base: duplicate entry ('" + entry.surface +
                    "', " + entry.category + ")");
  }
  by_category_[entry.category].push_back(entry);
  entries_.push_back(std::move(entry));
}

KnowledgeBase KnowledgeBase::from_tsv(std::istream& in) {
  KnowledgeBase kb;
  std::string raw;
  bool header_seen = false;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (lineno == 1) line = text::strip_bom(line);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!text::is_valid_utf8(line)) {
      throw ParseError("knowledge base: malformed UTF-8 on line " +
                       std::to_string(lineno));
    }
    std::string_view stripped = text::trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    auto cols = text::split_char(line, '\t');
    if (!header_seen) {
      if (cols.size() < 4 || text::trim(cols[0]) != "surface") {
        throw ParseError("knowledge base: missing header row (expected "
                         "surface\\tcategory\\tanimacy\\tgloss)");
      }
      header_seen = true;
      continue;
    }
    if (cols.size() < 4) {
      throw ParseError("knowledge base: line " + std::to_string(lineno) +
                       ": expected 4 tab-separated columns");
    }
    LexicalEntry e;
    std::string_view surface = text::trim(cols[0]);
    e.surface = (surface == kEmptyToken) ? "" : std::string(surface);
    e.category = std::string(text::trim(cols[1]));
    std::string_view anim = text::trim(cols[2]);
    if (anim == "animate") {
      e.animacy = Animacy::Animate;
    } else if (anim == "inanimate") {
      e.animacy = Animacy::Inanimate;
    } else if (anim == "both") {
      e.animacy = Animacy::Both;
    } else if (anim == "-") {
      if (is_open_class(e.category)) {
        throw DataError("knowledge base: line " + std::to_string(lineno) +
                        ": category " + e.category + " requires an animacy tag");
      }
      e.animacy = Animacy::Both;
    } else {
      throw ParseError("knowledge base: line " + std::to_string(lineno) +
                       ": bad animacy value '" + std::string(anim) + "'");
    }
    e.gloss = std::string(text::trim(cols[3]));
    if (e.surface.empty() && is_open_class(e.category)) {
      throw DataError("knowledge base: line " + std::to_string(lineno) +
                      ": empty alternative is not allowed in category " +
                      e.category);
    }
    kb.add(std::move(e));
  }
  if (!header_seen) throw ParseError("knowledge base: empty file");
  if (kb.entries_.empty()) throw ParseError("knowledge base: no entries");
  return kb;
}

KnowledgeBase KnowledgeBase::from_string(std::string_view tsv) {
  std::istringstream in{std::string(tsv)};
  return from_tsv(in);
}

KnowledgeBase KnowledgeBase::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("knowledge base: cannot open '" + path + "'");
  return from_tsv(in);
}

std::string KnowledgeBase::render() const {
  std::string out = "surface\tcategory\tanimacy\tgloss\n";
  for (const auto& e : entries_) {
    out += e.surface.empty() ? std::string(kEmptyToken) : e.surface;
    out += '\t';
    out += e.category;
    out += '\t';
    out += is_open_class(e.category) ? std::string(animacy_name(e.animacy)) : "-";
    out += '\t';
    out += e.gloss;
    out += '\n';
  }
  return out;
}

const std::vector<LexicalEntry>& KnowledgeBase::entries_for(
    const std::string& category) const {
  auto it = by_category_.find(category);
  if (it == by_category_.end()) {
    throw DataError("knowledge base: unknown category '" + category + "'");
  }
  return it->second;
}

bool KnowledgeBase::has_category(const std::string& category) const {
  return by_category_.count(category) != 0;
}

std::size_t KnowledgeBase::cardinality(const std::string& category) const {
  auto it = by_category_.find(category);
  return it == by_category_.end() ? 0 : it->second.size();
}

const LexicalEntry* KnowledgeBase::find(std::string_view surface,
                                        std::string_view category) const {
  auto it = by_category_.find(std::string(category));
  if (it == by_category_.end()) return nullptr;
  for (const auto& e : it->second) {
    if (e.surface == surface) return &e;
  }
  return nullptr;
}

}  // namespace nawgen
