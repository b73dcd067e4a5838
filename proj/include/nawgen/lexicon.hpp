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

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace nawgen {

/// Noun/verb animacy class driving the semantic compatibility filter.
/// Marker categories always carry Both (written "-" in the TSV).
enum class Animacy { Animate, Inanimate, Both };

std::string_view animacy_name(Animacy a);

struct LexicalEntry {
  std::string surface;   // "" is the reserved empty alternative (file token ∅)
  std::string category;  // one of the known lexical categories
  Animacy animacy = Animacy::Both;
  std::string gloss;

  bool operator==(const LexicalEntry&) const = default;
};

/// Tagged word list backing the grammar's lexical categories.
///
/// File format: UTF-8 TSV with a header row `surface\tcategory\tanimacy\tgloss`,
/// "#" comment lines allowed. animacy is one of animate|inanimate|both for the
/// open classes (n, v) and "-" for marker categories. The surface token "∅"
/// denotes the empty ("vide") alternative and loads as an empty surface.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;

  static KnowledgeBase from_tsv(std::istream& in);
  static KnowledgeBase from_string(std::string_view tsv);
  static KnowledgeBase from_file(const std::string& path);

  /// Renders back to TSV; from_tsv(render()) reproduces the same value.
  std::string render() const;

  void add(LexicalEntry entry);  // throws DataError on invalid/duplicate

  const std::vector<LexicalEntry>& entries() const { return entries_; }

  /// Document-ordered entries of one category; throws DataError if unknown.
  const std::vector<LexicalEntry>& entries_for(const std::string& category) const;

  bool has_category(const std::string& category) const;
  std::size_t cardinality(const std::string& category) const;

  /// nullptr when the (surface, category) pair is absent.
  const LexicalEntry* find(std::string_view surface, std::string_view category) const;

  bool operator==(const KnowledgeBase& other) const {
    return entries_ == other.entries_;
  }

  /// The closed set of categories a knowledge base may use.
  static const std::vector<std::string>& known_categories();

 private:
  std::vector<LexicalEntry> entries_;
  std::map<std::string, std::vector<LexicalEntry>> by_category_;
};

}  // namespace nawgen
