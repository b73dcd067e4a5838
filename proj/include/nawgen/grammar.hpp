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
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace nawgen {

/// How an element attaches to the material on its left.
///
///   Space  - one space between adjacent realized fragments ("_" in rules)
///   Concat - fragments fuse with no separator ("+" in rules)
///   Null   - no attachment (first element of a rule body)
///
/// When an element realizes to nothing (an empty "vide" alternative), its
/// joins merge across it: a space on either side of the elided material
/// survives, and only an unbroken chain of concat joins keeps fusing. This is
/// what makes a possessive prefix glue to its noun while an elided negation
/// between two words still leaves one space.
enum class JoinOp { Space, Concat, Null };

struct GrammarSymbol {
  enum class Kind { Terminal, NonTerminal };
  Kind kind;
  std::string name;    // nonterminal name
  std::string lexeme;  // terminal surface; "" is the explicit empty alternative
};

/// One position in a rule body. Either a literal terminal or a nonterminal
/// reference, optionally person-indexed (PP_i, PV_3).
struct RuleElement {
  bool is_nonterminal = false;
  std::string symbol;  // nonterminal name, or terminal lexeme ("" = vide)
  JoinOp join_to_previous = JoinOp::Null;
  std::optional<std::string> index_var;  // variable index: PP_i
  std::optional<int> fixed_index;        // literal index:  PV_3 (1-based)

  bool indexed() const { return index_var.has_value() || fixed_index.has_value(); }
};

struct ProductionRule {
  std::string id;   // "<lhs>.<k>" in document order, e.g. "V.2"
  std::string lhs;
  std::vector<RuleElement> rhs;
  // Declared variable domains ("i,j=1,2,3") and equalities ("i=j").
  std::map<std::string, std::vector<int>> domains;
  std::vector<std::pair<std::string, std::string>> equalities;
};

/// A non-recursive context-free grammar.
///
/// Nonterminals come in three flavors: structural (defined by rules),
/// preterminal (defined by an inline list of terminal alternatives), and
/// lexical (bound to a knowledge-base category by name).
///
/// File format, one definition per line ("#" comments):
///
///   P -> ADV_T (N|V)
///   N -> ADJ (ART_|POS)+n
///   V -> PP_i NEG PV_j+v ADV_Q ; i,j=1,2,3 ; i=j
///   NEG -> amo|axkeman|vide
///   n -> @kb
///
/// Whitespace between elements is a space join, "+" is a concat join, and a
/// trailing "_" on a group alternative forces a space join to the following
/// element. "vide" (or ∅) is the empty alternative. A suffix "_<digit>" pins
/// a person index, "_<lowercase letter>" introduces an index variable.
struct Grammar {
  std::string start;
  std::vector<std::string> nonterminal_order;  // declaration order
  std::map<std::string, std::vector<ProductionRule>> rules;
  std::map<std::string, std::vector<std::string>> alternatives;  // "" = vide
  std::set<std::string> lexical_categories;

  static Grammar parse(std::istream& in);
  static Grammar from_string(std::string_view src);
  static Grammar from_file(const std::string& path);

  bool is_nonterminal(const std::string& name) const;
  bool is_preterminal(const std::string& name) const;  // alternatives or lexical

  /// All declared symbols: nonterminals plus inline terminals.
  std::vector<GrammarSymbol> symbols() const;

  /// Rules in document order across all nonterminals.
  std::vector<const ProductionRule*> all_rules() const;

  const ProductionRule* find_rule(std::string_view id) const;
};

struct Diagnostic {
  std::string code;     // stable machine name, e.g. "unknown-start"
  std::string subject;  // offending symbol or rule id
  std::string message;
};

/// Returns an empty list iff the grammar is well-formed: declared start
/// symbol, every referenced nonterminal defined exactly one way, non-empty
/// rule bodies, acyclic reachability, index use only on preterminals, and
/// constraint variables that actually occur in the rule.
std::vector<Diagnostic> validate_grammar(const Grammar& g);

}  // namespace nawgen
