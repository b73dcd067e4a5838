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

#include "nawgen/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>

#include "nawgen/textutil.hpp"

namespace nawgen {

namespace {

constexpr std::string_view kVide = "vide";
constexpr std::string_view kVideSymbol = "∅";  // ∅
constexpr std::string_view kKbBinding = "@kb";

bool is_integer(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

// ---------------------------------------------------------------------------
// Raw line model (before name resolution)

struct RawItem {
  bool is_group = false;
  JoinOp join = JoinOp::Space;        // to previous item
  std::string token;                  // plain item
  bool space_suffix = false;          // trailing '_' on the token
  std::vector<RawItem> group_alts;    // group alternatives (plain items)
};

struct RawDefinition {
  std::string lhs;
  std::size_t lineno = 0;
  bool kb_binding = false;
  std::vector<std::vector<RawItem>> alternatives;  // top-level '|' sequences
  std::map<std::string, std::vector<int>> domains;
  std::vector<std::pair<std::string, std::string>> equalities;
};

class SequenceParser {
 public:
  SequenceParser(std::string_view src, std::size_t lineno)
      : src_(src), lineno_(lineno) {}

  // seq ('|' seq)*
  std::vector<std::vector<RawItem>> parse_alternation() {
    std::vector<std::vector<RawItem>> alts;
    alts.push_back(parse_sequence());
    while (peek() == '|') {
      ++pos_;
      alts.push_back(parse_sequence());
    }
    if (pos_ != src_.size()) fail("unexpected input after rule body");
    return alts;
  }

 private:
  std::vector<RawItem> parse_sequence() {
    std::vector<RawItem> items;
    skip_space();
    bool first = true;
    while (pos_ < src_.size() && peek() != '|' && peek() != ')') {
      JoinOp join = JoinOp::Space;
      if (first) {
        join = JoinOp::Null;
      } else if (peek() == '+') {
        ++pos_;
        skip_space();
        join = JoinOp::Concat;
      }
      RawItem item = parse_item();
      item.join = join;
      items.push_back(std::move(item));
      first = false;
      skip_space();
    }
    if (items.empty()) fail("empty rule body");
    return items;
  }

  RawItem parse_item() {
    if (peek() == '(') {
      ++pos_;
      RawItem group;
      group.is_group = true;
      skip_space();
      group.group_alts.push_back(parse_plain());
      skip_space();
      while (peek() == '|') {
        ++pos_;
        skip_space();
        group.group_alts.push_back(parse_plain());
        skip_space();
      }
      if (peek() != ')') fail("unterminated group");
      ++pos_;
      return group;
    }
    return parse_plain();
  }

  RawItem parse_plain() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && !is_delim(src_[pos_])) ++pos_;
    if (pos_ == start) fail("expected a symbol");
    RawItem item;
    item.token = std::string(src_.substr(start, pos_ - start));
    if (item.token.size() > 1 && item.token.back() == '_') {
      item.space_suffix = true;
      item.token.pop_back();
    }
    return item;
  }

  static bool is_delim(char c) {
    return text::is_ascii_space(c) || c == '(' || c == ')' || c == '|' || c == '+';
  }

  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  void skip_space() {
    while (pos_ < src_.size() && text::is_ascii_space(src_[pos_])) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("grammar: line " + std::to_string(lineno_) + ": " + what);
  }

  std::string_view src_;
  std::size_t lineno_;
  std::size_t pos_ = 0;
};

void parse_constraint_clause(std::string_view clause, RawDefinition& def) {
  clause = text::trim(clause);
  if (clause.empty()) return;
  auto fail = [&](const std::string& what) {
    throw ParseError("grammar: line " + std::to_string(def.lineno) +
                     ": bad constraint '" + std::string(clause) + "': " + what);
  };
  auto eq = clause.find('=');
  if (eq == std::string_view::npos) fail("expected '='");
  std::string_view lhs = text::trim(clause.substr(0, eq));
  std::string_view rhs = text::trim(clause.substr(eq + 1));
  if (lhs.empty() || rhs.empty()) fail("missing operand");

  std::vector<std::string> lhs_vars;
  for (auto part : text::split_char(lhs, ',')) {
    auto v = text::trim(part);
    if (v.empty()) fail("empty variable name");
    lhs_vars.emplace_back(v);
  }
  auto rhs_parts = text::split_char(rhs, ',');
  bool numeric = std::all_of(rhs_parts.begin(), rhs_parts.end(), [](auto p) {
    return is_integer(text::trim(p));
  });
  if (numeric) {
    std::vector<int> values;
    for (auto part : rhs_parts) {
      values.push_back(std::stoi(std::string(text::trim(part))));
    }
    for (const auto& v : lhs_vars) {
      if (def.domains.count(v)) fail("duplicate domain for variable " + v);
      def.domains[v] = values;
    }
  } else {
    if (lhs_vars.size() != 1 || rhs_parts.size() != 1) {
      fail("equality must relate exactly two variables");
    }
    def.equalities.emplace_back(lhs_vars[0], std::string(text::trim(rhs)));
  }
}

// Resolves one raw plain item against the set of defined names.
RuleElement resolve_element(const RawItem& item, JoinOp join,
                            const std::set<std::string>& defined,
                            std::size_t lineno) {
  RuleElement e;
  e.join_to_previous = join;
  const std::string& tok = item.token;
  if (tok == kVide || tok == kVideSymbol) {
    e.is_nonterminal = false;
    e.symbol = "";
    return e;
  }
  if (defined.count(tok)) {
    e.is_nonterminal = true;
    e.symbol = tok;
    return e;
  }
  auto us = tok.rfind('_');
  if (us != std::string::npos && us > 0) {
    std::string prefix = tok.substr(0, us);
    std::string suffix = tok.substr(us + 1);
    if (defined.count(prefix) && !suffix.empty()) {
      if (is_integer(suffix)) {
        e.is_nonterminal = true;
        e.symbol = prefix;
        e.fixed_index = std::stoi(suffix);
        if (*e.fixed_index < 1) {
          throw ParseError("grammar: line " + std::to_string(lineno) +
                           ": index must be positive in '" + tok + "'");
        }
        return e;
      }
      if (suffix.size() == 1 && suffix[0] >= 'a' && suffix[0] <= 'z') {
        e.is_nonterminal = true;
        e.symbol = prefix;
        e.index_var = suffix;
        return e;
      }
    }
  }
  e.is_nonterminal = false;
  e.symbol = tok;
  return e;
}

// Expands groups in a raw sequence into every concrete element sequence.
// The leftmost group varies slowest, matching reading order.
void expand_sequence(const std::vector<RawItem>& items, std::size_t idx,
                     std::vector<RuleElement>& acc, bool force_space_next,
                     const std::set<std::string>& defined, std::size_t lineno,
                     std::vector<std::vector<RuleElement>>& out) {
  if (idx == items.size()) {
    out.push_back(acc);
    return;
  }
  const RawItem& item = items[idx];
  JoinOp join = item.join;
  if (force_space_next) join = JoinOp::Space;
  if (item.is_group) {
    for (const RawItem& alt : item.group_alts) {
      acc.push_back(resolve_element(alt, join, defined, lineno));
      expand_sequence(items, idx + 1, acc, alt.space_suffix, defined, lineno, out);
      acc.pop_back();
    }
    return;
  }
  acc.push_back(resolve_element(item, join, defined, lineno));
  expand_sequence(items, idx + 1, acc, item.space_suffix, defined, lineno, out);
  acc.pop_back();
}

}  // namespace

Grammar Grammar::parse(std::istream& in) {
  std::vector<RawDefinition> defs;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (lineno == 1) line = text::strip_bom(line);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!text::is_valid_utf8(line)) {
      throw ParseError("grammar: line " + std::to_string(lineno) +
                       ": malformed UTF-8");
    }
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = text::trim(line);
    if (line.empty()) continue;

    auto arrow = line.find("->");
    if (arrow == std::string_view::npos) {
      throw ParseError("grammar: line " + std::to_string(lineno) +
                       ": expected '<name> -> <body>'");
    }
    RawDefinition def;
    def.lineno = lineno;
    def.lhs = std::string(text::trim(line.substr(0, arrow)));
    if (def.lhs.empty() || def.lhs.find_first_of(" \t()|+") != std::string::npos) {
      throw ParseError("grammar: line " + std::to_string(lineno) +
                       ": bad rule name '" + def.lhs + "'");
    }
    std::string_view body = line.substr(arrow + 2);

    auto clauses = text::split_char(body, ';');
    std::string_view rhs = text::trim(clauses[0]);
    if (rhs == kKbBinding) {
      def.kb_binding = true;
    } else {
      SequenceParser p(rhs, lineno);
      def.alternatives = p.parse_alternation();
      for (std::size_t i = 1; i < clauses.size(); ++i) {
        parse_constraint_clause(clauses[i], def);
      }
    }
    defs.push_back(std::move(def));
  }
  if (defs.empty()) throw ParseError("grammar: empty file");

  std::set<std::string> defined;
  for (const auto& d : defs) defined.insert(d.lhs);

  Grammar g;
  g.start = defs.front().lhs;
  for (const auto& d : defs) {
    if (std::find(g.nonterminal_order.begin(), g.nonterminal_order.end(), d.lhs) ==
        g.nonterminal_order.end()) {
      g.nonterminal_order.push_back(d.lhs);
    }
    if (d.kb_binding) {
      g.lexical_categories.insert(d.lhs);
      continue;
    }
    // A definition whose every top-level alternative is one plain unindexed
    // terminal is a preterminal alternative list; anything else is rules.
    bool all_terminal = true;
    for (const auto& seq : d.alternatives) {
      if (seq.size() != 1 || seq[0].is_group || seq[0].space_suffix) {
        all_terminal = false;
        break;
      }
      RuleElement e = resolve_element(seq[0], JoinOp::Null, defined, d.lineno);
      if (e.is_nonterminal) {
        all_terminal = false;
        break;
      }
    }
    if (all_terminal && !g.rules.count(d.lhs)) {
      auto& alts = g.alternatives[d.lhs];
      for (const auto& seq : d.alternatives) {
        RuleElement e = resolve_element(seq[0], JoinOp::Null, defined, d.lineno);
        alts.push_back(e.symbol);
      }
      continue;
    }
    for (const auto& seq : d.alternatives) {
      std::vector<std::vector<RuleElement>> expanded;
      std::vector<RuleElement> acc;
      expand_sequence(seq, 0, acc, false, defined, d.lineno, expanded);
      for (auto& elems : expanded) {
        ProductionRule r;
        r.lhs = d.lhs;
        r.rhs = std::move(elems);
        r.domains = d.domains;
        r.equalities = d.equalities;
        g.rules[d.lhs].push_back(std::move(r));
      }
    }
  }
  for (auto& [lhs, rules] : g.rules) {
    for (std::size_t i = 0; i < rules.size(); ++i) {
      rules[i].id = lhs + "." + std::to_string(i + 1);
    }
  }
  return g;
}

Grammar Grammar::from_string(std::string_view src) {
  std::istringstream in{std::string(src)};
  return parse(in);
}

Grammar Grammar::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("grammar: cannot open '" + path + "'");
  return parse(in);
}

bool Grammar::is_nonterminal(const std::string& name) const {
  return rules.count(name) || alternatives.count(name) ||
         lexical_categories.count(name);
}

bool Grammar::is_preterminal(const std::string& name) const {
  return alternatives.count(name) || lexical_categories.count(name);
}

std::vector<GrammarSymbol> Grammar::symbols() const {
  std::vector<GrammarSymbol> out;
  for (const auto& nt : nonterminal_order) {
    out.push_back({GrammarSymbol::Kind::NonTerminal, nt, ""});
  }
  std::set<std::string> seen;
  auto add_terminal = [&](const std::string& lexeme) {
    if (seen.insert(lexeme).second) {
      out.push_back({GrammarSymbol::Kind::Terminal, "", lexeme});
    }
  };
  for (const auto& [_, alts] : alternatives) {
    for (const auto& a : alts) add_terminal(a);
  }
  for (const auto& [_, rules_for] : rules) {
    for (const auto& r : rules_for) {
      for (const auto& e : r.rhs) {
        if (!e.is_nonterminal) add_terminal(e.symbol);
      }
    }
  }
  return out;
}

std::vector<const ProductionRule*> Grammar::all_rules() const {
  std::vector<const ProductionRule*> out;
  for (const auto& nt : nonterminal_order) {
    auto it = rules.find(nt);
    if (it == rules.end()) continue;
    for (const auto& r : it->second) out.push_back(&r);
  }
  return out;
}

const ProductionRule* Grammar::find_rule(std::string_view id) const {
  for (const auto& [_, rules_for] : rules) {
    for (const auto& r : rules_for) {
      if (r.id == id) return &r;
    }
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Validation

std::vector<Diagnostic> validate_grammar(const Grammar& g) {
  std::vector<Diagnostic> diags;
  auto report = [&](std::string code, std::string subject, std::string message) {
    diags.push_back({std::move(code), std::move(subject), std::move(message)});
  };

  if (!g.is_nonterminal(g.start)) {
    report("unknown-start", g.start,
           "start symbol '" + g.start + "' has no definition");
  }

  for (const auto& nt : g.nonterminal_order) {
    int ways = (g.rules.count(nt) ? 1 : 0) + (g.alternatives.count(nt) ? 1 : 0) +
               (g.lexical_categories.count(nt) ? 1 : 0);
    if (ways > 1) {
      report("conflicting-definition", nt,
             "'" + nt + "' is defined in more than one way");
    }
  }

  for (const auto& [nt, alts] : g.alternatives) {
    std::set<std::string> seen;
    for (const auto& a : alts) {
      if (!seen.insert(a).second) {
        report("duplicate-alternative", nt,
               "'" + nt + "' lists alternative '" + (a.empty() ? "vide" : a) +
                   "' more than once");
      }
    }
    if (alts.empty()) {
      report("empty-alternatives", nt, "'" + nt + "' has no alternatives");
    }
  }

  for (const auto* rule : g.all_rules()) {
    if (rule->rhs.empty()) {
      report("empty-rule", rule->id, "rule " + rule->id + " has an empty body");
      continue;
    }
    std::map<std::string, int> var_uses;
    for (const auto& e : rule->rhs) {
      if (e.is_nonterminal && !g.is_nonterminal(e.symbol)) {
        report("undefined-nonterminal", rule->id,
               "rule " + rule->id + " references undefined '" + e.symbol + "'");
      }
      if (e.indexed() && !g.is_preterminal(e.symbol)) {
        report("bad-index-target", rule->id,
               "rule " + rule->id + " indexes '" + e.symbol +
                   "', which is not an alternative list or lexical category");
      }
      if (e.fixed_index && *e.fixed_index < 1) {
        report("bad-index", rule->id, "rule " + rule->id + " uses index < 1");
      }
      if (e.index_var) ++var_uses[*e.index_var];
    }
    for (const auto& [var, _] : rule->domains) {
      if (!var_uses.count(var)) {
        report("unused-constraint-variable", rule->id,
               "rule " + rule->id + " declares unused variable '" + var + "'");
      }
    }
    for (const auto& [a, b] : rule->equalities) {
      if (!var_uses.count(a) || !var_uses.count(b)) {
        report("unused-constraint-variable", rule->id,
               "rule " + rule->id + " constrains variable(s) '" + a + "'/'" + b +
                   "' that do not index any element");
      } else if (var_uses[a] + var_uses[b] < 2) {
        report("underused-constraint", rule->id,
               "rule " + rule->id + " equality " + a + "=" + b +
                   " does not span two elements");
      }
    }
  }

  // Cycle detection over the nonterminal reachability graph.
  enum class Mark { White, Grey, Black };
  std::map<std::string, Mark> marks;
  std::function<bool(const std::string&)> dfs = [&](const std::string& nt) -> bool {
    Mark& m = marks[nt];
    if (m == Mark::Grey) return true;
    if (m == Mark::Black) return false;
    m = Mark::Grey;
    auto it = g.rules.find(nt);
    if (it != g.rules.end()) {
      for (const auto& r : it->second) {
        for (const auto& e : r.rhs) {
          if (e.is_nonterminal && g.rules.count(e.symbol) && dfs(e.symbol)) {
            report("recursion-detected", nt,
                   "'" + nt + "' can derive itself; recursive grammars are not supported");
            marks[nt] = Mark::Black;
            return false;  // one report per offending entry point
          }
        }
      }
    }
    m = Mark::Black;
    return false;
  };
  for (const auto& nt : g.nonterminal_order) {
    if (g.rules.count(nt)) dfs(nt);
  }

  return diags;
}

}  // namespace nawgen
