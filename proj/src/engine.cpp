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

#include "nawgen/engine.hpp"

#include <algorithm>
#include <random>

#include "nawgen/filters.hpp"
#include "nawgen/textutil.hpp"

namespace nawgen {

namespace {

JoinOp combine_joins(JoinOp a, JoinOp b) {
  if (a == JoinOp::Space || b == JoinOp::Space) return JoinOp::Space;
  if (a == JoinOp::Concat || b == JoinOp::Concat) return JoinOp::Concat;
  return JoinOp::Null;
}

// Accumulates surface tokens left to right. A fragment opens a new token
// after a space join and fuses onto the previous token after a concat join;
// empty fragments only contribute their join, with space absorbing concat
// across elided material.
class SentenceBuilder {
 public:
  void add(JoinOp join, std::string_view fragment) {
    pending_ = combine_joins(pending_, join);
    if (fragment.empty()) return;
    if (tokens_.empty() || pending_ == JoinOp::Space) {
      tokens_.emplace_back(fragment);
    } else {
      tokens_.back().append(fragment);
    }
    pending_ = JoinOp::Null;
  }

  struct Mark {
    std::size_t ntokens;
    std::size_t back_size;
    JoinOp pending;
  };

  Mark mark() const {
    return {tokens_.size(), tokens_.empty() ? 0 : tokens_.back().size(), pending_};
  }

  void rewind(const Mark& m) {
    tokens_.resize(m.ntokens);
    if (!tokens_.empty()) tokens_.back().resize(m.back_size);
    pending_ = m.pending;
  }

  const std::vector<std::string>& tokens() const { return tokens_; }

  std::string text() const {
    std::string out;
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      if (i) out.push_back(' ');
      out += tokens_[i];
    }
    return out;
  }

  void clear() {
    tokens_.clear();
    pending_ = JoinOp::Null;
  }

 private:
  std::vector<std::string> tokens_;
  JoinOp pending_ = JoinOp::Null;
};

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw DataError("count overflow: universe exceeds 64 bits");
  }
  return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw DataError("count overflow: universe exceeds 64 bits");
  }
  return r;
}

// One resolved alternative of a preterminal category.
struct Alternative {
  std::string lexeme;
  const LexicalEntry* entry = nullptr;  // non-null for knowledge-base entries
};

// Valid person-index assignments of one rule, in enumeration order.
struct RuleIndexInfo {
  std::vector<std::string> vars;                     // first-use order
  std::vector<std::vector<int>> assignments;         // values matching `vars`
  bool feasible = true;                              // fixed indexes in range
};

class Engine {
 public:
  Engine(const Grammar& g, const KnowledgeBase& kb) : g_(g) {
    for (const auto& [nt, alts] : g.alternatives) {
      auto& resolved = categories_[nt];
      for (const auto& lexeme : alts) resolved.push_back({lexeme, nullptr});
    }
    for (const auto& cat : g.lexical_categories) {
      auto& resolved = categories_[cat];  // empty when the kb lacks it
      if (kb.has_category(cat)) {
        for (const auto& e : kb.entries_for(cat)) resolved.push_back({e.surface, &e});
      }
    }
  }

  const Grammar& grammar() const { return g_; }

  const std::vector<Alternative>& alternatives_for(const std::string& category) const {
    auto it = categories_.find(category);
    if (it == categories_.end()) {
      throw DataError("grammar: '" + category + "' is not a preterminal category");
    }
    return it->second;
  }

  const RuleIndexInfo& index_info(const ProductionRule& rule) {
    auto it = index_cache_.find(&rule);
    if (it != index_cache_.end()) return it->second;
    return index_cache_.emplace(&rule, compute_index_info(rule)).first->second;
  }

 private:
  RuleIndexInfo compute_index_info(const ProductionRule& rule) {
    RuleIndexInfo info;
    std::map<std::string, std::vector<int>> domains;
    for (const auto& e : rule.rhs) {
      if (e.fixed_index) {
        std::size_t card = alternatives_for(e.symbol).size();
        if (static_cast<std::size_t>(*e.fixed_index) > card) info.feasible = false;
      }
      if (!e.index_var) continue;
      const std::string& var = *e.index_var;
      std::size_t card = alternatives_for(e.symbol).size();
      std::vector<int> domain;
      auto declared = rule.domains.find(var);
      if (declared != rule.domains.end()) {
        domain = declared->second;
        std::sort(domain.begin(), domain.end());
        domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
      } else {
        for (std::size_t v = 1; v <= card; ++v) domain.push_back(static_cast<int>(v));
      }
      std::erase_if(domain, [&](int v) {
        return v < 1 || static_cast<std::size_t>(v) > card;
      });
      auto seen = domains.find(var);
      if (seen == domains.end()) {
        domains[var] = domain;
        info.vars.push_back(var);
      } else {
        // Same variable on several elements: keep values valid everywhere.
        std::vector<int> merged;
        std::set_intersection(seen->second.begin(), seen->second.end(),
                              domain.begin(), domain.end(),
                              std::back_inserter(merged));
        seen->second = merged;
      }
    }
    if (!info.feasible) return info;

    std::vector<int> current(info.vars.size(), 0);
    std::vector<std::pair<std::size_t, std::size_t>> eq_positions;
    for (const auto& [a, b] : rule.equalities) {
      auto pa = std::find(info.vars.begin(), info.vars.end(), a);
      auto pb = std::find(info.vars.begin(), info.vars.end(), b);
      if (pa == info.vars.end() || pb == info.vars.end()) {
        throw DataError("grammar: rule " + rule.id +
                        " constrains a variable that indexes no element");
      }
      eq_positions.emplace_back(pa - info.vars.begin(), pb - info.vars.begin());
    }
    enumerate_assignments(domains, eq_positions, 0, current, info);
    return info;
  }

  void enumerate_assignments(
      const std::map<std::string, std::vector<int>>& domains,
      const std::vector<std::pair<std::size_t, std::size_t>>& equalities,
      std::size_t var_idx, std::vector<int>& current, RuleIndexInfo& info) {
    if (var_idx == info.vars.size()) {
      // Rules without index variables get the single empty assignment.
      info.assignments.push_back(current);
      return;
    }
    for (int value : domains.at(info.vars[var_idx])) {
      current[var_idx] = value;
      bool ok = true;
      for (const auto& [a, b] : equalities) {
        if (a <= var_idx && b <= var_idx && current[a] != current[b]) {
          ok = false;
          break;
        }
      }
      if (ok) enumerate_assignments(domains, equalities, var_idx + 1, current, info);
    }
  }

  const Grammar& g_;
  std::map<std::string, std::vector<Alternative>> categories_;
  std::map<const ProductionRule*, RuleIndexInfo> index_cache_;
};

// ---------------------------------------------------------------------------
// Symbolic counting

class SymbolicCounter {
 public:
  explicit SymbolicCounter(Engine& eng) : eng_(eng) {}

  std::uint64_t count_nonterminal(const std::string& nt) {
    auto memo = nt_counts_.find(nt);
    if (memo != nt_counts_.end()) {
      if (memo->second == kInProgress) {
        throw DataError("recursion detected: '" + nt + "' derives itself");
      }
      return memo->second;
    }
    const Grammar& g = eng_.grammar();
    if (g.is_preterminal(nt)) {
      std::uint64_t card = eng_.alternatives_for(nt).size();
      nt_counts_[nt] = card;
      return card;
    }
    auto rules = g.rules.find(nt);
    if (rules == g.rules.end()) {
      throw DataError("grammar: '" + nt + "' has no definition");
    }
    nt_counts_[nt] = kInProgress;
    std::uint64_t total = 0;
    for (const auto& r : rules->second) {
      std::uint64_t c = count_rule(r);
      rule_counts_[r.id] = c;
      total = checked_add(total, c);
    }
    nt_counts_[nt] = total;
    return total;
  }

  std::uint64_t count_rule(const ProductionRule& rule) {
    const RuleIndexInfo& info = eng_.index_info(rule);
    if (!info.feasible) return 0;
    std::uint64_t product = info.assignments.size();
    for (const auto& e : rule.rhs) {
      if (!e.is_nonterminal) continue;  // terminals contribute one choice
      if (e.indexed()) continue;        // pinned by the assignment
      std::uint64_t factor = eng_.grammar().is_preterminal(e.symbol)
                                 ? eng_.alternatives_for(e.symbol).size()
                                 : count_nonterminal(e.symbol);
      product = checked_mul(product, factor);
    }
    return product;
  }

  const std::map<std::string, std::uint64_t>& rule_counts() const {
    return rule_counts_;
  }

 private:
  static constexpr std::uint64_t kInProgress = ~std::uint64_t{0};
  Engine& eng_;
  std::map<std::string, std::uint64_t> nt_counts_;
  std::map<std::string, std::uint64_t> rule_counts_;
};

// ---------------------------------------------------------------------------
// Enumeration

class Enumerator {
 public:
  Enumerator(Engine& eng, const FilterPipeline* filters, const KnowledgeBase& kb,
             const SentenceSink& sink,
             const std::function<void(const GeneratedSentence&, const std::string&,
                                      const std::string&)>& reject_sink)
      : eng_(eng), filters_(filters), kb_(kb), sink_(sink), reject_sink_(reject_sink) {}

  CountReport run() {
    const Grammar& g = eng_.grammar();
    const std::string& start = g.start;
    if (g.is_preterminal(start)) {
      const auto& alts = eng_.alternatives_for(start);
      for (std::size_t k = 0; k < alts.size(); ++k) {
        steps_.push_back({start, {static_cast<int>(k)}, {}});
        builder_.add(JoinOp::Null, alts[k].lexeme);
        record_use(start, alts[k]);
        emit(start);
        pop_use(start, alts[k]);
        builder_.clear();
        steps_.pop_back();
      }
    } else {
      auto rules = g.rules.find(start);
      if (rules == g.rules.end()) {
        throw DataError("grammar: start symbol '" + start + "' has no definition");
      }
      for (const auto& r : rules->second) {
        expand_rule(r, [&] { emit(r.id); });
      }
    }
    CountReport report;
    report.raw_count = raw_;
    report.per_rule_breakdown = root_counts_;
    if (filters_) report.filtered_count = kept_;
    return report;
  }

 private:
  void expand_rule(const ProductionRule& rule, const std::function<void()>& done) {
    const RuleIndexInfo& info = eng_.index_info(rule);
    if (!info.feasible) return;
    for (const auto& assignment : info.assignments) {
      DerivationStep step;
      step.rule_id = rule.id;
      step.alt_choices.assign(rule.rhs.size(), 0);
      for (std::size_t v = 0; v < info.vars.size(); ++v) {
        step.person_assignment.emplace_back(info.vars[v], assignment[v]);
      }
      steps_.push_back(std::move(step));
      std::size_t my_step = steps_.size() - 1;
      expand_elements(rule, info, assignment, my_step, 0, done);
      steps_.pop_back();
    }
  }

  void expand_elements(const ProductionRule& rule, const RuleIndexInfo& info,
                       const std::vector<int>& assignment, std::size_t my_step,
                       std::size_t idx, const std::function<void()>& done) {
    if (idx == rule.rhs.size()) {
      done();
      return;
    }
    const RuleElement& e = rule.rhs[idx];
    auto mark = builder_.mark();
    if (!e.is_nonterminal) {
      builder_.add(e.join_to_previous, e.symbol);
      expand_elements(rule, info, assignment, my_step, idx + 1, done);
      builder_.rewind(mark);
      return;
    }
    if (eng_.grammar().is_preterminal(e.symbol)) {
      const auto& alts = eng_.alternatives_for(e.symbol);
      auto choose = [&](std::size_t k) {
        steps_[my_step].alt_choices[idx] = static_cast<int>(k);
        builder_.add(e.join_to_previous, alts[k].lexeme);
        record_use(e.symbol, alts[k]);
        expand_elements(rule, info, assignment, my_step, idx + 1, done);
        pop_use(e.symbol, alts[k]);
        builder_.rewind(mark);
      };
      if (e.indexed()) {
        int index = e.fixed_index
                        ? *e.fixed_index
                        : assignment[var_position(info, *e.index_var)];
        if (index >= 1 && static_cast<std::size_t>(index) <= alts.size()) {
          choose(static_cast<std::size_t>(index - 1));
        }
        return;
      }
      for (std::size_t k = 0; k < alts.size(); ++k) choose(k);
      return;
    }
    // Structural sub-expansion: record the join once, then let each of the
    // nonterminal's rules fill in fragments.
    builder_.add(e.join_to_previous, "");
    auto sub_rules = eng_.grammar().rules.find(e.symbol);
    if (sub_rules == eng_.grammar().rules.end()) {
      throw DataError("grammar: '" + e.symbol + "' has no definition");
    }
    for (const auto& r2 : sub_rules->second) {
      expand_rule(r2, [&] {
        expand_elements(rule, info, assignment, my_step, idx + 1, done);
      });
    }
    builder_.rewind(mark);
  }

  static std::size_t var_position(const RuleIndexInfo& info, const std::string& var) {
    auto it = std::find(info.vars.begin(), info.vars.end(), var);
    return static_cast<std::size_t>(it - info.vars.begin());
  }

  void record_use(const std::string& category, const Alternative& alt) {
    if (alt.lexeme.empty()) return;
    LexicalUse use;
    use.category = category;
    use.surface = alt.lexeme;
    if (alt.entry) use.animacy = alt.entry->animacy;
    uses_.push_back(std::move(use));
  }

  void pop_use(const std::string&, const Alternative& alt) {
    if (!alt.lexeme.empty()) uses_.pop_back();
  }

  void emit(const std::string& root_id) {
    ++raw_;
    ++root_counts_[root_id];
    GeneratedSentence s;
    s.text = builder_.text();
    s.tokens = builder_.tokens();
    s.derivation = steps_;
    s.lexical_uses = uses_;
    if (filters_) {
      FilterVerdict verdict = filters_->apply(s, &kb_);
      if (verdict.accepted) {
        ++kept_;
        if (sink_) sink_(s);
      } else if (reject_sink_) {
        reject_sink_(s, verdict.rejecting_filter.value_or(""), verdict.reason);
      }
    } else if (sink_) {
      sink_(s);
    }
  }

  Engine& eng_;
  const FilterPipeline* filters_;
  const KnowledgeBase& kb_;
  const SentenceSink& sink_;
  const std::function<void(const GeneratedSentence&, const std::string&,
                           const std::string&)>& reject_sink_;
  SentenceBuilder builder_;
  std::vector<DerivationStep> steps_;
  std::vector<LexicalUse> uses_;
  std::uint64_t raw_ = 0;
  std::uint64_t kept_ = 0;
  std::map<std::string, std::uint64_t> root_counts_;
};

// ---------------------------------------------------------------------------
// Replay

class Replayer {
 public:
  Replayer(Engine& eng, const std::vector<DerivationStep>& steps)
      : eng_(eng), steps_(steps) {}

  GeneratedSentence run() {
    if (steps_.empty()) throw DataError("expand: empty derivation");
    replay_node(expected_root());
    if (cursor_ != steps_.size()) {
      throw DataError("expand: trailing derivation steps");
    }
    GeneratedSentence s;
    s.text = builder_.text();
    s.tokens = builder_.tokens();
    s.derivation = steps_;
    s.lexical_uses = uses_;
    return s;
  }

 private:
  // The root step names either a rule or a preterminal category.
  std::string expected_root() const {
    const std::string& id = steps_.front().rule_id;
    if (const ProductionRule* r = eng_.grammar().find_rule(id)) return r->lhs;
    return id;
  }

  void replay_node(const std::string& expected_lhs) {
    if (cursor_ >= steps_.size()) {
      throw DataError("expand: derivation ended before '" + expected_lhs +
                      "' was expanded");
    }
    const DerivationStep& step = steps_[cursor_++];
    const Grammar& g = eng_.grammar();
    const ProductionRule* rule = g.find_rule(step.rule_id);
    if (!rule) {
      if (g.is_preterminal(step.rule_id) && step.rule_id == expected_lhs) {
        replay_preterminal_root(step);
        return;
      }
      throw DataError("expand: unknown rule '" + step.rule_id + "'");
    }
    if (rule->lhs != expected_lhs) {
      throw DataError("expand: step " + step.rule_id + " expands '" + rule->lhs +
                      "' where '" + expected_lhs + "' was expected");
    }
    if (step.alt_choices.size() != rule->rhs.size()) {
      throw DataError("expand: step " + step.rule_id + " carries " +
                      std::to_string(step.alt_choices.size()) + " choices for " +
                      std::to_string(rule->rhs.size()) + " elements");
    }
    std::map<std::string, int> assignment(step.person_assignment.begin(),
                                          step.person_assignment.end());
    check_constraints(*rule, assignment);

    for (std::size_t idx = 0; idx < rule->rhs.size(); ++idx) {
      const RuleElement& e = rule->rhs[idx];
      if (!e.is_nonterminal) {
        builder_.add(e.join_to_previous, e.symbol);
        continue;
      }
      if (g.is_preterminal(e.symbol)) {
        const auto& alts = eng_.alternatives_for(e.symbol);
        int k;
        if (e.fixed_index) {
          k = *e.fixed_index - 1;
        } else if (e.index_var) {
          auto it = assignment.find(*e.index_var);
          if (it == assignment.end()) {
            throw DataError("expand: constraint violation: no value for index '" +
                            *e.index_var + "' in rule " + rule->id);
          }
          k = it->second - 1;
        } else {
          k = step.alt_choices[idx];
        }
        if (k < 0 || static_cast<std::size_t>(k) >= alts.size()) {
          throw DataError("expand: unknown lexical form: choice " +
                          std::to_string(k + 1) + " of category '" + e.symbol +
                          "' (" + std::to_string(alts.size()) + " alternatives)");
        }
        builder_.add(e.join_to_previous, alts[k].lexeme);
        if (!alts[k].lexeme.empty()) {
          LexicalUse use{e.symbol, alts[k].lexeme, std::nullopt};
          if (alts[k].entry) use.animacy = alts[k].entry->animacy;
          uses_.push_back(std::move(use));
        }
        continue;
      }
      builder_.add(e.join_to_previous, "");
      replay_node(e.symbol);
    }
  }

  void replay_preterminal_root(const DerivationStep& step) {
    const auto& alts = eng_.alternatives_for(step.rule_id);
    if (step.alt_choices.size() != 1) {
      throw DataError("expand: category step must carry exactly one choice");
    }
    int k = step.alt_choices[0];
    if (k < 0 || static_cast<std::size_t>(k) >= alts.size()) {
      throw DataError("expand: unknown lexical form: choice " +
                      std::to_string(k + 1) + " of category '" + step.rule_id + "'");
    }
    builder_.add(JoinOp::Null, alts[k].lexeme);
    if (!alts[k].lexeme.empty()) {
      LexicalUse use{step.rule_id, alts[k].lexeme, std::nullopt};
      if (alts[k].entry) use.animacy = alts[k].entry->animacy;
      uses_.push_back(std::move(use));
    }
  }

  void check_constraints(const ProductionRule& rule,
                         const std::map<std::string, int>& assignment) {
    for (const auto& e : rule.rhs) {
      if (!e.index_var) continue;
      auto it = assignment.find(*e.index_var);
      if (it == assignment.end()) {
        throw DataError("expand: constraint violation: no value for index '" +
                        *e.index_var + "' in rule " + rule.id);
      }
      auto declared = rule.domains.find(*e.index_var);
      if (declared != rule.domains.end() &&
          std::find(declared->second.begin(), declared->second.end(), it->second) ==
              declared->second.end()) {
        throw DataError("expand: constraint violation: " + *e.index_var + "=" +
                        std::to_string(it->second) + " is outside its domain in rule " +
                        rule.id);
      }
    }
    for (const auto& [a, b] : rule.equalities) {
      auto ia = assignment.find(a);
      auto ib = assignment.find(b);
      if (ia == assignment.end() || ib == assignment.end() ||
          ia->second != ib->second) {
        throw DataError("expand: constraint violation: rule " + rule.id +
                        " requires " + a + " = " + b);
      }
    }
  }

  Engine& eng_;
  const std::vector<DerivationStep>& steps_;
  std::size_t cursor_ = 0;
  SentenceBuilder builder_;
  std::vector<LexicalUse> uses_;
};

// ---------------------------------------------------------------------------
// Sampling

// Unbiased bounded draw on top of a 64-bit generator; keeps sampling
// reproducible across standard libraries.
class BoundedRng {
 public:
  explicit BoundedRng(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    unsigned __int128 m = static_cast<unsigned __int128>(rng_()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(rng_()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::mt19937_64 rng_;
};

class Sampler {
 public:
  Sampler(Engine& eng, SymbolicCounter& counts, std::uint64_t seed)
      : eng_(eng), counts_(counts), rng_(seed) {}

  GeneratedSentence draw() {
    builder_.clear();
    steps_.clear();
    uses_.clear();
    const Grammar& g = eng_.grammar();
    if (g.is_preterminal(g.start)) {
      const auto& alts = eng_.alternatives_for(g.start);
      auto k = static_cast<std::size_t>(rng_.below(alts.size()));
      steps_.push_back({g.start, {static_cast<int>(k)}, {}});
      builder_.add(JoinOp::Null, alts[k].lexeme);
      record_use(g.start, alts[k]);
    } else {
      draw_nonterminal(g.start);
    }
    GeneratedSentence s;
    s.text = builder_.text();
    s.tokens = builder_.tokens();
    s.derivation = steps_;
    s.lexical_uses = uses_;
    return s;
  }

 private:
  void draw_nonterminal(const std::string& nt) {
    const auto& rules = eng_.grammar().rules.at(nt);
    std::uint64_t total = counts_.count_nonterminal(nt);
    if (total == 0) throw DataError("sample: '" + nt + "' derives no sentences");
    std::uint64_t pick = rng_.below(total);
    for (const auto& rule : rules) {
      std::uint64_t c = counts_.count_rule(rule);
      if (pick < c) {
        draw_rule(rule);
        return;
      }
      pick -= c;
    }
    throw DataError("sample: inconsistent counts for '" + nt + "'");
  }

  void draw_rule(const ProductionRule& rule) {
    const RuleIndexInfo& info = eng_.index_info(rule);
    const auto& assignment =
        info.assignments[rng_.below(info.assignments.size())];
    DerivationStep step;
    step.rule_id = rule.id;
    step.alt_choices.assign(rule.rhs.size(), 0);
    for (std::size_t v = 0; v < info.vars.size(); ++v) {
      step.person_assignment.emplace_back(info.vars[v], assignment[v]);
    }
    steps_.push_back(std::move(step));
    std::size_t my_step = steps_.size() - 1;

    for (std::size_t idx = 0; idx < rule.rhs.size(); ++idx) {
      const RuleElement& e = rule.rhs[idx];
      if (!e.is_nonterminal) {
        builder_.add(e.join_to_previous, e.symbol);
        continue;
      }
      if (eng_.grammar().is_preterminal(e.symbol)) {
        const auto& alts = eng_.alternatives_for(e.symbol);
        std::size_t k;
        if (e.fixed_index) {
          k = static_cast<std::size_t>(*e.fixed_index - 1);
        } else if (e.index_var) {
          auto pos = std::find(info.vars.begin(), info.vars.end(), *e.index_var);
          k = static_cast<std::size_t>(assignment[pos - info.vars.begin()] - 1);
        } else {
          k = static_cast<std::size_t>(rng_.below(alts.size()));
        }
        steps_[my_step].alt_choices[idx] = static_cast<int>(k);
        builder_.add(e.join_to_previous, alts[k].lexeme);
        record_use(e.symbol, alts[k]);
        continue;
      }
      builder_.add(e.join_to_previous, "");
      draw_nonterminal(e.symbol);
    }
  }

  void record_use(const std::string& category, const Alternative& alt) {
    if (alt.lexeme.empty()) return;
    LexicalUse use{category, alt.lexeme, std::nullopt};
    if (alt.entry) use.animacy = alt.entry->animacy;
    uses_.push_back(std::move(use));
  }

  Engine& eng_;
  SymbolicCounter& counts_;
  BoundedRng rng_;
  SentenceBuilder builder_;
  std::vector<DerivationStep> steps_;
  std::vector<LexicalUse> uses_;
};

}  // namespace

std::string CountReport::render_text() const {
  std::string out = "raw_count: " + std::to_string(raw_count) + "\n";
  if (filtered_count) {
    out += "filtered_count: " + std::to_string(*filtered_count) + "\n";
  }
  for (const auto& [id, c] : per_rule_breakdown) {
    out += "rule " + id + ": " + std::to_string(c) + "\n";
  }
  return out;
}

GeneratedSentence expand(const Grammar& g, const KnowledgeBase& kb,
                         const std::vector<DerivationStep>& steps) {
  Engine eng(g, kb);
  return Replayer(eng, steps).run();
}

CountReport enumerate_sentences(
    const Grammar& g, const KnowledgeBase& kb, const FilterPipeline* filters,
    const SentenceSink& sink,
    const std::function<void(const GeneratedSentence&, const std::string&,
                             const std::string&)>& reject_sink) {
  Engine eng(g, kb);
  return Enumerator(eng, filters, kb, sink, reject_sink).run();
}

CountReport count_symbolic(const Grammar& g, const KnowledgeBase& kb) {
  Engine eng(g, kb);
  SymbolicCounter counter(eng);
  CountReport report;
  report.raw_count = counter.count_nonterminal(g.start);
  report.per_rule_breakdown = counter.rule_counts();
  if (g.is_preterminal(g.start)) {
    report.per_rule_breakdown[g.start] = report.raw_count;
  }
  return report;
}

std::vector<GeneratedSentence> sample_sentences(const Grammar& g,
                                                const KnowledgeBase& kb,
                                                const SampleOptions& options) {
  std::vector<GeneratedSentence> out;
  if (options.count == 0) return out;
  Engine eng(g, kb);
  SymbolicCounter counter(eng);
  if (counter.count_nonterminal(g.start) == 0) {
    throw DataError("sample: the grammar derives no sentences");
  }
  Sampler sampler(eng, counter, options.seed);
  out.reserve(options.count);
  while (out.size() < options.count) {
    bool accepted = false;
    for (std::size_t attempt = 0; attempt < options.max_attempts_per_sentence;
         ++attempt) {
      GeneratedSentence s = sampler.draw();
      if (!options.filters || options.filters->apply(s, &kb).accepted) {
        out.push_back(std::move(s));
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw DataError("sample: filters rejected " +
                      std::to_string(options.max_attempts_per_sentence) +
                      " consecutive draws");
    }
  }
  return out;
}

int alternative_index(const Grammar& g, const KnowledgeBase& kb,
                      const std::string& category, std::string_view surface) {
  Engine eng(g, kb);
  const auto& alts = eng.alternatives_for(category);
  std::string_view wanted = (surface == "vide" || surface == "∅") ? "" : surface;
  for (std::size_t k = 0; k < alts.size(); ++k) {
    if (alts[k].lexeme == wanted) return static_cast<int>(k);
  }
  throw DataError("unknown lexical form '" + std::string(surface) +
                  "' in category '" + category + "'");
}

}  // namespace nawgen
