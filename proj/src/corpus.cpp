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

#include "nawgen/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nawgen/textutil.hpp"

namespace nawgen {

namespace {

bool is_consonant(char c) {
  switch (c) {
    case 'b': case 'c': case 'd': case 'f': case 'g': case 'h': case 'j':
    case 'k': case 'l': case 'm': case 'n': case 'p': case 'q': case 'r':
    case 's': case 't': case 'v': case 'w': case 'x': case 'z':
      return true;
    default:
      return false;
  }
}

// lowercase + diacritic folding + control-character removal, code point wise
std::string fold_text(std::string_view input, const NormalizationRuleSet& rules) {
  std::string out;
  out.reserve(input.size());
  std::size_t pos = 0;
  while (pos < input.size()) {
    char32_t cp = text::decode_utf8(input, pos);
    if (cp == 0xFEFF) continue;  // byte-order mark
    if (cp < 0x20 && cp != U'\n' && cp != U'\t') continue;
    if (cp == 0x7F) continue;
    if (rules.lowercase) cp = text::to_lower(cp);
    if (rules.strip_diacritics) cp = text::strip_mark(cp);
    text::encode_utf8(cp, out);
  }
  return out;
}

std::string apply_rewrites(std::string_view input,
                           const std::vector<RewriteRule>& rules) {
  std::string out;
  out.reserve(input.size());
  std::size_t pos = 0;
  while (pos < input.size()) {
    const RewriteRule* hit = nullptr;
    for (const auto& r : rules) {
      if (r.pattern.empty()) continue;
      if (input.compare(pos, r.pattern.size(), r.pattern) != 0) continue;
      if (!r.right_context.empty()) {
        std::size_t next = pos + r.pattern.size();
        if (next >= input.size()) continue;
        std::size_t probe = next;
        char32_t following = text::decode_utf8(input, probe);
        std::string encoded;
        text::encode_utf8(following, encoded);
        if (r.right_context.find(encoded) == std::string::npos) continue;
      }
      hit = &r;
      break;
    }
    if (hit) {
      out += hit->replacement;
      pos += hit->pattern.size();
    } else {
      std::size_t start = pos;
      text::decode_utf8(input, pos);
      out.append(input.substr(start, pos - start));
    }
  }
  return out;
}

// Collapses runs of the same ASCII consonant letter to one occurrence.
std::string collapse_doubles(std::string_view input) {
  std::string out;
  out.reserve(input.size());
  std::size_t i = 0;
  while (i < input.size()) {
    char c = input[i];
    out.push_back(c);
    if (is_consonant(c)) {
      while (i + 1 < input.size() && input[i + 1] == c) ++i;
    }
    ++i;
  }
  return out;
}

std::string strip_final_period(std::string_view token) {
  if (!token.empty() && token.back() == '.') token.remove_suffix(1);
  return std::string(token);
}

}  // namespace

// ---------------------------------------------------------------------------
// Rule set loading

NormalizationRuleSet NormalizationRuleSet::from_tsv(std::istream& in) {
  NormalizationRuleSet set;
  set.rules.clear();
  std::string raw;
  bool header_seen = false;
  std::size_t lineno = 0;
  auto parse_flag = [&](std::string_view directive) {
    auto parts = text::split_tokens(directive);
    if (parts.size() != 3 || parts[0] != "#flag") return false;
    bool on = parts[2] == "on";
    if (!on && parts[2] != "off") {
      throw ParseError("rule table: line " + std::to_string(lineno) +
                       ": flag value must be on|off");
    }
    if (parts[1] == "lowercase") {
      set.lowercase = on;
    } else if (parts[1] == "strip_diacritics") {
      set.strip_diacritics = on;
    } else if (parts[1] == "collapse_double_consonants") {
      set.collapse_double_consonants = on;
    } else {
      throw ParseError("rule table: line " + std::to_string(lineno) +
                       ": unknown flag '" + std::string(parts[1]) + "'");
    }
    return true;
  };
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (lineno == 1) line = text::strip_bom(line);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::string_view stripped = text::trim(line);
    if (stripped.empty()) continue;
    if (stripped.front() == '#') {
      parse_flag(stripped);
      continue;
    }
    auto cols = text::split_char(line, '\t');
    if (!header_seen) {
      if (cols.size() < 4 || text::trim(cols[0]) != "pattern") {
        throw ParseError("rule table: missing header row (expected "
                         "pattern\\tright_context\\treplacement\\tpriority)");
      }
      header_seen = true;
      continue;
    }
    if (cols.size() < 4) {
      throw ParseError("rule table: line " + std::to_string(lineno) +
                       ": expected 4 tab-separated columns");
    }
    RewriteRule r;
    r.pattern = std::string(text::trim(cols[0]));
    std::string_view ctx = text::trim(cols[1]);
    r.right_context = (ctx == "-") ? "" : std::string(ctx);
    std::string_view repl = text::trim(cols[2]);
    r.replacement = (repl == "-") ? "" : std::string(repl);
    std::string_view prio = text::trim(cols[3]);
    try {
      r.priority = std::stoi(std::string(prio));
    } catch (const std::exception&) {
      throw ParseError("rule table: line " + std::to_string(lineno) +
                       ": bad priority '" + std::string(prio) + "'");
    }
    if (r.pattern.empty()) {
      throw ParseError("rule table: line " + std::to_string(lineno) +
                       ": empty pattern");
    }
    set.rules.push_back(std::move(r));
  }
  if (!header_seen) throw ParseError("rule table: empty file");
  std::stable_sort(set.rules.begin(), set.rules.end(),
                   [](const RewriteRule& a, const RewriteRule& b) {
                     return a.priority < b.priority;
                   });
  return set;
}

NormalizationRuleSet NormalizationRuleSet::from_string(std::string_view tsv) {
  std::istringstream in{std::string(tsv)};
  return from_tsv(in);
}

NormalizationRuleSet NormalizationRuleSet::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("rule table: cannot open '" + path + "'");
  return from_tsv(in);
}

std::string_view NormalizationRuleSet::default_rules_tsv() {
  // Kept byte-identical with data/normalization_rules.tsv (test-enforced).
  static constexpr std::string_view kTable =
      "# Spelling unification rules for Nawatl variants.\n"
      "# The ch digraph is preserved; c spells s before front vowels and k\n"
      "# elsewhere; hu and qu are older spellings of w and k.\n"
      "#flag lowercase on\n"
      "#flag strip_diacritics on\n"
      "#flag collapse_double_consonants on\n"
      "pattern\tright_context\treplacement\tpriority\n"
      "ch\t-\tch\t10\n"
      "c\tei\ts\t20\n"
      "c\t-\tk\t30\n"
      "hu\t-\tw\t40\n"
      "qu\t-\tk\t50\n";
  return kTable;
}

const NormalizationRuleSet& NormalizationRuleSet::default_rules() {
  static const NormalizationRuleSet set = from_string(default_rules_tsv());
  return set;
}

std::string normalize(std::string_view input, const NormalizationRuleSet& rules) {
  std::string folded = fold_text(input, rules);
  std::string rewritten = apply_rewrites(folded, rules.rules);
  if (rules.collapse_double_consonants) {
    return collapse_doubles(rewritten);
  }
  return rewritten;
}

// ---------------------------------------------------------------------------
// Stats

void StatsAccumulator::add_line(std::string_view line) {
  ++sentences_;
  auto tokens = text::split_tokens(line);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string token = (i + 1 == tokens.size())
                            ? strip_final_period(tokens[i])
                            : std::string(tokens[i]);
    if (token.empty()) continue;  // the line ended in a bare "."
    ++tokens_;
    types_.insert(text::to_lower_copy(token));
  }
}

CorpusStats StatsAccumulator::snapshot() const {
  CorpusStats s;
  s.documents = documents_;
  s.sentences = sentences_;
  s.tokens = tokens_;
  s.types = types_.size();
  s.tokens_per_sentence =
      sentences_ ? static_cast<double>(tokens_) / static_cast<double>(sentences_)
                 : 0.0;
  return s;
}

std::string CorpusStats::render_row() const {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%llu %llu %llu %.2f",
                static_cast<unsigned long long>(sentences),
                static_cast<unsigned long long>(tokens),
                static_cast<unsigned long long>(types), tokens_per_sentence);
  return buf;
}

CorpusStats compute_stats(std::istream& in) {
  StatsAccumulator acc;
  acc.add_document();
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    acc.add_line(line);
  }
  return acc.snapshot();
}

CorpusStats compute_stats_of_string(std::string_view content) {
  std::istringstream in{std::string(content)};
  return compute_stats(in);
}

MergeResult merge_corpora(std::istream& authentic, std::istream& artificial,
                          const NormalizationRuleSet& rules,
                          const std::function<void(std::string_view)>& out_line) {
  StatsAccumulator merged;
  auto consume = [&](std::istream& in, StatsAccumulator& acc) {
    acc.add_document();
    merged.add_document();
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::string norm = normalize(line, rules);
      acc.add_line(norm);
      merged.add_line(norm);
      if (out_line) out_line(norm);
    }
  };
  StatsAccumulator a, b;
  consume(authentic, a);
  consume(artificial, b);
  return {a.snapshot(), b.snapshot(), merged.snapshot()};
}

AugmentationRatios augmentation_ratios(const CorpusStats& authentic,
                                       const CorpusStats& artificial) {
  if (authentic.tokens == 0 || authentic.sentences == 0) {
    throw DataError("augmentation ratios: authentic corpus is empty");
  }
  AugmentationRatios r;
  r.rho_tokens = static_cast<double>(artificial.tokens) /
                 static_cast<double>(authentic.tokens);
  r.rho_sentences = static_cast<double>(artificial.sentences) /
                    static_cast<double>(authentic.sentences);
  return r;
}

}  // namespace nawgen
