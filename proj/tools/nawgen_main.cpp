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

// nawgen: generate, filter, count, and normalize artificial Nawatl sentences,
// and score embedding models on the sentence-similarity ranking task.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nawgen/corpus.hpp"
#include "nawgen/engine.hpp"
#include "nawgen/eval.hpp"
#include "nawgen/filters.hpp"
#include "nawgen/grammar.hpp"
#include "nawgen/lexicon.hpp"
#include "nawgen/textutil.hpp"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct OutputTarget {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  void open(const std::string& path) {
    if (path.empty() || path == "-") return;
    file.open(path);
    if (!file) throw nawgen::DataError("cannot open output file '" + path + "'");
    stream = &file;
  }
};

std::unique_ptr<std::istream> open_input(const std::string& path) {
  if (path == "-") {
    return std::make_unique<std::istringstream>(
        std::string(std::istreambuf_iterator<char>(std::cin), {}));
  }
  auto in = std::make_unique<std::ifstream>(path);
  if (!*in) throw nawgen::DataError("cannot open input file '" + path + "'");
  return in;
}

std::vector<std::string> split_csv(const std::string& list) {
  std::vector<std::string> out;
  if (list.empty()) return out;
  for (auto part : nawgen::text::split_char(list, ',')) {
    auto trimmed = nawgen::text::trim(part);
    if (!trimmed.empty()) out.emplace_back(trimmed);
  }
  return out;
}

nawgen::Grammar load_grammar_checked(const std::string& path) {
  nawgen::Grammar g = nawgen::Grammar::from_file(path);
  auto diags = nawgen::validate_grammar(g);
  if (!diags.empty()) {
    std::string msg = "grammar '" + path + "' is invalid:";
    for (const auto& d : diags) msg += "\n  [" + d.code + "] " + d.message;
    throw nawgen::DataError(msg);
  }
  return g;
}

nawgen::NormalizationRuleSet load_rules(const std::string& path) {
  if (path.empty()) return nawgen::NormalizationRuleSet::default_rules();
  return nawgen::NormalizationRuleSet::from_file(path);
}

json count_report_json(const nawgen::CountReport& report) {
  json j;
  j["raw_count"] = report.raw_count;
  if (report.filtered_count) j["filtered_count"] = *report.filtered_count;
  j["per_rule"] = json::object();
  for (const auto& [id, c] : report.per_rule_breakdown) j["per_rule"][id] = c;
  return j;
}

json stats_json(const nawgen::CorpusStats& s) {
  return json{{"sentences", s.sentences},
              {"tokens", s.tokens},
              {"types", s.types},
              {"tokens_per_sentence", s.tokens_per_sentence}};
}

// ---------------------------------------------------------------------------

struct GenerateOptions {
  std::string grammar_path;
  std::string kb_path;
  std::string filters;
  std::string out_path = "-";
  std::string reject_log;
  std::uint64_t sample = 0;
  std::uint64_t seed = 42;
  bool dedup = false;
  std::optional<std::uint64_t> expected_filtered;
  std::string format = "text";
};

int run_generate(const GenerateOptions& opt) {
  nawgen::Grammar g = load_grammar_checked(opt.grammar_path);
  nawgen::KnowledgeBase kb = nawgen::KnowledgeBase::from_file(opt.kb_path);
  nawgen::FilterPipeline pipeline =
      nawgen::FilterPipeline::from_names(split_csv(opt.filters));

  OutputTarget out;
  out.open(opt.out_path);
  std::ofstream reject_log;
  if (!opt.reject_log.empty()) {
    reject_log.open(opt.reject_log);
    if (!reject_log) {
      throw nawgen::DataError("cannot open reject log '" + opt.reject_log + "'");
    }
    reject_log << "sentence\trejecting_filter\treason\n";
  }

  std::set<std::string> seen;
  std::uint64_t emitted = 0;
  auto sink = [&](const nawgen::GeneratedSentence& s) {
    if (opt.dedup && !seen.insert(s.text).second) return;
    *out.stream << s.text << '\n';
    ++emitted;
  };

  nawgen::CountReport report;
  if (opt.sample > 0) {
    nawgen::SampleOptions so;
    so.seed = opt.seed;
    so.count = opt.sample;
    so.filters = pipeline.empty() ? nullptr : &pipeline;
    auto sentences = nawgen::sample_sentences(g, kb, so);
    for (const auto& s : sentences) sink(s);
    report = nawgen::count_symbolic(g, kb);
  } else {
    report = nawgen::enumerate_sentences(
        g, kb, pipeline.empty() ? nullptr : &pipeline, sink,
        reject_log.is_open()
            ? std::function<void(const nawgen::GeneratedSentence&,
                                 const std::string&, const std::string&)>(
                  [&](const nawgen::GeneratedSentence& s, const std::string& f,
                      const std::string& why) {
                    reject_log << s.text << '\t' << f << '\t' << why << '\n';
                  })
            : nullptr);
  }
  out.stream->flush();

  if (opt.format == "machine") {
    json j = count_report_json(report);
    j["cmd"] = "generate";
    j["emitted"] = emitted;
    if (opt.dedup) j["surface_dedup_emitted"] = seen.size();
    if (opt.expected_filtered && report.filtered_count) {
      j["expected_filtered"] = *opt.expected_filtered;
      j["delta"] = static_cast<std::int64_t>(*report.filtered_count) -
                   static_cast<std::int64_t>(*opt.expected_filtered);
    }
    std::cerr << j.dump() << '\n';
  } else {
    std::cerr << report.render_text();
    if (opt.dedup) std::cerr << "surface_dedup_emitted: " << seen.size() << '\n';
    if (opt.expected_filtered && report.filtered_count) {
      auto expected = static_cast<double>(*opt.expected_filtered);
      auto got = static_cast<double>(*report.filtered_count);
      std::int64_t delta = static_cast<std::int64_t>(*report.filtered_count) -
                           static_cast<std::int64_t>(*opt.expected_filtered);
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "expected_filtered: %llu (delta %+lld, ratio %.3f)\n",
                    static_cast<unsigned long long>(*opt.expected_filtered),
                    static_cast<long long>(delta), got / expected);
      std::cerr << buf;
    }
  }
  return 0;
}

struct CountOptions {
  std::string grammar_path;
  std::string kb_path;
  bool verify = false;
  std::uint64_t verify_bound = 1000000;
  std::string format = "text";
};

int run_count(const CountOptions& opt) {
  nawgen::Grammar g = load_grammar_checked(opt.grammar_path);
  nawgen::KnowledgeBase kb = nawgen::KnowledgeBase::from_file(opt.kb_path);
  nawgen::CountReport report = nawgen::count_symbolic(g, kb);

  bool verified = false;
  bool match = true;
  std::uint64_t enumerated = 0;
  if (opt.verify && report.raw_count <= opt.verify_bound) {
    nawgen::CountReport e = nawgen::enumerate_sentences(g, kb, nullptr, nullptr);
    enumerated = e.raw_count;
    verified = true;
    match = (enumerated == report.raw_count);
  }

  if (opt.format == "machine") {
    json j = count_report_json(report);
    j["cmd"] = "count";
    if (verified) {
      j["enumerated"] = enumerated;
      j["verified"] = match;
    }
    std::cout << j.dump() << '\n';
  } else {
    std::cout << report.render_text();
    if (verified) {
      std::cout << (match ? "symbolic == enumerated" : "MISMATCH: symbolic != enumerated")
                << " (" << enumerated << " enumerated)\n";
    } else if (opt.verify) {
      std::cout << "verification skipped: raw_count exceeds bound "
                << opt.verify_bound << '\n';
    }
  }
  return match ? 0 : kExitData;
}

struct NormalizeOptions {
  std::string rules_path;
  std::string in_path = "-";
  std::string out_path = "-";
};

int run_normalize(const NormalizeOptions& opt) {
  nawgen::NormalizationRuleSet rules = load_rules(opt.rules_path);
  auto in = open_input(opt.in_path);
  OutputTarget out;
  out.open(opt.out_path);
  std::string line;
  while (std::getline(*in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    *out.stream << nawgen::normalize(line, rules) << '\n';
  }
  out.stream->flush();
  return 0;
}

struct MergeOptions {
  std::string authentic;
  std::string artificial;
  std::string rules_path;
  std::string out_path = "-";
  std::string format = "text";
};

int run_merge(const MergeOptions& opt) {
  nawgen::NormalizationRuleSet rules = load_rules(opt.rules_path);
  auto a = open_input(opt.authentic);
  auto b = open_input(opt.artificial);
  OutputTarget out;
  out.open(opt.out_path);
  nawgen::MergeResult result = nawgen::merge_corpora(
      *a, *b, rules, [&](std::string_view line) { *out.stream << line << '\n'; });
  out.stream->flush();

  if (opt.format == "machine") {
    json j;
    j["cmd"] = "merge";
    j["authentic"] = stats_json(result.authentic);
    j["artificial"] = stats_json(result.artificial);
    j["merged"] = stats_json(result.merged);
    if (result.authentic.tokens > 0 && result.authentic.sentences > 0) {
      auto ratios = nawgen::augmentation_ratios(result.authentic, result.artificial);
      j["rho_tokens_pct"] = ratios.rho_tokens * 100.0;
      j["rho_sentences_pct"] = ratios.rho_sentences * 100.0;
    }
    std::cerr << j.dump() << '\n';
  } else {
    std::cerr << "authentic:  " << result.authentic.render_row() << '\n'
              << "artificial: " << result.artificial.render_row() << '\n'
              << "merged:     " << result.merged.render_row() << '\n';
    if (result.authentic.tokens > 0 && result.authentic.sentences > 0) {
      auto ratios = nawgen::augmentation_ratios(result.authentic, result.artificial);
      char buf[96];
      std::snprintf(buf, sizeof(buf), "rho_tokens: %.1f%%\nrho_sentences: %.1f%%\n",
                    ratios.rho_tokens * 100.0, ratios.rho_sentences * 100.0);
      std::cerr << buf;
    }
  }
  return 0;
}

struct StatsOptions {
  std::vector<std::string> files;
  std::string format = "text";
};

int run_stats(const StatsOptions& opt) {
  bool multiple = opt.files.size() > 1;
  for (const auto& path : opt.files) {
    auto in = open_input(path);
    nawgen::CorpusStats stats = nawgen::compute_stats(*in);
    if (opt.format == "machine") {
      json j = stats_json(stats);
      j["cmd"] = "stats";
      j["file"] = path;
      std::cout << j.dump() << '\n';
    } else {
      std::cout << stats.render_row();
      if (multiple) std::cout << '\t' << path;
      std::cout << '\n';
    }
  }
  return 0;
}

struct EvalOptions {
  std::string vectors_path;
  std::string suite_path;
  std::string stopwords = "iwan,in,tlen,ipan";
  bool loo = false;
  std::string format = "text";
};

int run_eval(const EvalOptions& opt) {
  nawgen::EmbeddingTable table = nawgen::EmbeddingTable::from_file(opt.vectors_path);
  nawgen::TaskSuite suite = nawgen::TaskSuite::from_file(opt.suite_path);
  auto words = split_csv(opt.stopwords);
  suite.stopwords = std::set<std::string>(words.begin(), words.end());

  nawgen::TaskScore score = nawgen::evaluate_suite(suite, table);
  if (opt.format == "machine") {
    json j;
    j["cmd"] = "eval";
    j["mean_tau"] = score.mean_tau;
    j["per_task"] = json::array();
    for (std::size_t i = 0; i < score.per_task_tau.size(); ++i) {
      j["per_task"].push_back({{"task", suite.tasks[i].id},
                               {"tau", score.per_task_tau[i]},
                               {"degenerate", score.model_rankings[i].degenerate}});
    }
    if (opt.loo) {
      auto report = nawgen::leave_one_out_report(suite, {{"model", &table}});
      j["loo_max"] = report.variants[0].max_loo;
      j["loo_mean"] = report.variants[0].mean_loo;
      j["loo_spread"] = report.variants[0].spread;
    }
    std::cout << j.dump() << '\n';
  } else {
    std::cout << score.render_text(suite);
    if (opt.loo) {
      auto report = nawgen::leave_one_out_report(suite, {{"model", &table}});
      std::cout << report.render_text();
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grammar-based artificial Nawatl corpus tools"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* cmd_generate =
      app.add_subcommand("generate", "Enumerate or sample filtered sentences");
  cmd_generate->add_option("--grammar", gen.grammar_path, "grammar file")->required();
  cmd_generate->add_option("--kb", gen.kb_path, "knowledge base TSV")->required();
  cmd_generate->add_option("--filters", gen.filters,
                           "comma list of filters (animacy,no_repeat)");
  cmd_generate->add_option("--out", gen.out_path, "output path ('-' = stdout)");
  cmd_generate->add_option("--sample", gen.sample,
                           "draw N random sentences instead of enumerating");
  cmd_generate->add_option("--seed", gen.seed, "random seed for --sample");
  cmd_generate->add_flag("--dedup", gen.dedup, "drop duplicate surface strings");
  cmd_generate->add_option("--reject-log", gen.reject_log,
                           "write rejected sentences to this TSV");
  cmd_generate->add_option("--expected-filtered", gen.expected_filtered,
                           "report the delta against this filtered count");
  cmd_generate->add_option("--format", gen.format, "report format (text|machine)");

  CountOptions cnt;
  auto* cmd_count = app.add_subcommand("count", "Symbolic derivation count");
  cmd_count->add_option("--grammar", cnt.grammar_path, "grammar file")->required();
  cmd_count->add_option("--kb", cnt.kb_path, "knowledge base TSV")->required();
  cmd_count->add_flag("--verify", cnt.verify,
                      "cross-check against full enumeration when feasible");
  cmd_count->add_option("--verify-bound", cnt.verify_bound,
                        "largest raw count to verify by enumeration");
  cmd_count->add_option("--format", cnt.format, "report format (text|machine)");

  NormalizeOptions norm;
  auto* cmd_normalize = app.add_subcommand("normalize", "Unify spelling variants");
  cmd_normalize->add_option("--rules", norm.rules_path,
                            "rewrite rule TSV (default: built-in table)");
  cmd_normalize->add_option("input", norm.in_path, "input file ('-' = stdin)");
  cmd_normalize->add_option("--out", norm.out_path, "output path ('-' = stdout)");

  MergeOptions mrg;
  auto* cmd_merge =
      app.add_subcommand("merge", "Normalize and concatenate two corpora");
  cmd_merge->add_option("authentic", mrg.authentic, "authentic corpus")->required();
  cmd_merge->add_option("artificial", mrg.artificial, "artificial corpus")->required();
  cmd_merge->add_option("--rules", mrg.rules_path,
                        "rewrite rule TSV (default: built-in table)");
  cmd_merge->add_option("--out", mrg.out_path, "output path ('-' = stdout)");
  cmd_merge->add_option("--format", mrg.format, "report format (text|machine)");

  StatsOptions sts;
  auto* cmd_stats = app.add_subcommand("stats", "Sentence/token/type statistics");
  cmd_stats->add_option("files", sts.files, "one-sentence-per-line files")
      ->required()
      ->expected(-1);
  cmd_stats->add_option("--format", sts.format, "report format (text|machine)");

  EvalOptions evl;
  auto* cmd_eval =
      app.add_subcommand("eval", "Score embeddings on the ranking task");
  cmd_eval->add_option("--vectors", evl.vectors_path, "word vector file")->required();
  cmd_eval->add_option("--suite", evl.suite_path, "ranking task TSV")->required();
  cmd_eval->add_option("--stopwords", evl.stopwords,
                       "comma list of stopwords (default: iwan,in,tlen,ipan)");
  cmd_eval->add_flag("--loo", evl.loo, "add the leave-one-task-out report");
  cmd_eval->add_option("--format", evl.format, "report format (text|machine)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_generate->parsed()) return run_generate(gen);
    if (cmd_count->parsed()) return run_count(cnt);
    if (cmd_normalize->parsed()) return run_normalize(norm);
    if (cmd_merge->parsed()) return run_merge(mrg);
    if (cmd_stats->parsed()) return run_stats(sts);
    if (cmd_eval->parsed()) return run_eval(evl);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
