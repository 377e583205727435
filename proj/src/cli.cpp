// Copyright 2026 The surrotrans Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "surrotrans/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "surrotrans/corpus.hpp"
#include "surrotrans/metrics.hpp"
#include "surrotrans/ranking.hpp"
#include "surrotrans/romanizer.hpp"
#include "surrotrans/segment_model.hpp"
#include "surrotrans/similarity.hpp"

namespace surrotrans {
namespace {

struct Options {
  std::string target;
  std::string method;
  std::size_t k = 0;
  std::uint64_t seed = 42;
  std::string corpora_dir;
  std::string phoible;
  std::string genealogy;
  std::string uriel;
  std::string hyper;
  bool exclude_target = false;
  std::string out;
  std::string vote = "sum";
  std::string table = "builtin:all";
  std::string names;
  std::string model;
  std::string weights;
  std::string candidates;
  std::string targets;
  std::string corpus;
  std::string lang;
  std::string target_text;
  std::vector<std::string> oracle_reports;
  std::string held_out;
  bool ranker = false;
  std::size_t min_pairs = 1;
  double split_fraction = kDefaultTrainFraction;
  std::uint64_t split_seed = kDefaultSplitSeed;
  std::size_t ndcg_k = kDefaultNdcgK;
};

std::string bool_flag(bool b) { return b ? "1" : "0"; }

std::string fixed6(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::vector<LanguageId> parse_languages(const std::string& list) {
  std::vector<LanguageId> out;
  std::set<LanguageId> seen;
  for (const auto& field : split(list, ',')) {
    if (field.empty()) continue;
    if (!LanguageId::is_valid(field)) throw UsageError("invalid language code '" + field + "'");
    LanguageId id(field);
    if (seen.insert(id).second) out.push_back(id);
  }
  return out;
}

LanguageId require_target(const Options& opt) {
  if (opt.target.empty()) throw UsageError("--target is required");
  if (!LanguageId::is_valid(opt.target)) throw UsageError("invalid language code '" + opt.target + "'");
  return LanguageId(opt.target);
}

RankMethod require_method(const Options& opt) {
  if (opt.method.empty()) throw UsageError("--method is required");
  return parse_method(opt.method);
}

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(std::string("cannot open ") + what + " '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Everything a command may need, loaded on demand from the options.
class Context {
 public:
  Context(const Options& opt, Diagnostics& diag)
      : opt_(opt), diag_(diag), cache_(ModelCache::from_environment()) {
    if (!opt.hyper.empty()) hyper_ = ModelHyperparams::parse(opt.hyper);
    hyper_.validate();
    if (!(opt.split_fraction > 0.0 && opt.split_fraction < 1.0)) {
      throw UsageError("--split-fraction must be in (0, 1)");
    }
    vote_ = parse_vote_mode(opt.vote);
  }

  const Options& opt() const { return opt_; }
  Diagnostics& diag() { return diag_; }
  ModelCache& cache() { return cache_; }
  const ModelHyperparams& hyper() const { return hyper_; }
  VoteMode vote() const { return vote_; }

  const RomanizationTable& table() {
    if (!table_) table_ = resolve_table(opt_.table, &diag_);
    return *table_;
  }

  void load_resources(bool need_corpora) {
    if (!opt_.corpora_dir.empty()) {
      auto corpora = filter_min_pairs(load_corpora_dir(opt_.corpora_dir, table(), &diag_), opt_.min_pairs);
      for (auto& c : corpora) res_.corpora.emplace(c.language, std::move(c));
    } else if (need_corpora) {
      throw UsageError("--corpora-dir is required for this command");
    }
    if (!opt_.phoible.empty()) res_.languages.inventories = load_inventories(opt_.phoible);
    if (!opt_.genealogy.empty()) res_.languages.genealogy = load_genealogy(opt_.genealogy);
    if (!opt_.uriel.empty()) res_.languages.distances = load_distances(opt_.uriel);
    if (!opt_.weights.empty()) res_.ranker = load_weights(opt_.weights);
    res_.fill_histograms_from_corpora();
    if (!opt_.target_text.empty()) {
      const LanguageId target = require_target(opt_);
      res_.languages.histograms.insert_or_assign(
          target, build_histogram(read_file(opt_.target_text, "target text"), table(), target.code()));
    }
  }

  PipelineResources& resources() { return res_; }

  /// --candidates, else every corpus language, else every language any
  /// resource mentions.
  std::vector<LanguageId> candidates() const {
    if (!opt_.candidates.empty()) return parse_languages(opt_.candidates);
    std::set<LanguageId> all;
    for (const auto& [id, c] : res_.corpora) all.insert(id);
    if (all.empty()) {
      for (const auto& [id, v] : res_.languages.inventories) all.insert(id);
      for (const auto& [id, v] : res_.languages.genealogy) all.insert(id);
      for (const auto& [id, v] : res_.languages.histograms) all.insert(id);
    }
    return {all.begin(), all.end()};
  }

  RankOptions rank_options() const {
    RankOptions o;
    o.seed = opt_.seed;
    o.exclude_target = opt_.exclude_target;
    o.hyper = hyper_;
    o.split = {opt_.split_fraction, opt_.split_seed};
    return o;
  }

  /// Names file lines, romanized. Blank lines are skipped.
  std::vector<std::string> names() {
    if (opt_.names.empty()) throw UsageError("--names is required");
    std::vector<std::string> out;
    std::istringstream in(read_file(opt_.names, "names file"));
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      std::string r = romanize(line, table());
      if (r.empty()) diag_.warn("name '" + line + "' is empty after romanization");
      out.push_back(std::move(r));
    }
    return out;
  }

 private:
  const Options& opt_;
  Diagnostics& diag_;
  ModelCache cache_;
  ModelHyperparams hyper_;
  VoteMode vote_ = VoteMode::kSum;
  std::optional<RomanizationTable> table_;
  PipelineResources res_;
};

class Output {
 public:
  Output(const Options& opt, std::ostream& fallback) : path_(opt.out), fallback_(fallback) {}
  std::ostream& stream() { return buffer_; }

  void commit() {
    if (path_.empty()) {
      fallback_ << buffer_.str();
      fallback_.flush();
      return;
    }
    std::ofstream f(path_, std::ios::binary);
    if (!f) throw IoError("cannot write '" + path_ + "'");
    f << buffer_.str();
    if (!f) throw IoError("error writing '" + path_ + "'");
  }

 private:
  std::string path_;
  std::ostream& fallback_;
  std::ostringstream buffer_;
};

void write_ranking(std::ostream& os, const Ranking& r, const std::string& header) {
  os << "# surrotrans " << header << '\n';
  os << "rank\tlanguage\tscore\n";
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    os << (i + 1) << '\t' << r.entries[i].candidate.code() << '\t'
       << format_double_shortest(r.entries[i].score) << '\n';
  }
}

void write_nbest(std::ostream& os, const std::vector<NBestList>& lists, const std::string& surrogate) {
  for (const auto& list : lists) {
    nlohmann::ordered_json j;
    j["input"] = list.input;
    j["surrogate"] = surrogate;
    j["candidates"] = nlohmann::ordered_json::array();
    for (const auto& c : list.candidates) {
      nlohmann::ordered_json cj;
      cj["output"] = c.output;
      cj["score"] = c.score;
      j["candidates"].push_back(std::move(cj));
    }
    os << j.dump() << '\n';
  }
}

std::string join_codes(const std::vector<LanguageId>& ids) {
  std::string s;
  for (const auto& id : ids) s += (s.empty() ? "" : ",") + id.code();
  return s;
}

// Oracle reports are ranking reports whose header carries `target=<code>`.
std::pair<LanguageId, std::map<LanguageId, double>> read_oracle_report(const std::string& path) {
  std::istringstream in(read_file(path, "oracle report"));
  std::string line;
  std::size_t line_no = 0;
  LanguageId target;
  std::map<LanguageId, double> scores;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream words(line.substr(1));
      std::string w;
      while (words >> w) {
        if (w.rfind("target=", 0) == 0) target = LanguageId(w.substr(7));
      }
      continue;
    }
    auto fields = split(line, '\t');
    if (fields.size() != 3) throw ParseError(path, line_no, "expected 3 fields");
    if (fields[0] == "rank") continue;
    double v = 0.0;
    try {
      v = std::stod(fields[2]);
    } catch (const std::exception&) {
      throw ParseError(path, line_no, "invalid score '" + fields[2] + "'");
    }
    scores[LanguageId(fields[1])] = v;
  }
  if (target.empty()) throw ParseError(path, 0, "missing 'target=' in header");
  return {target, scores};
}

// ---------------------------------------------------------------------------

int cmd_rank(Context& ctx, std::ostream& out) {
  const RankMethod method = require_method(ctx.opt());
  const LanguageId target = require_target(ctx.opt());
  ctx.load_resources(method == RankMethod::kOracle);
  Ranking r = rank_candidates(target, ctx.candidates(), method, ctx.resources(), ctx.rank_options(),
                              &ctx.cache(), &ctx.diag());
  Output o(ctx.opt(), out);
  write_ranking(o.stream(), r,
                "rank target=" + target.code() + " method=" + std::string(method_name(method)) +
                    " seed=" + std::to_string(ctx.opt().seed) +
                    " exclude_target=" + bool_flag(ctx.opt().exclude_target));
  o.commit();
  return kExitOk;
}

int cmd_oracle(Context& ctx, std::ostream& out) {
  const LanguageId target = require_target(ctx.opt());
  ctx.load_resources(true);
  auto& corpora = ctx.resources().corpora;
  auto it = corpora.find(target);
  if (it == corpora.end()) throw Error("no corpus for target '" + target.code() + "'");
  std::vector<NamePairCorpus> pool;
  for (const auto& c : ctx.candidates()) {
    if (ctx.opt().exclude_target && c == target) continue;
    auto ci = corpora.find(c);
    if (ci == corpora.end()) {
      ctx.diag().warn("no corpus for candidate '" + c.code() + "'; skipped");
      continue;
    }
    pool.push_back(ci->second);
  }
  const RankOptions ro = ctx.rank_options();
  OracleResult r = oracle_ranking(it->second, pool, ctx.hyper(), ro.split, ctx.cache(), &ctx.diag());
  Output o(ctx.opt(), out);
  write_ranking(o.stream(), r.ranking,
                "oracle target=" + target.code() + " split_fraction=" +
                    format_double_shortest(ro.split.train_fraction) +
                    " split_seed=" + std::to_string(ro.split.seed) + " hyper=" + ctx.hyper().to_string() +
                    " exclude_target=" + bool_flag(ctx.opt().exclude_target));
  o.commit();
  return kExitOk;
}

int cmd_train_ranker(Context& ctx, std::ostream& out) {
  if (ctx.opt().oracle_reports.empty()) throw UsageError("--oracle is required with --ranker");
  ctx.load_resources(false);
  std::map<LanguageId, std::map<LanguageId, double>> oracle;
  for (const auto& path : ctx.opt().oracle_reports) {
    auto [target, scores] = read_oracle_report(path);
    oracle[target] = std::move(scores);
  }
  LanguageId held_out;
  if (!ctx.opt().held_out.empty()) held_out = LanguageId(ctx.opt().held_out);
  RankerOptions ro;
  ro.seed = ctx.opt().seed;
  RankerWeights w = train_ranker(oracle, ctx.resources().languages, held_out, ro);
  if (ctx.opt().out.empty()) throw UsageError("--out is required with --ranker");
  save_weights(w, ctx.opt().out);
  (void)out;
  return kExitOk;
}

int cmd_train(Context& ctx, std::ostream& out) {
  if (ctx.opt().ranker) return cmd_train_ranker(ctx, out);
  if (ctx.opt().corpus.empty()) throw UsageError("--corpus is required");
  std::filesystem::path path(ctx.opt().corpus);
  const std::string code = ctx.opt().lang.empty() ? path.stem().string() : ctx.opt().lang;
  if (!LanguageId::is_valid(code)) throw UsageError("invalid language code '" + code + "' (use --lang)");
  NamePairCorpus corpus = load_corpus(path, LanguageId(code), ctx.table(), &ctx.diag());
  if (corpus.empty()) throw Error("corpus '" + path.string() + "' has no usable pairs");
  TrainingTrace trace;
  SegmentModel model = train(corpus, ctx.hyper(), &trace, LanguageId("eng"), &ctx.diag());
  Output o(ctx.opt(), out);
  write_model(model, o.stream());
  o.commit();
  return kExitOk;
}

int cmd_transliterate(Context& ctx, std::ostream& out) {
  if (ctx.opt().model.empty()) throw UsageError("--model is required");
  SegmentModel model = load_model(ctx.opt().model);
  std::vector<NBestList> lists;
  for (const auto& name : ctx.names()) {
    lists.push_back(name.empty() ? NBestList{name, {}} : decode(model, name));
  }
  Output o(ctx.opt(), out);
  write_nbest(o.stream(), lists, model.target_language().code());
  o.commit();
  return kExitOk;
}

int cmd_pipeline(Context& ctx, std::ostream& out, std::ostream& err, std::size_t default_k) {
  const RankMethod method = require_method(ctx.opt());
  const LanguageId target = require_target(ctx.opt());
  const std::size_t k = ctx.opt().k ? ctx.opt().k : default_k;
  if (k == 0) throw UsageError("--k is required");
  std::vector<std::string> names = ctx.names();
  ctx.load_resources(true);
  SurrogateResult r = combine_topk(names, target, ctx.candidates(), method, ctx.resources(),
                                   ctx.rank_options(), k, ctx.cache(), ctx.vote(), &ctx.diag());
  const std::string surrogate = join_codes(r.surrogates);
  err << "surrogate: " << surrogate << '\n';
  Output o(ctx.opt(), out);
  write_nbest(o.stream(), r.lists, surrogate);
  o.commit();
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct EvalRow {
  std::string method;
  std::string target;
  std::string metric;
  double value;
};

std::vector<RankMethod> evaluate_methods(Context& ctx) {
  if (!ctx.opt().method.empty()) {
    std::vector<RankMethod> out;
    for (const auto& name : split(ctx.opt().method, ',')) {
      if (!name.empty()) out.push_back(parse_method(name));
    }
    return out;
  }
  const auto& lr = ctx.resources().languages;
  std::vector<RankMethod> out;
  if (!lr.inventories.empty()) out.push_back(RankMethod::kPhon);
  out.push_back(RankMethod::kScript);
  if (!lr.genealogy.empty()) out.push_back(RankMethod::kGen);
  out.push_back(RankMethod::kLearned);
  out.push_back(RankMethod::kRandom);
  return out;
}

double mrr_of(const SurrogateResult& r, const NamePairCorpus& test) {
  std::vector<ScoredOutput> scored;
  for (std::size_t i = 0; i < test.size(); ++i) scored.push_back({r.lists[i], test.pairs[i].target});
  return mrr(scored);
}

int cmd_evaluate(Context& ctx, std::ostream& out) {
  ctx.load_resources(true);
  const Options& opt = ctx.opt();
  const std::size_t k = opt.k ? opt.k : 5;
  auto& corpora = ctx.resources().corpora;
  std::vector<LanguageId> targets = opt.targets.empty() ? ctx.candidates() : parse_languages(opt.targets);
  if (targets.empty()) throw Error("no target languages to evaluate");
  const std::vector<LanguageId> all = ctx.candidates();
  const RankOptions ro = ctx.rank_options();
  const std::vector<RankMethod> methods = evaluate_methods(ctx);

  std::map<LanguageId, OracleResult> oracles;
  std::map<LanguageId, std::map<LanguageId, double>> relevance;
  for (const auto& t : targets) {
    auto it = corpora.find(t);
    if (it == corpora.end()) throw Error("no corpus for target '" + t.code() + "'");
    std::vector<NamePairCorpus> pool;
    for (const auto& c : all) {
      if (opt.exclude_target && c == t) continue;
      if (auto ci = corpora.find(c); ci != corpora.end()) pool.push_back(ci->second);
    }
    OracleResult r = oracle_ranking(it->second, pool, ctx.hyper(), ro.split, ctx.cache(), &ctx.diag());
    relevance[t] = r.relevance.scores;
    oracles.emplace(t, std::move(r));
  }

  std::vector<EvalRow> rows;
  for (const auto& t : targets) {
    const OracleResult& oracle = oracles.at(t);
    const NamePairCorpus& test = oracle.split.test;
    std::vector<std::string> sources;
    for (const auto& p : test.pairs) sources.push_back(p.source);
    // The target may only contribute its training split.
    PipelineResources res = ctx.resources();
    res.corpora.insert_or_assign(t, oracle.split.train);
    std::vector<LanguageId> pool;
    for (const auto& e : oracle.ranking.entries) pool.push_back(e.candidate);
    std::sort(pool.begin(), pool.end());

    rows.push_back({"oracle", t.code(), "mrr@top1",
                    oracle.ranking.entries.empty() ? 0.0 : oracle.ranking.entries.front().score});
    for (RankMethod m : methods) {
      const std::string name(method_name(m));
      if (m == RankMethod::kLearned) {
        std::size_t others = 0;
        for (const auto& [id, s] : relevance) others += (id != t);
        if (others < 2) {
          ctx.diag().warn("learned: fewer than two other targets for '" + t.code() + "'; skipped");
          continue;
        }
        RankerOptions rk;
        rk.seed = opt.seed;
        res.ranker = train_ranker(relevance, res.languages, t, rk);
      }
      Ranking ranking = rank_candidates(t, pool, m, res, ro, &ctx.cache(), &ctx.diag());
      double ndcg = std::nan("");
      try {
        ndcg = ndcg_at_k(relevance_list(ranking, oracle.relevance), opt.ndcg_k);
      } catch (const Error& e) {
        ctx.diag().warn(t.code() + "/" + name + ": " + e.what());
      }
      rows.push_back({name, t.code(), "ndcg@" + std::to_string(opt.ndcg_k), ndcg});
      SurrogateResult top1 = combine_topk(sources, t, pool, m, res, ro, 1, ctx.cache(), ctx.vote(), &ctx.diag());
      rows.push_back({name, t.code(), "mrr@top1", mrr_of(top1, test)});
      SurrogateResult topk = combine_topk(sources, t, pool, m, res, ro, std::min(k, pool.size()),
                                          ctx.cache(), ctx.vote(), &ctx.diag());
      rows.push_back({name, t.code(), "mrr@top" + std::to_string(k), mrr_of(topk, test)});
    }
  }

  // Means over targets, in first-seen (method, metric) order.
  std::vector<std::pair<std::string, std::string>> keys;
  std::map<std::pair<std::string, std::string>, std::vector<double>> values;
  for (const auto& r : rows) {
    auto key = std::make_pair(r.method, r.metric);
    if (!values.count(key)) keys.push_back(key);
    if (!std::isnan(r.value)) values[key].push_back(r.value);
  }
  std::vector<EvalRow> means;
  for (const auto& key : keys) {
    const auto& v = values[key];
    double mean = std::nan("");
    if (!v.empty()) {
      mean = 0.0;
      for (double x : v) mean += x;
      mean /= static_cast<double>(v.size());
    }
    means.push_back({key.first, "mean", key.second, mean});
  }

  Output o(ctx.opt(), out);
  std::ostream& os = o.stream();
  os << "# surrotrans evaluate seed=" << opt.seed << " ndcg_k=" << opt.ndcg_k << " k=" << k
     << " vote=" << vote_mode_name(ctx.vote())
     << " split_fraction=" << format_double_shortest(ro.split.train_fraction)
     << " split_seed=" << ro.split.seed << " exclude_target=" << bool_flag(opt.exclude_target)
     << " hyper=" << ctx.hyper().to_string() << '\n';
  os << "# ndcg@k = dcg@k / ideal dcg@k, dcg@k = sum over ranks i=1..k of rel_i / log2(i + 1); "
        "relevance = oracle mrr\n";
  os << "method\ttarget\tmetric\tvalue\n";
  for (const auto& list : {rows, means}) {
    for (const auto& r : list) {
      os << r.method << '\t' << r.target << '\t' << r.metric << '\t' << fixed6(r.value) << '\n';
    }
  }
  o.commit();
  return kExitOk;
}

void add_options(CLI::App& app, Options& opt) {
  app.add_option("--target", opt.target, "Target language code");
  app.add_option("--method", opt.method, "phon|script|gen|learned|random|oracle (evaluate: comma list)");
  app.add_option("--k", opt.k, "Number of surrogates to combine");
  app.add_option("--seed", opt.seed, "Seed for the random method and ranker training");
  app.add_option("--corpora-dir", opt.corpora_dir, "Directory of <lang>.tsv name-pair corpora");
  app.add_option("--phoible", opt.phoible, "Phoneme inventories (lang<TAB>phonemes)");
  app.add_option("--genealogy", opt.genealogy, "Genealogy (lang<TAB>family<TAB>genus)");
  app.add_option("--uriel", opt.uriel, "Pairwise typological distances");
  app.add_option("--hyper", opt.hyper, "Model hyperparameters, e.g. em=5,maxseg=15,segfactor=0.5");
  app.add_flag("--exclude-target", opt.exclude_target, "Remove the target from rankings");
  app.add_option("--out", opt.out, "Output file (default: stdout)");
  app.add_option("--vote", opt.vote, "sum|norm-sum");
  app.add_option("--table", opt.table, "Romanization table: builtin:<name> or a TSV path");
  app.add_option("--names", opt.names, "Names to transliterate, one per line");
  app.add_option("--model", opt.model, "Trained model file");
  app.add_option("--weights", opt.weights, "Learned ranker weights");
  app.add_option("--candidates", opt.candidates, "Comma-separated candidate languages");
  app.add_option("--targets", opt.targets, "Comma-separated evaluation targets");
  app.add_option("--corpus", opt.corpus, "Name-pair corpus to train on");
  app.add_option("--lang", opt.lang, "Language of --corpus (default: file stem)");
  app.add_option("--target-text", opt.target_text, "Target-language text for its script histogram");
  app.add_option("--oracle", opt.oracle_reports, "Oracle reports for ranker training");
  app.add_option("--held-out", opt.held_out, "Target left out of ranker training");
  app.add_flag("--ranker", opt.ranker, "train: fit the learned ranker instead of a model");
  app.add_option("--min-pairs", opt.min_pairs, "Drop corpora with fewer pairs");
  app.add_option("--split-fraction", opt.split_fraction, "Oracle train fraction of the target corpus");
  app.add_option("--split-seed", opt.split_seed, "Oracle split seed");
  app.add_option("--ndcg-k", opt.ndcg_k, "Cutoff for NDCG");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Surrogate-language name transliteration", "surrotrans");
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML-style key = value file; explicit flags win");
  Options opt;
  add_options(app, opt);
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"rank", "Rank candidate surrogates for a target"},
      {"train", "Train a segment model (or, with --ranker, ranker weights)"},
      {"transliterate", "Decode names with a trained model"},
      {"pipeline", "Rank, train on the top surrogate, transliterate"},
      {"combine", "Vote over the n-best lists of the top-k surrogates"},
      {"oracle", "Oracle relevance of every candidate for a target"},
      {"evaluate", "NDCG and MRR report against the oracle"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  Diagnostics diag(&err);
  try {
    Context ctx(opt, diag);
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "rank") return cmd_rank(ctx, out);
    if (cmd == "train") return cmd_train(ctx, out);
    if (cmd == "transliterate") return cmd_transliterate(ctx, out);
    if (cmd == "pipeline") return cmd_pipeline(ctx, out, err, 1);
    if (cmd == "combine") return cmd_pipeline(ctx, out, err, 0);
    if (cmd == "oracle") return cmd_oracle(ctx, out);
    if (cmd == "evaluate") return cmd_evaluate(ctx, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace surrotrans
