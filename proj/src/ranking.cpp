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

#include "surrotrans/ranking.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace surrotrans {

std::string_view method_name(RankMethod method) {
  switch (method) {
    case RankMethod::kOracle: return "oracle";
    case RankMethod::kPhon: return "phon";
    case RankMethod::kScript: return "script";
    case RankMethod::kGen: return "gen";
    case RankMethod::kLearned: return "learned";
    case RankMethod::kRandom: return "random";
  }
  return "unknown";
}

RankMethod parse_method(std::string_view name) {
  for (auto m : {RankMethod::kOracle, RankMethod::kPhon, RankMethod::kScript, RankMethod::kGen,
                 RankMethod::kLearned, RankMethod::kRandom}) {
    if (method_name(m) == name) return m;
  }
  throw UsageError("unknown ranking method '" + std::string(name) +
                   "' (expected phon|script|gen|learned|random|oracle)");
}

std::string_view vote_mode_name(VoteMode mode) {
  return mode == VoteMode::kSum ? "sum" : "norm-sum";
}

VoteMode parse_vote_mode(std::string_view name) {
  if (name == "sum") return VoteMode::kSum;
  if (name == "norm-sum") return VoteMode::kNormSum;
  throw UsageError("unknown vote mode '" + std::string(name) + "' (expected sum|norm-sum)");
}

Ranking Ranking::make(LanguageId target, std::vector<RankingEntry> entries, RankMethod method,
                      bool exclude_target) {
  if (exclude_target) {
    std::erase_if(entries, [&](const RankingEntry& e) { return e.candidate == target; });
  }
  std::set<LanguageId> seen;
  for (const auto& e : entries) {
    if (!seen.insert(e.candidate).second) {
      throw Error("duplicate candidate '" + e.candidate.code() + "' in ranking");
    }
  }
  std::sort(entries.begin(), entries.end(), [](const RankingEntry& a, const RankingEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.candidate < b.candidate;
  });
  return Ranking{std::move(target), std::move(entries), method, exclude_target};
}

std::vector<LanguageId> Ranking::order() const {
  std::vector<LanguageId> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.candidate);
  return out;
}

RelevanceList relevance_list(const Ranking& ranked, const OracleRelevance& oracle) {
  RelevanceList out;
  out.reserve(ranked.entries.size());
  for (const auto& e : ranked.entries) {
    auto it = oracle.scores.find(e.candidate);
    out.push_back({e.candidate.code(), it == oracle.scores.end() ? 0.0 : it->second});
  }
  return out;
}

// ---------------------------------------------------------------------------

ModelCache ModelCache::from_environment() {
  const char* dir = std::getenv("SURROTRANS_CACHE");
  if (dir && *dir) return ModelCache(std::filesystem::path(dir));
  return ModelCache();
}

std::shared_ptr<const SegmentModel> ModelCache::get(const NamePairCorpus& corpus,
                                                    const ModelHyperparams& hyper,
                                                    Diagnostics* diag) {
  Fnv1a hyper_hash;
  hyper_hash.update(hyper.to_string());
  const std::string key = corpus.digest() + "-" + hyper_hash.hex();
  if (auto it = memory_.find(key); it != memory_.end()) return it->second;

  std::shared_ptr<const SegmentModel> model;
  std::filesystem::path file;
  if (dir_) {
    file = *dir_ / (key + ".model");
    if (std::filesystem::exists(file)) {
      try {
        model = std::make_shared<const SegmentModel>(load_model(file));
      } catch (const Error& e) {
        (diag ? *diag : default_diagnostics()).warn("ignoring unreadable cache entry: " + std::string(e.what()));
      }
    }
  }
  if (!model) {
    model = std::make_shared<const SegmentModel>(train(corpus, hyper, nullptr, LanguageId("eng"), diag));
    ++trained_;
    if (dir_) {
      std::filesystem::create_directories(*dir_);
      // Write-then-rename so concurrent readers never see a partial file.
      std::filesystem::path tmp = file;
      tmp += ".tmp";
      save_model(*model, tmp);
      std::filesystem::rename(tmp, file);
    }
  }
  memory_.emplace(key, model);
  return model;
}

void PipelineResources::fill_histograms_from_corpora() {
  for (const auto& [lang, corpus] : corpora) {
    if (corpus.empty() || languages.histograms.count(lang)) continue;
    languages.histograms.emplace(lang, build_histogram(corpus));
  }
}

double evaluate_mrr(const SegmentModel& model, const NamePairCorpus& test) {
  std::vector<ScoredOutput> results;
  results.reserve(test.size());
  for (const auto& p : test.pairs) results.push_back({decode(model, p.source), p.target});
  return mrr(results);
}

// ---------------------------------------------------------------------------

OracleResult oracle_ranking(const NamePairCorpus& target, const std::vector<NamePairCorpus>& candidates,
                            const ModelHyperparams& hyper, const SplitParams& split_params,
                            ModelCache& cache, Diagnostics* diag) {
  Diagnostics& sink = diag ? *diag : default_diagnostics();
  CorpusSplit split = split_corpus(target, split_params.train_fraction, split_params.seed);
  OracleRelevance relevance{target.language, {}};
  std::vector<RankingEntry> entries;
  for (const auto& candidate : candidates) {
    const NamePairCorpus& training = candidate.language == target.language ? split.train : candidate;
    if (training.empty()) {
      sink.warn("oracle: skipping untrainable candidate '" + candidate.language.code() + "'");
      continue;
    }
    if (relevance.scores.count(candidate.language)) {
      throw Error("oracle: duplicate candidate '" + candidate.language.code() + "'");
    }
    auto model = cache.get(training, hyper, diag);
    const double score = evaluate_mrr(*model, split.test);
    relevance.scores.emplace(candidate.language, score);
    entries.push_back({candidate.language, score});
  }
  Ranking ranking = Ranking::make(target.language, std::move(entries), RankMethod::kOracle, false);
  return OracleResult{std::move(ranking), std::move(relevance), std::move(split)};
}

namespace {

template <typename Map>
const typename Map::mapped_type* find_in(const Map& map, const LanguageId& id) {
  auto it = map.find(id);
  return it == map.end() ? nullptr : &it->second;
}

}  // namespace

Ranking rank_candidates(const LanguageId& target, const std::vector<LanguageId>& candidates,
                        RankMethod method, const PipelineResources& resources,
                        const RankOptions& options, ModelCache* cache, Diagnostics* diag) {
  Diagnostics& sink = diag ? *diag : default_diagnostics();
  std::vector<LanguageId> pool = candidates;
  if (options.exclude_target) std::erase(pool, target);
  if (pool.empty()) throw Error("no candidate languages to rank for '" + target.code() + "'");

  std::vector<RankingEntry> entries;
  entries.reserve(pool.size());
  const LanguageResources& lr = resources.languages;

  switch (method) {
    case RankMethod::kPhon: {
      const auto* t = find_in(lr.inventories, target);
      if (!t) sink.warn("phon: no phoneme inventory for target '" + target.code() + "'; all scores 0");
      for (const auto& c : pool) {
        const auto* x = find_in(lr.inventories, c);
        if (t && !x) sink.warn("phon: no phoneme inventory for '" + c.code() + "'; score 0");
        entries.push_back({c, t && x ? sim_phon(*x, *t) : 0.0});
      }
      break;
    }
    case RankMethod::kScript: {
      const auto* t = find_in(lr.histograms, target);
      if (!t) throw Error("script: no character histogram for target '" + target.code() + "'");
      for (const auto& c : pool) {
        const auto* x = find_in(lr.histograms, c);
        if (!x) sink.warn("script: no character histogram for '" + c.code() + "'; score 0");
        entries.push_back({c, x ? sim_script(*x, *t) : 0.0});
      }
      break;
    }
    case RankMethod::kGen: {
      const auto* t = find_in(lr.genealogy, target);
      if (!t) sink.warn("gen: no genealogy for target '" + target.code() + "'; all scores 0");
      for (const auto& c : pool) {
        const auto* x = find_in(lr.genealogy, c);
        if (t && !x) sink.warn("gen: no genealogy for '" + c.code() + "'; score 0");
        entries.push_back({c, t && x ? sim_gen(*x, *t) : 0.0});
      }
      break;
    }
    case RankMethod::kLearned: {
      if (!resources.ranker) throw Error("learned: no trained ranker weights");
      std::vector<FeatureVector> features;
      features.reserve(pool.size());
      for (const auto& c : pool) features.push_back(feature_vector(c, target, lr));
      const FeatureScaler scaler = FeatureScaler::fit(features);
      for (std::size_t i = 0; i < pool.size(); ++i) {
        entries.push_back({pool[i], resources.ranker->weights.dot(scaler.apply(features[i]))});
      }
      break;
    }
    case RankMethod::kRandom: {
      std::vector<LanguageId> order = pool;
      std::sort(order.begin(), order.end());
      Rng rng(options.seed);
      rng.shuffle(order);
      for (std::size_t i = 0; i < order.size(); ++i) {
        entries.push_back({order[i], static_cast<double>(order.size() - i)});
      }
      break;
    }
    case RankMethod::kOracle: {
      if (!cache) throw Error("oracle: ranking requires a model cache");
      const auto* t = find_in(resources.corpora, target);
      if (!t) throw Error("oracle: no corpus for target '" + target.code() + "'");
      std::vector<NamePairCorpus> pool_corpora;
      for (const auto& c : pool) {
        if (const auto* corpus = find_in(resources.corpora, c)) {
          pool_corpora.push_back(*corpus);
        } else {
          sink.warn("oracle: no corpus for candidate '" + c.code() + "'; skipped");
        }
      }
      OracleResult r = oracle_ranking(*t, pool_corpora, options.hyper, options.split, *cache, diag);
      return Ranking::make(target, std::move(r.ranking.entries), method, options.exclude_target);
    }
  }
  return Ranking::make(target, std::move(entries), method, options.exclude_target);
}

NBestList vote(std::span<const NBestList> lists, std::size_t nbest_size, VoteMode mode) {
  NBestList out;
  if (lists.empty()) return out;
  out.input = lists.front().input;
  std::map<std::string, double> totals;
  for (const auto& list : lists) {
    double norm = 1.0;
    if (mode == VoteMode::kNormSum) {
      double sum = 0.0;
      for (const auto& c : list.candidates) sum += c.score;
      norm = sum > 0.0 ? sum : 1.0;
    }
    for (const auto& c : list.candidates) totals[c.output] += c.score / norm;
  }
  for (auto& [output, score] : totals) out.candidates.push_back({output, score});
  sort_candidates(out.candidates);
  if (out.candidates.size() > nbest_size) out.candidates.resize(nbest_size);
  return out;
}

namespace {

std::vector<LanguageId> select_trainable(const Ranking& ranking, const PipelineResources& resources,
                                         std::size_t k, Diagnostics& sink) {
  std::vector<LanguageId> chosen;
  for (const auto& e : ranking.entries) {
    if (chosen.size() == k) break;
    if (ranking.exclude_target && e.candidate == ranking.target) continue;
    const auto* corpus = find_in(resources.corpora, e.candidate);
    if (!corpus || corpus->empty()) {
      sink.warn("candidate '" + e.candidate.code() + "' has no training pairs; skipped");
      continue;
    }
    chosen.push_back(e.candidate);
  }
  if (chosen.empty()) throw Error("no trainable candidate language for '" + ranking.target.code() + "'");
  return chosen;
}

NBestList decode_name(const SegmentModel& model, const std::string& name) {
  if (name.empty()) return NBestList{name, {}};
  return decode(model, name);
}

}  // namespace

SurrogateResult combine_topk(const std::vector<std::string>& names, const LanguageId& target,
                             const std::vector<LanguageId>& candidates, RankMethod method,
                             const PipelineResources& resources, const RankOptions& options,
                             std::size_t k, ModelCache& cache, VoteMode mode, Diagnostics* diag) {
  Diagnostics& sink = diag ? *diag : default_diagnostics();
  if (k == 0) throw UsageError("k must be >= 1");
  SurrogateResult result;
  result.ranking = rank_candidates(target, candidates, method, resources, options, &cache, diag);
  if (k > result.ranking.entries.size()) {
    sink.warn("k=" + std::to_string(k) + " exceeds the " + std::to_string(result.ranking.entries.size()) +
              " ranked candidates; using all of them");
    k = result.ranking.entries.size();
  }
  result.surrogates = select_trainable(result.ranking, resources, k, sink);
  if (names.empty()) return result;

  std::vector<std::shared_ptr<const SegmentModel>> models;
  for (const auto& lang : result.surrogates) {
    models.push_back(cache.get(resources.corpora.at(lang), options.hyper, diag));
  }
  result.lists.reserve(names.size());
  for (const auto& name : names) {
    if (models.size() == 1) {
      result.lists.push_back(decode_name(*models.front(), name));
      continue;
    }
    std::vector<NBestList> per_model;
    per_model.reserve(models.size());
    for (const auto& m : models) per_model.push_back(decode_name(*m, name));
    NBestList combined = vote(per_model, options.hyper.nbest_size, mode);
    combined.input = name;
    result.lists.push_back(std::move(combined));
  }
  return result;
}

SurrogateResult transliterate_via_surrogate(const std::vector<std::string>& names,
                                            const LanguageId& target,
                                            const std::vector<LanguageId>& candidates,
                                            RankMethod method, const PipelineResources& resources,
                                            const RankOptions& options, ModelCache& cache,
                                            Diagnostics* diag) {
  return combine_topk(names, target, candidates, method, resources, options, 1, cache,
                      VoteMode::kSum, diag);
}

}  // namespace surrotrans
