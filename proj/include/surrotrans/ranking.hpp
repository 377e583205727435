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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "surrotrans/corpus.hpp"
#include "surrotrans/metrics.hpp"
#include "surrotrans/segment_model.hpp"
#include "surrotrans/similarity.hpp"

namespace surrotrans {

enum class RankMethod { kOracle, kPhon, kScript, kGen, kLearned, kRandom };

std::string_view method_name(RankMethod method);
/// Throws UsageError for an unknown name.
RankMethod parse_method(std::string_view name);

struct RankingEntry {
  LanguageId candidate;
  double score = 0.0;

  friend bool operator==(const RankingEntry&, const RankingEntry&) = default;
};

/// Candidates by score descending, ties by language code ascending.
struct Ranking {
  LanguageId target;
  std::vector<RankingEntry> entries;
  RankMethod method = RankMethod::kScript;
  bool exclude_target = false;

  /// Sorts, rejects duplicate candidates, and drops the target when
  /// `exclude_target` is set.
  static Ranking make(LanguageId target, std::vector<RankingEntry> entries, RankMethod method,
                      bool exclude_target);

  std::vector<LanguageId> order() const;
};

/// Per-candidate MRR obtained by training on the candidate and testing on the
/// target's held-out pairs.
struct OracleRelevance {
  LanguageId target;
  std::map<LanguageId, double> scores;
};

/// `ranked` reordered as a relevance list under `oracle` (0 for candidates the
/// oracle did not score).
RelevanceList relevance_list(const Ranking& ranked, const OracleRelevance& oracle);

/// Memoizes trained models in memory and, when a directory is set, on disk
/// under `<dir>/<corpus digest>-<hyperparameter digest>.model`.
class ModelCache {
 public:
  ModelCache() = default;
  explicit ModelCache(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {}

  /// Directory from $SURROTRANS_CACHE, or memory-only when unset.
  static ModelCache from_environment();

  std::shared_ptr<const SegmentModel> get(const NamePairCorpus& corpus, const ModelHyperparams& hyper,
                                          Diagnostics* diag = nullptr);

  std::size_t trained() const { return trained_; }

 private:
  std::optional<std::filesystem::path> dir_;
  std::map<std::string, std::shared_ptr<const SegmentModel>> memory_;
  std::size_t trained_ = 0;
};

/// Everything the pipeline reads: similarity resources, corpora keyed by
/// language, and optional learned-ranker weights.
struct PipelineResources {
  LanguageResources languages;
  std::map<LanguageId, NamePairCorpus> corpora;
  std::optional<RankerWeights> ranker;

  /// Adds histograms for corpora that lack one.
  void fill_histograms_from_corpora();
};

struct SplitParams {
  double train_fraction = kDefaultTrainFraction;
  std::uint64_t seed = kDefaultSplitSeed;
};

struct RankOptions {
  std::uint64_t seed = 42;  // random method
  bool exclude_target = false;
  ModelHyperparams hyper;   // oracle method
  SplitParams split;        // oracle method
};

struct OracleResult {
  Ranking ranking;
  OracleRelevance relevance;
  CorpusSplit split;
};

/// For every candidate L: train English->L, decode the target test split and
/// score MRR. The target's own corpus trains on its train split only.
/// Empty candidates are skipped with a warning.
OracleResult oracle_ranking(const NamePairCorpus& target, const std::vector<NamePairCorpus>& candidates,
                            const ModelHyperparams& hyper, const SplitParams& split,
                            ModelCache& cache, Diagnostics* diag = nullptr);

/// Scores every candidate with the chosen similarity and sorts.
Ranking rank_candidates(const LanguageId& target, const std::vector<LanguageId>& candidates,
                        RankMethod method, const PipelineResources& resources,
                        const RankOptions& options, ModelCache* cache = nullptr,
                        Diagnostics* diag = nullptr);

enum class VoteMode { kSum, kNormSum };

std::string_view vote_mode_name(VoteMode mode);
VoteMode parse_vote_mode(std::string_view name);

/// Sums each output's scores across lists (after per-list normalization for
/// kNormSum), sorts, and keeps `nbest_size`. The input name is taken from the
/// first list.
NBestList vote(std::span<const NBestList> lists, std::size_t nbest_size, VoteMode mode = VoteMode::kSum);

struct SurrogateResult {
  Ranking ranking;
  std::vector<LanguageId> surrogates;  // languages whose models produced the lists
  std::vector<NBestList> lists;        // one per input name
};

/// Ranks candidates, trains on the top trainable one, decodes every name.
SurrogateResult transliterate_via_surrogate(const std::vector<std::string>& names,
                                            const LanguageId& target,
                                            const std::vector<LanguageId>& candidates,
                                            RankMethod method, const PipelineResources& resources,
                                            const RankOptions& options, ModelCache& cache,
                                            Diagnostics* diag = nullptr);

/// As transliterate_via_surrogate, with the n-best lists of the top `k`
/// trainable candidates combined per name by vote().
SurrogateResult combine_topk(const std::vector<std::string>& names, const LanguageId& target,
                             const std::vector<LanguageId>& candidates, RankMethod method,
                             const PipelineResources& resources, const RankOptions& options,
                             std::size_t k, ModelCache& cache, VoteMode mode = VoteMode::kSum,
                             Diagnostics* diag = nullptr);

/// Decodes each test source and scores MRR against the test targets.
double evaluate_mrr(const SegmentModel& model, const NamePairCorpus& test);

}  // namespace surrotrans
