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

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "surrotrans/common.hpp"
#include "surrotrans/corpus.hpp"
#include "surrotrans/romanizer.hpp"

namespace surrotrans {

// ---------------------------------------------------------------------------
// Phonetic similarity

struct PhonemeInventory {
  LanguageId language;
  std::set<std::string> phonemes;
};

/// F1 of the two phoneme sets (exact symbol match). Symmetric, in [0, 1].
double sim_phon(const PhonemeInventory& x, const PhonemeInventory& y);

// ---------------------------------------------------------------------------
// Script similarity

/// Histogram bins; the romanized alphabet without space and '?'.
inline constexpr std::string_view kHistogramAlphabet = "abcdefghijklmnopqrstuvwxyz0123456789'-";
inline constexpr int kHistogramBins = static_cast<int>(kHistogramAlphabet.size());

template <typename Scalar>
using HistogramVectorT = Eigen::Matrix<Scalar, kHistogramBins, 1>;
using HistogramVector = HistogramVectorT<double>;

/// Bin of a romanized character, or -1 for space and '?'.
int histogram_bin(char c);

struct CharHistogram {
  std::string tag;
  HistogramVector counts = HistogramVector::Zero();

  double total() const { return counts.sum(); }
  double count(char c) const;
};

/// Romanizes `text`, then counts characters. Throws when nothing countable remains.
CharHistogram build_histogram(std::string_view text, const RomanizationTable& table,
                              std::string tag = {});

/// Counts the (already romanized) target side of a corpus.
CharHistogram build_histogram(const NamePairCorpus& corpus);

/// u.v / (|u| |v|), for any pair of dense vector expressions.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar cosine_similarity(const Eigen::MatrixBase<DerivedA>& u,
                                            const Eigen::MatrixBase<DerivedB>& v) {
  using Scalar = typename DerivedA::Scalar;
  const Scalar denom = u.norm() * v.norm();
  if (denom == Scalar(0)) return Scalar(0);
  return std::clamp(u.dot(v) / denom, Scalar(0), Scalar(1));
}

/// Cosine of the two count vectors. Throws if either histogram is empty.
double sim_script(const CharHistogram& x, const CharHistogram& y);

// ---------------------------------------------------------------------------
// Genealogical similarity

struct Genealogy {
  LanguageId language;
  std::string family;
  std::string genus;
};

/// 1 if family and genus match, 0.5 if only family matches, else 0.
/// Comparison ignores ASCII case.
double sim_gen(const Genealogy& x, const Genealogy& y);

// ---------------------------------------------------------------------------
// Typological distances

inline constexpr std::size_t kNumDistances = 6;
inline constexpr std::array<std::string_view, kNumDistances> kDistanceNames = {
    "genetic", "geographic", "inventory", "phonological", "syntactic", "featural"};

using DistanceValues = std::array<double, kNumDistances>;

/// Symmetric pairwise distance store: find(a, b) == find(b, a).
class DistanceTable {
 public:
  void set(const LanguageId& a, const LanguageId& b, const DistanceValues& values);
  const DistanceValues* find(const LanguageId& a, const LanguageId& b) const;
  std::size_t size() const { return values_.size(); }

 private:
  std::map<std::pair<LanguageId, LanguageId>, DistanceValues> values_;
};

// ---------------------------------------------------------------------------
// Resources

struct LanguageResources {
  std::map<LanguageId, PhonemeInventory> inventories;
  std::map<LanguageId, Genealogy> genealogy;
  DistanceTable distances;
  std::map<LanguageId, CharHistogram> histograms;
};

/// `lang<TAB>sym1 sym2 ...`
std::map<LanguageId, PhonemeInventory> load_inventories(const std::filesystem::path& path);
/// `lang<TAB>family<TAB>genus`
std::map<LanguageId, Genealogy> load_genealogy(const std::filesystem::path& path);
/// `langA<TAB>langB<TAB>` then the six distances in kDistanceNames order.
DistanceTable load_distances(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Learned similarity

inline constexpr int kNumFeatures = 3 + static_cast<int>(kNumDistances);
inline constexpr std::array<std::string_view, kNumFeatures> kFeatureNames = {
    "sim_phon", "sim_script", "sim_gen",      "genetic",  "geographic",
    "inventory", "phonological", "syntactic", "featural"};

template <typename Scalar>
using FeatureVectorT = Eigen::Matrix<Scalar, kNumFeatures, 1>;
using FeatureVector = FeatureVectorT<double>;

/// Value used for a feature whose resource is missing for either language.
inline constexpr double kImputedFeature = 0.5;

/// [sim_phon, sim_script, sim_gen, 1 - d_genetic, ..., 1 - d_featural].
/// Missing resources are imputed; throws when every feature is missing.
/// `imputed`, when given, receives a per-feature mask.
FeatureVector feature_vector(const LanguageId& x, const LanguageId& t,
                             const LanguageResources& resources,
                             std::array<bool, kNumFeatures>* imputed = nullptr);

/// Per-feature min-max scaling fitted on one candidate set. Constant features
/// map to 0.
struct FeatureScaler {
  FeatureVector min = FeatureVector::Zero();
  FeatureVector max = FeatureVector::Zero();

  static FeatureScaler fit(std::span<const FeatureVector> features);
  FeatureVector apply(const FeatureVector& f) const;
};

struct RankerOptions {
  std::size_t epochs = 1000;
  double learning_rate = 0.01;
  double l2 = 1e-4;
  std::uint64_t seed = 42;
};

struct RankerWeights {
  FeatureVector weights = FeatureVector::Zero();
  RankerOptions options;
};

/// One query: feature vectors of the candidates and their relevance.
struct RankingGroup {
  std::vector<FeatureVector> features;
  std::vector<double> relevance;
};

/// Linear pairwise hinge ranker: for every (a, b) in a group with
/// relevance[a] > relevance[b], push w.(f_a - f_b) >= 1 by stochastic
/// subgradient steps with L2 shrinkage. Pair order is reshuffled each epoch
/// from `options.seed`.
RankerWeights train_pairwise_ranker(std::span<const RankingGroup> groups,
                                    const RankerOptions& options = {});

/// Builds one group per target other than `held_out` (features min-max scaled
/// within the group) and trains the pairwise ranker. `oracle` maps target to
/// candidate to relevance. Needs at least two training targets.
RankerWeights train_ranker(const std::map<LanguageId, std::map<LanguageId, double>>& oracle,
                           const LanguageResources& resources, const LanguageId& held_out,
                           const RankerOptions& options = {});

/// w . f(x, t), with f optionally scaled.
double sim_learned(const LanguageId& x, const LanguageId& t, const RankerWeights& weights,
                   const LanguageResources& resources, const FeatureScaler* scaler = nullptr);

/// `feature<TAB>weight` lines with `#` metadata comments.
void save_weights(const RankerWeights& weights, const std::filesystem::path& path);
RankerWeights load_weights(const std::filesystem::path& path);

}  // namespace surrotrans
