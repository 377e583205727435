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

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "surrotrans/common.hpp"
#include "surrotrans/corpus.hpp"

namespace surrotrans {

struct ModelHyperparams {
  std::size_t em_iterations = 5;
  std::size_t max_segment_length = 15;
  double segment_factor = 0.5;
  double prune_threshold = 1e-6;
  std::size_t nbest_size = 10;
  std::size_t beam_width = 100;

  /// Throws Error when any field is out of range.
  void validate() const;

  /// `em=5,maxseg=15,segfactor=0.5,prune=1e-06,nbest=10,beam=100`, shortest
  /// round-trip formatting.
  std::string to_string() const;

  /// Parses the to_string() syntax. Keys not present keep the value from `base`.
  static ModelHyperparams parse(std::string_view text, const ModelHyperparams& base);
  static ModelHyperparams parse(std::string_view text);

  friend bool operator==(const ModelHyperparams&, const ModelHyperparams&) = default;
};

/// Consecutive deletions/insertions allowed in one alignment path.
inline constexpr int kMaxConsecutiveNulls = 2;

/// Score given to an unseen single character passed through unchanged.
inline constexpr double kUnknownSegmentScore = 1e-4;

/// Model-file marker for the empty segment (U+2205).
inline constexpr std::string_view kEmptySegmentMarker = "\xE2\x88\x85";

using TargetDistribution = std::map<std::string, double, std::less<>>;

/// source segment -> target segment -> P(target | source). The empty source
/// segment keys insertions; the empty target segment is a deletion.
using SegmentTable = std::map<std::string, TargetDistribution, std::less<>>;

struct Candidate {
  std::string output;
  double score = 0.0;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Score descending, then output ascending.
bool candidate_before(const Candidate& a, const Candidate& b);
void sort_candidates(std::vector<Candidate>& candidates);

struct NBestList {
  std::string input;
  std::vector<Candidate> candidates;

  friend bool operator==(const NBestList&, const NBestList&) = default;
};

/// Trained transliterator. Immutable; safe for concurrent decoding.
class SegmentModel {
 public:
  SegmentModel(SegmentTable probs, ModelHyperparams hyper, LanguageId source_language,
               LanguageId target_language);

  const SegmentTable& probs() const { return probs_; }
  const ModelHyperparams& hyper() const { return hyper_; }
  const LanguageId& source_language() const { return source_language_; }
  const LanguageId& target_language() const { return target_language_; }

  /// 0 when the entry is absent.
  double prob(std::string_view source, std::string_view target) const;
  std::size_t num_entries() const;

  /// Targets of `source` by probability descending (ties: target ascending);
  /// null when the source segment is unknown.
  const std::vector<std::pair<double, std::string>>* ranked_targets(std::string_view source) const;

 private:
  SegmentTable probs_;
  ModelHyperparams hyper_;
  LanguageId source_language_;
  LanguageId target_language_;
  std::map<std::string, std::vector<std::pair<double, std::string>>, std::less<>> ranked_;
};

/// Total log-likelihood after each EM step. Entry 0 is the uniform
/// initialization, entry i the model after M-step i.
struct TrainingTrace {
  std::vector<double> log_likelihood;
  std::size_t skipped_pairs = 0;  // pairs whose lattice mass vanished after pruning
};

/// EM over the joint segmentation lattice of each pair. The corpus source
/// side is the model input, the target side its output.
SegmentModel train(const NamePairCorpus& corpus, const ModelHyperparams& hyper = {},
                   TrainingTrace* trace = nullptr,
                   const LanguageId& source_language = LanguageId("eng"),
                   Diagnostics* diag = nullptr);

/// True when no alignment of the two lengths exists without deletions or
/// insertions. Null moves enter a pair's lattice only in that case.
bool needs_null_moves(std::size_t source_length, std::size_t target_length,
                      std::size_t max_segment_length);

/// Uniform initialization over co-occurring substring pairs within the cap.
SegmentTable initial_table(const NamePairCorpus& corpus, std::size_t max_segment_length);

/// log P(target | source) summed over all alignment paths, for every pair.
/// Pairs with zero mass contribute nothing and are counted in `zero_mass`.
double corpus_log_likelihood(const SegmentTable& probs, const NamePairCorpus& corpus,
                             const ModelHyperparams& hyper, std::size_t* zero_mass = nullptr);

/// Beam search over input positions. Each candidate's score is the best
/// single segmentation's product of P(t|s) * segment_factor.
NBestList decode(const SegmentModel& model, std::string_view input);

void write_model(const SegmentModel& model, std::ostream& out);
SegmentModel read_model(std::istream& in, const std::string& source_name = "<stream>");
void save_model(const SegmentModel& model, const std::filesystem::path& path);
SegmentModel load_model(const std::filesystem::path& path);

}  // namespace surrotrans
