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
#include <string>
#include <vector>

#include "surrotrans/common.hpp"
#include "surrotrans/romanizer.hpp"

namespace surrotrans {

/// An (English, target-language) name pair, both sides romanized.
struct NamePair {
  std::string source;
  std::string target;

  friend bool operator==(const NamePair&, const NamePair&) = default;
  friend auto operator<=>(const NamePair&, const NamePair&) = default;
};

struct NamePairCorpus {
  LanguageId language;
  std::vector<NamePair> pairs;  // file order

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }

  /// Stable content hash over language and pairs.
  std::string digest() const;

  /// Copy with source and target columns exchanged.
  NamePairCorpus swapped() const;
};

struct CorpusSplit {
  NamePairCorpus train;
  NamePairCorpus test;
  std::uint64_t seed = 0;
  double train_fraction = 0.0;
};

inline constexpr double kDefaultTrainFraction = 0.8;
inline constexpr std::uint64_t kDefaultSplitSeed = 42;

/// Reads `source<TAB>target` lines. Blank and `#` lines are skipped. Pairs
/// that romanize to an empty side are dropped and reported on `diag`.
NamePairCorpus load_corpus(const std::filesystem::path& path, const LanguageId& language,
                           const RomanizationTable& table, Diagnostics* diag = nullptr);

/// Keeps corpora with at least `min_pairs` pairs, preserving order.
std::vector<NamePairCorpus> filter_min_pairs(std::vector<NamePairCorpus> corpora,
                                             std::size_t min_pairs);

/// Seeded shuffle, then the first ceil(n * train_fraction) indices train.
CorpusSplit split_corpus(const NamePairCorpus& corpus, double train_fraction = kDefaultTrainFraction,
                         std::uint64_t seed = kDefaultSplitSeed);

/// Loads every `<code>.tsv` in `dir`, sorted by language code.
std::vector<NamePairCorpus> load_corpora_dir(const std::filesystem::path& dir,
                                             const RomanizationTable& table,
                                             Diagnostics* diag = nullptr);

}  // namespace surrotrans
