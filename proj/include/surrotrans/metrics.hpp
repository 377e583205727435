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
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "surrotrans/segment_model.hpp"

namespace surrotrans {

inline constexpr std::size_t kDefaultNdcgK = 5;

struct RelevanceItem {
  std::string id;
  double relevance = 0.0;
};

/// Items in the order the evaluated system ranked them.
using RelevanceList = std::vector<RelevanceItem>;

/// sum_{i=1..min(k,n)} rel_i / log2(i + 1)
double dcg_at_k(std::span<const double> relevances, std::size_t k);

/// DCG of the given order divided by DCG of the descending order. Throws when
/// k == 0, a relevance is negative or non-finite, or all relevances are zero.
double ndcg_at_k(const RelevanceList& ranked, std::size_t k = kDefaultNdcgK);

/// 1/rank of the first candidate equal to `gold`, 0 when absent.
double reciprocal_rank(const NBestList& list, std::string_view gold);

struct ScoredOutput {
  NBestList list;
  std::string gold;
};

/// Mean reciprocal rank. Throws on empty input.
double mrr(std::span<const ScoredOutput> results);

/// NDCG@k of a seeded uniform permutation of `relevances`.
double random_baseline(const RelevanceList& relevances, std::uint64_t seed,
                       std::size_t k = kDefaultNdcgK);

}  // namespace surrotrans
