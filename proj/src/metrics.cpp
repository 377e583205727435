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

#include "surrotrans/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace surrotrans {

double dcg_at_k(std::span<const double> relevances, std::size_t k) {
  double dcg = 0.0;
  const std::size_t limit = std::min(k, relevances.size());
  for (std::size_t i = 0; i < limit; ++i) {
    dcg += relevances[i] / std::log2(static_cast<double>(i) + 2.0);
  }
  return dcg;
}

double ndcg_at_k(const RelevanceList& ranked, std::size_t k) {
  if (k == 0) throw Error("ndcg: k must be >= 1");
  std::vector<double> rel;
  rel.reserve(ranked.size());
  for (const auto& item : ranked) {
    if (!std::isfinite(item.relevance) || item.relevance < 0.0) {
      throw Error("ndcg: relevance of '" + item.id + "' must be finite and nonnegative");
    }
    rel.push_back(item.relevance);
  }
  std::vector<double> ideal = rel;
  std::sort(ideal.begin(), ideal.end(), std::greater<>());
  const double idcg = dcg_at_k(ideal, k);
  if (!(idcg > 0.0)) throw Error("ndcg: all relevances are zero, ideal DCG is undefined");
  return std::clamp(dcg_at_k(rel, k) / idcg, 0.0, 1.0);
}

double reciprocal_rank(const NBestList& list, std::string_view gold) {
  for (std::size_t r = 0; r < list.candidates.size(); ++r) {
    if (list.candidates[r].output == gold) return 1.0 / static_cast<double>(r + 1);
  }
  return 0.0;
}

double mrr(std::span<const ScoredOutput> results) {
  if (results.empty()) throw Error("mrr: no results");
  double sum = 0.0;
  for (const auto& r : results) sum += reciprocal_rank(r.list, r.gold);
  return sum / static_cast<double>(results.size());
}

double random_baseline(const RelevanceList& relevances, std::uint64_t seed, std::size_t k) {
  RelevanceList shuffled = relevances;
  Rng rng(seed);
  rng.shuffle(shuffled);
  return ndcg_at_k(shuffled, k);
}

}  // namespace surrotrans
