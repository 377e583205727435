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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "surrotrans/metrics.hpp"

using namespace surrotrans;

namespace {

RelevanceList listed(std::initializer_list<double> rel) {
  RelevanceList out;
  int i = 0;
  for (double r : rel) out.push_back({"l" + std::to_string(i++), r});
  return out;
}

NBestList nbest(std::initializer_list<const char*> outputs) {
  NBestList l;
  double s = 1.0;
  for (const char* o : outputs) l.candidates.push_back({o, s /= 2});
  return l;
}

}  // namespace

TEST_CASE("ndcg examples") {
  CHECK(ndcg_at_k(listed({3, 2, 1}), 3) == doctest::Approx(1.0).epsilon(1e-15));
  const double expected = (1.0 + 2.0 / std::log2(3.0) + 3.0 / 2.0) / (3.0 + 2.0 / std::log2(3.0) + 0.5);
  CHECK(std::abs(ndcg_at_k(listed({1, 2, 3}), 3) - expected) < 1e-12);
  CHECK(ndcg_at_k(listed({5, 0, 1}), 1) == 1.0);
  CHECK(ndcg_at_k(listed({0.5, 0.5, 0.2}), 5) == 1.0);
}

TEST_CASE("ndcg errors") {
  CHECK_THROWS_AS(ndcg_at_k(listed({0, 0}), 5), Error);
  CHECK_THROWS_AS(ndcg_at_k(listed({1, 2}), 0), Error);
  CHECK_THROWS_AS(ndcg_at_k(listed({1, -1}), 5), Error);
  CHECK_THROWS_AS(ndcg_at_k(listed({1, NAN}), 5), Error);
}

TEST_CASE("ndcg equals the brute-force definition on every permutation") {
  const std::vector<std::vector<double>> cases = {{1}, {0, 2}, {3, 2, 1}, {1, 1, 0, 2}, {0.9, 0.1, 0.5, 0.5, 0}};
  for (const auto& base : cases) {
    std::vector<double> perm = base;
    std::sort(perm.begin(), perm.end());
    std::set<double> seen_values;
    do {
      RelevanceList l;
      for (double r : perm) l.push_back({"x", r});
      for (std::size_t k = 1; k <= perm.size() + 1; ++k) {
        const double v = ndcg_at_k(l, k);
        CHECK(std::abs(v - oracle::ndcg(perm, k)) <= 1e-12);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        if (std::is_sorted(perm.begin(), perm.end(), std::greater<>())) CHECK(v == 1.0);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("dcg uses a log2(i + 1) discount") {
  const std::vector<double> rel = {1, 1, 1};
  CHECK(dcg_at_k(rel, 3) == doctest::Approx(1 + 1 / std::log2(3.0) + 0.5));
  CHECK(dcg_at_k(rel, 1) == 1.0);
}

TEST_CASE("mrr examples") {
  std::vector<ScoredOutput> all_first = {{nbest({"a", "b"}), "a"}, {nbest({"c"}), "c"}};
  CHECK(mrr(all_first) == 1.0);
  std::vector<ScoredOutput> second = {{nbest({"a", "b"}), "b"}};
  CHECK(mrr(second) == 0.5);
  std::vector<ScoredOutput> mixed = {{nbest({"a"}), "a"}, {nbest({"a", "b"}), "z"}};
  CHECK(mrr(mixed) == 0.5);
  CHECK_THROWS_AS(mrr(std::vector<ScoredOutput>{}), Error);
  CHECK(reciprocal_rank(nbest({}), "a") == 0.0);
}

TEST_CASE("moving gold up never lowers mrr") {
  std::vector<std::string> outputs = {"a", "b", "c", "d", "e"};
  double last = 0.0;
  for (std::size_t pos = outputs.size(); pos-- > 0;) {
    NBestList l;
    std::vector<std::string> order = outputs;
    order.erase(order.begin());
    order.insert(order.begin() + static_cast<long>(pos), "a");
    for (const auto& o : order) l.candidates.push_back({o, 1.0});
    std::vector<ScoredOutput> r = {{l, "a"}};
    const double v = mrr(r);
    CHECK(v >= last);
    last = v;
  }
}

TEST_CASE("random baseline") {
  CHECK(random_baseline(listed({0.3, 0.3, 0.3}), 1) == 1.0);
  CHECK(random_baseline(listed({0.3, 0.3, 0.3}), 99) == 1.0);
  std::set<double> values;
  for (std::uint64_t seed = 0; seed < 64; ++seed) values.insert(random_baseline(listed({1, 0}), seed));
  const std::set<double> both = {1.0, 1.0 / std::log2(3.0)};
  CHECK(values == both);
  CHECK(random_baseline(listed({3, 1, 2, 0, 5}), 7) == random_baseline(listed({3, 1, 2, 0, 5}), 7));
}
