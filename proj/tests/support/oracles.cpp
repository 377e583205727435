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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

namespace surrotrans::oracle {

bool null_free_alignment_exists(std::size_t n, std::size_t m, std::size_t max_len) {
  std::function<bool(std::size_t, std::size_t)> reach = [&](std::size_t i, std::size_t j) {
    if (i == n && j == m) return true;
    for (std::size_t a = 1; a <= max_len && i + a <= n; ++a) {
      for (std::size_t b = 1; b <= max_len && j + b <= m; ++b) {
        if (reach(i + a, j + b)) return true;
      }
    }
    return false;
  };
  return reach(0, 0);
}

std::vector<std::vector<Move>> all_alignments(std::string_view source, std::string_view target,
                                              std::size_t max_len) {
  const std::size_t n = source.size(), m = target.size();
  const bool nulls = !null_free_alignment_exists(n, m, max_len);
  std::vector<std::vector<Move>> out;
  std::vector<Move> path;
  std::function<void(std::size_t, std::size_t, int)> walk = [&](std::size_t i, std::size_t j, int c) {
    if (i == n && j == m) {
      out.push_back(path);
      return;
    }
    for (std::size_t a = 1; a <= max_len && i + a <= n; ++a) {
      for (std::size_t b = 1; b <= max_len && j + b <= m; ++b) {
        path.push_back({std::string(source.substr(i, a)), std::string(target.substr(j, b))});
        walk(i + a, j + b, 0);
        path.pop_back();
      }
    }
    if (!nulls || c >= 2) return;
    for (std::size_t a = 1; a <= max_len && i + a <= n; ++a) {
      path.push_back({std::string(source.substr(i, a)), ""});
      walk(i + a, j, c + 1);
      path.pop_back();
    }
    for (std::size_t b = 1; b <= max_len && j + b <= m; ++b) {
      path.push_back({"", std::string(target.substr(j, b))});
      walk(i, j + b, c + 1);
      path.pop_back();
    }
  };
  walk(0, 0, 0);
  return out;
}

SegmentTable uniform_init(const NamePairCorpus& corpus, std::size_t max_len) {
  std::map<std::string, std::set<std::string>> seen;
  for (const auto& p : corpus.pairs) {
    std::set<std::string> targets;
    for (std::size_t j = 0; j < p.target.size(); ++j) {
      for (std::size_t b = 1; b <= max_len && j + b <= p.target.size(); ++b) {
        targets.insert(p.target.substr(j, b));
      }
    }
    const bool nulls = !null_free_alignment_exists(p.source.size(), p.target.size(), max_len);
    if (nulls) seen[""].insert(targets.begin(), targets.end());
    for (std::size_t i = 0; i < p.source.size(); ++i) {
      for (std::size_t a = 1; a <= max_len && i + a <= p.source.size(); ++a) {
        auto& row = seen[p.source.substr(i, a)];
        row.insert(targets.begin(), targets.end());
        if (nulls) row.insert("");
      }
    }
  }
  SegmentTable table;
  for (const auto& [s, ts] : seen) {
    for (const auto& t : ts) table[s][t] = 1.0 / static_cast<double>(ts.size());
  }
  return table;
}

namespace {

double lookup(const SegmentTable& probs, const std::string& s, const std::string& t) {
  auto row = probs.find(s);
  if (row == probs.end()) return 0.0;
  auto it = row->second.find(t);
  return it == row->second.end() ? 0.0 : it->second;
}

SegmentTable normalize_prune(const std::map<std::string, std::map<std::string, double>>& counts,
                             double threshold) {
  SegmentTable out;
  for (const auto& [s, row] : counts) {
    double total = 0.0;
    for (const auto& [t, c] : row) total += c;
    if (total <= 0.0) continue;
    std::map<std::string, double> kept;
    for (const auto& [t, c] : row) {
      if (c / total >= threshold) kept[t] = c;
    }
    if (kept.empty()) {
      // Largest count; the first in key order on ties.
      auto best = row.begin();
      for (auto it = row.begin(); it != row.end(); ++it) {
        if (it->second > best->second) best = it;
      }
      kept[best->first] = best->second;
    }
    double kept_total = 0.0;
    for (const auto& [t, c] : kept) kept_total += c;
    for (const auto& [t, c] : kept) out[s][t] = c / kept_total;
  }
  return out;
}

}  // namespace

SegmentTable em(const NamePairCorpus& corpus, const ModelHyperparams& hyper) {
  const std::size_t len = hyper.max_segment_length;
  const double sf = hyper.segment_factor;
  std::vector<std::vector<std::vector<Move>>> paths;
  for (const auto& p : corpus.pairs) paths.push_back(all_alignments(p.source, p.target, len));

  SegmentTable probs = uniform_init(corpus, len);
  for (std::size_t iter = 0; iter < hyper.em_iterations; ++iter) {
    std::map<std::string, std::map<std::string, double>> counts;
    for (const auto& pair_paths : paths) {
      std::vector<double> weights;
      double z = 0.0;
      for (const auto& path : pair_paths) {
        double w = 1.0;
        for (const auto& mv : path) w *= lookup(probs, mv.source, mv.target) * sf;
        weights.push_back(w);
        z += w;
      }
      if (z <= 0.0) continue;
      for (std::size_t k = 0; k < pair_paths.size(); ++k) {
        if (weights[k] <= 0.0) continue;
        for (const auto& mv : pair_paths[k]) counts[mv.source][mv.target] += weights[k] / z;
      }
    }
    probs = normalize_prune(counts, hyper.prune_threshold);
  }
  return probs;
}

std::vector<Candidate> decode(const SegmentModel& model, std::string_view input) {
  const auto& probs = model.probs();
  const ModelHyperparams& hyper = model.hyper();
  const double sf = hyper.segment_factor;
  const std::size_t n = input.size();
  const auto ins = probs.find(std::string_view());

  std::map<std::string, double> best;
  std::function<void(std::size_t, const std::string&, double, int)> at;
  std::function<void(std::size_t, const std::string&, double, int)> consume =
      [&](std::size_t i, const std::string& out, double score, int nulls) {
        if (i == n) {
          auto [it, inserted] = best.try_emplace(out, score);
          if (!inserted) it->second = std::max(it->second, score);
          return;
        }
        for (std::size_t a = 1; a <= hyper.max_segment_length && i + a <= n; ++a) {
          std::string seg(input.substr(i, a));
          auto row = probs.find(seg);
          if (row == probs.end()) {
            if (a == 1) at(i + 1, out + seg, score * kUnknownSegmentScore * sf, 0);
            continue;
          }
          for (const auto& [t, p] : row->second) {
            const int next = t.empty() ? nulls + 1 : 0;
            if (next > 2) continue;
            at(i + a, out + t, score * p * sf, next);
          }
        }
      };
  at = [&](std::size_t i, const std::string& out, double score, int nulls) {
    consume(i, out, score, nulls);
    if (nulls >= 2 || ins == probs.end()) return;
    for (const auto& [t, p] : ins->second) at(i, out + t, score * p * sf, nulls + 1);
  };
  at(0, "", 1.0, 0);

  std::vector<Candidate> out;
  for (const auto& [o, s] : best) out.push_back({o, s});
  if (out.empty()) out.push_back({std::string(input), std::pow(kUnknownSegmentScore * sf, double(n))});
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    return a.score != b.score ? a.score > b.score : a.output < b.output;
  });
  if (out.size() > hyper.nbest_size) out.resize(hyper.nbest_size);
  return out;
}

double dcg(const std::vector<double>& rel, std::size_t k) {
  double sum = 0.0;
  for (std::size_t i = 1; i <= rel.size() && i <= k; ++i) {
    sum += rel[i - 1] / std::log2(static_cast<double>(i) + 1.0);
  }
  return sum;
}

double ndcg(const std::vector<double>& rel, std::size_t k) {
  std::vector<double> perm = rel;
  std::sort(perm.begin(), perm.end());
  double ideal = 0.0;
  do {
    ideal = std::max(ideal, dcg(perm, k));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return dcg(rel, k) / ideal;
}

}  // namespace surrotrans::oracle
