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

#include "surrotrans/segment_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace surrotrans {

// ---------------------------------------------------------------------------
// Hyperparameters

void ModelHyperparams::validate() const {
  if (em_iterations < 1) throw Error("em_iterations must be >= 1");
  if (max_segment_length < 1) throw Error("max_segment_length must be >= 1");
  if (!(segment_factor > 0.0 && segment_factor <= 1.0)) throw Error("segment_factor must lie in (0, 1]");
  if (!(prune_threshold >= 0.0 && prune_threshold < 1.0)) throw Error("prune_threshold must lie in [0, 1)");
  if (nbest_size < 1) throw Error("nbest_size must be >= 1");
  if (beam_width < nbest_size) throw Error("beam_width must be >= nbest_size");
}

std::string ModelHyperparams::to_string() const {
  std::ostringstream os;
  os << "em=" << em_iterations << ",maxseg=" << max_segment_length
     << ",segfactor=" << format_double_shortest(segment_factor)
     << ",prune=" << format_double_shortest(prune_threshold) << ",nbest=" << nbest_size
     << ",beam=" << beam_width;
  return os.str();
}

ModelHyperparams ModelHyperparams::parse(std::string_view text) {
  return parse(text, ModelHyperparams{});
}

ModelHyperparams ModelHyperparams::parse(std::string_view text, const ModelHyperparams& base) {
  ModelHyperparams h = base;
  if (text.empty()) return h;
  for (const auto& item : split(text, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error("hyperparameter '" + item + "' is not key=value");
    std::string key = item.substr(0, eq);
    std::string value = item.substr(eq + 1);
    char* end = nullptr;
    auto as_count = [&]() -> std::size_t {
      unsigned long long v = std::strtoull(value.c_str(), &end, 10);
      if (value.empty() || *end != '\0' || value[0] == '-') {
        throw Error("hyperparameter '" + key + "' needs a nonnegative integer, got '" + value + "'");
      }
      return static_cast<std::size_t>(v);
    };
    auto as_real = [&]() -> double {
      double v = std::strtod(value.c_str(), &end);
      if (value.empty() || *end != '\0') {
        throw Error("hyperparameter '" + key + "' needs a number, got '" + value + "'");
      }
      return v;
    };
    if (key == "em") h.em_iterations = as_count();
    else if (key == "maxseg") h.max_segment_length = as_count();
    else if (key == "segfactor") h.segment_factor = as_real();
    else if (key == "prune") h.prune_threshold = as_real();
    else if (key == "nbest") h.nbest_size = as_count();
    else if (key == "beam") h.beam_width = as_count();
    else throw Error("unknown hyperparameter '" + key + "'");
  }
  h.validate();
  return h;
}

// ---------------------------------------------------------------------------
// Candidates and the model table

bool candidate_before(const Candidate& a, const Candidate& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.output < b.output;
}

void sort_candidates(std::vector<Candidate>& candidates) {
  std::sort(candidates.begin(), candidates.end(), candidate_before);
}

SegmentModel::SegmentModel(SegmentTable probs, ModelHyperparams hyper, LanguageId source_language,
                           LanguageId target_language)
    : probs_(std::move(probs)),
      hyper_(hyper),
      source_language_(std::move(source_language)),
      target_language_(std::move(target_language)) {
  hyper_.validate();
  for (const auto& [source, dist] : probs_) {
    auto& ranked = ranked_[source];
    ranked.reserve(dist.size());
    for (const auto& [target, p] : dist) ranked.emplace_back(p, target);
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
  }
}

double SegmentModel::prob(std::string_view source, std::string_view target) const {
  auto row = probs_.find(source);
  if (row == probs_.end()) return 0.0;
  auto it = row->second.find(target);
  return it == row->second.end() ? 0.0 : it->second;
}

std::size_t SegmentModel::num_entries() const {
  std::size_t n = 0;
  for (const auto& [s, dist] : probs_) n += dist.size();
  return n;
}

const std::vector<std::pair<double, std::string>>* SegmentModel::ranked_targets(
    std::string_view source) const {
  auto it = ranked_.find(source);
  return it == ranked_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Alignment lattice

namespace {

constexpr int kNullStates = kMaxConsecutiveNulls + 1;

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

/// Forward-backward over (source position, target position, consecutive
/// null moves). Moves: substitution (a>=1, b>=1), deletion (a>=1, b=0) and
/// insertion (a=0, b>=1); every move is weighted P(t|s) * segment_factor.
class PairLattice {
 public:
  PairLattice(std::string_view source, std::string_view target, std::size_t max_len,
              double segment_factor, const SegmentTable& probs)
      : allow_nulls_(needs_null_moves(source.size(), target.size(), max_len)),
        src_(source),
        tgt_(target),
        n_(source.size()),
        m_(target.size()),
        len_(max_len),
        sub_(n_ * len_ * m_ * len_, 0.0),
        del_(n_ * len_, 0.0),
        ins_((m_ + 1) * len_, 0.0) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t a = 1; a <= len_ && i + a <= n_; ++a) {
        auto row = probs.find(src_.substr(i, a));
        if (row == probs.end()) continue;
        const TargetDistribution& dist = row->second;
        if (auto d = dist.find(std::string_view()); allow_nulls_ && d != dist.end()) {
          del_[del_index(i, a)] = d->second * segment_factor;
        }
        for (std::size_t j = 0; j < m_; ++j) {
          for (std::size_t b = 1; b <= len_ && j + b <= m_; ++b) {
            auto t = dist.find(tgt_.substr(j, b));
            if (t != dist.end()) sub_[sub_index(i, a, j, b)] = t->second * segment_factor;
          }
        }
      }
    }
    if (auto row = probs.find(std::string_view()); allow_nulls_ && row != probs.end()) {
      for (std::size_t j = 0; j < m_; ++j) {
        for (std::size_t b = 1; b <= len_ && j + b <= m_; ++b) {
          auto t = row->second.find(tgt_.substr(j, b));
          if (t != row->second.end()) ins_[ins_index(j, b)] = t->second * segment_factor;
        }
      }
    }
  }

  /// Returns the total path mass Z.
  double run() {
    const std::size_t states = (n_ + 1) * (m_ + 1) * kNullStates;
    alpha_.assign(states, 0.0);
    beta_.assign(states, 0.0);

    alpha_[state(0, 0, 0)] = 1.0;
    for (std::size_t i = 0; i <= n_; ++i) {
      for (std::size_t j = 0; j <= m_; ++j) {
        for (int c = 0; c < kNullStates; ++c) {
          const double from = alpha_[state(i, j, c)];
          if (from == 0.0) continue;
          for (std::size_t a = 1; a <= len_ && i + a <= n_; ++a) {
            for (std::size_t b = 1; b <= len_ && j + b <= m_; ++b) {
              alpha_[state(i + a, j + b, 0)] += from * sub_[sub_index(i, a, j, b)];
            }
          }
          if (c >= kMaxConsecutiveNulls) continue;
          for (std::size_t a = 1; a <= len_ && i + a <= n_; ++a) {
            alpha_[state(i + a, j, c + 1)] += from * del_[del_index(i, a)];
          }
          for (std::size_t b = 1; b <= len_ && j + b <= m_; ++b) {
            alpha_[state(i, j + b, c + 1)] += from * ins_[ins_index(j, b)];
          }
        }
      }
    }

    for (int c = 0; c < kNullStates; ++c) beta_[state(n_, m_, c)] = 1.0;
    for (std::size_t i = n_ + 1; i-- > 0;) {
      for (std::size_t j = m_ + 1; j-- > 0;) {
        if (i == n_ && j == m_) continue;
        for (int c = 0; c < kNullStates; ++c) {
          double acc = 0.0;
          for (std::size_t a = 1; a <= len_ && i + a <= n_; ++a) {
            for (std::size_t b = 1; b <= len_ && j + b <= m_; ++b) {
              acc += sub_[sub_index(i, a, j, b)] * beta_[state(i + a, j + b, 0)];
            }
          }
          if (c < kMaxConsecutiveNulls) {
            for (std::size_t a = 1; a <= len_ && i + a <= n_; ++a) {
              acc += del_[del_index(i, a)] * beta_[state(i + a, j, c + 1)];
            }
            for (std::size_t b = 1; b <= len_ && j + b <= m_; ++b) {
              acc += ins_[ins_index(j, b)] * beta_[state(i, j + b, c + 1)];
            }
          }
          beta_[state(i, j, c)] = acc;
        }
      }
    }

    z_ = 0.0;
    for (int c = 0; c < kNullStates; ++c) z_ += alpha_[state(n_, m_, c)];
    return z_;
  }

  /// Adds posterior expected counts of every move into `counts`. run() first.
  void accumulate(SegmentTable& counts) const {
    if (!(z_ > 0.0)) return;
    const double inv_z = 1.0 / z_;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t a = 1; a <= len_ && i + a <= n_; ++a) {
        TargetDistribution* row = nullptr;
        auto row_for = [&]() -> TargetDistribution& {
          if (!row) {
            std::string_view key = src_.substr(i, a);
            auto it = counts.find(key);
            if (it == counts.end()) it = counts.emplace(std::string(key), TargetDistribution{}).first;
            row = &it->second;
          }
          return *row;
        };
        for (std::size_t j = 0; j <= m_; ++j) {
          double alpha_all = 0.0;
          for (int c = 0; c < kNullStates; ++c) alpha_all += alpha_[state(i, j, c)];
          if (alpha_all == 0.0) continue;
          for (std::size_t b = 1; b <= len_ && j + b <= m_; ++b) {
            const double w = sub_[sub_index(i, a, j, b)];
            if (w == 0.0) continue;
            const double post = alpha_all * w * beta_[state(i + a, j + b, 0)] * inv_z;
            if (post > 0.0) add(row_for(), tgt_.substr(j, b), post);
          }
          const double w = del_[del_index(i, a)];
          if (w == 0.0) continue;
          double post = 0.0;
          for (int c = 0; c < kMaxConsecutiveNulls; ++c) {
            post += alpha_[state(i, j, c)] * w * beta_[state(i + a, j, c + 1)];
          }
          post *= inv_z;
          if (post > 0.0) add(row_for(), std::string_view(), post);
        }
      }
    }
    TargetDistribution* ins_row = nullptr;
    for (std::size_t i = 0; i <= n_; ++i) {
      for (std::size_t j = 0; j < m_; ++j) {
        for (std::size_t b = 1; b <= len_ && j + b <= m_; ++b) {
          const double w = ins_[ins_index(j, b)];
          if (w == 0.0) continue;
          double post = 0.0;
          for (int c = 0; c < kMaxConsecutiveNulls; ++c) {
            post += alpha_[state(i, j, c)] * w * beta_[state(i, j + b, c + 1)];
          }
          post *= inv_z;
          if (post <= 0.0) continue;
          if (!ins_row) ins_row = &counts[std::string()];
          add(*ins_row, tgt_.substr(j, b), post);
        }
      }
    }
  }

 private:
  static void add(TargetDistribution& row, std::string_view key, double value) {
    auto it = row.find(key);
    if (it == row.end()) {
      row.emplace(std::string(key), value);
    } else {
      it->second += value;
    }
  }

  std::size_t state(std::size_t i, std::size_t j, int c) const {
    return (i * (m_ + 1) + j) * kNullStates + static_cast<std::size_t>(c);
  }
  std::size_t sub_index(std::size_t i, std::size_t a, std::size_t j, std::size_t b) const {
    return ((i * len_ + (a - 1)) * m_ + j) * len_ + (b - 1);
  }
  std::size_t del_index(std::size_t i, std::size_t a) const { return i * len_ + (a - 1); }
  std::size_t ins_index(std::size_t j, std::size_t b) const { return j * len_ + (b - 1); }

  bool allow_nulls_;
  std::string_view src_;
  std::string_view tgt_;
  std::size_t n_, m_, len_;
  std::vector<double> sub_;
  std::vector<double> del_;
  std::vector<double> ins_;
  std::vector<double> alpha_;
  std::vector<double> beta_;
  double z_ = 0.0;
};

SegmentTable normalize_and_prune(const SegmentTable& counts, double threshold) {
  SegmentTable probs;
  for (const auto& [source, row] : counts) {
    double total = 0.0;
    for (const auto& [t, c] : row) total += c;
    if (!(total > 0.0)) continue;

    TargetDistribution kept;
    const std::pair<const std::string, double>* best = nullptr;
    for (const auto& entry : row) {
      if (!best || entry.second > best->second) best = &entry;
      double p = entry.second / total;
      if (p >= threshold) kept.emplace(entry.first, entry.second);
    }
    if (kept.empty()) kept.emplace(best->first, best->second);

    double kept_total = 0.0;
    for (const auto& [t, c] : kept) kept_total += c;
    for (auto& [t, c] : kept) c /= kept_total;
    probs.emplace(source, std::move(kept));
  }
  return probs;
}

}  // namespace

bool needs_null_moves(std::size_t source_length, std::size_t target_length,
                      std::size_t max_segment_length) {
  // A null-free path uses k segments on both sides, ceil(len / cap) <= k <= len.
  const std::size_t lo = std::max(ceil_div(source_length, max_segment_length),
                                  ceil_div(target_length, max_segment_length));
  return lo > std::min(source_length, target_length);
}

SegmentTable initial_table(const NamePairCorpus& corpus, std::size_t max_segment_length) {
  std::map<std::string, std::set<std::string>, std::less<>> cooccur;
  for (const auto& pair : corpus.pairs) {
    std::string_view s = pair.source;
    std::string_view t = pair.target;
    std::vector<std::string_view> targets;
    for (std::size_t j = 0; j < t.size(); ++j) {
      for (std::size_t b = 1; b <= max_segment_length && j + b <= t.size(); ++b) {
        targets.push_back(t.substr(j, b));
      }
    }
    const bool nulls = needs_null_moves(s.size(), t.size(), max_segment_length);
    if (nulls) {
      auto& ins = cooccur[std::string()];
      for (auto seg : targets) ins.emplace(seg);
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t a = 1; a <= max_segment_length && i + a <= s.size(); ++a) {
        auto key = s.substr(i, a);
        auto it = cooccur.find(key);
        if (it == cooccur.end()) it = cooccur.emplace(std::string(key), std::set<std::string>{}).first;
        if (nulls) it->second.emplace();
        for (auto seg : targets) it->second.emplace(seg);
      }
    }
  }
  SegmentTable table;
  for (const auto& [source, targets] : cooccur) {
    if (targets.empty()) continue;
    const double p = 1.0 / static_cast<double>(targets.size());
    TargetDistribution dist;
    for (const auto& t : targets) dist.emplace_hint(dist.end(), t, p);
    table.emplace_hint(table.end(), source, std::move(dist));
  }
  return table;
}

double corpus_log_likelihood(const SegmentTable& probs, const NamePairCorpus& corpus,
                             const ModelHyperparams& hyper, std::size_t* zero_mass) {
  double ll = 0.0;
  std::size_t zeros = 0;
  for (const auto& pair : corpus.pairs) {
    PairLattice lattice(pair.source, pair.target, hyper.max_segment_length, hyper.segment_factor, probs);
    double z = lattice.run();
    if (z > 0.0 && std::isfinite(z)) {
      ll += std::log(z);
    } else {
      ++zeros;
    }
  }
  if (zero_mass) *zero_mass = zeros;
  return ll;
}

SegmentModel train(const NamePairCorpus& corpus, const ModelHyperparams& hyper,
                   TrainingTrace* trace, const LanguageId& source_language, Diagnostics* diag) {
  hyper.validate();
  if (corpus.empty()) throw Error("cannot train on empty corpus '" + corpus.language.code() + "'");
  for (const auto& pair : corpus.pairs) {
    if (pair.source.empty() || pair.target.empty()) throw Error("training pair with an empty side");
  }

  TrainingTrace local;
  TrainingTrace& tr = trace ? *trace : local;
  tr = {};

  SegmentTable probs = initial_table(corpus, hyper.max_segment_length);
  for (std::size_t iter = 0; iter < hyper.em_iterations; ++iter) {
    SegmentTable counts;
    double ll = 0.0;
    std::size_t skipped = 0;
    for (const auto& pair : corpus.pairs) {
      PairLattice lattice(pair.source, pair.target, hyper.max_segment_length, hyper.segment_factor,
                          probs);
      const double z = lattice.run();
      if (!(z > 0.0) || !std::isfinite(z)) {
        if (iter == 0) {
          throw Error("internal error: empty alignment lattice for pair '" + pair.source + "' / '" +
                      pair.target + "' under max segment length " +
                      std::to_string(hyper.max_segment_length));
        }
        ++skipped;
        continue;
      }
      ll += std::log(z);
      lattice.accumulate(counts);
    }
    tr.log_likelihood.push_back(ll);
    tr.skipped_pairs = std::max(tr.skipped_pairs, skipped);
    probs = normalize_and_prune(counts, hyper.prune_threshold);
  }
  std::size_t zeros = 0;
  tr.log_likelihood.push_back(corpus_log_likelihood(probs, corpus, hyper, &zeros));
  tr.skipped_pairs = std::max(tr.skipped_pairs, zeros);
  if (tr.skipped_pairs > 0) {
    (diag ? *diag : default_diagnostics())
        .warn(std::to_string(tr.skipped_pairs) + " training pair(s) lost all alignment mass after pruning");
  }
  return SegmentModel(std::move(probs), hyper, source_language, corpus.language);
}

// ---------------------------------------------------------------------------
// Decoding

namespace {

struct Hypothesis {
  std::string output;
  double score;
  int nulls;
};

/// Keeps the best score per (output, null count). Once compacted, `floor()`
/// is the beam-th best score: anything lower can never re-enter the beam.
class Bucket {
 public:
  explicit Bucket(std::size_t beam) : beam_(beam) {}

  bool admits(double score) const { return score >= floor_; }

  void add(const std::string& output, int nulls, double score) {
    if (!admits(score)) return;
    std::string key = output;
    key.push_back('\x01');
    key.push_back(static_cast<char>('0' + nulls));
    auto [it, inserted] = best_.try_emplace(std::move(key), score);
    if (!inserted && score > it->second) it->second = score;
    if (best_.size() > 4 * beam_) compact();
  }

  std::vector<Hypothesis> take() {
    compact();
    std::vector<Hypothesis> out;
    out.reserve(best_.size());
    for (const auto& [key, score] : best_) {
      out.push_back({key.substr(0, key.size() - 2), score, key.back() - '0'});
    }
    std::sort(out.begin(), out.end(), [](const Hypothesis& a, const Hypothesis& b) {
      if (a.score != b.score) return a.score > b.score;
      if (a.output != b.output) return a.output < b.output;
      return a.nulls < b.nulls;
    });
    return out;
  }

 private:
  void compact() {
    if (best_.size() <= beam_) return;
    std::vector<std::pair<std::string, double>> items(best_.begin(), best_.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
      return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    items.resize(beam_);
    floor_ = items.back().second;
    best_.clear();
    for (auto& [k, s] : items) best_.emplace(std::move(k), s);
  }

  std::size_t beam_;
  double floor_ = 0.0;
  std::unordered_map<std::string, double> best_;
};

}  // namespace

NBestList decode(const SegmentModel& model, std::string_view input) {
  if (input.empty()) throw Error("decode: empty input");
  const ModelHyperparams& hyper = model.hyper();
  const double sf = hyper.segment_factor;
  const std::size_t n = input.size();
  const std::size_t beam = hyper.beam_width;
  const auto* insertions = model.ranked_targets(std::string_view());

  std::vector<Bucket> buckets(n + 1, Bucket(beam));
  buckets[0].add(std::string(), 0, 1.0);
  std::vector<Hypothesis> finals;

  for (std::size_t i = 0; i <= n; ++i) {
    std::vector<Hypothesis> hyps = buckets[i].take();
    buckets[i] = Bucket(beam);

    if (insertions) {
      for (int c = 0; c < kMaxConsecutiveNulls; ++c) {
        Bucket closure(beam);
        for (const auto& h : hyps) closure.add(h.output, h.nulls, h.score);
        for (const auto& h : hyps) {
          if (h.nulls != c) continue;
          for (const auto& [p, t] : *insertions) {
            const double score = h.score * p * sf;
            if (!closure.admits(score)) break;
            closure.add(h.output + t, c + 1, score);
          }
        }
        hyps = closure.take();
      }
    }

    if (i == n) {
      finals = std::move(hyps);
      break;
    }

    for (const auto& h : hyps) {
      for (std::size_t a = 1; a <= hyper.max_segment_length && i + a <= n; ++a) {
        std::string_view seg = input.substr(i, a);
        Bucket& next = buckets[i + a];
        const auto* targets = model.ranked_targets(seg);
        if (!targets) {
          if (a == 1) next.add(h.output + std::string(seg), 0, h.score * kUnknownSegmentScore * sf);
          continue;
        }
        for (const auto& [p, t] : *targets) {
          const double score = h.score * p * sf;
          if (!next.admits(score)) break;
          const int nulls = t.empty() ? h.nulls + 1 : 0;
          if (nulls > kMaxConsecutiveNulls) continue;
          next.add(h.output + t, nulls, score);
        }
      }
    }
  }

  std::map<std::string, double> merged;
  for (const auto& h : finals) {
    auto [it, inserted] = merged.try_emplace(h.output, h.score);
    if (!inserted) it->second = std::max(it->second, h.score);
  }
  NBestList list{std::string(input), {}};
  for (auto& [output, score] : merged) list.candidates.push_back({output, score});
  if (list.candidates.empty()) {
    double score = 1.0;
    for (std::size_t k = 0; k < n; ++k) score *= kUnknownSegmentScore * sf;
    list.candidates.push_back({std::string(input), score});
  }
  sort_candidates(list.candidates);
  if (list.candidates.size() > hyper.nbest_size) list.candidates.resize(hyper.nbest_size);
  return list;
}

// ---------------------------------------------------------------------------
// Model files

namespace {

constexpr std::string_view kMagic = "surrotrans-model";
constexpr std::string_view kVersion = "v1";

std::string encode_segment(std::string_view seg) {
  return seg.empty() ? std::string(kEmptySegmentMarker) : std::string(seg);
}

std::string decode_segment(const std::string& field) {
  return field == kEmptySegmentMarker ? std::string() : field;
}

}  // namespace

void write_model(const SegmentModel& model, std::ostream& out) {
  out << kMagic << ' ' << kVersion << ' ' << model.source_language().code() << ' '
      << model.target_language().code() << ' ' << model.hyper().to_string() << '\n';
  std::size_t count = 0;
  for (const auto& [source, dist] : model.probs()) {
    for (const auto& [target, p] : dist) {
      out << encode_segment(source) << '\t' << encode_segment(target) << '\t' << format_double(p, 17)
          << '\n';
      ++count;
    }
  }
  out << "# end " << count << '\n';
}

SegmentModel read_model(std::istream& in, const std::string& source_name) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(source_name, 0, "empty model file");
  auto header = split(line, ' ');
  if (header.size() < 2 || header[0] != kMagic) {
    throw ParseError(source_name, 1, "not a surrotrans model file");
  }
  if (header[1] != kVersion) {
    throw ParseError(source_name, 1,
                     "unsupported model version '" + header[1] + "' (expected " + std::string(kVersion) + ")");
  }
  if (header.size() != 5) throw ParseError(source_name, 1, "malformed header");

  LanguageId src, tgt;
  ModelHyperparams hyper;
  try {
    src = LanguageId(header[2]);
    tgt = LanguageId(header[3]);
    hyper = ModelHyperparams::parse(header[4]);
  } catch (const Error& e) {
    throw ParseError(source_name, 1, e.what());
  }

  SegmentTable probs;
  std::size_t line_no = 1;
  std::size_t count = 0;
  bool finished = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.rfind("# end ", 0) == 0) {
      char* end = nullptr;
      unsigned long long declared = std::strtoull(line.c_str() + 6, &end, 10);
      if (*end != '\0' || declared != count) {
        throw ParseError(source_name, line_no,
                         "entry count mismatch: trailer says " + line.substr(6) + ", read " +
                             std::to_string(count));
      }
      finished = true;
      break;
    }
    auto fields = split(line, '\t');
    if (fields.size() != 3) throw ParseError(source_name, line_no, "expected 3 tab-separated fields");
    char* end = nullptr;
    double p = std::strtod(fields[2].c_str(), &end);
    if (fields[2].empty() || *end != '\0' || !(p > 0.0) || !std::isfinite(p)) {
      throw ParseError(source_name, line_no, "invalid probability '" + fields[2] + "'");
    }
    probs[decode_segment(fields[0])][decode_segment(fields[1])] = p;
    ++count;
  }
  if (!finished) {
    throw ParseError(source_name, line_no, "truncated model file (missing '# end' trailer)");
  }
  return SegmentModel(std::move(probs), hyper, std::move(src), std::move(tgt));
}

void save_model(const SegmentModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write model " + path.string());
  write_model(model, out);
  if (!out) throw IoError("error while writing model " + path.string());
}

SegmentModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read model " + path.string());
  return read_model(in, path.string());
}

}  // namespace surrotrans
