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

#include "surrotrans/similarity.hpp"

#include <cmath>
#include <fstream>
#include <numeric>

namespace surrotrans {
namespace {

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

/// Calls `fn(line_no, fields)` for every non-comment, non-blank line.
template <typename Fn>
void for_each_tsv_line(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    fn(line_no, split(line, '\t'));
  }
}

LanguageId parse_language(const std::filesystem::path& path, std::size_t line_no,
                          const std::string& field) {
  std::string code = trim(field);
  if (!LanguageId::is_valid(code)) {
    throw ParseError(path.string(), line_no, "invalid language code '" + code + "'");
  }
  return LanguageId(code);
}

}  // namespace

double sim_phon(const PhonemeInventory& x, const PhonemeInventory& y) {
  if (x.phonemes.empty() || y.phonemes.empty()) {
    throw Error("sim_phon: empty phoneme inventory");
  }
  std::size_t shared = 0;
  for (const auto& p : x.phonemes) shared += y.phonemes.count(p);
  if (shared == 0) return 0.0;
  const double precision = static_cast<double>(shared) / static_cast<double>(x.phonemes.size());
  const double recall = static_cast<double>(shared) / static_cast<double>(y.phonemes.size());
  return 2.0 * precision * recall / (precision + recall);
}

int histogram_bin(char c) {
  auto pos = kHistogramAlphabet.find(c);
  return pos == std::string_view::npos ? -1 : static_cast<int>(pos);
}

double CharHistogram::count(char c) const {
  int bin = histogram_bin(c);
  return bin < 0 ? 0.0 : counts[bin];
}

namespace {

void add_counts(CharHistogram& h, std::string_view romanized) {
  for (char c : romanized) {
    int bin = histogram_bin(c);
    if (bin >= 0) h.counts[bin] += 1.0;
  }
}

}  // namespace

CharHistogram build_histogram(std::string_view text, const RomanizationTable& table,
                              std::string tag) {
  CharHistogram h{std::move(tag)};
  add_counts(h, romanize(text, table));
  if (!(h.total() > 0.0)) throw Error("histogram: no countable characters in text");
  return h;
}

CharHistogram build_histogram(const NamePairCorpus& corpus) {
  CharHistogram h{corpus.language.code()};
  for (const auto& p : corpus.pairs) add_counts(h, p.target);
  if (!(h.total() > 0.0)) {
    throw Error("histogram: corpus '" + corpus.language.code() + "' has no countable characters");
  }
  return h;
}

double sim_script(const CharHistogram& x, const CharHistogram& y) {
  if (!(x.total() > 0.0) || !(y.total() > 0.0)) throw Error("sim_script: empty histogram");
  return cosine_similarity(x.counts, y.counts);
}

double sim_gen(const Genealogy& x, const Genealogy& y) {
  if (ascii_lower(x.family) != ascii_lower(y.family)) return 0.0;
  return ascii_lower(x.genus) == ascii_lower(y.genus) ? 1.0 : 0.5;
}

void DistanceTable::set(const LanguageId& a, const LanguageId& b, const DistanceValues& values) {
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) throw Error("distance values must lie in [0, 1]");
  }
  values_[std::minmax(a, b)] = values;
}

const DistanceValues* DistanceTable::find(const LanguageId& a, const LanguageId& b) const {
  auto it = values_.find(std::minmax(a, b));
  return it == values_.end() ? nullptr : &it->second;
}

std::map<LanguageId, PhonemeInventory> load_inventories(const std::filesystem::path& path) {
  std::map<LanguageId, PhonemeInventory> out;
  for_each_tsv_line(path, [&](std::size_t line_no, const std::vector<std::string>& fields) {
    if (fields.size() != 2) throw ParseError(path.string(), line_no, "expected 'lang<TAB>phonemes'");
    PhonemeInventory inv{parse_language(path, line_no, fields[0]), {}};
    for (const auto& sym : split(fields[1], ' ')) {
      if (!sym.empty()) inv.phonemes.insert(sym);
    }
    if (inv.phonemes.empty()) throw ParseError(path.string(), line_no, "empty phoneme inventory");
    out[inv.language] = std::move(inv);
  });
  return out;
}

std::map<LanguageId, Genealogy> load_genealogy(const std::filesystem::path& path) {
  std::map<LanguageId, Genealogy> out;
  for_each_tsv_line(path, [&](std::size_t line_no, const std::vector<std::string>& fields) {
    if (fields.size() != 3) {
      throw ParseError(path.string(), line_no, "expected 'lang<TAB>family<TAB>genus'");
    }
    Genealogy g{parse_language(path, line_no, fields[0]), trim(fields[1]), trim(fields[2])};
    if (g.family.empty() || g.genus.empty()) {
      throw ParseError(path.string(), line_no, "family and genus must be nonempty");
    }
    out[g.language] = std::move(g);
  });
  return out;
}

DistanceTable load_distances(const std::filesystem::path& path) {
  DistanceTable table;
  for_each_tsv_line(path, [&](std::size_t line_no, const std::vector<std::string>& fields) {
    if (fields.size() != 2 + kNumDistances) {
      throw ParseError(path.string(), line_no,
                       "expected 2 language codes and " + std::to_string(kNumDistances) + " distances");
    }
    DistanceValues values{};
    for (std::size_t i = 0; i < kNumDistances; ++i) {
      char* end = nullptr;
      std::string field = trim(fields[2 + i]);
      values[i] = std::strtod(field.c_str(), &end);
      if (field.empty() || *end != '\0' || !(values[i] >= 0.0 && values[i] <= 1.0)) {
        throw ParseError(path.string(), line_no,
                         std::string(kDistanceNames[i]) + " distance must be a number in [0, 1]");
      }
    }
    table.set(parse_language(path, line_no, fields[0]), parse_language(path, line_no, fields[1]),
              values);
  });
  return table;
}

FeatureVector feature_vector(const LanguageId& x, const LanguageId& t,
                             const LanguageResources& resources,
                             std::array<bool, kNumFeatures>* imputed) {
  FeatureVector f = FeatureVector::Constant(kImputedFeature);
  std::array<bool, kNumFeatures> missing;
  missing.fill(true);

  auto lookup = [](const auto& map, const LanguageId& id) -> const auto* {
    auto it = map.find(id);
    return it == map.end() ? nullptr : &it->second;
  };

  if (auto *a = lookup(resources.inventories, x), *b = lookup(resources.inventories, t); a && b) {
    f[0] = sim_phon(*a, *b);
    missing[0] = false;
  }
  if (auto *a = lookup(resources.histograms, x), *b = lookup(resources.histograms, t); a && b) {
    f[1] = sim_script(*a, *b);
    missing[1] = false;
  }
  if (auto *a = lookup(resources.genealogy, x), *b = lookup(resources.genealogy, t); a && b) {
    f[2] = sim_gen(*a, *b);
    missing[2] = false;
  }
  const DistanceValues* d = resources.distances.find(x, t);
  if (d || x == t) {
    for (std::size_t i = 0; i < kNumDistances; ++i) {
      f[3 + static_cast<int>(i)] = d ? 1.0 - (*d)[i] : 1.0;
      missing[3 + i] = false;
    }
  }

  if (std::all_of(missing.begin(), missing.end(), [](bool m) { return m; })) {
    throw Error("no similarity resources for the pair (" + x.code() + ", " + t.code() + ")");
  }
  if (imputed) *imputed = missing;
  return f;
}

FeatureScaler FeatureScaler::fit(std::span<const FeatureVector> features) {
  FeatureScaler s;
  if (features.empty()) return s;
  s.min = features.front();
  s.max = features.front();
  for (const auto& f : features) {
    s.min = s.min.cwiseMin(f);
    s.max = s.max.cwiseMax(f);
  }
  return s;
}

FeatureVector FeatureScaler::apply(const FeatureVector& f) const {
  FeatureVector out;
  for (int i = 0; i < kNumFeatures; ++i) {
    const double range = max[i] - min[i];
    out[i] = range > 0.0 ? (f[i] - min[i]) / range : 0.0;
  }
  return out;
}

RankerWeights train_pairwise_ranker(std::span<const RankingGroup> groups,
                                    const RankerOptions& options) {
  std::vector<FeatureVector> diffs;
  for (const auto& g : groups) {
    if (g.features.size() != g.relevance.size()) {
      throw Error("ranking group has mismatched feature and relevance counts");
    }
    for (std::size_t a = 0; a < g.features.size(); ++a) {
      for (std::size_t b = 0; b < g.features.size(); ++b) {
        if (g.relevance[a] > g.relevance[b]) diffs.push_back(g.features[a] - g.features[b]);
      }
    }
  }

  RankerWeights result;
  result.options = options;
  FeatureVector& w = result.weights;
  std::vector<std::size_t> order(diffs.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(options.seed);
  const double shrink = 1.0 - options.learning_rate * options.l2;
  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t idx : order) {
      const FeatureVector& d = diffs[idx];
      const bool violated = w.dot(d) < 1.0;
      w *= shrink;
      if (violated) w += options.learning_rate * d;
    }
  }
  if (!w.allFinite()) throw Error("ranker training diverged");
  return result;
}

RankerWeights train_ranker(const std::map<LanguageId, std::map<LanguageId, double>>& oracle,
                           const LanguageResources& resources, const LanguageId& held_out,
                           const RankerOptions& options) {
  std::vector<RankingGroup> groups;
  for (const auto& [target, scores] : oracle) {
    if (target == held_out) continue;
    RankingGroup g;
    for (const auto& [candidate, relevance] : scores) {
      g.features.push_back(feature_vector(candidate, target, resources));
      g.relevance.push_back(relevance);
    }
    FeatureScaler scaler = FeatureScaler::fit(g.features);
    for (auto& f : g.features) f = scaler.apply(f);
    groups.push_back(std::move(g));
  }
  if (groups.size() < 2) {
    throw Error("learned ranker needs oracle rankings for at least 2 targets besides '" +
                held_out.code() + "'");
  }
  return train_pairwise_ranker(groups, options);
}

double sim_learned(const LanguageId& x, const LanguageId& t, const RankerWeights& weights,
                   const LanguageResources& resources, const FeatureScaler* scaler) {
  FeatureVector f = feature_vector(x, t, resources);
  if (scaler) f = scaler->apply(f);
  return weights.weights.dot(f);
}

void save_weights(const RankerWeights& weights, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  const auto& o = weights.options;
  out << "# surrotrans ranker weights\n"
      << "# epochs=" << o.epochs << " learning_rate=" << format_double_shortest(o.learning_rate)
      << " l2=" << format_double_shortest(o.l2) << " seed=" << o.seed << '\n';
  for (int i = 0; i < kNumFeatures; ++i) {
    out << kFeatureNames[i] << '\t' << format_double(weights.weights[i], 17) << '\n';
  }
  if (!out) throw IoError("error while writing " + path.string());
}

RankerWeights load_weights(const std::filesystem::path& path) {
  RankerWeights w;
  std::array<bool, kNumFeatures> seen{};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("# epochs=", 0) == 0) {
      unsigned long long epochs = 0, seed = 0;
      double lr = 0, l2 = 0;
      if (std::sscanf(line.c_str(), "# epochs=%llu learning_rate=%lf l2=%lf seed=%llu", &epochs, &lr,
                      &l2, &seed) == 4) {
        w.options = {static_cast<std::size_t>(epochs), lr, l2, seed};
      }
      continue;
    }
    if (line.empty() || line.front() == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() != 2) throw ParseError(path.string(), line_no, "expected 'feature<TAB>weight'");
    auto it = std::find(kFeatureNames.begin(), kFeatureNames.end(), fields[0]);
    if (it == kFeatureNames.end()) {
      throw ParseError(path.string(), line_no, "unknown feature '" + fields[0] + "'");
    }
    char* end = nullptr;
    double value = std::strtod(fields[1].c_str(), &end);
    if (fields[1].empty() || *end != '\0' || !std::isfinite(value)) {
      throw ParseError(path.string(), line_no, "invalid weight '" + fields[1] + "'");
    }
    auto idx = static_cast<std::size_t>(it - kFeatureNames.begin());
    w.weights[static_cast<int>(idx)] = value;
    seen[idx] = true;
  }
  for (int i = 0; i < kNumFeatures; ++i) {
    if (!seen[static_cast<std::size_t>(i)]) {
      throw ParseError(path.string(), 0, "missing weight for '" + std::string(kFeatureNames[i]) + "'");
    }
  }
  return w;
}

}  // namespace surrotrans
