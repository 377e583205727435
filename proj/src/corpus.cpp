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

#include "surrotrans/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

namespace surrotrans {

std::string NamePairCorpus::digest() const {
  Fnv1a h;
  h.update(language.code());
  for (const auto& p : pairs) {
    h.update_separator();
    h.update(p.source);
    h.update("\t");
    h.update(p.target);
  }
  return h.hex();
}

NamePairCorpus NamePairCorpus::swapped() const {
  NamePairCorpus out{language, {}};
  out.pairs.reserve(pairs.size());
  for (const auto& p : pairs) out.pairs.push_back({p.target, p.source});
  return out;
}

NamePairCorpus load_corpus(const std::filesystem::path& path, const LanguageId& language,
                           const RomanizationTable& table, Diagnostics* diag) {
  Diagnostics& sink = diag ? *diag : default_diagnostics();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read corpus " + path.string());

  NamePairCorpus corpus{language, {}};
  std::string line;
  std::size_t line_no = 0;
  std::size_t dropped = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() != 2) {
      throw ParseError(path.string(), line_no,
                       "expected 2 tab-separated fields, found " + std::to_string(fields.size()));
    }
    NamePair pair{romanize(fields[0], table), romanize(fields[1], table)};
    if (pair.source.empty() || pair.target.empty()) {
      ++dropped;
      continue;
    }
    corpus.pairs.push_back(std::move(pair));
  }
  if (in.bad()) throw IoError("error while reading " + path.string());
  if (dropped > 0) {
    sink.warn(path.string() + ": dropped " + std::to_string(dropped) +
              " line(s) empty after romanization");
  }
  return corpus;
}

std::vector<NamePairCorpus> filter_min_pairs(std::vector<NamePairCorpus> corpora,
                                             std::size_t min_pairs) {
  std::erase_if(corpora, [&](const NamePairCorpus& c) { return c.size() < min_pairs; });
  return corpora;
}

CorpusSplit split_corpus(const NamePairCorpus& corpus, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error("train fraction must lie in (0, 1)");
  }
  const std::size_t n = corpus.size();
  if (n < 2) throw Error("corpus '" + corpus.language.code() + "' has fewer than 2 pairs");

  // The epsilon keeps representation error (10 * 0.8 = 8.000...01) out of the ceiling.
  auto n_train = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * train_fraction - 1e-9));
  if (n_train >= n) {
    throw Error("split of " + std::to_string(n) + " pairs at fraction " +
                format_double(train_fraction, 6) + " leaves the test set empty");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);

  CorpusSplit split{{corpus.language, {}}, {corpus.language, {}}, seed, train_fraction};
  split.train.pairs.reserve(n_train);
  split.test.pairs.reserve(n - n_train);
  for (std::size_t i = 0; i < n; ++i) {
    auto& dst = i < n_train ? split.train.pairs : split.test.pairs;
    dst.push_back(corpus.pairs[order[i]]);
  }
  return split;
}

std::vector<NamePairCorpus> load_corpora_dir(const std::filesystem::path& dir,
                                             const RomanizationTable& table, Diagnostics* diag) {
  if (!std::filesystem::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".tsv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<NamePairCorpus> out;
  for (const auto& f : files) {
    std::string code = f.stem().string();
    if (!LanguageId::is_valid(code)) {
      (diag ? *diag : default_diagnostics()).warn("skipping " + f.string() + ": not a language code");
      continue;
    }
    out.push_back(load_corpus(f, LanguageId(code), table, diag));
  }
  return out;
}

}  // namespace surrotrans
