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

#include "surrotrans/corpus.hpp"
#include "temp_dir.hpp"

using namespace surrotrans;

namespace {

NamePairCorpus numbered(std::size_t n) {
  NamePairCorpus c{LanguageId("xx"), {}};
  for (std::size_t i = 0; i < n; ++i) c.pairs.push_back({"s" + std::to_string(i), "t" + std::to_string(i)});
  return c;
}

}  // namespace

TEST_CASE("load_corpus romanizes both sides") {
  testing::TempDir dir;
  const auto cyr = builtin_table("cyrillic");
  auto c = load_corpus(dir.write("rus.tsv", "Anna\tАнна\n"), LanguageId("rus"), cyr);
  REQUIRE(c.size() == 1);
  CHECK(c.pairs[0] == NamePair{"anna", "anna"});
  CHECK(c.language == LanguageId("rus"));
}

TEST_CASE("load_corpus edge cases") {
  testing::TempDir dir;
  const auto table = builtin_table("all");
  CHECK(load_corpus(dir.write("e.tsv", ""), LanguageId("e"), table).empty());
  auto c = load_corpus(dir.write("c.tsv", "# header\n\nA\tB\r\nC\tD\n"), LanguageId("c"), table);
  CHECK(c.pairs == std::vector<NamePair>{{"a", "b"}, {"c", "d"}});

  try {
    load_corpus(dir.write("bad.tsv", "Anna\n"), LanguageId("b"), table);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
  CHECK_THROWS_AS(load_corpus(dir.write("bad3.tsv", "a\tb\tc\n"), LanguageId("b"), table), ParseError);
  CHECK_THROWS_AS(load_corpus(dir.path() / "missing.tsv", LanguageId("m"), table), IoError);

  Diagnostics diag = Diagnostics::capturing();
  auto dropped = load_corpus(dir.write("d.tsv", "Anna\t...\nIvan\tИван\n"), LanguageId("d"), table, &diag);
  CHECK(dropped.size() == 1);
  CHECK(diag.warnings().size() == 1);
}

TEST_CASE("duplicate pairs are kept") {
  testing::TempDir dir;
  auto c = load_corpus(dir.write("d.tsv", "a\tb\na\tb\n"), LanguageId("d"), RomanizationTable());
  CHECK(c.size() == 2);
}

TEST_CASE("loaded corpora contain only romanized characters") {
  testing::TempDir dir;
  auto c = load_corpus(dir.write("m.tsv", "Zoë O'Hara\tЗоя О'Хара\nÅse\t東京\n"), LanguageId("m"),
                       builtin_table("all"));
  for (const auto& p : c.pairs) {
    for (char ch : p.source + p.target) {
      CHECK(is_romanized_char(ch));
      CHECK_FALSE((ch >= 'A' && ch <= 'Z'));
    }
  }
}

TEST_CASE("filter_min_pairs keeps corpora at the threshold") {
  std::vector<NamePairCorpus> corpora = {numbered(250), numbered(199), numbered(200)};
  auto kept = filter_min_pairs(corpora, 200);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].size() == 250);
  CHECK(kept[1].size() == 200);
  CHECK(filter_min_pairs(corpora, 0).size() == 3);
  CHECK(filter_min_pairs({}, 5).empty());
}

TEST_CASE("filter_min_pairs is idempotent and monotone") {
  std::vector<NamePairCorpus> corpora;
  for (std::size_t n : {0, 3, 7, 7, 12, 1, 30}) corpora.push_back(numbered(n));
  for (std::size_t min = 0; min <= 31; ++min) {
    auto once = filter_min_pairs(corpora, min);
    auto twice = filter_min_pairs(once, min);
    CHECK(once.size() == twice.size());
    CHECK(filter_min_pairs(corpora, min + 1).size() <= once.size());
  }
}

TEST_CASE("split_corpus ceiling rule and determinism") {
  auto s = split_corpus(numbered(10), 0.8, 7);
  CHECK(s.train.size() == 8);
  CHECK(s.test.size() == 2);
  auto again = split_corpus(numbered(10), 0.8, 7);
  CHECK(s.train.pairs == again.train.pairs);
  CHECK(s.test.pairs == again.test.pairs);
  CHECK_THROWS_AS(split_corpus(numbered(5), 0.9, 1), Error);
  CHECK_THROWS_AS(split_corpus(numbered(1), 0.5, 1), Error);
  CHECK_THROWS_AS(split_corpus(numbered(10), 0.0, 1), Error);
  CHECK_THROWS_AS(split_corpus(numbered(10), 1.0, 1), Error);
}

TEST_CASE("split_corpus partitions the corpus") {
  for (std::size_t n = 2; n <= 40; n += 3) {
    for (double f : {0.1, 0.5, 0.8}) {
      NamePairCorpus c = numbered(n);
      c.pairs.push_back(c.pairs.front());  // a duplicate must survive too
      CorpusSplit s;
      try {
        s = split_corpus(c, f, n);
      } catch (const Error&) {
        continue;  // fraction leaves an empty side
      }
      CHECK(s.train.size() + s.test.size() == c.size());
      auto all = s.train.pairs;
      all.insert(all.end(), s.test.pairs.begin(), s.test.pairs.end());
      auto expected = c.pairs;
      std::sort(all.begin(), all.end());
      std::sort(expected.begin(), expected.end());
      CHECK(all == expected);
    }
  }
}

TEST_CASE("digest and swap") {
  auto a = numbered(3), b = numbered(3);
  CHECK(a.digest() == b.digest());
  b.pairs[1].target = "other";
  CHECK(a.digest() != b.digest());
  CHECK(a.swapped().pairs[0] == NamePair{"t0", "s0"});
  NamePairCorpus renamed = a;
  renamed.language = LanguageId("yy");
  CHECK(renamed.digest() != a.digest());
}

TEST_CASE("corpora directories load sorted by stem") {
  testing::TempDir dir;
  dir.write("ukr.tsv", "a\tb\n");
  dir.write("ell.tsv", "c\td\n");
  dir.write("notes.txt", "ignored\n");
  auto all = load_corpora_dir(dir.path(), RomanizationTable());
  REQUIRE(all.size() == 2);
  CHECK(all[0].language == LanguageId("ell"));
  CHECK(all[1].language == LanguageId("ukr"));
}
