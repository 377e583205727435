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

#include "surrotrans/romanizer.hpp"
#include "temp_dir.hpp"

using namespace surrotrans;

namespace {

const RomanizationTable& all_tables() {
  static const RomanizationTable t = builtin_table("all");
  return t;
}

}  // namespace

TEST_CASE("cyrillic names romanize by table lookup") {
  const RomanizationTable cyr = builtin_table("cyrillic");
  REQUIRE(cyr.find(U'а'));
  REQUIRE(cyr.find(U'н'));
  CHECK(*cyr.find(U'а') + *cyr.find(U'н') + *cyr.find(U'н') + *cyr.find(U'а') == "anna");
  CHECK(romanize("Анна", cyr) == "anna");
  CHECK(romanize("Москва", cyr) == "moskva");
}

TEST_CASE("latin text is a fixed point after lowercasing") {
  CHECK(romanize("anna", RomanizationTable()) == "anna");
  CHECK(romanize("anna", all_tables()) == "anna");
  CHECK(romanize("O'Neil-Smith", RomanizationTable()) == "o'neil-smith");
  CHECK(romanize("", all_tables()).empty());
}

TEST_CASE("whitespace collapses and punctuation separates") {
  CHECK(romanize("  New   York\t", all_tables()) == "new york");
  CHECK(romanize("St. Louis", all_tables()) == "st louis");
}

TEST_CASE("diacritics fold and unknown codepoints become placeholders") {
  CHECK(romanize("José Müller", all_tables()) == "jose muller");
  RomanizeStats stats;
  CHECK(romanize("東京", all_tables(), &stats) == "??");
  CHECK(stats.unknown == 2);
  RomanizeStats marks;
  CHECK(romanize("áb", all_tables(), &marks) == "ab");
  CHECK(marks.dropped == 1);
}

TEST_CASE("greek, armenian and devanagari tables") {
  CHECK(romanize("Αθήνα", all_tables()) == romanize("αθηνα", all_tables()));
  CHECK_FALSE(romanize("Αθήνα", all_tables()).empty());
  CHECK(romanize("Հայաստան", all_tables()).find('?') == std::string::npos);
  CHECK(romanize("नमस्ते", all_tables()).find('?') == std::string::npos);
}

TEST_CASE("romanize is idempotent and closed over its alphabet") {
  const char* samples[] = {"Анна Каренина", "Ελένη", "Ἀθῆναι", "Ярослав", "Ünïcödé ÀÉÎ",
                           "東京 tower", "a​b", "Ք", "क़ीमत", "tab\there", "x--y''z"};
  for (const char* s : samples) {
    const std::string once = romanize(s, all_tables());
    CHECK(romanize(once, all_tables()) == once);
    for (char c : once) CHECK(is_romanized_char(c));
    CHECK(once == romanize(s, all_tables()));
  }
}

TEST_CASE("table files") {
  testing::TempDir dir;
  SUBCASE("single character keys") {
    auto t = load_table(dir.write("t.tsv", "н\tn\n"));
    REQUIRE(t.find(0x043D));
    CHECK(*t.find(0x043D) == "n");
  }
  SUBCASE("later keys win with one warning") {
    Diagnostics diag = Diagnostics::capturing();
    auto t = load_table(dir.write("t.tsv", "а\ta\nа\tx\n"), &diag);
    CHECK(*t.find(U'а') == "x");
    CHECK(diag.warnings().size() == 1);
  }
  SUBCASE("codepoint literals and comments") {
    auto t = parse_table("# comment\nU+0436\tzh\n\nU+044C\t\n", "inline");
    CHECK(*t.find(0x0436) == "zh");
    CHECK(t.find(0x044C)->empty());
  }
  SUBCASE("malformed lines report their line number") {
    try {
      parse_table("a\tb\nU+ZZZZ\tx\n", "bad.tsv");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_table("ab\tx\n", "t"), ParseError);
    CHECK_THROWS_AS(parse_table("a\tB!\n", "t"), ParseError);
    CHECK_THROWS_AS(parse_table("a\n", "t"), ParseError);
  }
  SUBCASE("missing file") { CHECK_THROWS_AS(load_table(dir.path() / "nope.tsv"), IoError); }
}

TEST_CASE("table set validates replacements") {
  RomanizationTable t;
  CHECK_FALSE(t.set(U'ж', "zh"));
  CHECK(t.set(U'ж', "ZH"));
  CHECK(*t.find(U'ж') == "zh");
  CHECK_THROWS_AS(t.set(U'ж', "z h"), Error);
}

TEST_CASE("builtin table names") {
  CHECK(builtin_table("none").size() == 0);
  CHECK(builtin_table("all").size() > builtin_table("greek").size());
  CHECK_THROWS_AS(builtin_table("klingon"), Error);
  CHECK(resolve_table("builtin:cyrillic").size() == builtin_table("cyrillic").size());
}

TEST_CASE("utf8 decoding") {
  std::u32string out;
  CHECK(utf8::decode_all("aж€😀", out));
  CHECK(out == U"aж€😀");
  CHECK_FALSE(utf8::decode_all("\xff", out));
  std::string s;
  utf8::append(s, U'€');
  CHECK(s == "€");
}
