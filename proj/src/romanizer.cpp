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

#include "surrotrans/romanizer.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace surrotrans {
namespace {

struct CodepointRange {
  char32_t first;
  char32_t last;
};

struct LatinFold {
  char32_t codepoint;
  const char* replacement;
};

struct BuiltinTableSource {
  const char* name;
  const char* tsv;
};

#include "builtin_tables.inc"
#include "unicode_ranges.inc"

template <std::size_t N>
bool in_ranges(const CodepointRange (&ranges)[N], char32_t cp) {
  auto it = std::upper_bound(std::begin(ranges), std::end(ranges), cp,
                             [](char32_t v, const CodepointRange& r) { return v < r.first; });
  if (it == std::begin(ranges)) return false;
  --it;
  return cp <= it->last;
}

const char* latin_fold(char32_t cp) {
  auto it = std::lower_bound(std::begin(kLatinFolds), std::end(kLatinFolds), cp,
                             [](const LatinFold& f, char32_t v) { return f.codepoint < v; });
  if (it != std::end(kLatinFolds) && it->codepoint == cp) return it->replacement;
  return nullptr;
}

bool is_replacement_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '\'' || c == '-';
}

bool is_whitespace(char32_t cp) {
  return cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\v' || cp == U'\f' ||
         in_ranges(kSpaceSeparators, cp);
}

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

char32_t parse_key(std::string_view key) {
  if (key.size() > 2 && (key[0] == 'U' || key[0] == 'u') && key[1] == '+') {
    std::string_view hex = key.substr(2);
    if (hex.empty() || hex.size() > 6) return 0;
    char32_t cp = 0;
    for (char c : hex) {
      int d;
      if (c >= '0' && c <= '9') d = c - '0';
      else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
      else return 0;
      cp = cp * 16 + static_cast<char32_t>(d);
    }
    return cp;
  }
  std::u32string decoded;
  if (!utf8::decode_all(key, decoded) || decoded.size() != 1) return 0;
  return decoded[0];
}

bool valid_codepoint(char32_t cp) {
  return cp != 0 && cp <= 0x10FFFF && !(cp >= 0xD800 && cp <= 0xDFFF);
}

}  // namespace

namespace utf8 {

char32_t decode(std::string_view text, std::size_t& pos) {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
  unsigned char lead = byte(pos);
  int len;
  char32_t cp;
  if (lead < 0x80) {
    ++pos;
    return lead;
  } else if ((lead & 0xE0) == 0xC0) {
    len = 2;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    len = 3;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    len = 4;
    cp = lead & 0x07;
  } else {
    ++pos;
    return 0xFFFD;
  }
  if (pos + len > text.size()) {
    ++pos;
    return 0xFFFD;
  }
  for (int i = 1; i < len; ++i) {
    unsigned char b = byte(pos + i);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++pos;
    return 0xFFFD;
  }
  pos += len;
  return cp;
}

bool decode_all(std::string_view text, std::u32string& out) {
  out.clear();
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t before = pos;
    char32_t cp = decode(text, pos);
    if (cp == 0xFFFD && !(pos - before == 3 && text.substr(before, 3) == "\xEF\xBF\xBD")) {
      return false;
    }
    out.push_back(cp);
  }
  return true;
}

void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

}  // namespace utf8

bool RomanizationTable::set(char32_t codepoint, std::string replacement) {
  for (char& c : replacement) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (!is_replacement_char(c)) {
      throw Error("replacement '" + replacement + "' contains a character outside [a-z0-9'-]");
    }
  }
  auto [it, inserted] = entries_.insert_or_assign(codepoint, std::move(replacement));
  return !inserted;
}

const std::string* RomanizationTable::find(char32_t codepoint) const {
  auto it = entries_.find(codepoint);
  return it == entries_.end() ? nullptr : &it->second;
}

void RomanizationTable::merge(const RomanizationTable& other) {
  for (const auto& [cp, rep] : other.entries_) entries_.insert_or_assign(cp, rep);
}

bool is_romanized_char(char c) {
  return is_replacement_char(c) || c == ' ' || c == kUnknownPlaceholder;
}

std::string romanize(std::string_view text, const RomanizationTable& table,
                     RomanizeStats* stats) {
  std::string raw;
  raw.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp = utf8::decode(text, pos);
    if (cp < 0x80) {
      char c = static_cast<char>(cp);
      if (c >= 'A' && c <= 'Z') {
        raw.push_back(static_cast<char>(c - 'A' + 'a'));
      } else if (is_replacement_char(c) || c == kUnknownPlaceholder) {
        raw.push_back(c);
      } else if (is_whitespace(cp) || (c > 0x20 && c < 0x7F)) {
        // ASCII punctuation separates words.
        raw.push_back(' ');
      } else if (stats) {
        ++stats->dropped;
      }
      continue;
    }
    if (const std::string* rep = table.find(cp)) {
      raw += *rep;
    } else if (const char* fold = latin_fold(cp)) {
      raw += fold;
    } else if (is_whitespace(cp)) {
      raw.push_back(' ');
    } else if (in_ranges(kCombiningMarks, cp) || in_ranges(kControlOrFormat, cp)) {
      if (stats) ++stats->dropped;
    } else {
      raw.push_back(kUnknownPlaceholder);
      if (stats) ++stats->unknown;
    }
  }

  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    if (c == ' ' && (out.empty() || out.back() == ' ')) continue;
    out.push_back(c);
  }
  if (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

RomanizationTable parse_table(std::string_view text, const std::string& source_name,
                              Diagnostics* diag) {
  Diagnostics& sink = diag ? *diag : default_diagnostics();
  RomanizationTable table(source_name);
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    auto fields = split(line, '\t');
    if (fields.size() != 2) {
      throw ParseError(source_name, line_no, "expected 'key<TAB>replacement'");
    }
    char32_t cp = parse_key(fields[0]);
    if (!valid_codepoint(cp)) {
      throw ParseError(source_name, line_no, "invalid codepoint literal '" + fields[0] + "'");
    }
    bool replaced;
    try {
      replaced = table.set(cp, trim(fields[1]));
    } catch (const Error& e) {
      throw ParseError(source_name, line_no, e.what());
    }
    if (replaced) {
      sink.warn(source_name + ":" + std::to_string(line_no) + ": duplicate key '" + fields[0] +
                "' overrides an earlier entry");
    }
    if (end == text.size()) break;
  }
  return table;
}

RomanizationTable load_table(const std::filesystem::path& path, Diagnostics* diag) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read romanization table " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_table(buf.str(), path.string(), diag);
}

RomanizationTable builtin_table(std::string_view name) {
  if (name == "none") return RomanizationTable("builtin:none");
  if (name == "all") {
    RomanizationTable all("builtin:all");
    for (const auto& src : kBuiltinTables) {
      all.merge(parse_table(src.tsv, std::string("builtin:") + src.name));
    }
    return all;
  }
  for (const auto& src : kBuiltinTables) {
    if (name == src.name) return parse_table(src.tsv, std::string("builtin:") + src.name);
  }
  throw Error("unknown built-in romanization table '" + std::string(name) + "'");
}

RomanizationTable resolve_table(std::string_view spec, Diagnostics* diag) {
  constexpr std::string_view kPrefix = "builtin:";
  if (spec.substr(0, kPrefix.size()) == kPrefix) return builtin_table(spec.substr(kPrefix.size()));
  return load_table(std::filesystem::path(spec), diag);
}

}  // namespace surrotrans
