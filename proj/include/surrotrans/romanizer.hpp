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

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "surrotrans/common.hpp"

namespace surrotrans {

/// Codepoint-to-Latin mapping table. Replacements are restricted to
/// [a-z0-9'-] and may be empty (the codepoint is dropped).
class RomanizationTable {
 public:
  RomanizationTable() = default;
  explicit RomanizationTable(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  std::size_t size() const { return entries_.size(); }

  /// Inserts or overrides. Returns true when an existing entry was replaced.
  /// Throws Error if the replacement contains a character outside [a-z0-9'-].
  bool set(char32_t codepoint, std::string replacement);

  const std::string* find(char32_t codepoint) const;

  /// Entries of `other` override entries of this table.
  void merge(const RomanizationTable& other);

  const std::map<char32_t, std::string>& entries() const { return entries_; }

 private:
  std::string name_;
  std::map<char32_t, std::string> entries_;
};

/// Placeholder emitted for codepoints the table cannot map.
inline constexpr char kUnknownPlaceholder = '?';

struct RomanizeStats {
  std::size_t unknown = 0;  // codepoints replaced by '?'
  std::size_t dropped = 0;  // combining marks and control characters
};

/// Maps arbitrary text to lowercase Latin. ASCII letters are lowercased
/// without consulting the table; the table is consulted next, then a built-in
/// Latin diacritic fold; combining marks and controls are deleted; anything
/// else becomes '?'. Whitespace is collapsed to single spaces and trimmed.
std::string romanize(std::string_view text, const RomanizationTable& table,
                     RomanizeStats* stats = nullptr);

/// True for characters romanize() may emit.
bool is_romanized_char(char c);

/// Parses `key<TAB>replacement` lines. A key is a single character or a
/// `U+XXXX` literal; `#` lines are comments. Later keys override earlier ones
/// with a warning.
RomanizationTable parse_table(std::string_view text, const std::string& source_name,
                              Diagnostics* diag = nullptr);

RomanizationTable load_table(const std::filesystem::path& path, Diagnostics* diag = nullptr);

/// Built-in tables: "cyrillic", "greek", "armenian", "devanagari", plus "all"
/// (their union) and "none" (empty).
RomanizationTable builtin_table(std::string_view name);

/// Resolves "builtin:<name>" or a file path.
RomanizationTable resolve_table(std::string_view spec, Diagnostics* diag = nullptr);

namespace utf8 {

/// Decodes one codepoint starting at `pos`, advancing it. Invalid sequences
/// decode to U+FFFD and consume one byte.
char32_t decode(std::string_view text, std::size_t& pos);

/// Decodes a complete string; returns false on any invalid sequence.
bool decode_all(std::string_view text, std::u32string& out);

void append(std::string& out, char32_t codepoint);

}  // namespace utf8

}  // namespace surrotrans
