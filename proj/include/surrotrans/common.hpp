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

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace surrotrans {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. `line()` is 1-based, 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

/// Collects warnings. A default-constructed sink forwards to stderr; a
/// capturing sink keeps them for inspection.
class Diagnostics {
 public:
  Diagnostics() = default;
  explicit Diagnostics(std::ostream* stream) : stream_(stream) {}

  static Diagnostics capturing() {
    Diagnostics d(nullptr);
    d.capture_ = true;
    return d;
  }

  void warn(const std::string& message);
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::ostream* stream_ = nullptr;
  bool capture_ = false;
  std::vector<std::string> warnings_;
};

/// Warning sink used when callers pass none.
Diagnostics& default_diagnostics();

/// ISO-639-style language code: lowercase ASCII letters, digits, hyphen.
class LanguageId {
 public:
  LanguageId() = default;
  explicit LanguageId(std::string code);

  const std::string& code() const { return code_; }
  bool empty() const { return code_.empty(); }

  static bool is_valid(std::string_view code);

  friend bool operator==(const LanguageId&, const LanguageId&) = default;
  friend auto operator<=>(const LanguageId&, const LanguageId&) = default;

 private:
  std::string code_;
};

std::ostream& operator<<(std::ostream& os, const LanguageId& id);

/// Seeded generator with a platform-independent integer draw. std::shuffle and
/// std::uniform_int_distribution are implementation-defined, so every seeded
/// permutation in the library goes through this class instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform real in [0, 1) built from the top 53 bits.
  double uniform();

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// 64-bit FNV-1a, used for stable cache keys.
class Fnv1a {
 public:
  void update(std::string_view bytes);
  void update_separator() { update(std::string_view("\x1f", 1)); }
  std::uint64_t value() const { return hash_; }
  std::string hex() const;

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

/// Splits on a single character, keeping empty fields.
std::vector<std::string> split(std::string_view text, char sep);

/// Formats a double with `digits` significant digits ("%.*g").
std::string format_double(double value, int digits = 17);

/// Shortest "%g" rendering that parses back to the same double.
std::string format_double_shortest(double value);

}  // namespace surrotrans

template <>
struct std::hash<surrotrans::LanguageId> {
  std::size_t operator()(const surrotrans::LanguageId& id) const noexcept {
    return std::hash<std::string>{}(id.code());
  }
};
