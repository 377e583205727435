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

#include "surrotrans/common.hpp"

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <limits>

namespace surrotrans {

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : Error(line > 0 ? source + ":" + std::to_string(line) + ": " + what : source + ": " + what),
      line_(line) {}

void Diagnostics::warn(const std::string& message) {
  warnings_.push_back(message);
  if (capture_) return;
  std::ostream& os = stream_ ? *stream_ : std::cerr;
  os << "warning: " << message << '\n';
}

Diagnostics& default_diagnostics() {
  static Diagnostics diag;
  return diag;
}

bool LanguageId::is_valid(std::string_view code) {
  if (code.empty()) return false;
  for (char c : code) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-';
    if (!ok) return false;
  }
  return true;
}

LanguageId::LanguageId(std::string code) : code_(std::move(code)) {
  if (!is_valid(code_)) throw Error("invalid language code '" + code_ + "'");
}

std::ostream& operator<<(std::ostream& os, const LanguageId& id) { return os << id.code(); }

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error("Rng::below: bound must be positive");
  // Rejection sampling keeps the draw unbiased and identical on every platform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

void Fnv1a::update(std::string_view bytes) {
  for (unsigned char c : bytes) {
    hash_ ^= c;
    hash_ *= 0x100000001b3ULL;
  }
}

std::string Fnv1a::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash_));
  return buf;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(text.substr(start));
      break;
    }
    out.emplace_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::string format_double(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return buf;
}

std::string format_double_shortest(double value) {
  for (int digits = 1; digits < 17; ++digits) {
    std::string s = format_double(value, digits);
    if (std::strtod(s.c_str(), nullptr) == value) return s;
  }
  return format_double(value, 17);
}

}  // namespace surrotrans
