#!/usr/bin/env python3
# Copyright 2026 The surrotrans Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates src/unicode_ranges.inc from Python's unicodedata.

Emits sorted codepoint ranges for combining marks (Mn/Mc/Me), format and
control characters (Cc/Cf), space separators (Zs), and a Latin diacritic
folding table for U+00C0..U+024F.
"""
import sys
import unicodedata

SPECIAL_FOLDS = {
    "ß": "ss", "ẞ": "ss", "æ": "ae", "Æ": "ae", "œ": "oe", "Œ": "oe",
    "ø": "o", "Ø": "o", "đ": "d", "Đ": "d", "ł": "l", "Ł": "l",
    "þ": "th", "Þ": "th", "ð": "d", "Ð": "d", "ı": "i", "ħ": "h", "Ħ": "h",
    "ŋ": "ng", "Ŋ": "ng", "ĸ": "q", "ŧ": "t", "Ŧ": "t", "ƒ": "f",
}


def ranges(pred):
    out, start = [], None
    for cp in range(0x110000):
        ok = pred(cp)
        if ok and start is None:
            start = cp
        elif not ok and start is not None:
            out.append((start, cp - 1))
            start = None
    if start is not None:
        out.append((start, 0x10FFFF))
    return out


def cat(cp):
    return unicodedata.category(chr(cp))


def emit_ranges(name, rs, f):
    f.write(f"inline constexpr CodepointRange {name}[] = {{\n")
    for a, b in rs:
        f.write(f"    {{0x{a:04X}, 0x{b:04X}}},\n")
    f.write("};\n\n")


def latin_fold():
    rows = []
    for cp in range(0x00C0, 0x0250):
        ch = chr(cp)
        if ch in SPECIAL_FOLDS:
            rows.append((cp, SPECIAL_FOLDS[ch]))
            continue
        base = "".join(c for c in unicodedata.normalize("NFKD", ch) if ord(c) < 128)
        base = base.lower()
        if base and base.isalpha():
            rows.append((cp, base))
    return rows


def main(path):
    with open(path, "w", encoding="utf-8") as f:
        f.write("// Generated by tools/gen/gen_unicode_ranges.py. Do not edit.\n\n")
        emit_ranges("kCombiningMarks", ranges(lambda cp: cat(cp) in ("Mn", "Mc", "Me")), f)
        emit_ranges("kControlOrFormat", ranges(lambda cp: cat(cp) in ("Cc", "Cf")), f)
        emit_ranges("kSpaceSeparators", ranges(lambda cp: cat(cp) == "Zs"), f)
        f.write("inline constexpr LatinFold kLatinFolds[] = {\n")
        for cp, s in latin_fold():
            f.write(f'    {{0x{cp:04X}, "{s}"}},\n')
        f.write("};\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/unicode_ranges.inc")
