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

"""Writes data/tables/*.tsv and src/builtin_tables.inc.

Each table lists lowercase letters with their romanization; uppercase
counterparts (via str.upper) are added with the same replacement.
"""
import pathlib
import sys

CYRILLIC = """а a|б b|в v|г g|д d|е e|ё yo|ж zh|з z|и i|й y|к k|л l|м m|н n|о o|п p|р r|с s|т t|у u|ф f|х kh|ц ts|ч ch|ш sh|щ shch|ъ |ы y|ь |э e|ю yu|я ya|і i|ї yi|є ye|ґ g|ў u|ј j|љ lj|њ nj|ћ c|ђ dj|џ dz|ѓ gj|ќ kj|ѕ dz"""

GREEK = """α a|β v|γ g|δ d|ε e|ζ z|η i|θ th|ι i|κ k|λ l|μ m|ν n|ξ x|ο o|π p|ρ r|σ s|ς s|τ t|υ y|φ f|χ ch|ψ ps|ω o|ά a|έ e|ή i|ί i|ό o|ύ y|ώ o|ϊ i|ϋ y|ΐ i|ΰ y"""

ARMENIAN = """ա a|բ b|գ g|դ d|ե e|զ z|է e|ը y|թ t|ժ zh|ի i|լ l|խ kh|ծ ts|կ k|հ h|ձ dz|ղ gh|ճ ch|մ m|յ y|ն n|շ sh|ո o|չ ch|պ p|ջ j|ռ r|ս s|վ v|տ t|ր r|ց ts|ւ v|փ p|ք k|օ o|ֆ f|և ev"""

DEVANAGARI = """अ a|आ aa|इ i|ई ii|उ u|ऊ uu|ऋ ri|ए e|ऐ ai|ओ o|औ au|ा aa|ि i|ी ii|ु u|ू uu|ृ ri|े e|ै ai|ो o|ौ au|् |ं n|ः h|ँ n|़ |क k|ख kh|ग g|घ gh|ङ n|च ch|छ chh|ज j|झ jh|ञ n|ट t|ठ th|ड d|ढ dh|ण n|त t|थ th|द d|ध dh|न n|प p|फ ph|ब b|भ bh|म m|य y|र r|ल l|व v|श sh|ष sh|स s|ह h|० 0|१ 1|२ 2|३ 3|४ 4|५ 5|६ 6|७ 7|८ 8|९ 9"""

TABLES = {
    "cyrillic": CYRILLIC,
    "greek": GREEK,
    "armenian": ARMENIAN,
    "devanagari": DEVANAGARI,
}


def rows(spec):
    out = []
    seen = set()
    for item in spec.split("|"):
        ch, _, rep = item.partition(" ")
        for c in (ch, ch.upper()):
            if len(c) == 1 and c not in seen:
                seen.add(c)
                out.append((c, rep))
    return out


def main(root):
    root = pathlib.Path(root)
    inc = ["// Generated by tools/gen/gen_builtin_tables.py from data/tables. Do not edit.\n"]
    inc.append("inline constexpr BuiltinTableSource kBuiltinTables[] = {\n")
    for name, spec in TABLES.items():
        text = f"# builtin:{name}\n" + "".join(f"{c}\t{r}\n" for c, r in rows(spec))
        (root / "data" / "tables" / f"{name}.tsv").write_text(text, encoding="utf-8")
        inc.append(f'    {{"{name}", R"TSV({text})TSV"}},\n')
    inc.append("};\n")
    (root / "src" / "builtin_tables.inc").write_text("".join(inc), encoding="utf-8")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else ".")
