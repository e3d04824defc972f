#!/usr/bin/env python3
"""Emit include/lingnet/detail/unicode_tables.hpp from Python's unicodedata."""
import os
import sys
import unicodedata

OUT = os.path.join(os.path.dirname(__file__), "..", "include", "lingnet", "detail", "unicode_tables.hpp")


def ranges(pred):
    out, start = [], None
    for c in range(0x110000):
        if pred(c):
            if start is None:
                start = c
        elif start is not None:
            out.append((start, c - 1))
            start = None
    if start is not None:
        out.append((start, 0x10FFFF))
    return out


def wrap(pairs):
    items = [f"{{0x{a:X},0x{b:X}}}," for a, b in pairs]
    return "\n".join("".join(items[i:i + 8]) for i in range(0, len(items), 8))


def table(name, rs):
    return f"inline constexpr Range {name}[] = {{\n" + wrap(rs) + "\n};\n"


def main():
    cat = lambda c: unicodedata.category(chr(c))
    parts = [
        "// Generated by tools/gen_unicode_tables.py from Unicode "
        + unicodedata.unidata_version + ". Do not edit.\n",
        "#pragma once\n#include <cstdint>\n\nnamespace lingnet::detail::ucd {\n\n",
        "struct Range { std::uint32_t lo, hi; };\n",
        "struct CaseMap { std::uint32_t from, to; };\n\n",
        f'inline constexpr const char* version = "{unicodedata.unidata_version}";\n\n',
        table("letter", ranges(lambda c: cat(c)[0] == "L")),
        table("upper", ranges(lambda c: cat(c) == "Lu")),
        table("digit", ranges(lambda c: cat(c) == "Nd")),
        table("mark", ranges(lambda c: cat(c)[0] == "M")),
        table("punct", ranges(lambda c: cat(c)[0] == "P")),
    ]
    pairs = []
    for c in range(0x110000):
        if 0xD800 <= c <= 0xDFFF:
            continue
        l = chr(c).lower()
        if len(l) == 1 and ord(l) != c:
            pairs.append((c, ord(l)))
    parts.append("inline constexpr CaseMap lower[] = {\n" + wrap(pairs) + "\n};\n\n")
    parts.append("}  // namespace lingnet::detail::ucd\n")
    with open(OUT, "w") as f:
        f.write("".join(parts))


if __name__ == "__main__":
    sys.exit(main())
