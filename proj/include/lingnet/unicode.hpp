#pragma once

// UTF-8 decoding and the handful of character predicates the metrics need.
// Categories come from generated tables so they match a fixed Unicode version.

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>

#include "detail/unicode_tables.hpp"

namespace lingnet::uni {

namespace detail {

template <std::size_t N>
constexpr bool in(const lingnet::detail::ucd::Range (&t)[N], char32_t c) {
    auto it = std::upper_bound(std::begin(t), std::end(t), std::uint32_t(c),
                               [](std::uint32_t v, const auto& r) { return v < r.lo; });
    return it != std::begin(t) && std::uint32_t(c) <= (it - 1)->hi;
}

}  // namespace detail

inline bool is_letter(char32_t c) { return detail::in(lingnet::detail::ucd::letter, c); }
inline bool is_upper(char32_t c) { return detail::in(lingnet::detail::ucd::upper, c); }
inline bool is_digit(char32_t c) { return detail::in(lingnet::detail::ucd::digit, c); }
inline bool is_mark(char32_t c) { return detail::in(lingnet::detail::ucd::mark, c); }
inline bool is_punct(char32_t c) { return detail::in(lingnet::detail::ucd::punct, c); }

inline bool is_space(char32_t c) {
    if (c <= 0x20) return c == 0x20 || (c >= 0x09 && c <= 0x0D) || (c >= 0x1C && c <= 0x1F);
    switch (c) {
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
        return true;
    default:
        return c >= 0x2000 && c <= 0x200A;
    }
}

inline char32_t to_lower(char32_t c) {
    using lingnet::detail::ucd::lower;
    if (c < 0x80) return (c >= 'A' && c <= 'Z') ? c + 32 : c;
    auto it = std::lower_bound(std::begin(lower), std::end(lower), std::uint32_t(c),
                               [](const auto& m, std::uint32_t v) { return m.from < v; });
    return (it != std::end(lower) && it->from == c) ? char32_t(it->to) : c;
}

inline std::u32string to_lower(std::u32string_view s) {
    std::u32string out(s);
    for (auto& c : out) c = to_lower(c);
    return out;
}

// Lossy decode: each maximal invalid subpart becomes U+FFFD (same policy as
// the WHATWG decoder). Sets *lossy when a replacement happened.
inline std::u32string decode(std::string_view s, bool* lossy = nullptr) {
    std::u32string out;
    out.reserve(s.size());
    std::size_t i = 0, n = s.size();
    auto bad = [&] {
        out.push_back(0xFFFD);
        if (lossy) *lossy = true;
    };
    while (i < n) {
        unsigned char b = s[i];
        if (b < 0x80) { out.push_back(b); ++i; continue; }
        int need;
        char32_t cp;
        unsigned char lo = 0x80, hi = 0xBF;
        if (b >= 0xC2 && b <= 0xDF) { need = 1; cp = b & 0x1F; }
        else if (b >= 0xE0 && b <= 0xEF) {
            need = 2; cp = b & 0x0F;
            if (b == 0xE0) lo = 0xA0;
            if (b == 0xED) hi = 0x9F;
        } else if (b >= 0xF0 && b <= 0xF4) {
            need = 3; cp = b & 0x07;
            if (b == 0xF0) lo = 0x90;
            if (b == 0xF4) hi = 0x8F;
        } else { bad(); ++i; continue; }
        std::size_t j = i + 1;
        bool ok = true;
        for (int k = 0; k < need; ++k, ++j) {
            if (j >= n) { ok = false; break; }
            unsigned char c = s[j];
            if (c < lo || c > hi) { ok = false; break; }
            lo = 0x80; hi = 0xBF;
            cp = (cp << 6) | (c & 0x3F);
        }
        if (!ok) { bad(); i = j; continue; }
        out.push_back(cp);
        i = j;
    }
    return out;
}

inline void append(std::string& out, char32_t c) {
    if (c < 0x80) out.push_back(char(c));
    else if (c < 0x800) {
        out.push_back(char(0xC0 | (c >> 6)));
        out.push_back(char(0x80 | (c & 0x3F)));
    } else if (c < 0x10000) {
        out.push_back(char(0xE0 | (c >> 12)));
        out.push_back(char(0x80 | ((c >> 6) & 0x3F)));
        out.push_back(char(0x80 | (c & 0x3F)));
    } else {
        out.push_back(char(0xF0 | (c >> 18)));
        out.push_back(char(0x80 | ((c >> 12) & 0x3F)));
        out.push_back(char(0x80 | ((c >> 6) & 0x3F)));
        out.push_back(char(0x80 | (c & 0x3F)));
    }
}

inline std::string encode(std::u32string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char32_t c : s) append(out, c);
    return out;
}

inline std::string sanitize(std::string_view s, bool* lossy = nullptr) {
    return encode(decode(s, lossy));
}

inline std::size_t length(std::string_view s) {
    std::size_t n = 0;
    for (unsigned char c : s) n += (c & 0xC0) != 0x80;
    return n;
}

inline std::u32string_view strip(std::u32string_view s) {
    std::size_t i = 0, j = s.size();
    while (i < j && is_space(s[i])) ++i;
    while (j > i && is_space(s[j - 1])) --j;
    return s.substr(i, j - i);
}

inline std::string lower_utf8(std::string_view s) { return encode(to_lower(decode(s))); }

}  // namespace lingnet::uni
