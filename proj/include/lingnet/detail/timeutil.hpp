#pragma once

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lingnet::detail {

// Days since 1970-01-01 for a proleptic Gregorian date (H. Hinnant's algorithm).
constexpr std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = unsigned(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + std::int64_t(doe) - 719468;
}

struct Civil { std::int64_t y; unsigned m, d, hh, mm, ss; unsigned wday; };

constexpr Civil civil_from_epoch(std::int64_t t) {
    std::int64_t days = t >= 0 ? t / 86400 : (t - 86399) / 86400;
    std::int64_t secs = t - days * 86400;
    unsigned wday = unsigned(((days % 7) + 11) % 7);  // 1970-01-01 was a Thursday (4)
    std::int64_t z = days + 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = unsigned(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp < 10 ? mp + 3 : mp - 9;
    return {std::int64_t(yoe) + era * 400 + (m <= 2), m, d, unsigned(secs / 3600),
            unsigned(secs / 60 % 60), unsigned(secs % 60), wday};
}

inline bool valid_civil(std::int64_t y, unsigned m, unsigned d) {
    static constexpr unsigned mdays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m < 1 || m > 12 || d < 1) return false;
    bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    return d <= mdays[m - 1] + (m == 2 && leap);
}

inline const char* const kMonths[] = {"jan", "feb", "mar", "apr", "may", "jun",
                                      "jul", "aug", "sep", "oct", "nov", "dec"};
inline const char* const kMonthNames[] = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                          "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
inline const char* const kDayNames[] = {"Sun", "Mon", "Tue", "Wed", "Thu", "Fri", "Sat"};

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit((unsigned char)c)) return false;
    return true;
}

inline int to_int(std::string_view s) {
    int v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return v;
}

// RFC 2822 date, tolerant of a missing weekday, a trailing "(TZ)" comment and
// day/month in either order. A missing zone is read as UTC.
inline std::optional<std::int64_t> parse_rfc2822(std::string_view s) {
    std::vector<std::string> tok;
    std::string cur;
    int paren = 0;
    for (char c : s) {
        if (c == '(') ++paren;
        if (paren) {
            if (c == ')') --paren;
            continue;
        }
        if (std::isspace((unsigned char)c) || c == ',') {
            if (!cur.empty()) tok.push_back(cur), cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) tok.push_back(cur);
    std::size_t i = 0;
    auto lower = [](std::string v) {
        for (auto& c : v) c = char(std::tolower((unsigned char)c));
        return v;
    };
    if (i < tok.size() && !tok[i].empty() && std::isalpha((unsigned char)tok[i][0])) {
        std::string w = lower(tok[i]).substr(0, 3);
        bool month = false;
        for (auto m : kMonths) month |= w == m;
        if (!month) ++i;
    }
    if (tok.size() < i + 4) return std::nullopt;
    auto month_of = [&](const std::string& t) -> int {
        std::string w = lower(t).substr(0, 3);
        for (int k = 0; k < 12; ++k)
            if (w == kMonths[k]) return k + 1;
        return 0;
    };
    int day, mon;
    if (all_digits(tok[i]) && (mon = month_of(tok[i + 1]))) day = to_int(tok[i]);
    else if ((mon = month_of(tok[i])) && all_digits(tok[i + 1])) day = to_int(tok[i + 1]);
    else return std::nullopt;
    if (!all_digits(tok[i + 2]) || tok[i + 2].size() > 4) return std::nullopt;
    std::int64_t year = to_int(tok[i + 2]);
    if (tok[i + 2].size() <= 2) year += year > 68 ? 1900 : 2000;
    if (year < 1000) return std::nullopt;
    int hh = 0, mm = 0, ss = 0;
    {
        const std::string& t = tok[i + 3];
        std::vector<std::string> f;
        std::string p;
        for (char c : t) {
            if (c == ':') f.push_back(p), p.clear();
            else p += c;
        }
        f.push_back(p);
        if (f.size() < 2 || f.size() > 3) return std::nullopt;
        for (auto& x : f)
            if (!all_digits(x) || x.size() > 2) return std::nullopt;
        hh = to_int(f[0]);
        mm = to_int(f[1]);
        if (f.size() == 3) ss = to_int(f[2]);
    }
    if (!valid_civil(year, unsigned(mon), unsigned(day)) || hh > 23 || mm > 59 || ss > 61)
        return std::nullopt;
    std::int64_t offset = 0;
    if (tok.size() > i + 4) {
        std::string z = tok[i + 4];
        if ((z[0] == '+' || z[0] == '-') && z.size() == 5 && all_digits(z.substr(1))) {
            int v = to_int(z.substr(1));
            offset = (v / 100) * 3600 + (v % 100) * 60;
            if (z[0] == '-') offset = -offset;
        } else {
            static const std::pair<const char*, int> names[] = {
                {"ut", 0}, {"utc", 0}, {"gmt", 0}, {"z", 0}, {"est", -5}, {"edt", -4},
                {"cst", -6}, {"cdt", -5}, {"mst", -7}, {"mdt", -6}, {"pst", -8}, {"pdt", -7}};
            std::string zl = lower(z);
            for (auto& [n, h] : names)
                if (zl == n) offset = h * 3600;
        }
    }
    return days_from_civil(year, unsigned(mon), unsigned(day)) * 86400 + hh * 3600 + mm * 60 + ss - offset;
}

// ISO-8601 subset: YYYY-MM-DD[(T| )HH:MM[:SS[.fff]]][Z|+HH:MM|+HHMM]
inline std::optional<std::int64_t> parse_iso8601(std::string_view s) {
    while (!s.empty() && std::isspace((unsigned char)s.front())) s.remove_prefix(1);
    while (!s.empty() && std::isspace((unsigned char)s.back())) s.remove_suffix(1);
    auto digits = [&](std::size_t at, std::size_t n) {
        return at + n <= s.size() && all_digits(s.substr(at, n));
    };
    if (!digits(0, 4) || s.size() < 10 || s[4] != '-' || !digits(5, 2) || s[7] != '-' || !digits(8, 2))
        return std::nullopt;
    int y = to_int(s.substr(0, 4)), mo = to_int(s.substr(5, 2)), d = to_int(s.substr(8, 2));
    if (!valid_civil(y, unsigned(mo), unsigned(d))) return std::nullopt;
    std::int64_t t = days_from_civil(y, unsigned(mo), unsigned(d)) * 86400;
    std::size_t p = 10;
    if (p == s.size()) return t;
    if (s[p] != 'T' && s[p] != ' ') return std::nullopt;
    ++p;
    if (!digits(p, 2) || p + 2 >= s.size() || s[p + 2] != ':' || !digits(p + 3, 2)) return std::nullopt;
    int hh = to_int(s.substr(p, 2)), mm = to_int(s.substr(p + 3, 2)), ss = 0;
    p += 5;
    if (p < s.size() && s[p] == ':') {
        if (!digits(p + 1, 2)) return std::nullopt;
        ss = to_int(s.substr(p + 1, 2));
        p += 3;
        if (p < s.size() && (s[p] == '.' || s[p] == ',')) {
            std::size_t q = p + 1;
            while (q < s.size() && std::isdigit((unsigned char)s[q])) ++q;
            if (q == p + 1) return std::nullopt;
            p = q;
        }
    }
    if (hh > 23 || mm > 59 || ss > 59) return std::nullopt;
    t += hh * 3600 + mm * 60 + ss;
    if (p == s.size()) return t;
    if (s[p] == 'Z' && p + 1 == s.size()) return t;
    if (s[p] != '+' && s[p] != '-') return std::nullopt;
    int sign = s[p] == '-' ? -1 : 1;
    std::string_view z = s.substr(p + 1);
    int oh, om;
    if (z.size() == 5 && z[2] == ':' && digits(p + 1, 2) && digits(p + 4, 2)) {
        oh = to_int(z.substr(0, 2));
        om = to_int(z.substr(3, 2));
    } else if (z.size() == 4 && all_digits(z)) {
        oh = to_int(z.substr(0, 2));
        om = to_int(z.substr(2, 2));
    } else {
        return std::nullopt;
    }
    return t - sign * (oh * 3600 + om * 60);
}

inline std::string format_iso8601(std::int64_t t) {
    Civil c = civil_from_epoch(t);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02u:%02u:%02uZ", (long long)c.y, c.m, c.d, c.hh, c.mm, c.ss);
    return buf;
}

inline std::string format_rfc2822(std::int64_t t) {
    Civil c = civil_from_epoch(t);
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s, %02u %s %04lld %02u:%02u:%02u +0000", kDayNames[c.wday], c.d,
                  kMonthNames[c.m - 1], (long long)c.y, c.hh, c.mm, c.ss);
    return buf;
}

inline std::string format_day(std::int64_t t) {
    Civil c = civil_from_epoch(t);
    char buf[24];
    std::snprintf(buf, sizeof buf, "%04lld-%02u-%02u", (long long)c.y, c.m, c.d);
    return buf;
}

}  // namespace lingnet::detail
