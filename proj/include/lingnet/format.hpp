#pragma once

// Number formatting and table rendering shared by every writer.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <json.hpp>

#include "unicode.hpp"

namespace lingnet {

// A real value that may be undefined (zero denominator, empty class, ...).
struct Measure {
    double value = 0;
    bool present = true;

    static Measure absent() { return {0, false}; }
    static Measure ratio(double num, double den) {
        return den == 0 ? absent() : Measure{num / den, true};
    }
    static Measure pct(double num, double den) {
        return den == 0 ? absent() : Measure{100.0 * num / den, true};
    }
    double or_nan() const { return present ? value : std::nan(""); }
};

inline std::string fmt4(double x) {
    if (std::isnan(x)) return "NA";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", x);
    std::string s(buf);
    return s == "-0.0000" ? "0.0000" : s;
}

inline std::string fmt(const Measure& m) { return m.present ? fmt4(m.value) : "NA"; }
inline std::string fmt(long long n) { return std::to_string(n); }

// JSON carries the same four decimals as the CSV files.
inline nlohmann::json jnum(double x) {
    if (std::isnan(x)) return nullptr;
    return std::strtod(fmt4(x).c_str(), nullptr);
}
inline nlohmann::json jnum(const Measure& m) { return m.present ? jnum(m.value) : nlohmann::json(); }

using Row = std::vector<std::string>;
using Table = std::vector<Row>;

inline std::string to_csv(const Table& t) {
    std::string out;
    for (const auto& r : t) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) out += ',';
            out += r[i];
        }
        out += '\n';
    }
    return out;
}

// Aligned text: first column left, the rest right, two-space gutters.
inline std::string render(const std::string& title, const Table& t) {
    std::string out = "== " + title + " ==\n";
    if (t.empty()) return out + "\n";
    std::vector<std::size_t> w(t[0].size(), 0);
    for (const auto& r : t)
        for (std::size_t c = 0; c < r.size(); ++c) w[c] = std::max(w[c], uni::length(r[c]));
    for (const auto& r : t) {
        std::string line;
        for (std::size_t c = 0; c < r.size(); ++c) {
            std::string pad(w[c] - uni::length(r[c]), ' ');
            if (c) line += "  ";
            line += c == 0 ? r[c] + pad : pad + r[c];
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line + '\n';
    }
    return out + '\n';
}

inline std::string dump_json(const nlohmann::json& j) { return j.dump(2, ' ', false) + "\n"; }

}  // namespace lingnet
