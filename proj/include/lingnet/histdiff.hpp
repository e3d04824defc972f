#pragma once

// Incident vs existent word-size histograms and their differences.

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "lexicon.hpp"
#include "textmetrics.hpp"

namespace lingnet {

inline constexpr int kMaxWordLength = 30;

enum class WordClass { kw, kw_nonsw, sw, kw_nonsw_nosynset, kw_nosynset };

inline const char* word_class_name(WordClass c) {
    switch (c) {
    case WordClass::kw: return "kw";
    case WordClass::kw_nonsw: return "kw-nonsw";
    case WordClass::sw: return "sw";
    case WordClass::kw_nonsw_nosynset: return "kw-nonsw-nosynset";
    default: return "kw-nosynset";
    }
}

inline constexpr WordClass kWordClasses[] = {WordClass::kw, WordClass::kw_nonsw, WordClass::sw,
                                             WordClass::kw_nonsw_nosynset, WordClass::kw_nosynset};

inline bool in_word_class(WordClass w, const TokenClass& c) {
    switch (w) {
    case WordClass::kw: return c.is_known;
    case WordClass::kw_nonsw: return c.is_known && !c.is_stopword;
    case WordClass::sw: return c.is_stopword;
    case WordClass::kw_nonsw_nosynset: return c.is_known && !c.is_stopword && !c.has_synset;
    default: return c.is_known && !c.has_synset;
    }
}

enum class Normalization { incident, existent, raw };

// mass[L] for L = 0..30; count/total kept so sign tests can be exact.
struct SizeHistogram {
    Normalization kind = Normalization::incident;
    std::vector<double> mass = std::vector<double>(kMaxWordLength + 1, 0.0);
    std::vector<long long> count = std::vector<long long>(kMaxWordLength + 1, 0);
    long long total = 0;

    bool probability() const { return kind != Normalization::raw; }
    int max_length() const {
        for (int L = kMaxWordLength; L > 0; --L)
            if (mass[std::size_t(L)] != 0 || count[std::size_t(L)] != 0) return L;
        return 0;
    }
    static SizeHistogram from_masses(std::vector<double> m, Normalization k) {
        SizeHistogram h;
        h.kind = k;
        m.resize(kMaxWordLength + 1, 0.0);
        h.mass = std::move(m);
        return h;
    }
    static SizeHistogram from_counts(std::vector<long long> c, Normalization k) {
        SizeHistogram h;
        h.kind = k;
        c.resize(kMaxWordLength + 1, 0);
        h.count = std::move(c);
        for (long long x : h.count) h.total += x;
        for (std::size_t L = 0; L < h.count.size(); ++L)
            h.mass[L] = k == Normalization::raw ? double(h.count[L])
                                                : (h.total ? double(h.count[L]) / double(h.total) : 0.0);
        return h;
    }
};

using HistogramPair = std::pair<SizeHistogram, SizeHistogram>;  // (incident, existent)

inline HistogramPair build_histograms(const Corpus& corpus, const Lexicon& lex, WordClass w) {
    std::vector<long long> inc(kMaxWordLength + 1, 0), ex(kMaxWordLength + 1, 0);
    std::set<std::string> seen;
    for (const auto& text : corpus.texts)
        for (const auto& t : tokenize(uni::decode(text))) {
            TokenClass c = classify_token(lex, t);
            if (!in_word_class(w, c)) continue;
            std::size_t L = std::min<std::size_t>(uni::length(c.key), kMaxWordLength);
            ++inc[L];
            if (seen.insert(c.key).second) ++ex[L];
        }
    if (seen.empty()) throw EmptyClass(std::string("no words of class ") + word_class_name(w));
    return {SizeHistogram::from_counts(inc, Normalization::incident),
            SizeHistogram::from_counts(ex, Normalization::existent)};
}

struct HistDiffResult {
    double positive_diff = 0;
    double l1_diff = 0;
    std::optional<WordClass> word_class;
};

inline void check_normalization(const HistogramPair& p) {
    if (p.first.probability() != p.second.probability())
        throw NormalizationMismatch("histograms use different normalizations");
}

inline HistDiffResult cumulative_positive_difference(const HistogramPair& p, std::optional<WordClass> w = std::nullopt) {
    check_normalization(p);
    HistDiffResult r;
    r.word_class = w;
    int maxl = std::max(p.first.max_length(), p.second.max_length());
    for (int L = 1; L <= maxl; ++L) {
        double d = p.first.mass[std::size_t(L)] - p.second.mass[std::size_t(L)];
        if (d > 0) r.positive_diff += d;
        r.l1_diff += std::abs(d);
    }
    return r;
}

namespace detail {

// Sign of incident(L) - existent(L); exact when both carry counts.
inline int diff_sign(const HistogramPair& p, int L) {
    const auto& a = p.first;
    const auto& b = p.second;
    std::size_t i = std::size_t(L);
    if (a.total > 0 && b.total > 0 && a.probability() && b.probability()) {
        __int128 x = (__int128)a.count[i] * b.total - (__int128)b.count[i] * a.total;
        return x > 0 ? 1 : (x < 0 ? -1 : 0);
    }
    double d = a.mass[i] - b.mass[i];
    return d > 0 ? 1 : (d < 0 ? -1 : 0);
}

}  // namespace detail

// First L whose difference turns from positive to non-positive.
inline std::optional<int> crossing_length(const HistogramPair& p) {
    int maxl = std::max(p.first.max_length(), p.second.max_length());
    for (int L = 2; L <= maxl; ++L)
        if (detail::diff_sign(p, L - 1) > 0 && detail::diff_sign(p, L) <= 0) return L;
    return std::nullopt;
}

}  // namespace lingnet
