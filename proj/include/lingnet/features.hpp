#pragma once

// One feature row per author: topology from the reply graph, text measures
// from that author's own messages. Absent values are NaN.

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "ingest.hpp"
#include "network.hpp"
#include "textmetrics.hpp"

namespace lingnet {

struct FeatureMatrix {
    std::vector<std::string> authors;
    std::vector<std::string> names;
    std::vector<std::vector<double>> rows;

    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return i;
        throw std::out_of_range("no feature " + name);
    }
    // Integer-valued columns print without decimals.
    static bool is_count(const std::string& name) {
        static const std::set<std::string> c = {"d",      "d_in",    "d_out",    "s",       "s_in",
                                                "s_out",  "tri",     "sector",   "n_msgs",  "n_chars",
                                                "n_tokens", "n_sents"};
        return c.count(name) > 0;
    }
};

inline std::vector<std::string> feature_names() {
    std::vector<std::string> n = {"d", "d_in", "d_out", "s", "s_in", "s_out", "bc", "tri", "cc", "sector",
                                  "n_msgs", "n_chars", "n_tokens", "n_sents", "pct_space", "pct_punct",
                                  "pct_digit", "pct_letter", "pct_vowel", "pct_upper", "chars_per_token",
                                  "token_diversity", "pct_punct_tokens", "pct_kw", "lexical_diversity",
                                  "pct_kwss", "pct_kwsw", "pct_ukwsw", "pct_kwsw_ss", "pct_kwsw_nss",
                                  "pct_contractions", "pct_kw_nsw_nss", "pct_kw_nsw_ss"};
    for (const char* c : kSizeClasses)
        for (const char* f : {"mu_%", "sd_%", "mu_%_d", "sd_%_d"}) {
            std::string s = f;
            s.replace(s.find('%'), 1, c);
            n.push_back(s);
        }
    for (const char* u : {"chars_sent", "tokens_sent", "kw_sent", "kwssnsw_sent", "chars_msg", "tokens_msg", "sents_msg"}) {
        n.push_back(std::string("mu_") + u);
        n.push_back(std::string("sd_") + u);
    }
    for (const auto& g : pos_groups())
        for (const auto& t : g.tags) n.push_back("pos_" + t);
    for (const auto& g : pos_groups()) n.push_back(std::string("grp_") + g.name);
    return n;
}

inline std::vector<double> feature_row(const VertexMetric& v, Sector sector, const MetricBundle& b) {
    auto x = [](const Measure& m) { return m.or_nan(); };
    const auto& c = b.chars;
    const auto& t = b.tokens;
    std::vector<double> r = {double(v.d), double(v.d_in), double(v.d_out), double(v.s), double(v.s_in),
                             double(v.s_out), v.bc, double(v.tri), v.cc, double(int(sector)),
                             double(b.n_messages), double(c.n_chars), double(t.n_tokens),
                             double(b.sentences.n_sents), x(c.pct_space_of_char), x(c.pct_punct_of_nonspace),
                             x(c.pct_digit_of_nonspace), x(c.pct_letter_of_nonspace),
                             x(c.pct_vowel_of_letters), x(c.pct_upper_of_letters), x(t.chars_per_token),
                             x(t.token_diversity), x(t.pct_punct_tokens), x(t.pct_known_of_nonpunct),
                             x(t.lexical_diversity), x(t.pct_kwss_of_kw), x(t.pct_kwsw_of_kw),
                             x(t.pct_ukwsw_of_kw), x(t.pct_kw_sw_with_synset_of_kw),
                             x(t.pct_sw_without_synset_of_kw), x(t.pct_contractions_of_kw),
                             x(t.pct_kw_nonsw_nosynset_of_kw), x(t.pct_kw_nonsw_synset_of_kw)};
    for (int k = 0; k < 4; ++k) {
        r.push_back(x(b.sizes.incident[k].mean));
        r.push_back(x(b.sizes.incident[k].sd));
        r.push_back(x(b.sizes.distinct[k].mean));
        r.push_back(x(b.sizes.distinct[k].sd));
    }
    for (const MeanSd* m : {&b.sentences.chars, &b.sentences.tokens, &b.sentences.kw, &b.sentences.kwssnsw,
                            &b.messages.chars, &b.messages.tokens, &b.messages.sents}) {
        r.push_back(x(m->mean));
        r.push_back(x(m->sd));
    }
    for (const auto& [tag, m] : b.pos.tag_pct) r.push_back(x(m));
    for (const auto& [g, m] : b.pos.group_pct) r.push_back(x(m));
    return r;
}

inline Corpus author_corpus(const MessageStore& store, const std::string& author, bool strip_quotes) {
    Corpus c;
    c.scope = Scope::single_author;
    for (const auto& m : store.messages())
        if (m.author == author) c.texts.push_back(strip_quotes ? strip_quoted(m.body) : m.body);
    return c;
}

// Rows are in author id order.
inline FeatureMatrix author_features(const MessageStore& store, const SectorPartition& part,
                                     const VertexMetrics& net, const Lexicon& lex, bool strip_quotes = true) {
    FeatureMatrix f;
    f.names = feature_names();
    std::set<std::string> authors;
    for (const auto& m : store.messages()) authors.insert(m.author);
    for (const auto& a : authors) {
        const VertexMetric& v = net.at(a);
        Sector s = part.of(a);
        f.authors.push_back(a);
        f.rows.push_back(feature_row(v, s, compute_metrics(author_corpus(store, a, strip_quotes), lex)));
    }
    if (authors.size() != part.label.size()) throw PartitionMismatch("partition covers authors absent from the store");
    return f;
}

}  // namespace lingnet
