#pragma once

// Tokenizer, sentence splitter and the per-corpus measure families
// (characters, tokens, word sizes, sentences, messages, POS incidence).

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "format.hpp"
#include "lexicon.hpp"
#include "unicode.hpp"

namespace lingnet {

inline bool is_word_char(char32_t c) { return uni::is_letter(c) || uni::is_mark(c) || uni::is_digit(c); }

// Runs of letters/digits (an apostrophe between two of them stays inside);
// every other non-space character is a token of its own.
inline std::vector<std::u32string> tokenize(std::u32string_view s) {
    std::vector<std::u32string> out;
    std::size_t i = 0, n = s.size();
    while (i < n) {
        char32_t c = s[i];
        if (uni::is_space(c)) {
            ++i;
        } else if (is_word_char(c)) {
            std::size_t j = i + 1;
            while (j < n) {
                if (is_word_char(s[j])) ++j;
                else if ((s[j] == U'\'' || s[j] == U'’') && j + 1 < n && is_word_char(s[j + 1])) j += 2;
                else break;
            }
            out.emplace_back(s.substr(i, j - i));
            i = j;
        } else {
            out.emplace_back(1, c);
            ++i;
        }
    }
    return out;
}

inline std::vector<std::string> tokenize(std::string_view s) {
    std::vector<std::string> out;
    for (const auto& t : tokenize(uni::decode(s))) out.push_back(uni::encode(t));
    return out;
}

// Paragraphs break at blank lines; inside one, a run of .!? ends a sentence
// at end of text or when whitespace and an uppercase letter follow.
inline std::vector<std::u32string> split_sentences(std::u32string_view text) {
    std::vector<std::u32string> paras;
    std::u32string cur;
    bool have = false;
    std::size_t pos = 0;
    while (true) {
        std::size_t nl = text.find(U'\n', pos);
        std::u32string_view line = text.substr(pos, nl == std::u32string_view::npos ? std::u32string_view::npos : nl - pos);
        if (uni::strip(line).empty()) {
            if (have) paras.push_back(cur);
            cur.clear();
            have = false;
        } else {
            if (have) cur += U'\n';
            cur += line;
            have = true;
        }
        if (nl == std::u32string_view::npos) break;
        pos = nl + 1;
    }
    if (have) paras.push_back(cur);

    auto stop = [](char32_t c) { return c == U'.' || c == U'!' || c == U'?'; };
    std::vector<std::u32string> out;
    auto emit = [&](std::u32string_view s) {
        auto t = uni::strip(s);
        if (!t.empty()) out.emplace_back(t);
    };
    for (const auto& p : paras) {
        std::size_t start = 0, i = 0, n = p.size();
        while (i < n) {
            if (!stop(p[i])) {
                ++i;
                continue;
            }
            std::size_t e = i;
            while (e < n && stop(p[e])) ++e;
            bool cut = e == n;
            if (!cut && uni::is_space(p[e])) {
                std::size_t k = e;
                while (k < n && uni::is_space(p[k])) ++k;
                cut = k < n && uni::is_upper(p[k]);
            }
            if (cut) {
                emit(std::u32string_view(p).substr(start, e - start));
                start = e;
            }
            i = e;
        }
        emit(std::u32string_view(p).substr(start));
    }
    return out;
}

inline std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> out;
    for (const auto& s : split_sentences(uni::decode(text))) out.push_back(uni::encode(s));
    return out;
}

// Drops lines that start with '>'.
inline std::string strip_quoted(std::string_view body) {
    std::string out;
    bool first = true;
    std::size_t pos = 0;
    while (true) {
        std::size_t nl = body.find('\n', pos);
        std::string_view line = body.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        if (line.empty() || line[0] != '>') {
            if (!first) out += '\n';
            out += line;
            first = false;
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return out;
}

enum class Scope { general, periphery, intermediary, hub, single_author };

struct Corpus {
    std::vector<std::string> texts;  // one per message, already quote-stripped if requested
    Scope scope = Scope::general;
};

// A table cell: counts print as integers, ratios with four decimals.
struct Cell {
    Measure m;
    bool integer = false;

    static Cell count(long long n) { return {{double(n), true}, true}; }
    static Cell real(Measure x) { return {x, false}; }
};

inline std::string fmt(const Cell& c) { return c.integer ? std::to_string((long long)c.m.value) : fmt(c.m); }
inline nlohmann::json jnum(const Cell& c) {
    return c.integer ? nlohmann::json((long long)c.m.value) : jnum(c.m);
}

using Rows = std::vector<std::pair<std::string, Cell>>;

struct MeanSd {
    Measure mean = Measure::absent(), sd = Measure::absent();
};

// Population standard deviation, two passes.
inline MeanSd mean_sd(const std::vector<double>& xs) {
    if (xs.empty()) return {};
    double m = 0;
    for (double x : xs) m += x;
    m /= double(xs.size());
    double v = 0;
    for (double x : xs) v += (x - m) * (x - m);
    return {{m, true}, {std::sqrt(v / double(xs.size())), true}};
}

struct CharMetrics {
    long long n_chars = 0;
    Measure pct_space_of_char, pct_punct_of_nonspace, pct_digit_of_nonspace;
    Measure pct_letter_of_nonspace, pct_vowel_of_letters, pct_upper_of_letters;

    Rows rows() const {
        return {{"n chars", Cell::count(n_chars)},
                {"100|space|/|char|", Cell::real(pct_space_of_char)},
                {"100|punct|/(|char|-|space|)", Cell::real(pct_punct_of_nonspace)},
                {"100|digit|/(|char|-|space|)", Cell::real(pct_digit_of_nonspace)},
                {"100|letter|/(|char|-|space|)", Cell::real(pct_letter_of_nonspace)},
                {"100|vogal|/|letter|", Cell::real(pct_vowel_of_letters)},
                {"100|Uppercase|/|letter|", Cell::real(pct_upper_of_letters)}};
    }
};

struct TokenMetrics {
    long long n_tokens = 0;
    Measure chars_per_token, token_diversity, pct_punct_tokens, pct_known_of_nonpunct, lexical_diversity;
    Measure pct_kwss_of_kw, pct_kwsw_of_kw, pct_ukwsw_of_kw, pct_kw_sw_with_synset_of_kw;
    Measure pct_sw_without_synset_of_kw, pct_contractions_of_kw, pct_kw_nonsw_nosynset_of_kw;
    Measure pct_kw_nonsw_synset_of_kw;

    Rows rows() const {
        return {{"|tokens|", Cell::count(n_tokens)},
                {"(|chars|-|spaces|)/|tokens|", Cell::real(chars_per_token)},
                {"100|tokens≠|/|tokens|", Cell::real(token_diversity)},
                {"100|punct|/|tokens|", Cell::real(pct_punct_tokens)},
                {"100|kw|/(|tokens|-|punct|)", Cell::real(pct_known_of_nonpunct)},
                {"100|kw≠|/|kw|", Cell::real(lexical_diversity)},
                {"100|kwss|/|kw|", Cell::real(pct_kwss_of_kw)},
                {"100|kwsw|/|kw|", Cell::real(pct_kwsw_of_kw)},
                {"100|ukwsw|/|kw|", Cell::real(pct_ukwsw_of_kw)},
                {"100|kw sw with synset|/|kw|", Cell::real(pct_kw_sw_with_synset_of_kw)},
                {"100|sw without synset|/|kw|", Cell::real(pct_sw_without_synset_of_kw)},
                {"100|contractions|/|kw|", Cell::real(pct_contractions_of_kw)},
                {"100|kw not sw no synset|/|kw|", Cell::real(pct_kw_nonsw_nosynset_of_kw)},
                {"100|kw not sw has synset|/|kw|", Cell::real(pct_kw_nonsw_synset_of_kw)}};
    }
};

// Word-size classes, in table order.
inline const char* const kSizeClasses[] = {"skw", "skwss", "ssw", "snsssw"};

inline bool in_size_class(int k, const TokenClass& c) {
    switch (k) {
    case 0: return c.is_known;
    case 1: return c.is_known && c.has_synset;
    case 2: return c.is_stopword;
    default: return c.is_known && !c.is_stopword && !c.has_synset;
    }
}

struct SizeMetrics {
    MeanSd incident[4], distinct[4];

    Rows rows() const {
        Rows r;
        for (int k = 0; k < 4; ++k) {
            std::string n = kSizeClasses[k];
            r.push_back({"μ(" + n + ")", Cell::real(incident[k].mean)});
            r.push_back({"σ(" + n + ")", Cell::real(incident[k].sd)});
            r.push_back({"μ(≠" + n + ")", Cell::real(distinct[k].mean)});
            r.push_back({"σ(≠" + n + ")", Cell::real(distinct[k].sd)});
        }
        return r;
    }
};

struct SentenceMetrics {
    long long n_sents = 0;
    MeanSd chars, tokens, kw, kwssnsw;

    Rows rows() const {
        Rows r{{"|sents|", Cell::count(n_sents)}};
        const std::pair<const char*, const MeanSd*> f[] = {
            {"chars", &chars}, {"tokens", &tokens}, {"kw", &kw}, {"kwssnsw", &kwssnsw}};
        for (auto [n, v] : f) {
            r.push_back({std::string("μ(") + n + "/sent)", Cell::real(v->mean)});
            r.push_back({std::string("σ(") + n + "/sent)", Cell::real(v->sd)});
        }
        return r;
    }
};

struct MessageMetrics {
    MeanSd chars, tokens, sents;

    Rows rows() const {
        Rows r;
        const std::pair<const char*, const MeanSd*> f[] = {
            {"|chars|", &chars}, {"|tokens|", &tokens}, {"|sents|", &sents}};
        for (auto [n, v] : f) {
            r.push_back({std::string("μ(") + n + "/msg)", Cell::real(v->mean)});
            r.push_back({std::string("σ(") + n + "/msg)", Cell::real(v->sd)});
        }
        return r;
    }
};

struct PosGroup {
    const char* name;
    std::vector<std::string> tags;
};

inline const std::vector<PosGroup>& pos_groups() {
    static const std::vector<PosGroup> g = {
        {"nouns", {"NN", "NNS", "NNP", "NNPS"}},
        {"modifiers", {"JJ", "JJR", "JJS", "RB", "RBR", "RBS", "RP"}},
        {"verbs", {"VB", "VBZ", "VBP", "VBN", "VBD", "VBG", "MD"}},
        {"function", {"IN", "DT", "PRP", "PRP$", "PDT", "TO", "CC", "WRB", "WDT", "WP", "WP$"}},
        {"other", {"CD", "EX", "UH", "FW"}}};
    return g;
}

struct PosMetrics {
    long long n_tagged = 0;                         // non-punctuation tokens
    std::map<std::string, long long> counts;        // every tag seen, tracked or not
    std::vector<std::pair<std::string, Measure>> tag_pct;    // tracked tags, group order
    std::vector<std::pair<std::string, Measure>> group_pct;  // "nouns", ...

    Measure tag(const std::string& t) const {
        for (const auto& [k, v] : tag_pct)
            if (k == t) return v;
        return Measure::pct(0, double(n_tagged));
    }
    Measure group(const std::string& g) const {
        for (const auto& [k, v] : group_pct)
            if (k == g) return v;
        return Measure::absent();
    }

    Rows rows() const {
        Rows r;
        std::size_t i = 0;
        for (std::size_t g = 0; g < pos_groups().size(); ++g) {
            for (std::size_t k = 0; k < pos_groups()[g].tags.size(); ++k, ++i)
                r.push_back({tag_pct[i].first, Cell::real(tag_pct[i].second)});
            r.push_back({"+" + group_pct[g].first, Cell::real(group_pct[g].second)});
        }
        return r;
    }
};

struct MetricBundle {
    long long n_messages = 0;
    CharMetrics chars;
    TokenMetrics tokens;
    SizeMetrics sizes;
    SentenceMetrics sentences;
    MessageMetrics messages;
    PosMetrics pos;

    // Table name and rows, in report order.
    std::vector<std::pair<std::string, Rows>> tables() const {
        return {{"chars", chars.rows()},         {"tokens", tokens.rows()},
                {"sizes", sizes.rows()},         {"sentences", sentences.rows()},
                {"messages", messages.rows()},   {"pos", pos.rows()}};
    }
};

namespace detail {

struct CharCounts {
    long long chars = 0, space = 0, punct = 0, digit = 0, letter = 0, vowel = 0, upper = 0;

    void add(std::u32string_view text) {
        for (char32_t c : text) {
            ++chars;
            if (uni::is_space(c)) ++space;
            else if (uni::is_punct(c)) ++punct;
            else if (uni::is_digit(c)) ++digit;
            else if (uni::is_letter(c)) {
                ++letter;
                char32_t l = uni::to_lower(c);
                vowel += l == U'a' || l == U'e' || l == U'i' || l == U'o' || l == U'u';
                upper += uni::is_upper(c);
            }
        }
    }

    CharMetrics metrics() const {
        CharMetrics m;
        double ns = double(chars - space);
        m.n_chars = chars;
        m.pct_space_of_char = Measure::pct(double(space), double(chars));
        m.pct_punct_of_nonspace = Measure::pct(double(punct), ns);
        m.pct_digit_of_nonspace = Measure::pct(double(digit), ns);
        m.pct_letter_of_nonspace = Measure::pct(double(letter), ns);
        m.pct_vowel_of_letters = Measure::pct(double(vowel), double(letter));
        m.pct_upper_of_letters = Measure::pct(double(upper), double(letter));
        return m;
    }
};

inline void require_nonempty(const Corpus& c) {
    if (c.texts.empty()) throw EmptyCorpus();
}

}  // namespace detail

inline CharMetrics char_metrics(const Corpus& corpus) {
    detail::require_nonempty(corpus);
    detail::CharCounts cc;
    for (const auto& t : corpus.texts) cc.add(uni::decode(t));
    return cc.metrics();
}

// One pass over the corpus computing every family.
inline MetricBundle compute_metrics(const Corpus& corpus, const Lexicon& lex) {
    detail::require_nonempty(corpus);
    MetricBundle b;
    b.n_messages = (long long)corpus.texts.size();
    detail::CharCounts cc;
    std::vector<TokenClass> cls;
    std::set<std::u32string> distinct_tokens;
    std::vector<double> s_chars, s_tokens, s_kw, s_kwssnsw, m_chars, m_tokens, m_sents;
    long long n_tokens = 0;

    for (const auto& raw : corpus.texts) {
        std::u32string text = uni::decode(raw);
        cc.add(text);
        auto toks = tokenize(text);
        n_tokens += (long long)toks.size();
        for (const auto& t : toks) {
            distinct_tokens.insert(t);
            cls.push_back(classify_token(lex, t));
        }
        auto sents = split_sentences(text);
        m_chars.push_back(double(text.size()));
        m_tokens.push_back(double(toks.size()));
        m_sents.push_back(double(sents.size()));
        for (const auto& s : sents) {
            auto st = tokenize(s);
            long long kw = 0, kwssnsw = 0;
            for (const auto& t : st) {
                TokenClass c = classify_token(lex, t);
                kw += c.is_known;
                kwssnsw += c.is_known && c.has_synset && !c.is_stopword;
                std::string tag = tag_token(lex, t);
                if (tag == kPunctTag) continue;
                ++b.pos.n_tagged;
                ++b.pos.counts[tag];
            }
            s_chars.push_back(double(s.size()));
            s_tokens.push_back(double(st.size()));
            s_kw.push_back(double(kw));
            s_kwssnsw.push_back(double(kwssnsw));
        }
    }

    b.chars = cc.metrics();

    auto& tm = b.tokens;
    long long punct = 0, kw = 0, kwss = 0, kwsw = 0, ukwsw = 0, sw_syn = 0, sw_nosyn = 0, contr = 0;
    long long nsw_nosyn = 0, nsw_syn = 0;
    std::set<std::string> kw_forms;
    for (const auto& c : cls) {
        punct += c.is_punct;
        contr += c.is_contraction;
        ukwsw += c.is_word && !c.is_known && c.is_stopword;
        if (!c.is_known) continue;
        ++kw;
        kw_forms.insert(c.key);
        kwss += c.has_synset;
        kwsw += c.is_stopword;
        sw_syn += c.is_stopword && c.has_synset;
        sw_nosyn += c.is_stopword && !c.has_synset;
        nsw_nosyn += !c.is_stopword && !c.has_synset;
        nsw_syn += !c.is_stopword && c.has_synset;
    }
    double dkw = double(kw);
    tm.n_tokens = n_tokens;
    tm.chars_per_token = Measure::ratio(double(cc.chars - cc.space), double(n_tokens));
    tm.token_diversity = Measure::pct(double(distinct_tokens.size()), double(n_tokens));
    tm.pct_punct_tokens = Measure::pct(double(punct), double(n_tokens));
    tm.pct_known_of_nonpunct = Measure::pct(dkw, double(n_tokens - punct));
    tm.lexical_diversity = Measure::pct(double(kw_forms.size()), dkw);
    tm.pct_kwss_of_kw = Measure::pct(double(kwss), dkw);
    tm.pct_kwsw_of_kw = Measure::pct(double(kwsw), dkw);
    tm.pct_ukwsw_of_kw = Measure::pct(double(ukwsw), dkw);
    tm.pct_kw_sw_with_synset_of_kw = Measure::pct(double(sw_syn), dkw);
    tm.pct_sw_without_synset_of_kw = Measure::pct(double(sw_nosyn), dkw);
    tm.pct_contractions_of_kw = Measure::pct(double(contr), dkw);
    tm.pct_kw_nonsw_nosynset_of_kw = Measure::pct(double(nsw_nosyn), dkw);
    tm.pct_kw_nonsw_synset_of_kw = Measure::pct(double(nsw_syn), dkw);

    for (int k = 0; k < 4; ++k) {
        std::vector<double> occ, dist;
        std::set<std::string> forms;
        for (const auto& c : cls)
            if (in_size_class(k, c)) {
                occ.push_back(double(uni::length(c.key)));
                forms.insert(c.key);
            }
        for (const auto& f : forms) dist.push_back(double(uni::length(f)));
        b.sizes.incident[k] = mean_sd(occ);
        b.sizes.distinct[k] = mean_sd(dist);
    }

    b.sentences.n_sents = (long long)s_chars.size();
    b.sentences.chars = mean_sd(s_chars);
    b.sentences.tokens = mean_sd(s_tokens);
    b.sentences.kw = mean_sd(s_kw);
    b.sentences.kwssnsw = mean_sd(s_kwssnsw);
    b.messages.chars = mean_sd(m_chars);
    b.messages.tokens = mean_sd(m_tokens);
    b.messages.sents = mean_sd(m_sents);

    for (const auto& g : pos_groups()) {
        double total = 0;
        for (const auto& t : g.tags) {
            auto it = b.pos.counts.find(t);
            Measure v = Measure::pct(double(it == b.pos.counts.end() ? 0 : it->second), double(b.pos.n_tagged));
            b.pos.tag_pct.emplace_back(t, v);
            if (v.present) total += v.value;
        }
        b.pos.group_pct.emplace_back(g.name, b.pos.n_tagged == 0 ? Measure::absent() : Measure{total, true});
    }
    return b;
}

inline TokenMetrics token_metrics(const Corpus& c, const Lexicon& lex) { return compute_metrics(c, lex).tokens; }
inline SizeMetrics word_size_metrics(const Corpus& c, const Lexicon& lex) { return compute_metrics(c, lex).sizes; }
inline SentenceMetrics sentence_metrics(const Corpus& c, const Lexicon& lex) { return compute_metrics(c, lex).sentences; }
inline PosMetrics pos_metrics(const Corpus& c, const Lexicon& lex) { return compute_metrics(c, lex).pos; }

inline MessageMetrics message_metrics(const Corpus& corpus) {
    detail::require_nonempty(corpus);
    MessageMetrics m;
    std::vector<double> ch, tk, se;
    for (const auto& raw : corpus.texts) {
        auto text = uni::decode(raw);
        ch.push_back(double(text.size()));
        tk.push_back(double(tokenize(text).size()));
        se.push_back(double(split_sentences(text).size()));
    }
    m.chars = mean_sd(ch);
    m.tokens = mean_sd(tk);
    m.sents = mean_sd(se);
    return m;
}

}  // namespace lingnet
