#pragma once

// Linguistic resources: known words, stopwords, WordNet lemmas, contractions
// and a tag lexicon whose "-suffix" entries double as suffix rules.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <openssl/evp.h>

#include "detail/mime.hpp"
#include "error.hpp"
#include "unicode.hpp"

namespace lingnet {

struct LexiconPaths {
    std::string wordlist, stopwords, contractions, tag_lexicon;
    std::vector<std::string> wordnet_index;  // index.noun, index.verb, ...
};

struct Lexicon {
    std::unordered_set<std::string> known_words, stopwords, synset_words, contractions;
    std::unordered_map<std::string, std::vector<std::string>> tag_lexicon;
    std::vector<std::pair<std::string, std::string>> suffix_rules;  // tried in order
    std::map<std::string, std::string> hashes;                      // resource key -> sha256
};

inline std::string sha256_hex(const std::vector<std::string>& paths) {
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    std::vector<char> buf(1 << 16);
    for (const auto& p : paths) {
        std::ifstream in(p, std::ios::binary);
        if (!in) {
            EVP_MD_CTX_free(ctx);
            throw MissingResource(p);
        }
        while (in) {
            in.read(buf.data(), std::streamsize(buf.size()));
            EVP_DigestUpdate(ctx, buf.data(), std::size_t(in.gcount()));
        }
    }
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, md, &len);
    EVP_MD_CTX_free(ctx);
    std::string hex;
    char b[3];
    for (unsigned i = 0; i < len; ++i) {
        std::snprintf(b, sizeof b, "%02x", md[i]);
        hex += b;
    }
    return hex;
}

// Lowercase, with the typographic apostrophe folded to ASCII.
inline std::u32string lookup_key(std::u32string_view token) {
    std::u32string k = uni::to_lower(token);
    for (auto& c : k)
        if (c == U'’') c = U'\'';
    return k;
}

inline std::string lookup_key(std::string_view token) { return uni::encode(lookup_key(uni::decode(token))); }

namespace detail {

template <class F>
void each_line(const std::string& path, F&& f) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingResource(path);
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        f(line, no);
    }
}

inline void load_set(const std::string& path, std::unordered_set<std::string>& out) {
    each_line(path, [&](const std::string& line, std::size_t) {
        auto t = trim(line);
        if (!t.empty()) out.insert(lookup_key(t));
    });
}

}  // namespace detail

// All-or-nothing: every file is read before the lexicon is returned.
inline Lexicon load_lexicon(const LexiconPaths& p) {
    for (const auto* f : {&p.wordlist, &p.stopwords, &p.contractions, &p.tag_lexicon})
        if (!std::filesystem::is_regular_file(*f)) throw MissingResource(*f);
    if (p.wordnet_index.empty()) throw MissingResource("wordnet index");
    for (const auto& f : p.wordnet_index)
        if (!std::filesystem::is_regular_file(f)) throw MissingResource(f);

    Lexicon lex;
    detail::load_set(p.wordlist, lex.known_words);
    detail::load_set(p.stopwords, lex.stopwords);
    detail::load_set(p.contractions, lex.contractions);
    for (const auto& f : p.wordnet_index) {
        detail::each_line(f, [&](const std::string& line, std::size_t) {
            if (line.empty() || line[0] == ' ') return;  // license preamble
            std::string lemma = line.substr(0, line.find_first_of(" \t"));
            for (auto& c : lemma)
                if (c == '_') c = ' ';
            lex.synset_words.insert(lookup_key(lemma));
        });
    }
    detail::each_line(p.tag_lexicon, [&](const std::string& line, std::size_t no) {
        if (detail::trim(line).empty()) return;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size())
            throw MalformedResource(p.tag_lexicon, no, "expected word<TAB>tag[,tag...]");
        std::string word = line.substr(0, tab);
        std::string field(detail::trim(std::string_view(line).substr(tab + 1)));
        if (field.empty()) throw MalformedResource(p.tag_lexicon, no, "empty tag list");
        // Ranked tags are comma separated; a field of commas only is the "," tag itself.
        std::vector<std::string> tags;
        std::stringstream ss(field);
        for (std::string t; std::getline(ss, t, ',');)
            if (auto v = detail::trim(t); !v.empty()) tags.emplace_back(v);
        if (tags.empty()) tags.push_back(field);
        // A word listed on several lines appends to its ranking.
        if (word.size() > 1 && word[0] == '-' && std::isalpha((unsigned char)word[1])) {
            lex.suffix_rules.emplace_back(word.substr(1), tags[0]);
        } else {
            auto& v = lex.tag_lexicon[word];
            v.insert(v.end(), tags.begin(), tags.end());
        }
    });
    return lex;
}

struct LexiconManifest {
    LexiconPaths paths;
    std::map<std::string, std::string> expected;  // key -> sha256 as written
    std::map<std::string, std::vector<std::string>> files;
};

inline LexiconManifest read_manifest(const std::string& manifest_path) {
    namespace fs = std::filesystem;
    if (!fs::is_regular_file(manifest_path)) throw MissingResource(manifest_path);
    fs::path base = fs::path(manifest_path).parent_path();
    std::map<std::string, std::string> kv;
    detail::each_line(manifest_path, [&](const std::string& line, std::size_t no) {
        auto t = detail::trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') return;
        auto eq = t.find('=');
        if (eq == std::string_view::npos) throw MalformedResource(manifest_path, no, "expected key = value");
        kv[std::string(detail::trim(t.substr(0, eq)))] = std::string(detail::trim(t.substr(eq + 1)));
    });
    LexiconManifest m;
    for (const char* key : {"wordlist", "stopwords", "wordnet_index", "contractions", "tag_lexicon"}) {
        auto it = kv.find(key);
        if (it == kv.end()) throw MalformedResource(manifest_path, 0, std::string("missing key ") + key);
        std::vector<std::string> files;
        std::stringstream ss(it->second);
        std::string f;
        while (ss >> f) files.push_back((base / f).string());
        if (files.empty()) throw MalformedResource(manifest_path, 0, std::string("empty path for ") + key);
        m.files[key] = files;
        if (auto h = kv.find(std::string(key) + ".sha256"); h != kv.end()) m.expected[key] = h->second;
    }
    m.paths.wordlist = m.files["wordlist"][0];
    m.paths.stopwords = m.files["stopwords"][0];
    m.paths.contractions = m.files["contractions"][0];
    m.paths.tag_lexicon = m.files["tag_lexicon"][0];
    m.paths.wordnet_index = m.files["wordnet_index"];
    return m;
}

// Hash problems as human-readable strings; empty when everything matches.
inline std::vector<std::string> verify_manifest(const LexiconManifest& m, std::map<std::string, std::string>* actual = nullptr) {
    std::vector<std::string> problems;
    for (const auto& [key, files] : m.files) {
        std::string h;
        try {
            h = sha256_hex(files);
        } catch (const MissingResource& e) {
            problems.push_back(e.what());
            continue;
        }
        if (actual) (*actual)[key] = h;
        auto it = m.expected.find(key);
        if (it != m.expected.end() && it->second != h)
            problems.push_back(key + ": sha256 mismatch (manifest " + it->second + ", file " + h + ")");
    }
    return problems;
}

inline Lexicon load_lexicon_manifest(const std::string& manifest_path) {
    LexiconManifest m = read_manifest(manifest_path);
    std::map<std::string, std::string> actual;
    for (const auto& [key, files] : m.files)
        for (const auto& f : files)
            if (!std::filesystem::is_regular_file(f)) throw MissingResource(f);
    auto problems = verify_manifest(m, &actual);
    if (!problems.empty()) throw MalformedResource(manifest_path, 0, problems.front());
    Lexicon lex = load_lexicon(m.paths);
    lex.hashes = std::move(actual);
    return lex;
}

struct TokenClass {
    bool is_punct = false, is_word = false, is_known = false;
    bool is_stopword = false, has_synset = false, is_contraction = false;
    std::string key;  // lookup form, UTF-8
};

inline bool all_punct(std::u32string_view t) {
    if (t.empty()) return false;
    for (char32_t c : t)
        if (!uni::is_punct(c)) return false;
    return true;
}

inline TokenClass classify_token(const Lexicon& lex, std::u32string_view token) {
    TokenClass c;
    c.key = uni::encode(lookup_key(token));
    c.is_punct = all_punct(token);
    bool letter = false, digit = false;
    for (char32_t ch : token) {
        letter |= uni::is_letter(ch);
        digit |= uni::is_digit(ch);
    }
    c.is_word = letter && !digit;
    c.is_known = c.is_word && lex.known_words.count(c.key);
    c.is_stopword = c.is_word && lex.stopwords.count(c.key);
    c.has_synset = c.is_word && lex.synset_words.count(c.key);
    c.is_contraction = lex.contractions.count(c.key) > 0;
    return c;
}

inline TokenClass classify_token(const Lexicon& lex, std::string_view token) {
    return classify_token(lex, uni::decode(token));
}

inline const std::string kPunctTag = "PUNCT";

// Lexicon hit (exact, then lowercase), else first matching suffix rule, else NN.
inline std::string tag_token(const Lexicon& lex, std::u32string_view token) {
    if (all_punct(token)) return kPunctTag;
    std::u32string t(token);
    for (auto& c : t)
        if (c == U'’') c = U'\'';
    std::string exact = uni::encode(t);
    if (auto it = lex.tag_lexicon.find(exact); it != lex.tag_lexicon.end()) return it->second.front();
    std::string low = uni::encode(uni::to_lower(t));
    if (auto it = lex.tag_lexicon.find(low); it != lex.tag_lexicon.end()) return it->second.front();
    for (const auto& [suf, tag] : lex.suffix_rules)
        if (low.size() > suf.size() && uni::length(low) > uni::length(suf) &&
            low.compare(low.size() - suf.size(), suf.size(), suf) == 0)
            return tag;
    return "NN";
}

inline std::vector<std::string> pos_tag(const Lexicon& lex, const std::vector<std::u32string>& sentence) {
    std::vector<std::string> tags;
    tags.reserve(sentence.size());
    for (const auto& t : sentence) tags.push_back(tag_token(lex, t));
    return tags;
}

inline std::vector<std::string> pos_tag(const Lexicon& lex, const std::vector<std::string>& sentence) {
    std::vector<std::string> tags;
    tags.reserve(sentence.size());
    for (const auto& t : sentence) tags.push_back(tag_token(lex, uni::decode(t)));
    return tags;
}

}  // namespace lingnet
