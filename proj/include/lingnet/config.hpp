#pragma once

// Run configuration: INI-style "key = value" with [run] and [list NAME] sections.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "detail/mime.hpp"
#include "error.hpp"
#include "lexicon.hpp"

namespace lingnet {

struct ListSpec {
    std::string name;
    std::string path;  // as written
    std::string format;
    std::filesystem::path resolved;
};

struct RunConfig {
    std::vector<ListSpec> lists;
    long long limit = 20000;
    double f_hub = 0.05;
    double f_intermediary = 0.15;
    std::string lexicon;  // manifest path as written
    std::filesystem::path lexicon_resolved;
    bool strip_quotes = true;
    std::filesystem::path out_dir = "out";
    std::string pca_mode = "correlation";
    long long seed = 0;
    int workers = 1;
};

namespace detail {

inline double parse_real(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double x;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        throw ConfigError(key + ": not a number: " + v);
    }
    if (used != v.size()) throw ConfigError(key + ": not a number: " + v);
    return x;
}

inline long long parse_int(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    long long x;
    try {
        x = std::stoll(v, &used);
    } catch (const std::exception&) {
        throw ConfigError(key + ": not an integer: " + v);
    }
    if (used != v.size()) throw ConfigError(key + ": not an integer: " + v);
    return x;
}

inline bool parse_switch(const std::string& key, const std::string& v) {
    if (v == "on" || v == "true" || v == "yes") return true;
    if (v == "off" || v == "false" || v == "no") return false;
    throw ConfigError(key + ": expected on|off, got " + v);
}

}  // namespace detail

inline void set_run_key(RunConfig& c, const std::string& key, const std::string& v) {
    if (key == "limit") c.limit = detail::parse_int(key, v);
    else if (key == "f_hub") c.f_hub = detail::parse_real(key, v);
    else if (key == "f_intermediary") c.f_intermediary = detail::parse_real(key, v);
    else if (key == "strip_quotes") c.strip_quotes = detail::parse_switch(key, v);
    else if (key == "lexicon") c.lexicon = v;
    else if (key == "pca_mode") c.pca_mode = v;
    else if (key == "seed") c.seed = detail::parse_int(key, v);
    else if (key == "workers") c.workers = int(detail::parse_int(key, v));
    else if (key == "out") c.out_dir = v;
    else throw ConfigError("unknown key in [run]: " + key);
}

// Relative paths resolve against the directory holding the config file.
inline RunConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config: " + path.string());
    std::filesystem::path base = path.parent_path();
    RunConfig c;
    c.out_dir = base / "out";
    std::string line, section;
    std::size_t no = 0;
    ListSpec* cur = nullptr;
    while (std::getline(in, line)) {
        ++no;
        auto t = detail::trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        auto where = path.string() + ":" + std::to_string(no) + ": ";
        if (t.front() == '[') {
            if (t.back() != ']') throw ConfigError(where + "unterminated section header");
            section = std::string(detail::trim(t.substr(1, t.size() - 2)));
            cur = nullptr;
            if (section.rfind("list ", 0) == 0) {
                ListSpec l;
                l.name = std::string(detail::trim(std::string_view(section).substr(5)));
                if (l.name.empty()) throw ConfigError(where + "list section without a name");
                for (char ch : l.name)
                    if (!std::isalnum((unsigned char)ch) && ch != '_' && ch != '-')
                        throw ConfigError(where + "list name may hold only letters, digits, '_' and '-'");
                for (const auto& o : c.lists)
                    if (o.name == l.name) throw ConfigError(where + "duplicate list " + l.name);
                c.lists.push_back(l);
                cur = &c.lists.back();
            } else if (section != "run") {
                throw ConfigError(where + "unknown section [" + section + "]");
            }
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string_view::npos) throw ConfigError(where + "expected key = value");
        std::string key(detail::trim(t.substr(0, eq))), val(detail::trim(t.substr(eq + 1)));
        if (section == "run") {
            set_run_key(c, key, val);
            if (key == "out") c.out_dir = base / val;
        } else if (cur) {
            if (key == "path") cur->path = val;
            else if (key == "format") cur->format = val;
            else throw ConfigError(where + "unknown key in [list " + cur->name + "]: " + key);
        } else {
            throw ConfigError(where + "key outside a section");
        }
    }
    for (auto& l : c.lists) l.resolved = base / l.path;
    c.lexicon_resolved = base / c.lexicon;
    return c;
}

// Dry run: every problem found, nothing computed.
inline std::vector<std::string> validate(const RunConfig& c) {
    std::vector<std::string> p;
    if (c.limit <= 0) p.push_back("limit must be > 0");
    if (!(c.f_hub > 0)) p.push_back("f_hub must be > 0");
    if (!(c.f_intermediary >= 0)) p.push_back("f_intermediary must be >= 0");
    if (!(c.f_hub + c.f_intermediary < 1)) p.push_back("f_hub + f_intermediary must be < 1");
    if (c.pca_mode != "correlation" && c.pca_mode != "covariance")
        p.push_back("pca_mode must be correlation or covariance");
    if (c.workers < 1) p.push_back("workers must be >= 1");
    if (c.lists.empty()) p.push_back("no [list NAME] sections");
    for (const auto& l : c.lists) {
        if (l.format != "mbox" && l.format != "jsonl")
            p.push_back("list " + l.name + ": format must be mbox or jsonl");
        std::ifstream f(l.resolved);
        if (l.path.empty() || !f) p.push_back("list " + l.name + ": cannot read " + l.resolved.string());
    }
    if (c.lexicon.empty()) {
        p.push_back("lexicon manifest not set");
    } else {
        try {
            auto m = read_manifest(c.lexicon_resolved.string());
            for (auto& e : verify_manifest(m)) p.push_back("lexicon: " + e);
        } catch (const Error& e) {
            p.push_back(std::string("lexicon: ") + e.what());
        }
    }
    return p;
}

}  // namespace lingnet
