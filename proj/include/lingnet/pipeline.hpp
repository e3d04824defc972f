#pragma once

// Full analysis of one or more lists: per-list tables under out/<name>/,
// cross-list KS and histogram grids at the top level, manifest last.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "features.hpp"
#include "format.hpp"
#include "histdiff.hpp"
#include "ingest.hpp"
#include "lexicon.hpp"
#include "network.hpp"
#include "stats.hpp"
#include "textmetrics.hpp"

namespace lingnet {

enum ExitCode { kOk = 0, kConfigError = 2, kResourceError = 3, kComputationError = 4 };

// Carries the name of the stage that failed.
struct StageError : Error {
    std::string stage;
    int code;
    StageError(std::string s, int c, const std::string& what) : Error(what), stage(std::move(s)), code(c) {}
};

namespace detail {

namespace fs = std::filesystem;

inline void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw StageError("write", kComputationError, "cannot write " + p.string());
    out << text;
}

struct ScopeDef {
    const char* column;
    const char* name;
    std::optional<Sector> sector;
};

inline const ScopeDef kScopes[] = {{"g.", "general", std::nullopt},
                                   {"p.", "periphery", Sector::periphery},
                                   {"i.", "intermediary", Sector::intermediary},
                                   {"h.", "hub", Sector::hub}};

inline const std::vector<std::string> kTopoCorr = {"d", "d_in", "d_out", "s", "s_in", "s_out", "bc", "tri", "cc"};
inline const std::vector<std::string> kTextCorr = {"n_chars",       "n_tokens",      "token_diversity", "pct_kw",
                                                   "lexical_diversity", "pct_punct", "mu_chars_sent",
                                                   "mu_tokens_msg", "grp_nouns",     "grp_modifiers",   "grp_verbs"};
inline const std::vector<std::string> kMixedTopo = {"d", "s", "bc", "cc"};

inline const char* const kKsObservables[] = {"substantives", "adjectives", "stopwords", "punctuation"};

inline std::string cell(double v, bool integer) {
    if (std::isnan(v)) return "NA";
    return integer ? std::to_string((long long)v) : fmt4(v);
}

}  // namespace detail

struct ListResult {
    std::string name, format, path;
    std::size_t messages = 0;
    std::vector<std::string> authors;
    std::map<std::string, Sector> label;
    std::map<std::string, std::map<std::string, double>> observables;  // author -> observable -> value
    std::map<WordClass, std::optional<std::pair<HistDiffResult, std::optional<int>>>> hist;
};

// KS observable per author.
inline std::map<std::string, double> ks_observables(const FeatureMatrix& f, std::size_t row) {
    auto v = [&](const char* n) { return f.rows[row][f.column(n)]; };
    return {{"substantives", v("grp_nouns")},
            {"adjectives", v("pos_JJ") + v("pos_JJR") + v("pos_JJS")},
            {"stopwords", v("pct_kwsw")},
            {"punctuation", v("pct_punct")}};
}

inline MessageStore load_store(const ListSpec& l) {
    std::ifstream in(l.resolved, std::ios::binary);
    if (!in) throw StageError("ingest:" + l.name, kResourceError, "cannot read " + l.resolved.string());
    try {
        return l.format == "mbox" ? parse_mbox(in) : parse_jsonl(in);
    } catch (const Error& e) {
        throw StageError("ingest:" + l.name, kResourceError, e.what());
    }
}

inline ListResult analyze_list(const ListSpec& entry, const RunConfig& cfg, const Lexicon& lex,
                               const std::filesystem::path& out) {
    namespace fs = std::filesystem;
    using detail::write_file;
    fs::create_directories(out);
    ListResult res;
    res.name = entry.name;
    res.format = entry.format;
    res.path = entry.path;
    std::string stage = "network:" + entry.name;
    try {
        MessageStore store = truncate(load_store(entry), std::size_t(cfg.limit));
        res.messages = store.size();
        InteractionNetwork net = build_information_network(store);
        VertexMetrics vm = compute_vertex_metrics(net);
        SectorPartition part = partition_by_strength(vm, cfg.f_hub, cfg.f_intermediary);
        res.authors = net.vertices;
        res.label = part.label;

        std::string tsv = "src\tdst\tweight\n";
        nlohmann::json nj;
        nj["direction"] = "information";
        nj["vertices"] = nlohmann::json::array();
        nj["edges"] = nlohmann::json::array();
        for (const auto& [e, w] : net.edges) {
            tsv += e.first + "\t" + e.second + "\t" + std::to_string(w) + "\n";
            nj["edges"].push_back({{"src", e.first}, {"dst", e.second}, {"weight", w}});
        }
        for (std::size_t i = 0; i < vm.ids.size(); ++i) {
            const auto& x = vm.v[i];
            nj["vertices"].push_back({{"id", vm.ids[i]}, {"d", x.d}, {"d_in", x.d_in}, {"d_out", x.d_out},
                                      {"s", x.s}, {"s_in", x.s_in}, {"s_out", x.s_out},
                                      {"bc", jnum(x.bc)}, {"cc", jnum(x.cc)}, {"tri", x.tri}});
        }
        write_file(out / "network.tsv", tsv);
        write_file(out / "network.json", dump_json(nj));
        Table pt{{"author", "sector", "s"}};
        for (const auto& a : part.ranked) pt.push_back({a, sector_name(part.of(a)), std::to_string(vm.at(a).s)});
        write_file(out / "partition.csv", to_csv(pt));

        ListSummary s = list_summary(store, part);
        const Sector secs[] = {Sector::periphery, Sector::intermediary, Sector::hub};
        Table st{{"measure", "g.", "p.", "i.", "h."},
                 {"date_1", detail::format_day(s.first), "-", "-", "-"},
                 {"date_M", detail::format_day(s.last), "-", "-", "-"}};
        auto counts = [&](const char* label, std::size_t total, const std::size_t* by) {
            Row r{label, std::to_string(total)};
            for (Sector x : secs) r.push_back(std::to_string(by[int(x)]));
            st.push_back(r);
        };
        auto shares = [&](const char* label, std::size_t total, const std::size_t* by) {
            Row r{label, "-"};
            for (Sector x : secs) r.push_back(fmt(Measure::pct(double(by[int(x)]), double(total))));
            st.push_back(r);
        };
        counts("N", s.N, s.n_by);
        shares("N_%", s.N, s.n_by);
        counts("M", s.M, s.m_by);
        shares("M_%", s.M, s.m_by);
        counts("Γ", s.threads, s.t_by);
        shares("Γ_%", s.threads, s.t_by);
        st.push_back({"dangling", std::to_string(s.dangling), "-", "-", "-"});
        st.push_back({"Δ_Y", fmt4(s.years), "-", "-", "-"});
        write_file(out / "summary.csv", to_csv(st));
        std::string report = render("summary", st);

        stage = "textmetrics:" + entry.name;
        auto text_of = [&](const RawMessage& m) { return cfg.strip_quotes ? strip_quoted(m.body) : m.body; };
        std::vector<MetricBundle> bundles;
        for (const auto& sc : detail::kScopes) {
            Corpus c;
            c.scope = sc.sector ? Scope(int(*sc.sector) + 1) : Scope::general;
            for (const auto& m : store.messages())
                if (!sc.sector || part.of(m.author) == *sc.sector) c.texts.push_back(text_of(m));
            bundles.push_back(compute_metrics(c, lex));
        }
        Table longform{{"list", "scope", "metric", "value"}};
        nlohmann::json mj = nlohmann::json::object();
        auto general_tables = bundles[0].tables();
        std::vector<std::vector<std::pair<std::string, Rows>>> all;
        for (const auto& b : bundles) all.push_back(b.tables());
        for (std::size_t t = 0; t < general_tables.size(); ++t) {
            const std::string& tname = general_tables[t].first;
            Table tb{{"metric", "g.", "p.", "i.", "h."}};
            for (std::size_t r = 0; r < general_tables[t].second.size(); ++r) {
                const std::string& label = general_tables[t].second[r].first;
                Row row{label};
                for (std::size_t sc = 0; sc < 4; ++sc) {
                    Cell c = all[sc][t].second[r].second;
                    if (sc > 0 && (label == "n chars" || label == "|tokens|"))
                        c = Cell::real(Measure::pct(c.m.value, general_tables[t].second[r].second.m.value));
                    row.push_back(fmt(c));
                }
                tb.push_back(row);
            }
            for (std::size_t sc = 0; sc < 4; ++sc)
                for (const auto& [label, c] : all[sc][t].second) {
                    longform.push_back({entry.name, detail::kScopes[sc].name, tname + ":" + label, fmt(c)});
                    mj[detail::kScopes[sc].name][tname][label] = jnum(c);
                }
            write_file(out / (tname + ".csv"), to_csv(tb));
            report += render(tname, tb);
        }
        write_file(out / "metrics_long.csv", to_csv(longform));
        write_file(out / "metrics.json", dump_json(mj));

        FeatureMatrix fm = author_features(store, part, vm, lex, cfg.strip_quotes);
        Table ft{{"author"}};
        for (const auto& n : fm.names) ft[0].push_back(n);
        for (std::size_t i = 0; i < fm.authors.size(); ++i) {
            Row r{fm.authors[i]};
            for (std::size_t j = 0; j < fm.names.size(); ++j)
                r.push_back(detail::cell(fm.rows[i][j], FeatureMatrix::is_count(fm.names[j])));
            ft.push_back(r);
            res.observables[fm.authors[i]] = ks_observables(fm, i);
        }
        write_file(out / "features.csv", to_csv(ft));

        stage = "stats:" + entry.name;
        auto members = [&](const detail::ScopeDef& sc) {
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < fm.authors.size(); ++i)
                if (!sc.sector || part.of(fm.authors[i]) == *sc.sector) idx.push_back(i);
            return idx;
        };
        auto column = [&](const std::vector<std::size_t>& idx, const std::string& name) {
            std::vector<double> v;
            std::size_t j = fm.column(name);
            for (auto i : idx) v.push_back(fm.rows[i][j]);
            return v;
        };
        using Pairs = std::vector<std::pair<std::string, std::string>>;
        auto triangle = [](const std::vector<std::string>& v) {
            Pairs p;
            for (std::size_t i = 0; i < v.size(); ++i)
                for (std::size_t j = i + 1; j < v.size(); ++j) p.emplace_back(v[i], v[j]);
            return p;
        };
        Pairs mixed;
        for (const auto& a : detail::kMixedTopo)
            for (const auto& b : detail::kTextCorr) mixed.emplace_back(a, b);
        const std::pair<const char*, Pairs> kinds[] = {{"topological", triangle(detail::kTopoCorr)},
                                                      {"textual", triangle(detail::kTextCorr)},
                                                      {"mixed", mixed}};
        for (const auto& [kind, pairs] : kinds) {
            Table ct{{"pair", "g.", "p.", "i.", "h."}};
            for (const auto& [a, b] : pairs) {
                Row r{a + "-" + b};
                for (const auto& sc : detail::kScopes) {
                    auto idx = members(sc);
                    r.push_back(fmt(pearson(column(idx, a), column(idx, b))));
                }
                ct.push_back(r);
            }
            write_file(out / (std::string("correlation_") + kind + ".csv"), to_csv(ct));
        }

        std::vector<std::string> pnames;
        for (const auto& n : fm.names)
            if (n != "sector") pnames.push_back(n);
        std::vector<std::optional<PcaResult>> pcas;
        for (const auto& sc : detail::kScopes) {
            std::vector<std::vector<double>> rows;
            for (auto i : members(sc)) {
                std::vector<double> r;
                for (const auto& n : pnames) r.push_back(fm.rows[i][fm.column(n)]);
                rows.push_back(r);
            }
            try {
                pcas.push_back(pca(pnames, rows, cfg.pca_mode == "covariance" ? PcaMode::covariance : PcaMode::correlation));
            } catch (const TooFewRows&) {
                pcas.emplace_back();
            } catch (const DegenerateMatrix&) {
                pcas.emplace_back();
            }
        }
        for (std::size_t k = 0; k < 5; ++k) {
            Table t{{"feature", "g.", "p.", "i.", "h."}};
            auto usable = [&](const std::optional<PcaResult>& r) {
                return r && k < r->loadings.size() && !r->degenerate[k];
            };
            Row lam{"lambda"};
            for (const auto& r : pcas) lam.push_back(usable(r) ? fmt4(r->lambda[k]) : "NA");
            t.push_back(lam);
            for (const auto& f : pnames) {
                Row r{f};
                bool kept = false;
                for (const auto& p : pcas) {
                    auto it = p ? std::find(p->features.begin(), p->features.end(), f) : p->features.end();
                    if (!usable(p) || it == p->features.end()) {
                        r.push_back("NA");
                        continue;
                    }
                    double v = p->loadings[k][std::size_t(it - p->features.begin())];
                    if (std::abs(v) > 0.05) {
                        r.push_back(fmt4(v));
                        kept = true;
                    } else {
                        r.push_back("");
                    }
                }
                if (kept) t.push_back(r);
            }
            write_file(out / ("pca_" + std::to_string(k + 1) + ".csv"), to_csv(t));
            report += render("pca " + std::to_string(k + 1), t);
        }
        write_file(out / "report.txt", report);

        stage = "histdiff:" + entry.name;
        Corpus general;
        for (const auto& m : store.messages()) general.texts.push_back(text_of(m));
        for (WordClass w : kWordClasses) {
            Table ht{{"length", "incident_mass", "existent_mass"}};
            try {
                auto hp = build_histograms(general, lex, w);
                int maxl = std::max(hp.first.max_length(), hp.second.max_length());
                for (int L = 1; L <= maxl; ++L)
                    ht.push_back({std::to_string(L), fmt4(hp.first.mass[std::size_t(L)]),
                                  fmt4(hp.second.mass[std::size_t(L)])});
                res.hist[w] = std::make_pair(cumulative_positive_difference(hp, w), crossing_length(hp));
            } catch (const EmptyClass&) {
                res.hist[w] = std::nullopt;
            }
            write_file(out / (std::string("hist_") + word_class_name(w) + ".csv"), to_csv(ht));
        }
    } catch (const StageError&) {
        throw;
    } catch (const MissingResource& e) {
        throw StageError(stage, kResourceError, e.what());
    } catch (const std::exception& e) {
        throw StageError(stage, kComputationError, e.what());
    }
    return res;
}

namespace detail {

inline std::vector<double> sector_sample(const ListResult& r, Sector s, const std::string& obs) {
    std::vector<double> v;
    for (const auto& a : r.authors) {
        if (r.label.at(a) != s) continue;
        double x = r.observables.at(a).at(obs);
        if (!std::isnan(x)) v.push_back(x);
    }
    return v;
}

inline std::string ks_cell(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) return "NA";
    return fmt4(ks_adapted(a, b).c_prime);
}

inline Table flag_differ(Table t) {
    for (std::size_t i = 1; i < t.size(); ++i)
        for (std::size_t j = 1; j < t[i].size(); ++j)
            if (t[i][j] != "NA" && std::strtod(t[i][j].c_str(), nullptr) > ks_reference_threshold()) t[i][j] += "*";
    return t;
}

}  // namespace detail

struct RunOutcome {
    int code = kOk;
    std::string stage, message;
};

// Runs every list (up to cfg.workers at a time), then the cross-list tables,
// then the manifest. On failure a FAILED marker names the stage.
inline RunOutcome run(const RunConfig& cfg) {
    namespace fs = std::filesystem;
    using detail::write_file;
    RunOutcome outcome;
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    fs::remove(cfg.out_dir / "FAILED", ec);
    auto fail = [&](const std::string& stage, int code, const std::string& msg) {
        outcome = {code, stage, msg};
        std::ofstream f(cfg.out_dir / "FAILED");
        f << "stage: " << stage << "\nerror: " << msg << "\n";
        return outcome;
    };
    // Unreadable files are left to the stage that reads them.
    for (const auto& p : validate(cfg))
        if (p.rfind("lexicon: ", 0) != 0 && p.find(": cannot read ") == std::string::npos)
            return fail("config", kConfigError, p);
    Lexicon lex;
    try {
        lex = load_lexicon_manifest(cfg.lexicon_resolved.string());
    } catch (const Error& e) {
        return fail("load_lexicon", kResourceError, e.what());
    }

    std::vector<ListResult> results(cfg.lists.size());
    try {
        std::size_t next = 0;
        while (next < cfg.lists.size()) {
            std::vector<std::future<ListResult>> batch;
            std::size_t end = std::min(cfg.lists.size(), next + std::size_t(cfg.workers));
            for (std::size_t i = next; i < end; ++i)
                batch.push_back(std::async(std::launch::async, [&, i] {
                    return analyze_list(cfg.lists[i], cfg, lex, cfg.out_dir / cfg.lists[i].name);
                }));
            for (std::size_t i = next; i < end; ++i) results[i] = batch[i - next].get();
            next = end;
        }
    } catch (const StageError& e) {
        return fail(e.stage, e.code, e.what());
    }

    try {
        std::string report;
        const std::pair<const char*, Sector> rows[] = {
            {"P", Sector::periphery}, {"I", Sector::intermediary}, {"H", Sector::hub}};
        for (const char* obs : detail::kKsObservables) {
            Table intra{{"list", "H-P", "H-I", "I-P"}};
            for (const auto& r : results) {
                auto h = detail::sector_sample(r, Sector::hub, obs);
                auto i = detail::sector_sample(r, Sector::intermediary, obs);
                auto p = detail::sector_sample(r, Sector::periphery, obs);
                intra.push_back({r.name, detail::ks_cell(h, p), detail::ks_cell(h, i), detail::ks_cell(i, p)});
            }
            write_file(cfg.out_dir / (std::string("ks_intra_") + obs + ".csv"), to_csv(intra));
            report += render(std::string("ks intra ") + obs, detail::flag_differ(intra));
            Table inter{{"sector"}};
            for (std::size_t a = 0; a < results.size(); ++a)
                for (std::size_t b = a + 1; b < results.size(); ++b)
                    inter[0].push_back(results[a].name + "-" + results[b].name);
            for (const auto& [label, sec] : rows) {
                Row row{label};
                for (std::size_t a = 0; a < results.size(); ++a)
                    for (std::size_t b = a + 1; b < results.size(); ++b)
                        row.push_back(detail::ks_cell(detail::sector_sample(results[a], sec, obs),
                                                      detail::sector_sample(results[b], sec, obs)));
                inter.push_back(row);
            }
            write_file(cfg.out_dir / (std::string("ks_inter_") + obs + ".csv"), to_csv(inter));
            report += render(std::string("ks inter ") + obs, detail::flag_differ(inter));
        }
        for (const char* kind : {"l1", "positive", "crossing"}) {
            Table t{{"class"}};
            for (const auto& r : results) t[0].push_back(r.name);
            for (WordClass w : kWordClasses) {
                Row row{word_class_name(w)};
                for (const auto& r : results) {
                    const auto& h = r.hist.at(w);
                    std::string k = kind;
                    if (!h) row.push_back("NA");
                    else if (k == "l1") row.push_back(fmt4(h->first.l1_diff));
                    else if (k == "positive") row.push_back(fmt4(h->first.positive_diff));
                    else row.push_back(h->second ? std::to_string(*h->second) : "NA");
                }
                t.push_back(row);
            }
            write_file(cfg.out_dir / (std::string("histdiff_") + kind + ".csv"), to_csv(t));
            report += render(std::string("histdiff ") + kind, t);
        }
        write_file(cfg.out_dir / "report.txt", report);

        nlohmann::json man;
        man["format_version"] = 1;
        man["config"] = {{"f_hub", cfg.f_hub},           {"f_intermediary", cfg.f_intermediary},
                         {"limit", cfg.limit},           {"lexicon", cfg.lexicon},
                         {"pca_mode", cfg.pca_mode},     {"seed", cfg.seed},
                         {"strip_quotes", cfg.strip_quotes}};
        man["lexicon"] = lex.hashes;
        man["lists"] = nlohmann::json::array();
        for (const auto& r : results)
            man["lists"].push_back({{"format", r.format}, {"messages", r.messages}, {"name", r.name},
                                    {"path", r.path}, {"status", "ok"}});
        write_file(cfg.out_dir / "manifest.json", dump_json(man));
    } catch (const StageError& e) {
        return fail(e.stage, e.code, e.what());
    } catch (const std::exception& e) {
        return fail("report", kComputationError, e.what());
    }
    return outcome;
}

}  // namespace lingnet
