// Acceptance run: one PASS/FAIL line per criterion, with wall time.
// Criterion 8 needs the original CPP archive and is skipped without --cpp-archive.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>

#include <CLI11.hpp>
#include <boost/rational.hpp>

#include "lingnet/lingnet.hpp"

using namespace lingnet;
namespace fs = std::filesystem;
using Q = boost::rational<long long>;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

fs::path source_dir() { return LINGNET_SOURCE_DIR; }

// ---- shared fixtures: the two golden lists with their partitions

struct Fixture {
    std::string name;
    MessageStore store;
    SectorPartition part;
    VertexMetrics vm;
};

const std::vector<Fixture>& fixtures() {
    static const std::vector<Fixture> f = [] {
        std::vector<Fixture> out;
        RunConfig cfg = parse_config(source_dir() / "tests/golden/config.ini");
        for (const auto& l : cfg.lists) {
            Fixture x{l.name, load_store(l), {}, {}};
            x.vm = compute_vertex_metrics(build_information_network(x.store));
            x.part = partition_by_strength(x.vm, cfg.f_hub, cfg.f_intermediary);
            out.push_back(std::move(x));
        }
        return out;
    }();
    return f;
}

const Lexicon& lexicon() {
    static const Lexicon lex = load_lexicon_manifest((source_dir() / "data/lexicon/manifest.ini").string());
    return lex;
}

// Every corpus the fixtures give rise to: each scope and each author.
std::vector<std::pair<std::string, Corpus>> fixture_corpora() {
    std::vector<std::pair<std::string, Corpus>> out;
    for (const auto& f : fixtures()) {
        Corpus g;
        std::map<Sector, Corpus> by;
        for (const auto& m : f.store.messages()) {
            auto t = strip_quoted(m.body);
            g.texts.push_back(t);
            by[f.part.of(m.author)].texts.push_back(t);
        }
        out.emplace_back(f.name + "/general", g);
        for (auto& [s, c] : by) out.emplace_back(f.name + "/" + sector_name(s), c);
        for (const auto& a : f.vm.ids) out.emplace_back(f.name + "/" + a, author_corpus(f.store, a, true));
    }
    return out;
}

// ---- 1, 2: KS

double brute_d(const std::vector<double>& a, const std::vector<double>& b) {
    auto F = [](const std::vector<double>& s, double x) {
        std::size_t k = 0;
        for (double v : s) k += v <= x;
        return double(k) / double(s.size());
    };
    double d = 0;
    for (const auto* s : {&a, &b})
        for (double x : *s) d = std::max(d, std::abs(F(a, x) - F(b, x)));
    return d;
}

Outcome ks_oracle() {
    std::mt19937_64 rng(20240601);
    std::size_t bad_d = 0, bad_c = 0;
    for (int t = 0; t < 1000; ++t) {
        std::uniform_int_distribution<std::size_t> size(1, 50);
        // Half the pairs on a coarse grid so ties are common.
        bool grid = t % 2 == 0;
        auto draw = [&](std::size_t n) {
            std::vector<double> v(n);
            std::normal_distribution<double> g;
            for (auto& x : v) x = grid ? double(rng() % 7) : g(rng);
            return v;
        };
        auto a = draw(size(rng)), b = draw(size(rng));
        auto r = ks_adapted(a, b);
        double d = brute_d(a, b);
        double n = double(a.size()), m = double(b.size());
        bad_d += r.d_stat != d;
        bad_c += std::abs(r.c_prime - d / std::sqrt((n + m) / (n * m))) > 1e-12;
    }
    return {bad_d == 0 && bad_c == 0,
            std::to_string(bad_d) + " D mismatches, " + std::to_string(bad_c) + " c' mismatches in 1000 pairs"};
}

Outcome ks_calibration() {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    int rejected = 0;
    const int trials = 2000;
    for (int t = 0; t < trials; ++t) {
        std::vector<double> a(200), b(200);
        for (auto& x : a) x = g(rng);
        for (auto& x : b) x = g(rng);
        rejected += ks_adapted(a, b).c_prime > ks_critical(0.05);
    }
    double rate = double(rejected) / trials;
    return {rate >= 0.03 && rate <= 0.08, "rejection rate " + fmt4(rate) + " at alpha 0.05"};
}

// ---- 3: betweenness

std::vector<Q> brute_betweenness(const std::vector<std::vector<std::size_t>>& adj) {
    const std::size_t n = adj.size();
    std::vector<Q> bc(n, Q(0));
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) {
            if (s == t) continue;
            std::vector<std::vector<std::size_t>> paths;
            std::vector<std::size_t> path{s};
            std::vector<bool> on(n, false);
            on[s] = true;
            std::function<void(std::size_t)> dfs = [&](std::size_t v) {
                if (v == t) {
                    paths.push_back(path);
                    return;
                }
                for (auto w : adj[v])
                    if (!on[w]) {
                        on[w] = true;
                        path.push_back(w);
                        dfs(w);
                        path.pop_back();
                        on[w] = false;
                    }
            };
            dfs(s);
            if (paths.empty()) continue;
            std::size_t best = SIZE_MAX;
            for (auto& p : paths) best = std::min(best, p.size());
            long long total = 0;
            std::vector<long long> through(n, 0);
            for (auto& p : paths)
                if (p.size() == best) {
                    ++total;
                    for (std::size_t k = 1; k + 1 < p.size(); ++k) ++through[p[k]];
                }
            for (std::size_t v = 0; v < n; ++v)
                if (through[v]) bc[v] += Q(through[v], total);
        }
    return bc;
}

Outcome betweenness_oracle() {
    std::mt19937 rng(99);
    int bad = 0;
    for (int g = 0; g < 200; ++g) {
        std::size_t n = 1 + rng() % 6;
        double density = 0.15 + 0.7 * double(rng() % 100) / 100.0;
        std::vector<std::vector<std::size_t>> adj(n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (a != b && double(rng() % 1000) / 1000.0 < density) adj[a].push_back(b);
        bad += brandes_betweenness<Q>(adj) != brute_betweenness(adj);
    }
    return {bad == 0, std::to_string(bad) + " of 200 graphs differ"};
}

// ---- 4: table identities

Outcome table_identities() {
    int checked = 0, bad = 0;
    std::string first;
    auto check = [&](bool ok, const std::string& what) {
        ++checked;
        if (!ok && bad++ == 0) first = what;
    };
    for (const auto& [name, c] : fixture_corpora()) {
        auto b = compute_metrics(c, lexicon());
        // chars: punct + digit + letter + other over non-space characters
        long long nonspace = 0, other = 0;
        for (const auto& t : c.texts)
            for (char32_t ch : uni::decode(t)) {
                if (uni::is_space(ch)) continue;
                ++nonspace;
                other += !uni::is_punct(ch) && !uni::is_digit(ch) && !uni::is_letter(ch);
            }
        if (nonspace > 0) {
            double s = b.chars.pct_punct_of_nonspace.value + b.chars.pct_digit_of_nonspace.value +
                       b.chars.pct_letter_of_nonspace.value + 100.0 * double(other) / double(nonspace);
            check(std::abs(s - 100) <= 0.01, name + " chars sum " + fmt4(s));
        }
        const auto& t = b.tokens;
        if (t.pct_kw_sw_with_synset_of_kw.present) {
            double s = t.pct_kw_sw_with_synset_of_kw.value + t.pct_sw_without_synset_of_kw.value +
                       t.pct_kw_nonsw_nosynset_of_kw.value + t.pct_kw_nonsw_synset_of_kw.value;
            check(std::abs(s - 100) <= 0.01, name + " kw split sum " + fmt4(s));
        }
        // pos: compare the printed "+group" rows with the printed member rows
        double members = 0;
        for (const auto& [label, cell] : b.pos.rows()) {
            if (!cell.m.present) continue;
            double v = std::strtod(fmt(cell).c_str(), nullptr);
            if (label[0] == '+') {
                check(std::abs(v - members) <= 0.01, name + " " + label + " " + fmt4(v) + " vs " + fmt4(members));
                members = 0;
            } else {
                members += v;
            }
        }
    }
    return {bad == 0, std::to_string(checked) + " identities, " + std::to_string(bad) + " violated" +
                          (first.empty() ? "" : " (first: " + first + ")")};
}

// ---- 5: PCA

Outcome pca_properties() {
    std::vector<std::pair<std::string, std::vector<std::vector<double>>>> inputs;
    std::vector<std::string> names;
    for (const auto& f : fixtures()) {
        auto fm = author_features(f.store, f.part, f.vm, lexicon());
        names.clear();
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < fm.names.size(); ++j)
            if (fm.names[j] != "sector") {
                names.push_back(fm.names[j]);
                cols.push_back(j);
            }
        std::vector<std::vector<double>> rows;
        for (const auto& r : fm.rows) {
            std::vector<double> x;
            for (auto j : cols) x.push_back(r[j]);
            rows.push_back(x);
        }
        inputs.emplace_back(f.name, rows);
    }
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    std::vector<std::string> rnames;
    for (int j = 0; j < 8; ++j) rnames.push_back("x" + std::to_string(j));
    for (int t = 0; t < 20; ++t) {
        std::vector<std::vector<double>> rows(10 + t * 5, std::vector<double>(8));
        for (auto& r : rows) {
            double z = g(rng);
            for (int j = 0; j < 8; ++j) r[std::size_t(j)] = z * (j % 4) + g(rng) * (1 + j);
        }
        inputs.emplace_back("random" + std::to_string(t), rows);
    }
    int runs = 0;
    std::string problem;
    for (const auto& [label, rows] : inputs)
        for (auto mode : {PcaMode::correlation, PcaMode::covariance}) {
            const auto& nm = label.rfind("random", 0) == 0 ? rnames : names;
            auto r = pca(nm, rows, mode);
            ++runs;
            const std::size_t p = r.features.size();
            double sum = 0;
            bool descending = true;
            for (std::size_t k = 0; k < p; ++k) {
                sum += r.lambda[k];
                if (k && r.lambda[k] > r.lambda[k - 1]) descending = false;
            }
            Eigen::MatrixXd V(p, p);
            for (std::size_t k = 0; k < p; ++k)
                for (std::size_t j = 0; j < p; ++j) V(Eigen::Index(j), Eigen::Index(k)) = r.loadings[k][j];
            double ortho = (V.transpose() * V - Eigen::MatrixXd::Identity(Eigen::Index(p), Eigen::Index(p))).norm();
            Eigen::VectorXd ev = Eigen::Map<const Eigen::VectorXd>(r.eigenvalues.data(), Eigen::Index(p));
            double recon = (V * ev.asDiagonal() * V.transpose() - r.matrix).norm();
            bool filter_ok = true;
            auto f = filter_loadings(r, 0.05);
            for (std::size_t k = 0; k < p; ++k)
                for (std::size_t j = 0; j < p; ++j) {
                    bool keep = !r.degenerate[k] && std::abs(r.loadings[k][j]) > 0.05;
                    filter_ok &= f[k][j].has_value() == keep && (!keep || *f[k][j] == r.loadings[k][j]);
                }
            std::string why;
            if (!descending) why = "lambda not descending";
            else if (std::abs(sum - 100) > 0.01) why = "lambda sum " + fmt4(sum);
            else if (ortho > 1e-9) why = "orthonormality error " + std::to_string(ortho);
            else if (recon > 1e-9) why = "reconstruction error " + std::to_string(recon);
            else if (!filter_ok) why = "filter_loadings mismatch";
            if (!why.empty() && problem.empty()) problem = label + ": " + why;
        }
    return {problem.empty(), std::to_string(runs) + " decompositions" + (problem.empty() ? "" : "; " + problem)};
}

// ---- 6: golden directory

Outcome golden() {
    RunConfig cfg = parse_config(source_dir() / "tests/golden/config.ini");
    cfg.out_dir = fs::temp_directory_path() / "lingnet_acceptance_golden";
    fs::remove_all(cfg.out_dir);
    auto r = run(cfg);
    if (r.code != 0) return {false, "run failed at " + r.stage + ": " + r.message};
    auto read = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    fs::path want = source_dir() / "tests/golden/expected";
    int files = 0, differ = 0;
    std::set<std::string> seen;
    for (const auto& e : fs::recursive_directory_iterator(want)) {
        if (!e.is_regular_file()) continue;
        auto rel = fs::relative(e.path(), want);
        seen.insert(rel.generic_string());
        ++files;
        differ += read(e.path()) != read(cfg.out_dir / rel);
    }
    for (const auto& e : fs::recursive_directory_iterator(cfg.out_dir))
        if (e.is_regular_file() && !seen.count(fs::relative(e.path(), cfg.out_dir).generic_string())) ++differ;
    return {differ == 0, std::to_string(files) + " golden files, " + std::to_string(differ) + " differ"};
}

// ---- 7: histogram identities

Outcome histogram_identities() {
    int checked = 0, bad = 0;
    for (const auto& [name, c] : fixture_corpora()) {
        Corpus twice = c;
        twice.texts.insert(twice.texts.end(), c.texts.begin(), c.texts.end());
        for (WordClass w : kWordClasses) {
            HistogramPair p, q;
            try {
                p = build_histograms(c, lexicon(), w);
            } catch (const EmptyClass&) {
                continue;
            }
            q = build_histograms(twice, lexicon(), w);
            auto r = cumulative_positive_difference(p), r2 = cumulative_positive_difference(q);
            ++checked;
            bad += std::abs(r.l1_diff - 2 * r.positive_diff) > 1e-12 || p.first.mass != q.first.mass ||
                   p.second.mass != q.second.mass || r.l1_diff != r2.l1_diff;
        }
    }
    return {bad == 0 && checked > 0, std::to_string(checked) + " histogram pairs, " + std::to_string(bad) + " violations"};
}

// ---- 8: the original CPP archive

Outcome cpp_archive(const std::string& path, const std::string& format) {
    ListSpec entry{"CPP", path, format, path};
    MessageStore store = truncate(load_store(entry), 20000);
    auto vm = compute_vertex_metrics(build_information_network(store));
    auto part = partition_by_strength(vm);
    auto s = list_summary(store, part);
    std::vector<std::string> misses;
    if (s.N != 1052) misses.push_back("N=" + std::to_string(s.N));
    if (s.M != 19993) misses.push_back("M=" + std::to_string(s.M));
    if (std::abs(double(s.threads) - 4506) > 45.06) misses.push_back("Gamma=" + std::to_string(s.threads));
    const std::pair<Sector, double> m_pct[] = {
        {Sector::periphery, 8.27}, {Sector::intermediary, 13.37}, {Sector::hub, 78.33}};
    for (auto [sec, want] : m_pct)
        if (std::abs(s.m_pct(sec).value - want) > 3)
            misses.push_back(std::string("M% ") + sector_name(sec) + "=" + fmt(s.m_pct(sec)));

    // KS intra row for CPP, per observable: H-P, H-I, I-P.
    const std::pair<const char*, std::array<double, 3>> published[] = {{"substantives", {5.58, 2.54, 7.82}},
                                                                   {"adjectives", {2.76, 2.33, 0.25}},
                                                                   {"stopwords", {7.01, 4.89, 7.95}},
                                                                   {"punctuation", {1.53, 0.89, 1.45}}};
    auto fm = author_features(store, part, vm, lexicon());
    auto sample = [&](Sector sec, const char* obs) {
        std::vector<double> v;
        for (std::size_t i = 0; i < fm.authors.size(); ++i) {
            if (part.of(fm.authors[i]) != sec) continue;
            double x = ks_observables(fm, i).at(obs);
            if (!std::isnan(x)) v.push_back(x);
        }
        return v;
    };
    int agree = 0, cells = 0;
    for (const auto& [obs, want] : published) {
        const std::pair<Sector, Sector> pairs[] = {
            {Sector::hub, Sector::periphery}, {Sector::hub, Sector::intermediary}, {Sector::intermediary, Sector::periphery}};
        for (std::size_t k = 0; k < 3; ++k) {
            auto a = sample(pairs[k].first, obs), b = sample(pairs[k].second, obs);
            ++cells;
            if (a.empty() || b.empty()) continue;
            bool ours = ks_adapted(a, b).c_prime > ks_reference_threshold();
            agree += ours == (want[k] > ks_reference_threshold());
        }
    }
    if (agree * 10 < cells * 9) misses.push_back("KS flags agree in " + std::to_string(agree) + "/" + std::to_string(cells));

    Corpus general;
    for (const auto& m : store.messages()) general.texts.push_back(strip_quoted(m.body));
    double l1 = cumulative_positive_difference(build_histograms(general, lexicon(), WordClass::kw)).l1_diff;
    if (std::abs(l1 - 1.0) > 0.15) misses.push_back("kw l1_diff=" + fmt4(l1));

    std::string d = "N=" + std::to_string(s.N) + " M=" + std::to_string(s.M) + " Gamma=" + std::to_string(s.threads) +
                    " hub M%=" + fmt(s.m_pct(Sector::hub)) + " KS agree " + std::to_string(agree) + "/" +
                    std::to_string(cells) + " kw l1=" + fmt4(l1);
    for (const auto& m : misses) d += "; off: " + m;
    return {misses.empty(), d};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    std::string archive, format = "mbox";
    app.add_option("--cpp-archive", archive, "original CPP mailing-list archive");
    app.add_option("--format", format)->check(CLI::IsMember({"mbox", "jsonl"}));
    CLI11_PARSE(app, argc, argv);

    struct Criterion {
        int id;
        const char* name;
        double budget;  // seconds, 0 = none
        std::function<Outcome()> fn;
    };
    std::vector<Criterion> all = {
        {1, "KS oracle equivalence", 5, ks_oracle},
        {2, "KS calibration", 30, ks_calibration},
        {3, "betweenness oracle", 10, betweenness_oracle},
        {4, "table identities", 0, table_identities},
        {5, "PCA properties", 0, pca_properties},
        {6, "golden fixture", 0, golden},
        {7, "histogram identities", 0, histogram_identities},
    };
    if (!archive.empty()) all.push_back({8, "CPP archive", 0, [&] { return cpp_archive(archive, format); }});

    int failed = 0;
    for (const auto& c : all) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget > 0 && secs > c.budget) {
            o.pass = false;
            o.detail += "; over the " + std::to_string(int(c.budget)) + " s budget";
        }
        failed += !o.pass;
        std::printf("criterion %d %-22s %s  %.2fs  %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    }
    if (archive.empty()) std::printf("criterion 8 %-22s SKIP  archive not provided (--cpp-archive)\n", "CPP archive");
    return failed == 0 ? 0 : 1;
}
