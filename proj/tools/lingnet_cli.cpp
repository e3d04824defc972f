#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "lingnet/lingnet.hpp"

namespace {

using lingnet::RunConfig;

int load(const std::string& path, RunConfig& cfg) {
    try {
        cfg = lingnet::parse_config(path);
        return 0;
    } catch (const lingnet::ConfigError& e) {
        std::cerr << "config: " << e.what() << "\n";
        return lingnet::kConfigError;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mailing-list interaction networks and text metrics"};
    app.require_subcommand(1);

    std::string config;
    std::optional<long long> limit, seed;
    std::optional<double> f_hub, f_int;
    std::optional<int> workers;
    std::string strip, out, pca_mode, lexicon;

    auto* analyze = app.add_subcommand("analyze", "Run the full analysis");
    analyze->add_option("--config", config)->required();
    analyze->add_option("--limit", limit);
    analyze->add_option("--f-hub", f_hub);
    analyze->add_option("--f-intermediary", f_int);
    analyze->add_option("--strip-quotes", strip)->check(CLI::IsMember({"on", "off"}));
    analyze->add_option("--out", out);
    analyze->add_option("--pca-mode", pca_mode)->check(CLI::IsMember({"correlation", "covariance"}));
    analyze->add_option("--lexicon", lexicon);
    analyze->add_option("--seed", seed);
    analyze->add_option("--workers", workers);

    auto* check = app.add_subcommand("validate", "Check a config without computing anything");
    check->add_option("--config", config)->required();

    std::string format, in_path;
    auto* ingest = app.add_subcommand("ingest", "Parse an archive and dump the message store as JSONL");
    ingest->add_option("--format", format)->required()->check(CLI::IsMember({"mbox", "jsonl"}));
    ingest->add_option("--in", in_path)->required();
    ingest->add_option("--out", out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : lingnet::kConfigError;
    }

    if (*ingest) {
        std::ifstream in(in_path, std::ios::binary);
        if (!in) {
            std::cerr << "ingest: cannot read " << in_path << "\n";
            return lingnet::kResourceError;
        }
        try {
            auto store = format == "mbox" ? lingnet::parse_mbox(in) : lingnet::parse_jsonl(in);
            for (const auto& w : store.warnings()) std::cerr << "warning: " << w << "\n";
            std::ofstream o(out, std::ios::binary);
            o << lingnet::write_jsonl(store);
            if (!o) {
                std::cerr << "ingest: cannot write " << out << "\n";
                return lingnet::kResourceError;
            }
        } catch (const lingnet::Error& e) {
            std::cerr << "ingest: " << e.what() << "\n";
            return lingnet::kResourceError;
        }
        return 0;
    }

    RunConfig cfg;
    if (int rc = load(config, cfg)) return rc;

    if (*check) {
        auto problems = lingnet::validate(cfg);
        for (const auto& p : problems) std::cout << p << "\n";
        return problems.empty() ? 0 : lingnet::kConfigError;
    }

    if (limit) cfg.limit = *limit;
    if (f_hub) cfg.f_hub = *f_hub;
    if (f_int) cfg.f_intermediary = *f_int;
    if (!strip.empty()) cfg.strip_quotes = strip == "on";
    if (!out.empty()) cfg.out_dir = out;
    if (!pca_mode.empty()) cfg.pca_mode = pca_mode;
    if (seed) cfg.seed = *seed;
    if (workers) cfg.workers = *workers;
    if (!lexicon.empty()) {
        cfg.lexicon = lexicon;
        cfg.lexicon_resolved = lexicon;
    }

    auto r = lingnet::run(cfg);
    if (r.code != 0) std::cerr << r.stage << ": " << r.message << "\n";
    return r.code;
}
