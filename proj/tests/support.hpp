#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "lingnet/lexicon.hpp"

namespace support {

inline std::filesystem::path source_dir() { return LINGNET_SOURCE_DIR; }

inline const lingnet::Lexicon& shipped_lexicon() {
    static const lingnet::Lexicon lex =
        lingnet::load_lexicon_manifest((source_dir() / "data/lexicon/manifest.ini").string());
    return lex;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void spit(const std::filesystem::path& p, const std::string& s) {
    std::ofstream out(p, std::ios::binary);
    out << s;
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("lingnet_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace support
