#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace golden {

inline std::filesystem::path source_dir() { return TAXEL_SOURCE_DIR; }

inline std::string read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::filesystem::path fixture(const std::string& rel) { return source_dir() / "tests/fixtures" / rel; }

/// Compares against tests/golden/<rel>. With TAXEL_UPDATE_GOLDENS=1 the file is
/// rewritten instead and the comparison passes.
inline bool matches(const std::string& rel, const std::string& actual) {
    const auto path = source_dir() / "tests/golden" / rel;
    const char* update = std::getenv("TAXEL_UPDATE_GOLDENS");
    if (update && std::string(update) == "1") {
        std::filesystem::create_directories(path.parent_path());
        std::ofstream(path, std::ios::binary) << actual;
        return true;
    }
    return std::filesystem::exists(path) && read(path) == actual;
}

}  // namespace golden
