#pragma once

#include <cstdlib>
#include <filesystem>
#include <string>

#include "treek/graph.hpp"

namespace treek::test {

inline std::filesystem::path fixture_dir() {
#ifdef TREEK_FIXTURE_DIR
    return std::filesystem::path(TREEK_FIXTURE_DIR);
#else
    return std::filesystem::path("tests") / "fixtures";
#endif
}

inline std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

inline Graph path_graph(const std::vector<std::string>& labels) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < static_cast<int>(labels.size()); ++i) edges.emplace_back(i, i + 1);
    return Graph(labels, edges);
}

inline Graph cycle_graph(const std::vector<std::string>& labels) {
    std::vector<std::pair<int, int>> edges;
    const int n = static_cast<int>(labels.size());
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Graph(labels, edges);
}

}  // namespace treek::test
