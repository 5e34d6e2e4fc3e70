#include "treek/dataset_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "treek/errors.hpp"

namespace treek {

namespace {

using json = nlohmann::json;

std::string loc(const std::filesystem::path& path, std::size_t line) {
    return path.filename().string() + ":" + std::to_string(line);
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("missing file: " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    // ignore trailing blank lines
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

long parse_long(std::string_view token, const std::filesystem::path& path, std::size_t line) {
    token = trim(token);
    long value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError(loc(path, line) + ": expected an integer, got \"" + std::string(token) + "\"");
    }
    return value;
}

std::pair<long, long> parse_edge_line(const std::string& s, const std::filesystem::path& path,
                                      std::size_t line) {
    auto comma = s.find(',');
    if (comma == std::string::npos) {
        throw ParseError(loc(path, line) + ": expected \"i, j\" edge line, got \"" + s + "\"");
    }
    long a = parse_long(std::string_view(s).substr(0, comma), path, line);
    long b = parse_long(std::string_view(s).substr(comma + 1), path, line);
    return {a, b};
}

}  // namespace

Dataset parse_tu_dataset(const std::filesystem::path& directory) {
    if (!std::filesystem::is_directory(directory)) {
        throw ParseError("not a directory: " + directory.string());
    }
    std::string prefix;
    for (const auto& entry : std::filesystem::directory_iterator(directory)) {
        const std::string name = entry.path().filename().string();
        constexpr std::string_view suffix = "_A.txt";
        if (name.size() > suffix.size() && name.ends_with(suffix)) {
            if (!prefix.empty()) {
                throw ParseError("ambiguous dataset directory, multiple *_A.txt files in " +
                                 directory.string());
            }
            prefix = name.substr(0, name.size() - suffix.size());
        }
    }
    if (prefix.empty()) throw ParseError("missing file: " + (directory / "*_A.txt").string());

    const auto file = [&](const char* part) { return directory / (prefix + part); };
    const auto indicator_path = file("_graph_indicator.txt");
    const auto node_labels_path = file("_node_labels.txt");
    const auto graph_labels_path = file("_graph_labels.txt");
    const auto edges_path = file("_A.txt");

    const auto indicator_lines = read_lines(indicator_path);
    const auto node_label_lines = read_lines(node_labels_path);
    const auto graph_label_lines = read_lines(graph_labels_path);
    const auto edge_lines = read_lines(edges_path);

    if (node_label_lines.size() != indicator_lines.size()) {
        throw ParseError(prefix + ": " + std::to_string(indicator_lines.size()) +
                         " graph-indicator lines but " + std::to_string(node_label_lines.size()) +
                         " node-label lines");
    }

    const std::size_t node_count = indicator_lines.size();
    const std::size_t graph_count = graph_label_lines.size();

    // global node id (0-based) -> (graph index, local node index)
    std::vector<int> graph_of(node_count);
    std::vector<int> local_of(node_count);
    std::vector<std::vector<std::string>> labels(graph_count);
    for (std::size_t i = 0; i < node_count; ++i) {
        long gid = parse_long(indicator_lines[i], indicator_path, i + 1);
        if (gid < 1 || static_cast<std::size_t>(gid) > graph_count) {
            throw ParseError(loc(indicator_path, i + 1) + ": graph id " + std::to_string(gid) +
                             " out of range [1," + std::to_string(graph_count) + "]");
        }
        const int g = static_cast<int>(gid - 1);
        graph_of[i] = g;
        local_of[i] = static_cast<int>(labels[static_cast<std::size_t>(g)].size());
        long raw = parse_long(node_label_lines[i], node_labels_path, i + 1);
        labels[static_cast<std::size_t>(g)].push_back(std::to_string(raw));
    }

    std::vector<std::vector<std::pair<int, int>>> edges(graph_count);
    for (std::size_t i = 0; i < edge_lines.size(); ++i) {
        if (trim(edge_lines[i]).empty()) continue;
        auto [a, b] = parse_edge_line(edge_lines[i], edges_path, i + 1);
        if (a < 1 || static_cast<std::size_t>(a) > node_count || b < 1 ||
            static_cast<std::size_t>(b) > node_count) {
            throw ParseError(loc(edges_path, i + 1) + ": node id out of range [1," +
                             std::to_string(node_count) + "]");
        }
        const std::size_t u = static_cast<std::size_t>(a - 1);
        const std::size_t v = static_cast<std::size_t>(b - 1);
        if (graph_of[u] != graph_of[v]) {
            throw ParseError(loc(edges_path, i + 1) + ": edge crosses graphs " +
                             std::to_string(graph_of[u] + 1) + " and " +
                             std::to_string(graph_of[v] + 1));
        }
        if (u == v) {
            throw ParseError(loc(edges_path, i + 1) + ": self-loop at node " + std::to_string(a));
        }
        edges[static_cast<std::size_t>(graph_of[u])].emplace_back(local_of[u], local_of[v]);
    }

    // class labels: smaller raw value -> -1, larger -> +1
    std::vector<long> raw_classes(graph_count);
    std::set<long> distinct;
    for (std::size_t i = 0; i < graph_count; ++i) {
        raw_classes[i] = parse_long(graph_label_lines[i], graph_labels_path, i + 1);
        distinct.insert(raw_classes[i]);
    }
    if (distinct.size() > 2) {
        throw ParseError(prefix + ": expected a binary classification dataset, found " +
                         std::to_string(distinct.size()) + " distinct class labels");
    }

    Dataset ds;
    ds.name = prefix;
    ds.graphs.reserve(graph_count);
    ds.labels.reserve(graph_count);
    for (std::size_t g = 0; g < graph_count; ++g) {
        try {
            ds.graphs.emplace_back(std::move(labels[g]), edges[g]);
        } catch (const ValidationError& e) {
            throw ParseError(prefix + ": graph " + std::to_string(g + 1) + ": " + e.what());
        }
        ds.labels.push_back(raw_classes[g] == *distinct.begin() ? -1 : 1);
    }
    return ds;
}

Dataset parse_jsonl_dataset(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    Dataset ds;
    ds.name = path.stem().string();
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        json rec;
        try {
            rec = json::parse(lines[i]);
        } catch (const json::exception& e) {
            throw ParseError(loc(path, i + 1) + ": " + e.what());
        }
        if (!rec.is_object() || !rec.contains("labels") || !rec.contains("edges") ||
            !rec.contains("class")) {
            throw ParseError(loc(path, i + 1) +
                             ": record must have \"labels\", \"edges\" and \"class\"");
        }
        std::vector<std::string> labels;
        for (const auto& l : rec.at("labels")) {
            if (!l.is_string()) throw ParseError(loc(path, i + 1) + ": labels must be strings");
            labels.push_back(l.get<std::string>());
        }
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : rec.at("edges")) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
                !e[1].is_number_integer()) {
                throw ParseError(loc(path, i + 1) + ": edges must be [i, j] integer pairs");
            }
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        const auto& cls = rec.at("class");
        if (!cls.is_number_integer() || (cls.get<int>() != -1 && cls.get<int>() != 1)) {
            throw ParseError(loc(path, i + 1) + ": \"class\" must be -1 or 1");
        }
        try {
            ds.graphs.emplace_back(std::move(labels), edges);
        } catch (const ValidationError& e) {
            throw ParseError(loc(path, i + 1) + ": " + e.what());
        }
        ds.labels.push_back(cls.get<int>());
    }
    return ds;
}

void write_jsonl_dataset(const std::filesystem::path& path, const Dataset& ds) {
    if (auto v = validate_dataset(ds)) throw ValidationError(v->message);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open for writing: " + path.string());
    for (std::size_t i = 0; i < ds.graphs.size(); ++i) {
        json rec;
        rec["labels"] = ds.graphs[i].labels();
        auto edges = json::array();
        for (const auto& [u, v] : ds.graphs[i].edges()) edges.push_back({u, v});
        rec["edges"] = std::move(edges);
        rec["class"] = ds.labels[i];
        out << rec.dump() << '\n';
    }
}

}  // namespace treek
