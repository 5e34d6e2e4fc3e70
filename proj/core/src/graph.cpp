#include "treek/graph.hpp"

#include <algorithm>

#include "treek/errors.hpp"

namespace treek {

namespace {
constexpr std::string_view kReserved[] = {kOpenSym, kCloseSym, kChildSep, kContextSep};
}

bool label_is_valid(std::string_view label) {
    if (label.empty()) return false;
    for (std::string_view sym : kReserved) {
        if (label.find(sym) != std::string_view::npos) return false;
    }
    return true;
}

std::optional<Violation> validate_graph(const std::vector<std::string>& labels,
                                        const std::vector<std::pair<int, int>>& edges) {
    const int n = static_cast<int>(labels.size());
    for (int v = 0; v < n; ++v) {
        if (labels[static_cast<std::size_t>(v)].empty()) {
            return Violation{Violation::Kind::EmptyLabel,
                             "node " + std::to_string(v) + " has an empty label"};
        }
        if (!label_is_valid(labels[static_cast<std::size_t>(v)])) {
            return Violation{Violation::Kind::ReservedSymbol,
                             "label of node " + std::to_string(v) + " (\"" +
                                 labels[static_cast<std::size_t>(v)] +
                                 "\") contains a reserved encoding symbol"};
        }
    }
    for (const auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n) {
            return Violation{Violation::Kind::IndexOutOfRange,
                             "edge (" + std::to_string(u) + "," + std::to_string(v) +
                                 ") references a node outside [0," + std::to_string(n) + ")"};
        }
        if (u == v) {
            return Violation{Violation::Kind::SelfLoop,
                             "self-loop at node " + std::to_string(u)};
        }
    }
    return std::nullopt;
}

Graph::Graph(std::vector<std::string> labels, const std::vector<std::pair<int, int>>& edges)
    : labels_(std::move(labels)) {
    if (auto v = validate_graph(labels_, edges)) throw ValidationError(v->message);
    edges_.reserve(edges.size());
    for (const auto& [u, v] : edges) {
        edges_.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    adj_.resize(labels_.size());
    for (const auto& [u, v] : edges_) {
        adj_[static_cast<std::size_t>(u)].push_back(v);
        adj_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
}

bool Graph::adjacent(int u, int v) const {
    const auto& nbrs = adj_.at(static_cast<std::size_t>(u));
    if (v < 0 || v >= node_count()) return false;
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::optional<Violation> validate_graph(const Graph& g) {
    return validate_graph(g.labels(), g.edges());
}

std::optional<Violation> validate_dataset(const Dataset& ds) {
    if (ds.graphs.size() != ds.labels.size()) {
        return Violation{Violation::Kind::SizeMismatch,
                         "dataset has " + std::to_string(ds.graphs.size()) + " graphs but " +
                             std::to_string(ds.labels.size()) + " class labels"};
    }
    for (std::size_t i = 0; i < ds.labels.size(); ++i) {
        if (ds.labels[i] != -1 && ds.labels[i] != 1) {
            return Violation{Violation::Kind::ClassLabel,
                             "class label of graph " + std::to_string(i) + " is " +
                                 std::to_string(ds.labels[i]) + ", expected -1 or +1"};
        }
    }
    for (std::size_t i = 0; i < ds.graphs.size(); ++i) {
        if (auto v = validate_graph(ds.graphs[i])) {
            v->message = "graph " + std::to_string(i) + ": " + v->message;
            return v;
        }
    }
    return std::nullopt;
}

}  // namespace treek
