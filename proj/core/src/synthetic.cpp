#include "treek/synthetic.hpp"

#include <algorithm>
#include <stdexcept>

namespace treek {

std::vector<std::string> letter_alphabet(int size) {
    std::vector<std::string> alphabet;
    alphabet.reserve(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) {
        std::string label(1, static_cast<char>('A' + i % 26));
        if (i >= 26) label += std::to_string(i / 26);
        alphabet.push_back(std::move(label));
    }
    return alphabet;
}

Graph random_labeled_graph(Rng& rng, int min_nodes, int max_nodes, double edge_prob,
                           const std::vector<std::string>& alphabet) {
    if (min_nodes < 1 || max_nodes < min_nodes) {
        throw std::invalid_argument("random_labeled_graph: bad node range");
    }
    const int n = min_nodes + static_cast<int>(rng.below(
                                  static_cast<std::uint64_t>(max_nodes - min_nodes + 1)));
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        labels.push_back(alphabet[static_cast<std::size_t>(rng.below(alphabet.size()))]);
    }
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (rng.real() < edge_prob) edges.emplace_back(u, v);
        }
    }
    return Graph(std::move(labels), edges);
}

Graph random_molecule_graph(Rng& rng, int min_nodes, int max_nodes, int max_degree,
                            const std::vector<std::string>& alphabet) {
    if (min_nodes < 1 || max_nodes < min_nodes) {
        throw std::invalid_argument("random_molecule_graph: bad node range");
    }
    const int n = min_nodes + static_cast<int>(rng.below(
                                  static_cast<std::uint64_t>(max_nodes - min_nodes + 1)));
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        labels.push_back(alphabet[static_cast<std::size_t>(rng.below(alphabet.size()))]);
    }
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    std::vector<std::pair<int, int>> edges;
    // spanning tree with a degree cap
    for (int v = 1; v < n; ++v) {
        int parent = -1;
        for (int attempt = 0; attempt < 8 && parent < 0; ++attempt) {
            const int cand = static_cast<int>(rng.below(static_cast<std::uint64_t>(v)));
            if (degree[static_cast<std::size_t>(cand)] < max_degree) parent = cand;
        }
        if (parent < 0) parent = v - 1;  // fall back to a chain link
        edges.emplace_back(parent, v);
        ++degree[static_cast<std::size_t>(parent)];
        ++degree[static_cast<std::size_t>(v)];
    }
    // a few ring closures
    const int rings = n >= 5 ? static_cast<int>(rng.below(static_cast<std::uint64_t>(n / 5 + 1)))
                             : 0;
    for (int r = 0; r < rings; ++r) {
        const int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        if (u == v) continue;
        if (degree[static_cast<std::size_t>(u)] >= max_degree ||
            degree[static_cast<std::size_t>(v)] >= max_degree) {
            continue;
        }
        edges.emplace_back(std::min(u, v), std::max(u, v));
        ++degree[static_cast<std::size_t>(u)];
        ++degree[static_cast<std::size_t>(v)];
    }
    return Graph(std::move(labels), edges);
}

std::vector<int> random_permutation(int n, Rng& rng) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    shuffle(perm, rng);
    return perm;
}

Graph permute_graph(const Graph& g, const std::vector<int>& perm) {
    const int n = g.node_count();
    if (static_cast<int>(perm.size()) != n) {
        throw std::invalid_argument("permute_graph: permutation size mismatch");
    }
    std::vector<std::string> labels(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        labels[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])] = g.label(v);
    }
    std::vector<std::pair<int, int>> edges;
    edges.reserve(g.edge_count());
    for (const auto& [u, v] : g.edges()) {
        edges.emplace_back(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
    }
    return Graph(std::move(labels), edges);
}

}  // namespace treek
