#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treek/graph.hpp"

namespace treek {

/// Small deterministic generator (splitmix64). The standard distributions
/// are implementation-defined, so seeded corpora would differ between
/// standard libraries; this one produces the same stream everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }

    /// Uniform in [0, 1).
    double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Derives an independent stream for a labeled subtask.
    Rng fork(std::uint64_t salt) {
        return Rng(next() ^ (salt * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
    }

private:
    std::uint64_t state_;
};

/// Fisher-Yates shuffle.
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(v[i - 1], v[j]);
    }
}

/// Erdos-Renyi style labeled graph: node count uniform in
/// [min_nodes, max_nodes], each node pair an edge with `edge_prob`,
/// labels drawn uniformly from `alphabet`.
Graph random_labeled_graph(Rng& rng, int min_nodes, int max_nodes, double edge_prob,
                           const std::vector<std::string>& alphabet);

/// Sparse connected graph shaped like a small organic molecule: a random
/// spanning tree with bounded degree plus a few ring-closing edges.
Graph random_molecule_graph(Rng& rng, int min_nodes, int max_nodes, int max_degree,
                            const std::vector<std::string>& alphabet);

/// Alphabet of `size` single-letter labels: "A", "B", ...
std::vector<std::string> letter_alphabet(int size);

std::vector<int> random_permutation(int n, Rng& rng);

/// Relabels node indices: node v of g becomes node perm[v] of the result.
Graph permute_graph(const Graph& g, const std::vector<int>& perm);

}  // namespace treek
