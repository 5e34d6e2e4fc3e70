#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treek/feature_space.hpp"
#include "treek/graph.hpp"

namespace treek {

/// Materialized shortest-path tree-visit. Multi-parent DAG nodes are
/// duplicated, so the node count can exceed the graph order; children of
/// every node are in canonical order (recursive label order). Node 0 is
/// the root; children always have larger indices than their parent.
struct TreeVisit {
    struct Node {
        std::string label;
        int graph_vertex = -1;
        std::vector<int> children;
    };
    std::vector<Node> nodes;

    std::size_t size() const { return nodes.size(); }
};

inline constexpr std::size_t kDefaultNodeBudget = 1'000'000;

/// Unfolds the shortest-path DAG of `root` limited to `height` into a tree.
/// Throws BudgetError when the unfolded tree would exceed `node_budget`
/// nodes, and std::out_of_range for a bad root.
TreeVisit tree_visit(const Graph& g, int root, int height,
                     std::size_t node_budget = kDefaultNodeBudget);

/// Canonical serialization of every proper subtree of the visit (children
/// sorted recursively by their canonical strings, independent of the
/// interner) plus the subtree node counts.
struct TreeVisitAnnotation {
    std::vector<std::string> canonical;
    std::vector<std::uint64_t> subtree_size;
};
TreeVisitAnnotation annotate(const TreeVisit& t);

/// The recursive subtree-matching function, evaluated verbatim: lambda
/// times label equality at leaf pairs, the product over aligned children
/// when out-degrees match, 0 otherwise.
double c_st(const TreeVisit& t1, int v1, const TreeVisit& t2, int v2, double lambda);

/// Direct-from-definition subtree kernel: enumerates every proper subtree
/// of every distinct tree-visit (heights 0..min(eccentricity, h) per root),
/// canonicalizes, and sums count1 * count2 * lambda^size over matching
/// subtree types.
double brute_force_odd(const Graph& g1, const Graph& g2, const KernelParams& params,
                       std::size_t node_budget = kDefaultNodeBudget);

/// Direct-from-definition contextualized kernel over the same visit set:
/// matching whole visits weighted lambda^size, plus, for every pair of
/// node copies whose proper subtrees coincide, the sum of c_st over all
/// child pairs of the matched copies.
double brute_force_tck(const Graph& g1, const Graph& g2, const KernelParams& params,
                       std::size_t node_budget = kDefaultNodeBudget);

}  // namespace treek
