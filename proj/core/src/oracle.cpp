#include "treek/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "treek/errors.hpp"

namespace treek {

namespace {

// BFS depths capped at `height`; -1 for unreached nodes. Local to the
// oracle on purpose: it must not depend on the DagVisit implementation.
std::vector<int> bfs_depths(const Graph& g, int root, int height) {
    std::vector<int> depth(static_cast<std::size_t>(g.node_count()), -1);
    std::vector<int> queue{root};
    depth[static_cast<std::size_t>(root)] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const int u = queue[qi];
        const int du = depth[static_cast<std::size_t>(u)];
        if (du == height) continue;
        for (int w : g.neighbors(u)) {
            if (depth[static_cast<std::size_t>(w)] < 0) {
                depth[static_cast<std::size_t>(w)] = du + 1;
                queue.push_back(w);
            }
        }
    }
    return depth;
}

struct Unfolder {
    const Graph& g;
    const std::vector<int>& depth;
    std::size_t budget;
    TreeVisit tree;

    // Builds the copy of `u` with `remaining` height budget and returns its
    // node index together with the canonical string of its subtree.
    std::pair<int, std::string> build(int u, int remaining) {
        if (tree.nodes.size() >= budget) {
            throw BudgetError("tree_visit: node budget of " + std::to_string(budget) +
                              " nodes exceeded");
        }
        const int self = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back(TreeVisit::Node{g.label(u), u, {}});
        std::vector<std::pair<std::string, int>> kids;
        if (remaining > 0) {
            for (int w : g.neighbors(u)) {
                if (depth[static_cast<std::size_t>(w)] == depth[static_cast<std::size_t>(u)] + 1) {
                    auto [child, canon] = build(w, remaining - 1);
                    kids.emplace_back(std::move(canon), child);
                }
            }
        }
        std::sort(kids.begin(), kids.end());
        std::string canon;
        if (kids.empty()) {
            canon = tree.nodes[static_cast<std::size_t>(self)].label;
        } else {
            canon = tree.nodes[static_cast<std::size_t>(self)].label;
            canon += kOpenSym;
            for (std::size_t i = 0; i < kids.size(); ++i) {
                if (i > 0) canon += kChildSep;
                canon += kids[i].first;
                tree.nodes[static_cast<std::size_t>(self)].children.push_back(kids[i].second);
            }
            canon += kCloseSym;
        }
        return {self, std::move(canon)};
    }
};

void annotate_node(const TreeVisit& t, int v, TreeVisitAnnotation& a) {
    std::uint64_t size = 1;
    std::vector<std::string> kid_canons;
    for (int c : t.nodes[static_cast<std::size_t>(v)].children) {
        annotate_node(t, c, a);
        size += a.subtree_size[static_cast<std::size_t>(c)];
        kid_canons.push_back(a.canonical[static_cast<std::size_t>(c)]);
    }
    std::sort(kid_canons.begin(), kid_canons.end());
    std::string canon = t.nodes[static_cast<std::size_t>(v)].label;
    if (!kid_canons.empty()) {
        canon += kOpenSym;
        for (std::size_t i = 0; i < kid_canons.size(); ++i) {
            if (i > 0) canon += kChildSep;
            canon += kid_canons[i];
        }
        canon += kCloseSym;
    }
    a.canonical[static_cast<std::size_t>(v)] = std::move(canon);
    a.subtree_size[static_cast<std::size_t>(v)] = size;
}

struct AnnotatedVisit {
    TreeVisit tree;
    TreeVisitAnnotation ann;
};

// All distinct visits of a graph: heights 0..min(eccentricity, h) per root.
// Beyond the eccentricity the visit stops growing, so larger heights would
// only repeat the deepest one.
std::vector<AnnotatedVisit> all_visits(const Graph& g, int h, std::size_t budget) {
    std::vector<AnnotatedVisit> visits;
    for (int v = 0; v < g.node_count(); ++v) {
        const auto depth = bfs_depths(g, v, h);
        int ecc = 0;
        for (int d : depth) ecc = std::max(ecc, d);
        for (int j = 0; j <= ecc; ++j) {
            AnnotatedVisit av;
            av.tree = tree_visit(g, v, j, budget);
            av.ann = annotate(av.tree);
            visits.push_back(std::move(av));
        }
    }
    return visits;
}

// Canonical type -> (occurrence count, subtree size) over all proper
// subtrees of all distinct visits.
std::map<std::string, std::pair<double, std::uint64_t>> subtree_multiset(
    const Graph& g, int h, std::size_t budget) {
    std::map<std::string, std::pair<double, std::uint64_t>> ms;
    for (const auto& av : all_visits(g, h, budget)) {
        for (std::size_t v = 0; v < av.tree.size(); ++v) {
            auto& slot = ms[av.ann.canonical[v]];
            slot.first += 1.0;
            slot.second = av.ann.subtree_size[v];
        }
    }
    return ms;
}

}  // namespace

TreeVisit tree_visit(const Graph& g, int root, int height, std::size_t node_budget) {
    if (root < 0 || root >= g.node_count()) {
        throw std::out_of_range("tree_visit: root " + std::to_string(root) + " out of range");
    }
    if (height < 0) throw std::invalid_argument("tree_visit: height must be >= 0");
    Unfolder unfolder{g, bfs_depths(g, root, height), node_budget, {}};
    unfolder.build(root, height);
    return std::move(unfolder.tree);
}

TreeVisitAnnotation annotate(const TreeVisit& t) {
    TreeVisitAnnotation a;
    a.canonical.resize(t.size());
    a.subtree_size.resize(t.size());
    if (!t.nodes.empty()) annotate_node(t, 0, a);
    return a;
}

double c_st(const TreeVisit& t1, int v1, const TreeVisit& t2, int v2, double lambda) {
    const auto& n1 = t1.nodes[static_cast<std::size_t>(v1)];
    const auto& n2 = t2.nodes[static_cast<std::size_t>(v2)];
    const double k_label = n1.label == n2.label ? 1.0 : 0.0;
    if (n1.children.empty() && n2.children.empty()) {
        return lambda * k_label;
    }
    if (n1.children.size() == n2.children.size()) {
        double value = lambda * k_label;
        for (std::size_t i = 0; i < n1.children.size(); ++i) {
            value *= c_st(t1, n1.children[i], t2, n2.children[i], lambda);
        }
        return value;
    }
    return 0.0;
}

double brute_force_odd(const Graph& g1, const Graph& g2, const KernelParams& params,
                       std::size_t node_budget) {
    validate_params(params);
    const auto ms1 = subtree_multiset(g1, params.height, node_budget);
    const auto ms2 = subtree_multiset(g2, params.height, node_budget);
    double kernel = 0.0;
    for (const auto& [canon, slot] : ms1) {
        auto it = ms2.find(canon);
        if (it == ms2.end()) continue;
        kernel += slot.first * it->second.first *
                  std::pow(params.lambda, static_cast<double>(slot.second));
    }
    return kernel;
}

double brute_force_tck(const Graph& g1, const Graph& g2, const KernelParams& params,
                       std::size_t node_budget) {
    validate_params(params);
    const auto visits1 = all_visits(g1, params.height, node_budget);
    const auto visits2 = all_visits(g2, params.height, node_budget);

    // Whole-visit term: matching visit pairs, each weighted by
    // lambda^((size1+size2)/2).
    std::map<std::string, std::pair<double, std::uint64_t>> roots1;
    for (const auto& av : visits1) {
        auto& slot = roots1[av.ann.canonical[0]];
        slot.first += 1.0;
        slot.second = av.ann.subtree_size[0];
    }
    std::map<std::string, double> roots2;
    for (const auto& av : visits2) roots2[av.ann.canonical[0]] += 1.0;
    double kernel = 0.0;
    for (const auto& [canon, slot] : roots1) {
        auto it = roots2.find(canon);
        if (it == roots2.end()) continue;
        kernel +=
            slot.first * it->second * std::pow(params.lambda, static_cast<double>(slot.second));
    }

    // Context term: for every pair of node copies whose proper subtrees
    // coincide, every pair of their children contributes the subtree
    // kernel of the child subtrees. Pairing all children (not only equal
    // positions) counts repeated sibling subtrees with their full
    // multiplicity, which is what the contextualized feature frequencies
    // require.
    for (const auto& a : visits1) {
        for (const auto& b : visits2) {
            for (std::size_t u1 = 0; u1 < a.tree.size(); ++u1) {
                const auto& kids1 = a.tree.nodes[u1].children;
                if (kids1.empty()) continue;
                for (std::size_t u2 = 0; u2 < b.tree.size(); ++u2) {
                    const auto& kids2 = b.tree.nodes[u2].children;
                    if (kids2.empty()) continue;
                    if (a.ann.canonical[u1] != b.ann.canonical[u2]) continue;
                    for (int c1 : kids1) {
                        for (int c2 : kids2) {
                            kernel += c_st(a.tree, c1, b.tree, c2, params.lambda);
                        }
                    }
                }
            }
        }
    }
    return kernel;
}

}  // namespace treek
