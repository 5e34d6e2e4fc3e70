#include "treek/dag_visit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace treek {

bool DagVisit::contains(int graph_vertex) const { return local_index(graph_vertex) >= 0; }

int DagVisit::local_index(int graph_vertex) const {
    if (graph_vertex < 0 || static_cast<std::size_t>(graph_vertex) >= local_of_.size()) return -1;
    return local_of_[static_cast<std::size_t>(graph_vertex)];
}

DagVisit dag_visit(const Graph& g, int root, int height) {
    if (root < 0 || root >= g.node_count()) {
        throw std::out_of_range("dag_visit: root " + std::to_string(root) +
                                " out of range [0," + std::to_string(g.node_count()) + ")");
    }
    if (height < 0) throw std::invalid_argument("dag_visit: height must be >= 0");

    DagVisit d;
    d.root = root;
    d.local_of_.assign(static_cast<std::size_t>(g.node_count()), -1);

    // BFS; the node vector doubles as the queue, so discovery order is by
    // nondecreasing depth.
    d.node.push_back(root);
    d.depth.push_back(0);
    d.local_of_[static_cast<std::size_t>(root)] = 0;
    for (std::size_t qi = 0; qi < d.node.size(); ++qi) {
        const int u = d.node[qi];
        const int du = d.depth[qi];
        if (du == height) continue;
        for (int w : g.neighbors(u)) {
            if (d.local_of_[static_cast<std::size_t>(w)] < 0) {
                d.local_of_[static_cast<std::size_t>(w)] = static_cast<int>(d.node.size());
                d.node.push_back(w);
                d.depth.push_back(du + 1);
            }
        }
    }
    d.diam = d.depth.back();

    // DAG edges: graph edges that descend exactly one level. Adjacency lists
    // are sorted, so children come out in ascending graph index order.
    const int k = d.size();
    d.children.resize(static_cast<std::size_t>(k));
    for (int lu = 0; lu < k; ++lu) {
        for (int w : g.neighbors(d.node[static_cast<std::size_t>(lu)])) {
            const int lw = d.local_of_[static_cast<std::size_t>(w)];
            if (lw >= 0 && d.depth[static_cast<std::size_t>(lw)] ==
                               d.depth[static_cast<std::size_t>(lu)] + 1) {
                d.children[static_cast<std::size_t>(lu)].push_back(lw);
            }
        }
    }

    // Path counts accumulate level by level; BFS order guarantees every
    // parent is processed before its children.
    d.n_sp.assign(static_cast<std::size_t>(k), 0.0);
    d.n_sp[0] = 1.0;
    for (int lu = 0; lu < k; ++lu) {
        for (int lw : d.children[static_cast<std::size_t>(lu)]) {
            d.n_sp[static_cast<std::size_t>(lw)] += d.n_sp[static_cast<std::size_t>(lu)];
        }
    }

    d.order.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) d.order[static_cast<std::size_t>(i)] = i;
    std::sort(d.order.begin(), d.order.end(), [&](int a, int b) {
        const int da = d.depth[static_cast<std::size_t>(a)];
        const int db = d.depth[static_cast<std::size_t>(b)];
        if (da != db) return da > db;
        return d.node[static_cast<std::size_t>(a)] < d.node[static_cast<std::size_t>(b)];
    });
    return d;
}

std::vector<int> visit_children(const DagVisit& visit, int u) {
    const int lu = visit.local_index(u);
    if (lu < 0) {
        throw std::out_of_range("visit_children: node " + std::to_string(u) +
                                " is not part of the visit");
    }
    std::vector<int> out;
    out.reserve(visit.children[static_cast<std::size_t>(lu)].size());
    for (int lw : visit.children[static_cast<std::size_t>(lu)]) {
        out.push_back(visit.node[static_cast<std::size_t>(lw)]);
    }
    return out;
}

std::optional<std::string> validate_visit(const Graph& g, const DagVisit& visit, int height) {
    const int k = visit.size();
    if (k == 0) return "visit has no nodes";
    if (visit.node[0] != visit.root) return "local index 0 is not the root";
    if (visit.depth[0] != 0) return "depth(root) != 0";
    if (visit.n_sp[0] != 1.0) return "n_sp(root) != 1";

    int max_depth = 0;
    for (int i = 0; i < k; ++i) {
        const int dep = visit.depth[static_cast<std::size_t>(i)];
        if (dep < 0 || dep > height) return "node at depth " + std::to_string(dep);
        max_depth = std::max(max_depth, dep);
    }
    if (visit.diam != max_depth) return "diam does not match deepest node";
    if (visit.diam > height) return "diam exceeds height";

    for (int lu = 0; lu < k; ++lu) {
        const int u = visit.node[static_cast<std::size_t>(lu)];
        for (int lw : visit.children[static_cast<std::size_t>(lu)]) {
            if (lw < 0 || lw >= k) return "child local id out of range";
            if (visit.depth[static_cast<std::size_t>(lw)] !=
                visit.depth[static_cast<std::size_t>(lu)] + 1) {
                return "DAG edge does not descend exactly one level";
            }
            if (!g.adjacent(u, visit.node[static_cast<std::size_t>(lw)])) {
                return "DAG edge is not a graph edge";
            }
        }
        // completeness: every graph edge descending one level inside the
        // visit must be a DAG edge
        for (int w : g.neighbors(u)) {
            const int lw = visit.local_index(w);
            if (lw >= 0 && visit.depth[static_cast<std::size_t>(lw)] ==
                               visit.depth[static_cast<std::size_t>(lu)] + 1) {
                const auto& ch = visit.children[static_cast<std::size_t>(lu)];
                if (std::find(ch.begin(), ch.end(), lw) == ch.end())
                    return "missing DAG edge for a one-level graph edge";
            }
        }
    }

    // n_sp recurrence
    std::vector<double> expected(static_cast<std::size_t>(k), 0.0);
    expected[0] = 1.0;
    for (int lu = 0; lu < k; ++lu) {
        for (int lw : visit.children[static_cast<std::size_t>(lu)]) {
            expected[static_cast<std::size_t>(lw)] += visit.n_sp[static_cast<std::size_t>(lu)];
        }
    }
    for (int i = 0; i < k; ++i) {
        if (expected[static_cast<std::size_t>(i)] != visit.n_sp[static_cast<std::size_t>(i)]) {
            return "n_sp(u) != sum of parent n_sp at local node " + std::to_string(i);
        }
    }

    // order: a permutation that lists every node before its DAG parents
    if (static_cast<int>(visit.order.size()) != k) return "order is not a permutation";
    std::vector<int> pos(static_cast<std::size_t>(k), -1);
    for (int i = 0; i < k; ++i) {
        const int lu = visit.order[static_cast<std::size_t>(i)];
        if (lu < 0 || lu >= k || pos[static_cast<std::size_t>(lu)] != -1)
            return "order is not a permutation";
        pos[static_cast<std::size_t>(lu)] = i;
    }
    for (int lu = 0; lu < k; ++lu) {
        for (int lw : visit.children[static_cast<std::size_t>(lu)]) {
            if (pos[static_cast<std::size_t>(lw)] >= pos[static_cast<std::size_t>(lu)]) {
                return "order visits a parent before its child";
            }
        }
    }
    return std::nullopt;
}

}  // namespace treek
