#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treek/graph.hpp"

namespace treek {

/// Depth-limited shortest-path DAG rooted at a vertex.
///
/// Nodes are stored under compact local indices in BFS discovery order
/// (the root is always local index 0). `children` holds DAG successors
/// (edges to the next depth level) sorted by graph node index. `order` is
/// a reverse topological sequence: descending depth, ties broken by
/// ascending graph node index, so every node appears before all of its
/// DAG parents.
struct DagVisit {
    int root = 0;
    std::vector<int> node;                  // local -> graph node index
    std::vector<int> depth;                 // hop count from the root
    std::vector<double> n_sp;               // number of shortest root->node paths
    std::vector<std::vector<int>> children; // local ids of DAG successors
    std::vector<int> order;                 // reverse topological local ids
    int diam = 0;                           // maximum depth present

    int size() const { return static_cast<int>(node.size()); }
    bool contains(int graph_vertex) const;
    /// Local index of a graph vertex; -1 when absent.
    int local_index(int graph_vertex) const;

    bool operator==(const DagVisit&) const = default;

private:
    friend DagVisit dag_visit(const Graph&, int, int);
    std::vector<int> local_of_;  // graph node -> local id or -1
};

/// Builds the DAG of all shortest paths of length at most `height` from
/// `root`. Edges between equal-depth nodes are not part of the DAG.
/// Throws std::out_of_range when root is not a node of the graph.
DagVisit dag_visit(const Graph& g, int root, int height);

/// DAG successors of graph vertex `u` as graph indices, in ascending order.
/// Throws std::out_of_range when `u` is not part of the visit.
std::vector<int> visit_children(const DagVisit& visit, int u);

/// Walks the structure and reports the first violated DagVisit invariant,
/// or nullopt if the visit is consistent with `g` and `height`.
std::optional<std::string> validate_visit(const Graph& g, const DagVisit& visit, int height);

}  // namespace treek
