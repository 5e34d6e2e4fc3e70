#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace treek {

// Reserved symbols used by the subtree encoding; node labels must not
// contain any of them.
inline constexpr std::string_view kOpenSym = "⌈";          // ⌈
inline constexpr std::string_view kCloseSym = "⌋";         // ⌋
inline constexpr std::string_view kChildSep = "#";
inline constexpr std::string_view kContextSep = "∘";       // ∘
// Marker for the empty context. Not reserved in labels, but it can never
// collide with an interned id (ids are rendered as decimal digits).
inline constexpr std::string_view kEmptyContext = "∅";     // ∅

/// True iff `label` is non-empty and contains no reserved symbol.
bool label_is_valid(std::string_view label);

struct Violation {
    enum class Kind {
        EmptyLabel,
        ReservedSymbol,
        SelfLoop,
        IndexOutOfRange,
        ClassLabel,
        SizeMismatch,
    };
    Kind kind;
    std::string message;
};

/// Reports the first violated graph invariant, or nullopt when the parts
/// describe a well-formed graph.
std::optional<Violation> validate_graph(const std::vector<std::string>& labels,
                                        const std::vector<std::pair<int, int>>& edges);

/// Undirected node-labeled graph with dense node indices.
///
/// Edges are stored once per unordered pair; adjacency lists are sorted by
/// node index. Construction validates all invariants and throws
/// ValidationError on the first violation.
class Graph {
public:
    Graph() = default;
    Graph(std::vector<std::string> labels, const std::vector<std::pair<int, int>>& edges);

    int node_count() const { return static_cast<int>(labels_.size()); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::string& label(int v) const { return labels_.at(static_cast<std::size_t>(v)); }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Neighbors of v in ascending index order.
    const std::vector<int>& neighbors(int v) const { return adj_.at(static_cast<std::size_t>(v)); }

    bool adjacent(int u, int v) const;

    /// Unique undirected edges as (min,max) pairs, lexicographically sorted.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    bool operator==(const Graph&) const = default;

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::pair<int, int>> edges_;
};

std::optional<Violation> validate_graph(const Graph& g);

/// A binary-classification graph dataset; class labels are -1 or +1.
struct Dataset {
    std::string name;
    std::vector<Graph> graphs;
    std::vector<int> labels;

    std::size_t size() const { return graphs.size(); }
};

/// First violated dataset invariant (size mismatch, class label domain,
/// per-graph invariants), or nullopt.
std::optional<Violation> validate_dataset(const Dataset& ds);

}  // namespace treek
