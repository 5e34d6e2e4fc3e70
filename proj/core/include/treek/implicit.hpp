#pragma once

#include <cstdint>
#include <vector>

#include "treek/graph.hpp"
#include "treek/interner.hpp"

namespace treek {

/// Per-feature statistics of the implicit decomposition of one graph:
/// how often the feature roots a visit, its shortest-path-weighted total
/// frequency, and the set of context features it appears under, each with
/// the containment multiplicity M(f,c) (the number of children of c whose
/// subtree is isomorphic to f).
struct ImplicitRecord {
    double freq_root = 0.0;
    double freq_tot = 0.0;
    std::vector<std::pair<FeatureId, std::uint32_t>> contexts;  // sorted by context id
};

/// Implicit feature space of a graph: records and subtree sizes, keyed by
/// ids of the shared interner the space was built with.
class ImplicitFeatureSpace {
public:
    ImplicitFeatureSpace() = default;
    ImplicitFeatureSpace(const FeatureInterner* interner, int height)
        : interner_(interner), height_(height) {}

    const FeatureInterner* interner() const { return interner_; }
    int height() const { return height_; }

    const std::vector<std::pair<FeatureId, ImplicitRecord>>& records() const { return records_; }
    const ImplicitRecord* record(FeatureId id) const;
    std::uint64_t size_of(FeatureId id) const;

    std::vector<std::pair<FeatureId, ImplicitRecord>>& mutable_records() { return records_; }
    std::vector<std::pair<FeatureId, std::uint64_t>>& mutable_sizes() { return sizes_; }

private:
    const FeatureInterner* interner_ = nullptr;
    int height_ = 0;
    std::vector<std::pair<FeatureId, ImplicitRecord>> records_;  // sorted by feature id
    std::vector<std::pair<FeatureId, std::uint64_t>> sizes_;     // sorted by feature id
};

/// Implicit decomposition of a graph: walks every DAG visit in reverse
/// topological order, building the same canonical feature keys as the
/// explicit extraction, registering each composite into the context sets of
/// its children, and accumulating root and total frequencies.
ImplicitFeatureSpace decompose_implicit(const Graph& g, int height, FeatureInterner& interner);

/// Batch variant with the same deterministic id assignment as
/// extract_profiles.
std::vector<ImplicitFeatureSpace> decompose_implicit_all(const std::vector<Graph>& graphs,
                                                         int height, FeatureInterner& interner,
                                                         int threads = 1);

/// Kernel value from two implicit feature spaces: over shared features the
/// product of root frequencies, plus, over shared contexts, the product of
/// the contexts' total frequencies scaled by M(f,c)^2; every term carries
/// lambda^size(f). Throws std::invalid_argument when the spaces were built
/// against different interners or heights.
double kernel_implicit(const ImplicitFeatureSpace& a, const ImplicitFeatureSpace& b,
                       double lambda);

}  // namespace treek
