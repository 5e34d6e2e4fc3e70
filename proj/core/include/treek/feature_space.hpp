#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "treek/graph.hpp"
#include "treek/interner.hpp"

namespace treek {

enum class FeatureSpaceTag { Tck, Odd, TckOdd, Wl };

std::string_view to_string(FeatureSpaceTag tag);
FeatureSpaceTag feature_space_from_string(std::string_view name);

/// Kernel parameters: maximum visit height and subtree weight factor.
struct KernelParams {
    int height = 1;
    double lambda = 1.0;
};

/// Throws ConfigError unless height >= 1 and lambda > 0.
void validate_params(const KernelParams& params);

/// One feature of a lambda-independent extraction: an interned id, the
/// integer occurrence mass `count` (sums of shortest-path multiplicities),
/// and the node count `size` of the encoded subtree. The materialized
/// weight is count * lambda^(size/2).
struct FeatureEntry {
    FeatureId id = 0;
    double count = 0.0;
    std::uint64_t size = 0;
};

/// Extraction result for one graph at a fixed height; entries sorted by id.
struct FeatureProfile {
    FeatureSpaceTag space = FeatureSpaceTag::Tck;
    int height = 0;
    std::vector<FeatureEntry> entries;
};

struct WeightedFeature {
    FeatureId id = 0;
    double weight = 0.0;
};

/// Sparse explicit image of a graph; entries sorted by id, weights > 0.
struct SparseFeatureVector {
    FeatureSpaceTag space = FeatureSpaceTag::Tck;
    std::vector<WeightedFeature> entries;

    std::size_t nnz() const { return entries.size(); }
};

/// Lambda-independent feature extraction for one graph.
FeatureProfile extract_profile(const Graph& g, FeatureSpaceTag space, int height,
                               FeatureInterner& interner);

/// Batch extraction. Graphs are processed concurrently with per-graph
/// feature logs; ids are then assigned by replaying the logs in graph
/// order, so the interner contents and all returned profiles are identical
/// for every thread count.
std::vector<FeatureProfile> extract_profiles(const std::vector<Graph>& graphs,
                                             FeatureSpaceTag space, int height,
                                             FeatureInterner& interner, int threads = 1);

/// Applies the lambda weighting to a profile.
SparseFeatureVector materialize(const FeatureProfile& profile, double lambda);

/// Contextualized subtree features: for every root, every DAG-visit node u
/// in reverse topological order and every admissible height d, the subtree
/// feature of each child at height d-1 is credited under the context of u's
/// feature at height d with weight n_sp(root,u)·lambda^(size/2); root
/// features are credited under the empty context.
SparseFeatureVector tck_features(const Graph& g, const KernelParams& params,
                                 FeatureInterner& interner);

/// Plain (non-contextualized) subtree features over the same loop ranges.
SparseFeatureVector odd_features(const Graph& g, const KernelParams& params,
                                 FeatureInterner& interner);

/// Disjoint union of tck_features and odd_features entries; contexted and
/// plain encodings never collide.
SparseFeatureVector tck_plus_odd_features(const Graph& g, const KernelParams& params,
                                          FeatureInterner& interner);

/// Iterated neighborhood label refinement counts, iterations 0..height,
/// with iteration-tagged feature ids.
SparseFeatureVector wl_features(const Graph& g, int height, FeatureInterner& interner);

/// JSON-lines dump of one feature vector:
///   {"graph": index, "space": tag, "features": [[encoding, weight], ...]}
/// with entries sorted by their resolved (id-free) encoding string.
std::string feature_vector_jsonl(const SparseFeatureVector& v, std::size_t graph_index,
                                 const FeatureInterner& interner);

}  // namespace treek
