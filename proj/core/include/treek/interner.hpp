#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace treek {

using FeatureId = std::uint32_t;

/// Renders an encoding for a single-node subtree: the label itself.
/// Throws ValidationError when the label is empty or contains a reserved
/// symbol.
std::string encode_leaf(std::string_view label);

/// Renders `label ⌈ id_1 # id_2 # … ⌋` with the child ids sorted ascending
/// and printed in decimal. `child_ids` must be non-empty; it is sorted in
/// place. Any fixed total order on ids yields a canonical form; numeric
/// order matches the cheapest comparison.
std::string encode_composite(std::string_view label, std::vector<FeatureId>& child_ids);

/// `feature ∘ context`, both rendered in decimal.
std::string encode_context_pair(FeatureId feature, FeatureId context);

/// `feature ∘ ∅` for a feature occurring as the root of a visit.
std::string encode_empty_context(FeatureId feature);

/// Refined node label of one relabeling iteration:
/// `prev ⌈ n_1 # n_2 # … ⌋` over the sorted previous-iteration ids of the
/// neighbors (possibly empty). `neighbor_ids` is sorted in place.
std::string encode_wl_label(FeatureId prev, std::vector<FeatureId>& neighbor_ids);

/// Iteration-tagged refinement feature: `iteration # label_id`.
std::string encode_wl_feature(std::uint32_t iteration, FeatureId label_id);

/// Structural description of an interned encoding, kept so that features
/// can be decomposed and expanded without re-parsing strings.
struct FeatureInfo {
    enum class Kind { Leaf, Composite, ContextPair, EmptyContextPair, WlLabel, WlFeature };
    Kind kind = Kind::Leaf;
    std::string label;              // head label for Leaf / Composite
    std::vector<FeatureId> parts;   // children, {feature[, context]}, neighbor ids, {label id}
    std::uint64_t size = 0;         // node count of the encoded subtree (0 for WL entries)
    std::uint32_t iteration = 0;    // WlFeature only
};

/// Incrementally built bijection between encoding strings and dense ids.
///
/// Interning is collision-free: distinct strings always receive distinct
/// ids, the same string always maps back to the same id, and ids are dense
/// from 0 in insertion order. All mutating and reading members are guarded
/// by one mutex, so concurrent use observes interning as atomic.
class FeatureInterner {
public:
    FeatureInterner() = default;
    FeatureInterner(const FeatureInterner&) = delete;
    FeatureInterner& operator=(const FeatureInterner&) = delete;

    FeatureId leaf(std::string_view label);
    /// `child_ids` are sorted internally.
    FeatureId composite(std::string_view label, std::vector<FeatureId> child_ids);
    FeatureId context_pair(FeatureId feature, FeatureId context);
    FeatureId empty_context(FeatureId feature);
    FeatureId wl_label(FeatureId prev, std::vector<FeatureId> neighbor_ids);
    FeatureId wl_feature(std::uint32_t iteration, FeatureId label_id);

    std::optional<FeatureId> find(std::string_view encoding) const;
    std::string encoding(FeatureId id) const;
    FeatureInfo info(FeatureId id) const;
    std::uint64_t size_of(FeatureId id) const;
    std::size_t count() const;

    /// Expands an id into an id-free canonical string: composite child ids
    /// and WL heads are replaced by their own expansions, recursively.
    /// Context pairs expand as `feature∘context`, WL features as
    /// `iteration∘expansion`.
    std::string resolve(FeatureId id) const;

private:
    FeatureId intern_locked(std::string&& encoding, FeatureInfo&& info);
    void check_id(FeatureId id) const;
    std::string resolve_locked(FeatureId id) const;

    mutable std::mutex mutex_;
    std::unordered_map<std::string, FeatureId> ids_;
    std::vector<std::string> encodings_;
    std::vector<FeatureInfo> infos_;
};

}  // namespace treek
