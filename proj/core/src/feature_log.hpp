#pragma once

// Internal: per-graph feature log used by the extraction engines.
//
// Extraction over several graphs must hand out the same ids regardless of
// the number of worker threads. Each graph is therefore extracted against
// its own local table, recording the structure of every entry; afterwards
// the logs are replayed into the shared interner in graph order. Children
// are always interned before the entries referring to them, so the replay
// can translate local ids to global ids in one pass, re-sorting composite
// children under the global numbering. The result is bit-identical to a
// fully sequential extraction.

#include <string>
#include <unordered_map>
#include <vector>

#include "treek/interner.hpp"

namespace treek::detail {

class LocalLog {
public:
    FeatureId leaf(std::string_view label) {
        return intern(encode_leaf(label),
                      FeatureInfo{FeatureInfo::Kind::Leaf, std::string(label), {}, 1, 0});
    }

    FeatureId composite(std::string_view label, std::vector<FeatureId> child_ids) {
        std::string enc = encode_composite(label, child_ids);
        std::uint64_t size = 1;
        for (FeatureId c : child_ids) size += entries_[c].size;
        return intern(std::move(enc), FeatureInfo{FeatureInfo::Kind::Composite,
                                                  std::string(label), std::move(child_ids),
                                                  size, 0});
    }

    FeatureId context_pair(FeatureId feature, FeatureId context) {
        return intern(encode_context_pair(feature, context),
                      FeatureInfo{FeatureInfo::Kind::ContextPair, {}, {feature, context},
                                  entries_[feature].size, 0});
    }

    FeatureId empty_context(FeatureId feature) {
        return intern(encode_empty_context(feature),
                      FeatureInfo{FeatureInfo::Kind::EmptyContextPair, {}, {feature},
                                  entries_[feature].size, 0});
    }

    FeatureId wl_label(FeatureId prev, std::vector<FeatureId> neighbor_ids) {
        std::string enc = encode_wl_label(prev, neighbor_ids);
        std::vector<FeatureId> parts;
        parts.reserve(neighbor_ids.size() + 1);
        parts.push_back(prev);
        parts.insert(parts.end(), neighbor_ids.begin(), neighbor_ids.end());
        return intern(std::move(enc),
                      FeatureInfo{FeatureInfo::Kind::WlLabel, {}, std::move(parts), 0, 0});
    }

    FeatureId wl_feature(std::uint32_t iteration, FeatureId label_id) {
        return intern(encode_wl_feature(iteration, label_id),
                      FeatureInfo{FeatureInfo::Kind::WlFeature, {}, {label_id}, 0, iteration});
    }

    std::uint64_t size_of(FeatureId id) const { return entries_[id].size; }
    const std::vector<FeatureInfo>& entries() const { return entries_; }

    /// Replays all entries into `interner` (in creation order) and returns
    /// the local-to-global id translation.
    std::vector<FeatureId> merge_into(FeatureInterner& interner) const {
        std::vector<FeatureId> glob(entries_.size());
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            const FeatureInfo& e = entries_[i];
            switch (e.kind) {
                case FeatureInfo::Kind::Leaf:
                    glob[i] = interner.leaf(e.label);
                    break;
                case FeatureInfo::Kind::Composite: {
                    std::vector<FeatureId> kids;
                    kids.reserve(e.parts.size());
                    for (FeatureId c : e.parts) kids.push_back(glob[c]);
                    glob[i] = interner.composite(e.label, std::move(kids));
                    break;
                }
                case FeatureInfo::Kind::ContextPair:
                    glob[i] = interner.context_pair(glob[e.parts[0]], glob[e.parts[1]]);
                    break;
                case FeatureInfo::Kind::EmptyContextPair:
                    glob[i] = interner.empty_context(glob[e.parts[0]]);
                    break;
                case FeatureInfo::Kind::WlLabel: {
                    std::vector<FeatureId> neigh;
                    neigh.reserve(e.parts.size() - 1);
                    for (std::size_t p = 1; p < e.parts.size(); ++p)
                        neigh.push_back(glob[e.parts[p]]);
                    glob[i] = interner.wl_label(glob[e.parts[0]], std::move(neigh));
                    break;
                }
                case FeatureInfo::Kind::WlFeature:
                    glob[i] = interner.wl_feature(e.iteration, glob[e.parts[0]]);
                    break;
            }
        }
        return glob;
    }

private:
    FeatureId intern(std::string&& encoding, FeatureInfo&& info) {
        auto it = ids_.find(encoding);
        if (it != ids_.end()) return it->second;
        const FeatureId id = static_cast<FeatureId>(entries_.size());
        ids_.emplace(std::move(encoding), id);
        entries_.push_back(std::move(info));
        return id;
    }

    std::unordered_map<std::string, FeatureId> ids_;
    std::vector<FeatureInfo> entries_;
};

}  // namespace treek::detail
