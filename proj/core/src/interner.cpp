#include "treek/interner.hpp"

#include <algorithm>
#include <stdexcept>

#include "treek/errors.hpp"
#include "treek/graph.hpp"

namespace treek {

std::string encode_leaf(std::string_view label) {
    if (!label_is_valid(label)) {
        throw ValidationError("invalid node label \"" + std::string(label) +
                              "\": must be non-empty and free of reserved symbols");
    }
    return std::string(label);
}

std::string encode_composite(std::string_view label, std::vector<FeatureId>& child_ids) {
    if (child_ids.empty()) {
        throw ValidationError("encode_composite requires at least one child feature");
    }
    std::sort(child_ids.begin(), child_ids.end());
    std::string out(label);
    out += kOpenSym;
    for (std::size_t i = 0; i < child_ids.size(); ++i) {
        if (i > 0) out += kChildSep;
        out += std::to_string(child_ids[i]);
    }
    out += kCloseSym;
    return out;
}

std::string encode_context_pair(FeatureId feature, FeatureId context) {
    std::string out = std::to_string(feature);
    out += kContextSep;
    out += std::to_string(context);
    return out;
}

std::string encode_empty_context(FeatureId feature) {
    std::string out = std::to_string(feature);
    out += kContextSep;
    out += kEmptyContext;
    return out;
}

std::string encode_wl_label(FeatureId prev, std::vector<FeatureId>& neighbor_ids) {
    std::sort(neighbor_ids.begin(), neighbor_ids.end());
    std::string out = std::to_string(prev);
    out += kOpenSym;
    for (std::size_t i = 0; i < neighbor_ids.size(); ++i) {
        if (i > 0) out += kChildSep;
        out += std::to_string(neighbor_ids[i]);
    }
    out += kCloseSym;
    return out;
}

std::string encode_wl_feature(std::uint32_t iteration, FeatureId label_id) {
    std::string out = std::to_string(iteration);
    out += kChildSep;
    out += std::to_string(label_id);
    return out;
}

FeatureId FeatureInterner::intern_locked(std::string&& encoding, FeatureInfo&& info) {
    auto it = ids_.find(encoding);
    if (it != ids_.end()) return it->second;
    const FeatureId id = static_cast<FeatureId>(encodings_.size());
    ids_.emplace(encoding, id);
    encodings_.push_back(std::move(encoding));
    infos_.push_back(std::move(info));
    return id;
}

void FeatureInterner::check_id(FeatureId id) const {
    if (id >= encodings_.size()) {
        throw std::out_of_range("unknown feature id " + std::to_string(id));
    }
}

FeatureId FeatureInterner::leaf(std::string_view label) {
    std::string enc = encode_leaf(label);
    std::lock_guard lock(mutex_);
    return intern_locked(std::move(enc),
                         FeatureInfo{FeatureInfo::Kind::Leaf, std::string(label), {}, 1, 0});
}

FeatureId FeatureInterner::composite(std::string_view label, std::vector<FeatureId> child_ids) {
    std::string enc = encode_composite(label, child_ids);
    std::lock_guard lock(mutex_);
    std::uint64_t size = 1;
    for (FeatureId c : child_ids) {
        check_id(c);
        size += infos_[c].size;
    }
    return intern_locked(std::move(enc), FeatureInfo{FeatureInfo::Kind::Composite,
                                                     std::string(label), std::move(child_ids),
                                                     size, 0});
}

FeatureId FeatureInterner::context_pair(FeatureId feature, FeatureId context) {
    std::string enc = encode_context_pair(feature, context);
    std::lock_guard lock(mutex_);
    check_id(feature);
    check_id(context);
    return intern_locked(std::move(enc),
                         FeatureInfo{FeatureInfo::Kind::ContextPair, {}, {feature, context},
                                     infos_[feature].size, 0});
}

FeatureId FeatureInterner::empty_context(FeatureId feature) {
    std::string enc = encode_empty_context(feature);
    std::lock_guard lock(mutex_);
    check_id(feature);
    return intern_locked(std::move(enc),
                         FeatureInfo{FeatureInfo::Kind::EmptyContextPair, {}, {feature},
                                     infos_[feature].size, 0});
}

FeatureId FeatureInterner::wl_label(FeatureId prev, std::vector<FeatureId> neighbor_ids) {
    std::string enc = encode_wl_label(prev, neighbor_ids);
    std::lock_guard lock(mutex_);
    check_id(prev);
    std::vector<FeatureId> parts;
    parts.reserve(neighbor_ids.size() + 1);
    parts.push_back(prev);
    parts.insert(parts.end(), neighbor_ids.begin(), neighbor_ids.end());
    return intern_locked(std::move(enc),
                         FeatureInfo{FeatureInfo::Kind::WlLabel, {}, std::move(parts), 0, 0});
}

FeatureId FeatureInterner::wl_feature(std::uint32_t iteration, FeatureId label_id) {
    std::string enc = encode_wl_feature(iteration, label_id);
    std::lock_guard lock(mutex_);
    check_id(label_id);
    return intern_locked(std::move(enc), FeatureInfo{FeatureInfo::Kind::WlFeature, {},
                                                     {label_id}, 0, iteration});
}

std::optional<FeatureId> FeatureInterner::find(std::string_view encoding) const {
    std::lock_guard lock(mutex_);
    auto it = ids_.find(std::string(encoding));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

std::string FeatureInterner::encoding(FeatureId id) const {
    std::lock_guard lock(mutex_);
    check_id(id);
    return encodings_[id];
}

FeatureInfo FeatureInterner::info(FeatureId id) const {
    std::lock_guard lock(mutex_);
    check_id(id);
    return infos_[id];
}

std::uint64_t FeatureInterner::size_of(FeatureId id) const {
    std::lock_guard lock(mutex_);
    check_id(id);
    return infos_[id].size;
}

std::size_t FeatureInterner::count() const {
    std::lock_guard lock(mutex_);
    return encodings_.size();
}

std::string FeatureInterner::resolve_locked(FeatureId id) const {
    const FeatureInfo& fi = infos_[id];
    switch (fi.kind) {
        case FeatureInfo::Kind::Leaf:
            return fi.label;
        case FeatureInfo::Kind::Composite: {
            std::string out = fi.label;
            out += kOpenSym;
            for (std::size_t i = 0; i < fi.parts.size(); ++i) {
                if (i > 0) out += kChildSep;
                out += resolve_locked(fi.parts[i]);
            }
            out += kCloseSym;
            return out;
        }
        case FeatureInfo::Kind::ContextPair: {
            std::string out = resolve_locked(fi.parts[0]);
            out += kContextSep;
            out += resolve_locked(fi.parts[1]);
            return out;
        }
        case FeatureInfo::Kind::EmptyContextPair: {
            std::string out = resolve_locked(fi.parts[0]);
            out += kContextSep;
            out += kEmptyContext;
            return out;
        }
        case FeatureInfo::Kind::WlLabel: {
            std::string out = resolve_locked(fi.parts[0]);
            out += kOpenSym;
            for (std::size_t i = 1; i < fi.parts.size(); ++i) {
                if (i > 1) out += kChildSep;
                out += resolve_locked(fi.parts[i]);
            }
            out += kCloseSym;
            return out;
        }
        case FeatureInfo::Kind::WlFeature: {
            std::string out = std::to_string(fi.iteration);
            out += kContextSep;
            out += resolve_locked(fi.parts[0]);
            return out;
        }
    }
    return {};
}

std::string FeatureInterner::resolve(FeatureId id) const {
    std::lock_guard lock(mutex_);
    check_id(id);
    return resolve_locked(id);
}

}  // namespace treek
