#include "treek/feature_space.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <json.hpp>

#include "feature_log.hpp"
#include "treek/dag_visit.hpp"
#include "treek/errors.hpp"
#include "treek/parallel.hpp"

namespace treek {

namespace {

using detail::LocalLog;

struct RawExtraction {
    LocalLog log;
    std::unordered_map<FeatureId, double> counts;  // local entry id -> occurrence mass
};

// Subtree feature extraction shared by the TCK / ODD / TCK+ODD families.
//
// For every root the DAG visit is walked in reverse topological order and,
// per node u, the feature keys f(u,d) are built for every admissible height
// d up to diam - depth(u). A node without DAG successors keeps its height-0
// key at every d: its subtree has reached maximum height, and the repeated
// heights re-count that same feature, once per tree-visit containing it.
void extract_subtree_features(const Graph& g, FeatureSpaceTag space, int height,
                              RawExtraction& out) {
    const bool with_context = space == FeatureSpaceTag::Tck || space == FeatureSpaceTag::TckOdd;
    const bool with_plain = space == FeatureSpaceTag::Odd || space == FeatureSpaceTag::TckOdd;
    std::vector<std::vector<FeatureId>> rows;
    for (int root = 0; root < g.node_count(); ++root) {
        const DagVisit dag = dag_visit(g, root, height);
        const int k = dag.size();
        rows.assign(static_cast<std::size_t>(k), {});
        for (int lu : dag.order) {
            const std::size_t u = static_cast<std::size_t>(lu);
            const int dmax = dag.diam - dag.depth[u];
            const auto& kids = dag.children[u];
            auto& row = rows[u];
            row.resize(static_cast<std::size_t>(dmax) + 1);
            for (int d = 0; d <= dmax; ++d) {
                FeatureId fid;
                if (d == 0) {
                    fid = out.log.leaf(g.label(dag.node[u]));
                } else if (kids.empty()) {
                    fid = row[0];
                } else {
                    std::vector<FeatureId> child_keys;
                    child_keys.reserve(kids.size());
                    for (int ch : kids) {
                        child_keys.push_back(rows[static_cast<std::size_t>(ch)]
                                                 [static_cast<std::size_t>(d - 1)]);
                    }
                    fid = out.log.composite(g.label(dag.node[u]), std::move(child_keys));
                    if (with_context) {
                        for (int ch : kids) {
                            const FeatureId child_key =
                                rows[static_cast<std::size_t>(ch)][static_cast<std::size_t>(d - 1)];
                            out.counts[out.log.context_pair(child_key, fid)] += dag.n_sp[u];
                        }
                    }
                }
                row[static_cast<std::size_t>(d)] = fid;
                if (with_context && lu == 0) {
                    out.counts[out.log.empty_context(fid)] += 1.0;
                }
                if (with_plain) {
                    out.counts[fid] += dag.n_sp[u];
                }
            }
        }
    }
}

void extract_wl_features(const Graph& g, int height, RawExtraction& out) {
    const int n = g.node_count();
    std::vector<FeatureId> prev(static_cast<std::size_t>(n));
    std::vector<FeatureId> next(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        prev[static_cast<std::size_t>(v)] = out.log.leaf(g.label(v));
        out.counts[out.log.wl_feature(0, prev[static_cast<std::size_t>(v)])] += 1.0;
    }
    for (int it = 1; it <= height; ++it) {
        for (int v = 0; v < n; ++v) {
            std::vector<FeatureId> neigh;
            neigh.reserve(g.neighbors(v).size());
            for (int w : g.neighbors(v)) neigh.push_back(prev[static_cast<std::size_t>(w)]);
            next[static_cast<std::size_t>(v)] =
                out.log.wl_label(prev[static_cast<std::size_t>(v)], std::move(neigh));
            out.counts[out.log.wl_feature(static_cast<std::uint32_t>(it),
                                          next[static_cast<std::size_t>(v)])] += 1.0;
        }
        std::swap(prev, next);
    }
}

RawExtraction extract_raw(const Graph& g, FeatureSpaceTag space, int height) {
    RawExtraction raw;
    if (space == FeatureSpaceTag::Wl) {
        extract_wl_features(g, height, raw);
    } else {
        extract_subtree_features(g, space, height, raw);
    }
    return raw;
}

FeatureProfile merge_raw(const RawExtraction& raw, FeatureSpaceTag space, int height,
                         FeatureInterner& interner) {
    const std::vector<FeatureId> glob = raw.log.merge_into(interner);
    FeatureProfile profile{space, height, {}};
    profile.entries.reserve(raw.counts.size());
    for (const auto& [local_id, count] : raw.counts) {
        profile.entries.push_back(
            FeatureEntry{glob[local_id], count, raw.log.size_of(local_id)});
    }
    std::sort(profile.entries.begin(), profile.entries.end(),
              [](const FeatureEntry& a, const FeatureEntry& b) { return a.id < b.id; });
    return profile;
}

}  // namespace

std::string_view to_string(FeatureSpaceTag tag) {
    switch (tag) {
        case FeatureSpaceTag::Tck: return "tck";
        case FeatureSpaceTag::Odd: return "odd";
        case FeatureSpaceTag::TckOdd: return "tck+odd";
        case FeatureSpaceTag::Wl: return "wl";
    }
    return "?";
}

FeatureSpaceTag feature_space_from_string(std::string_view name) {
    if (name == "tck") return FeatureSpaceTag::Tck;
    if (name == "odd") return FeatureSpaceTag::Odd;
    if (name == "tck+odd" || name == "tckodd") return FeatureSpaceTag::TckOdd;
    if (name == "wl") return FeatureSpaceTag::Wl;
    throw ConfigError("unknown kernel \"" + std::string(name) +
                      "\" (expected tck, odd, tck+odd or wl)");
}

void validate_params(const KernelParams& params) {
    if (params.height < 1) throw ConfigError("kernel height must be >= 1");
    if (!(params.lambda > 0.0)) throw ConfigError("lambda must be > 0");
}

FeatureProfile extract_profile(const Graph& g, FeatureSpaceTag space, int height,
                               FeatureInterner& interner) {
    if (height < 0) throw ConfigError("height must be >= 0");
    return merge_raw(extract_raw(g, space, height), space, height, interner);
}

std::vector<FeatureProfile> extract_profiles(const std::vector<Graph>& graphs,
                                             FeatureSpaceTag space, int height,
                                             FeatureInterner& interner, int threads) {
    if (height < 0) throw ConfigError("height must be >= 0");
    std::vector<FeatureProfile> profiles(graphs.size());
    // Extract in blocks: workers fill per-graph logs, then one pass replays
    // them into the shared interner in graph order. Blocks bound memory.
    const std::size_t block = std::max<std::size_t>(64, static_cast<std::size_t>(threads) * 16);
    for (std::size_t begin = 0; begin < graphs.size(); begin += block) {
        const std::size_t end = std::min(graphs.size(), begin + block);
        std::vector<RawExtraction> raws(end - begin);
        parallel_for(end - begin, threads, [&](std::size_t i) {
            raws[i] = extract_raw(graphs[begin + i], space, height);
        });
        for (std::size_t i = begin; i < end; ++i) {
            profiles[i] = merge_raw(raws[i - begin], space, height, interner);
        }
    }
    return profiles;
}

SparseFeatureVector materialize(const FeatureProfile& profile, double lambda) {
    SparseFeatureVector v;
    v.space = profile.space;
    v.entries.reserve(profile.entries.size());
    for (const FeatureEntry& e : profile.entries) {
        v.entries.push_back(
            WeightedFeature{e.id, e.count * std::pow(lambda, 0.5 * static_cast<double>(e.size))});
    }
    return v;
}

SparseFeatureVector tck_features(const Graph& g, const KernelParams& params,
                                 FeatureInterner& interner) {
    validate_params(params);
    return materialize(extract_profile(g, FeatureSpaceTag::Tck, params.height, interner),
                       params.lambda);
}

SparseFeatureVector odd_features(const Graph& g, const KernelParams& params,
                                 FeatureInterner& interner) {
    validate_params(params);
    return materialize(extract_profile(g, FeatureSpaceTag::Odd, params.height, interner),
                       params.lambda);
}

SparseFeatureVector tck_plus_odd_features(const Graph& g, const KernelParams& params,
                                          FeatureInterner& interner) {
    validate_params(params);
    return materialize(extract_profile(g, FeatureSpaceTag::TckOdd, params.height, interner),
                       params.lambda);
}

SparseFeatureVector wl_features(const Graph& g, int height, FeatureInterner& interner) {
    if (height < 0) throw ConfigError("height must be >= 0");
    return materialize(extract_profile(g, FeatureSpaceTag::Wl, height, interner), 1.0);
}

std::string feature_vector_jsonl(const SparseFeatureVector& v, std::size_t graph_index,
                                 const FeatureInterner& interner) {
    std::vector<std::pair<std::string, double>> items;
    items.reserve(v.entries.size());
    for (const WeightedFeature& e : v.entries) {
        items.emplace_back(interner.resolve(e.id), e.weight);
    }
    std::sort(items.begin(), items.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    nlohmann::ordered_json rec;
    rec["graph"] = graph_index;
    rec["space"] = std::string(to_string(v.space));
    auto features = nlohmann::ordered_json::array();
    for (auto& [enc, w] : items) features.push_back({enc, w});
    rec["features"] = std::move(features);
    return rec.dump();
}

}  // namespace treek
