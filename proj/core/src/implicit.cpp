#include "treek/implicit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "feature_log.hpp"
#include "treek/dag_visit.hpp"
#include "treek/errors.hpp"
#include "treek/parallel.hpp"

namespace treek {

namespace {

using detail::LocalLog;

struct LocalRecord {
    double freq_root = 0.0;
    double freq_tot = 0.0;
    std::unordered_map<FeatureId, std::uint32_t> contexts;  // local context id -> M(f,c)
};

struct RawImplicit {
    LocalLog log;
    std::unordered_map<FeatureId, LocalRecord> records;  // keyed by local feature id
};

RawImplicit decompose_raw(const Graph& g, int height) {
    RawImplicit raw;
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
                    fid = raw.log.leaf(g.label(dag.node[u]));
                } else if (kids.empty()) {
                    fid = row[0];
                } else {
                    std::vector<FeatureId> child_keys;
                    child_keys.reserve(kids.size());
                    for (int ch : kids) {
                        child_keys.push_back(rows[static_cast<std::size_t>(ch)]
                                                 [static_cast<std::size_t>(d - 1)]);
                    }
                    fid = raw.log.composite(g.label(dag.node[u]), child_keys);
                    // Register this composite as a context of each child
                    // feature. M(f, fid) is the number of children of the
                    // composite whose key equals f, fixed by the structure
                    // of fid, so it is recorded once per (f, fid) pair.
                    for (const FeatureId f : child_keys) {
                        auto& ctx = raw.records[f].contexts;
                        if (!ctx.contains(fid)) {
                            const auto m = static_cast<std::uint32_t>(
                                std::count(child_keys.begin(), child_keys.end(), f));
                            ctx.emplace(fid, m);
                        }
                    }
                }
                row[static_cast<std::size_t>(d)] = fid;
                LocalRecord& rec = raw.records[fid];
                if (lu == 0) rec.freq_root += 1.0;
                rec.freq_tot += dag.n_sp[u];
            }
        }
    }
    return raw;
}

ImplicitFeatureSpace merge_raw(const RawImplicit& raw, int height, FeatureInterner& interner) {
    const std::vector<FeatureId> glob = raw.log.merge_into(interner);
    ImplicitFeatureSpace space(&interner, height);
    auto& records = space.mutable_records();
    auto& sizes = space.mutable_sizes();
    records.reserve(raw.records.size());
    sizes.reserve(raw.records.size());
    for (const auto& [local_id, rec] : raw.records) {
        ImplicitRecord out;
        out.freq_root = rec.freq_root;
        out.freq_tot = rec.freq_tot;
        out.contexts.reserve(rec.contexts.size());
        for (const auto& [ctx, m] : rec.contexts) out.contexts.emplace_back(glob[ctx], m);
        std::sort(out.contexts.begin(), out.contexts.end());
        records.emplace_back(glob[local_id], std::move(out));
        sizes.emplace_back(glob[local_id], raw.log.size_of(local_id));
    }
    auto by_id = [](const auto& a, const auto& b) { return a.first < b.first; };
    std::sort(records.begin(), records.end(), by_id);
    std::sort(sizes.begin(), sizes.end(), by_id);
    return space;
}

}  // namespace

const ImplicitRecord* ImplicitFeatureSpace::record(FeatureId id) const {
    auto it = std::lower_bound(records_.begin(), records_.end(), id,
                               [](const auto& rec, FeatureId key) { return rec.first < key; });
    if (it == records_.end() || it->first != id) return nullptr;
    return &it->second;
}

std::uint64_t ImplicitFeatureSpace::size_of(FeatureId id) const {
    auto it = std::lower_bound(sizes_.begin(), sizes_.end(), id,
                               [](const auto& rec, FeatureId key) { return rec.first < key; });
    if (it == sizes_.end() || it->first != id) {
        throw std::out_of_range("implicit space has no feature " + std::to_string(id));
    }
    return it->second;
}

ImplicitFeatureSpace decompose_implicit(const Graph& g, int height, FeatureInterner& interner) {
    if (height < 0) throw ConfigError("height must be >= 0");
    return merge_raw(decompose_raw(g, height), height, interner);
}

std::vector<ImplicitFeatureSpace> decompose_implicit_all(const std::vector<Graph>& graphs,
                                                         int height, FeatureInterner& interner,
                                                         int threads) {
    if (height < 0) throw ConfigError("height must be >= 0");
    std::vector<ImplicitFeatureSpace> spaces(graphs.size());
    const std::size_t block = std::max<std::size_t>(64, static_cast<std::size_t>(threads) * 16);
    for (std::size_t begin = 0; begin < graphs.size(); begin += block) {
        const std::size_t end = std::min(graphs.size(), begin + block);
        std::vector<RawImplicit> raws(end - begin);
        parallel_for(end - begin, threads,
                     [&](std::size_t i) { raws[i] = decompose_raw(graphs[begin + i], height); });
        for (std::size_t i = begin; i < end; ++i) {
            spaces[i] = merge_raw(raws[i - begin], height, interner);
        }
    }
    return spaces;
}

double kernel_implicit(const ImplicitFeatureSpace& a, const ImplicitFeatureSpace& b,
                       double lambda) {
    if (a.interner() != b.interner()) {
        throw std::invalid_argument("kernel_implicit: spaces built with different interners");
    }
    if (a.height() != b.height()) {
        throw std::invalid_argument("kernel_implicit: spaces built with different heights");
    }
    double score = 0.0;
    const auto& ra = a.records();
    const auto& rb = b.records();
    std::size_t i = 0, j = 0;
    while (i < ra.size() && j < rb.size()) {
        if (ra[i].first < rb[j].first) {
            ++i;
        } else if (rb[j].first < ra[i].first) {
            ++j;
        } else {
            const FeatureId f = ra[i].first;
            const double weight = std::pow(lambda, static_cast<double>(a.size_of(f)));
            score += ra[i].second.freq_root * rb[j].second.freq_root * weight;
            const auto& ca = ra[i].second.contexts;
            const auto& cb = rb[j].second.contexts;
            std::size_t p = 0, q = 0;
            while (p < ca.size() && q < cb.size()) {
                if (ca[p].first < cb[q].first) {
                    ++p;
                } else if (cb[q].first < ca[p].first) {
                    ++q;
                } else {
                    const double m = static_cast<double>(ca[p].second);
                    const double tot_a = a.record(ca[p].first)->freq_tot;
                    const double tot_b = b.record(cb[q].first)->freq_tot;
                    score += tot_a * tot_b * m * m * weight;
                    ++p;
                    ++q;
                }
            }
            ++i;
            ++j;
        }
    }
    return score;
}

}  // namespace treek
