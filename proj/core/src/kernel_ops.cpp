#include "treek/kernel_ops.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>
#include <json.hpp>

#include "treek/errors.hpp"
#include "treek/implicit.hpp"
#include "treek/parallel.hpp"

namespace treek {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::string to_string(const KernelTag& tag) {
    std::string out(to_string(tag.space));
    out += " h=" + std::to_string(tag.height);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", tag.lambda);
    out += " lambda=";
    out += buf;
    out += tag.implicit_engine ? " engine=implicit" : " engine=explicit";
    if (tag.normalized) out += " normalized";
    return out;
}

double dot(const SparseFeatureVector& a, const SparseFeatureVector& b) {
    if (a.space != b.space) {
        throw std::invalid_argument("dot: feature space mismatch (" +
                                    std::string(to_string(a.space)) + " vs " +
                                    std::string(to_string(b.space)) + ")");
    }
    double sum = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.entries.size() && j < b.entries.size()) {
        const FeatureId ia = a.entries[i].id;
        const FeatureId ib = b.entries[j].id;
        if (ia == ib) {
            sum += a.entries[i].weight * b.entries[j].weight;
            ++i;
            ++j;
        } else if (ia < ib) {
            ++i;
        } else {
            ++j;
        }
    }
    return sum;
}

namespace {

void fill_upper_and_mirror(GramMatrix& g, int threads,
                           const std::function<double(int, int)>& kernel) {
    const int n = g.size();
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t row) {
        const int i = static_cast<int>(row);
        for (int j = i; j < n; ++j) g.set(i, j, kernel(i, j));
    });
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) g.set(i, j, g.at(j, i));
    }
}

}  // namespace

GramMatrix gram_from_profiles(const std::vector<FeatureProfile>& profiles, const KernelTag& tag,
                              int threads) {
    GramMatrix g(static_cast<int>(profiles.size()), tag);
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<SparseFeatureVector> vectors(profiles.size());
    parallel_for(profiles.size(), threads,
                 [&](std::size_t i) { vectors[i] = materialize(profiles[i], tag.lambda); });
    fill_upper_and_mirror(g, threads,
                          [&](int i, int j) { return dot(vectors[static_cast<std::size_t>(i)],
                                                         vectors[static_cast<std::size_t>(j)]); });
    g.timing().fill_seconds = seconds_since(t0);
    return g;
}

GramMatrix gram(const Dataset& ds, const KernelTag& tag, int threads) {
    if (ds.graphs.empty()) throw ConfigError("gram: empty dataset");
    if (tag.normalized) throw ConfigError("gram: build the raw matrix first, then normalize()");
    if (tag.height < 1) throw ConfigError("kernel height must be >= 1");
    if (!(tag.lambda > 0.0)) throw ConfigError("lambda must be > 0");

    if (tag.implicit_engine) {
        if (tag.space != FeatureSpaceTag::Tck) {
            throw ConfigError("the implicit engine computes the contextualized kernel only");
        }
        FeatureInterner interner;
        const auto t0 = std::chrono::steady_clock::now();
        const auto spaces = decompose_implicit_all(ds.graphs, tag.height, interner, threads);
        const double extract = seconds_since(t0);
        const auto t1 = std::chrono::steady_clock::now();
        GramMatrix g(static_cast<int>(ds.graphs.size()), tag);
        fill_upper_and_mirror(g, threads, [&](int i, int j) {
            return kernel_implicit(spaces[static_cast<std::size_t>(i)],
                                   spaces[static_cast<std::size_t>(j)], tag.lambda);
        });
        g.timing().extract_seconds = extract;
        g.timing().fill_seconds = seconds_since(t1);
        return g;
    }

    FeatureInterner interner;
    const auto t0 = std::chrono::steady_clock::now();
    const auto profiles = extract_profiles(ds.graphs, tag.space, tag.height, interner, threads);
    const double extract = seconds_since(t0);
    GramMatrix g = gram_from_profiles(profiles, tag, threads);
    g.timing().extract_seconds = extract;
    return g;
}

GramMatrix normalize(const GramMatrix& g) {
    const int n = g.size();
    std::vector<double> inv_root(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double d = g.at(i, i);
        if (!(d > 0.0)) {
            throw ValidationError("normalize: diagonal entry " + std::to_string(i) +
                                  " is not positive (" + std::to_string(d) + ")");
        }
        inv_root[static_cast<std::size_t>(i)] = 1.0 / std::sqrt(d);
    }
    GramMatrix out(n, g.tag());
    out.tag().normalized = true;
    out.timing() = g.timing();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            out.set(i, j, i == j ? 1.0
                                 : g.at(i, j) * inv_root[static_cast<std::size_t>(i)] *
                                       inv_root[static_cast<std::size_t>(j)]);
        }
    }
    return out;
}

std::pair<double, double> eigen_extremes(const GramMatrix& g) {
    const int n = g.size();
    Eigen::Map<const Eigen::MatrixXd> m(g.data(), n, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {ev(0), ev(n - 1)};
}

double min_eigen_ratio(const GramMatrix& g) {
    const auto [lo, hi] = eigen_extremes(g);
    if (hi == 0.0) return lo == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
    return lo / hi;
}

void write_gram_csv(const std::filesystem::path& path, const GramMatrix& g) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open for writing: " + path.string());
    const int n = g.size();
    char buf[64];
    std::string line;
    for (int i = 0; i < n; ++i) {
        line.clear();
        for (int j = 0; j < n; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", g.at(i, j));
            if (j > 0) line += ',';
            line += buf;
        }
        line += '\n';
        out << line;
    }
}

void write_gram_meta(const std::filesystem::path& path, const GramMatrix& g) {
    nlohmann::ordered_json meta;
    meta["kernel"] = std::string(to_string(g.tag().space));
    meta["height"] = g.tag().height;
    meta["lambda"] = g.tag().lambda;
    meta["engine"] = g.tag().implicit_engine ? "implicit" : "explicit";
    meta["normalized"] = g.tag().normalized;
    meta["n"] = g.size();
    meta["extract_seconds"] = g.timing().extract_seconds;
    meta["fill_seconds"] = g.timing().fill_seconds;
    meta["total_seconds"] = g.timing().total_seconds();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open for writing: " + path.string());
    out << meta.dump(2) << '\n';
}

}  // namespace treek
