#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "treek/feature_space.hpp"
#include "treek/graph.hpp"

namespace treek {

/// Identifies the kernel a Gram matrix was built with.
struct KernelTag {
    FeatureSpaceTag space = FeatureSpaceTag::Tck;
    int height = 1;
    double lambda = 1.0;
    bool implicit_engine = false;
    bool normalized = false;

    bool operator==(const KernelTag&) const = default;
};

std::string to_string(const KernelTag& tag);

/// Dot product over shared feature ids, summed in ascending id order.
/// Throws std::invalid_argument when the space tags differ.
double dot(const SparseFeatureVector& a, const SparseFeatureVector& b);

struct GramTiming {
    double extract_seconds = 0.0;
    double fill_seconds = 0.0;
    double total_seconds() const { return extract_seconds + fill_seconds; }
};

/// Dense symmetric kernel matrix over a dataset.
class GramMatrix {
public:
    GramMatrix() = default;
    GramMatrix(int n, KernelTag tag) : n_(n), tag_(tag), values_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0) {}

    int size() const { return n_; }
    double at(int i, int j) const { return values_[index(i, j)]; }
    void set(int i, int j, double v) { values_[index(i, j)] = v; }
    const double* data() const { return values_.data(); }

    const KernelTag& tag() const { return tag_; }
    KernelTag& tag() { return tag_; }
    const GramTiming& timing() const { return timing_; }
    GramTiming& timing() { return timing_; }

private:
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(j);
    }
    int n_ = 0;
    KernelTag tag_;
    std::vector<double> values_;
    GramTiming timing_;
};

/// Builds the Gram matrix for a dataset: features are extracted once, the
/// upper triangle is filled (row blocks in parallel) and mirrored. The tag
/// selects the kernel family and the explicit or implicit engine;
/// `tag.normalized` must be false here, apply normalize() afterwards.
GramMatrix gram(const Dataset& ds, const KernelTag& tag, int threads = 1);

/// Gram matrix from already-extracted profiles (no extraction timing).
GramMatrix gram_from_profiles(const std::vector<FeatureProfile>& profiles, const KernelTag& tag,
                              int threads = 1);

/// Cosine normalization K_ij / sqrt(K_ii K_jj). Throws ValidationError
/// (naming the index) when a diagonal entry is not positive.
GramMatrix normalize(const GramMatrix& g);

/// Smallest and largest eigenvalue of the (symmetric) matrix.
std::pair<double, double> eigen_extremes(const GramMatrix& g);

/// lambda_min / lambda_max from a symmetric eigensolver; 0 for the zero
/// matrix.
double min_eigen_ratio(const GramMatrix& g);

/// Row-major CSV with 17 significant digits, full matrix, "." decimal
/// separator regardless of locale.
void write_gram_csv(const std::filesystem::path& path, const GramMatrix& g);

/// JSON sidecar carrying the kernel tag and timing.
void write_gram_meta(const std::filesystem::path& path, const GramMatrix& g);

}  // namespace treek
