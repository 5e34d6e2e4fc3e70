#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "treek/feature_space.hpp"
#include "treek/graph.hpp"

namespace treek {

/// Hyperparameter grid for one kernel family. Grid order (heights outer,
/// lambdas middle, C inner) is the tie-break order of the grid search.
struct GridSpec {
    std::vector<int> heights;
    std::vector<double> lambdas;
    std::vector<double> c_values;
};

/// The default search space: h in 1..10, lambda in
/// {0.1,0.5,0.8,0.9,...,1.5,1.8} (single value 1 for the refinement
/// kernel, which has no lambda), C in 10^-4..10^3.
GridSpec default_grid(FeatureSpaceTag space);

/// A small grid for smoke tests and fixtures.
GridSpec small_grid(FeatureSpaceTag space);

struct FoldResult {
    int repeat = 0;
    int fold = 0;
    double accuracy = 0.0;
    int height = 0;
    double lambda = 0.0;
    double c_value = 0.0;
};

struct CvReport {
    std::string dataset;
    std::string kernel;
    GridSpec grid;
    int repeats = 0;
    int outer_folds = 0;
    int inner_folds = 0;
    std::uint64_t seed = 0;
    bool normalized = false;
    std::vector<FoldResult> folds;
    std::vector<double> repeat_accuracy;  // mean outer accuracy per repeat
    double mean = 0.0;
    double stddev = 0.0;  // population std across repeats
};

struct CvOptions {
    int outer_folds = 10;
    int inner_folds = 10;
    int repeats = 10;
    std::uint64_t seed = 7;
    bool normalize = false;
    int threads = 1;
};

/// Per-split index sets handed to the observer for auditing.
struct CvSplitAudit {
    int repeat = 0;
    int outer_fold = 0;
    std::vector<int> outer_train;
    std::vector<int> outer_test;
    // inner (train, validation) index pairs, as positions in the dataset
    std::vector<std::pair<std::vector<int>, std::vector<int>>> inner;
};
using CvObserver = std::function<void(const CvSplitAudit&)>;

/// Stratified fold assignment: per class, indices are shuffled and dealt
/// round-robin. Returns the fold id per sample. Throws ConfigError when a
/// class has fewer samples than folds.
std::vector<int> stratified_folds(const std::vector<int>& labels, int folds, std::uint64_t seed);

/// Nested cross-validation with grid search, reproducing the benchmark
/// protocol: every outer fold selects (h, lambda, C) by inner-CV mean
/// accuracy over the outer training set only (ties resolved toward the
/// earliest grid point), retrains on the full outer training set and is
/// scored on the outer test fold. Gram matrices are computed once per
/// (h, lambda) and sliced per fold. The whole procedure is repeated with
/// fresh stratified splits; the report aggregates mean and population
/// standard deviation across repeats. Identical inputs and seed produce a
/// byte-identical report.
CvReport nested_cv(const Dataset& ds, FeatureSpaceTag space, const GridSpec& grid,
                   const CvOptions& opts, const CvObserver& observer = {});

/// Deterministic JSON rendering of a report.
std::string report_to_json(const CvReport& report);

}  // namespace treek
