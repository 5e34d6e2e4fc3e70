#include "treek/cross_validation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <json.hpp>

#include "treek/errors.hpp"
#include "treek/kernel_ops.hpp"
#include "treek/parallel.hpp"
#include "treek/svm.hpp"
#include "treek/synthetic.hpp"

namespace treek {

GridSpec default_grid(FeatureSpaceTag space) {
    GridSpec grid;
    for (int h = 1; h <= 10; ++h) grid.heights.push_back(h);
    if (space == FeatureSpaceTag::Wl) {
        grid.lambdas = {1.0};
    } else {
        grid.lambdas = {0.1, 0.5, 0.8, 0.9, 1.0, 1.1, 1.2, 1.3, 1.4, 1.5, 1.8};
    }
    for (int e = -4; e <= 3; ++e) grid.c_values.push_back(std::pow(10.0, e));
    return grid;
}

GridSpec small_grid(FeatureSpaceTag space) {
    GridSpec grid;
    grid.heights = {1, 2};
    grid.lambdas = space == FeatureSpaceTag::Wl ? std::vector<double>{1.0}
                                                : std::vector<double>{1.0, 0.8};
    grid.c_values = {1.0, 10.0};
    return grid;
}

std::vector<int> stratified_folds(const std::vector<int>& labels, int folds, std::uint64_t seed) {
    if (folds < 2) throw ConfigError("stratified_folds: need at least 2 folds");
    std::map<int, std::vector<int>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        by_class[labels[i]].push_back(static_cast<int>(i));
    }
    for (const auto& [cls, members] : by_class) {
        if (static_cast<int>(members.size()) < folds) {
            throw ConfigError("cannot stratify: class " + std::to_string(cls) + " has " +
                              std::to_string(members.size()) + " samples but " +
                              std::to_string(folds) + " folds were requested");
        }
    }
    std::vector<int> fold_of(labels.size(), 0);
    Rng rng(seed);
    for (auto& [cls, members] : by_class) {
        shuffle(members, rng);
        for (std::size_t i = 0; i < members.size(); ++i) {
            fold_of[static_cast<std::size_t>(members[i])] = static_cast<int>(i) % folds;
        }
    }
    return fold_of;
}

namespace {

struct SplitPlan {
    // fold_of[repeat][sample] for the outer split
    std::vector<std::vector<int>> outer;
    // inner_of[repeat][outer_fold][sample]: inner fold id, or -1 for
    // samples of the outer test fold
    std::vector<std::vector<std::vector<int>>> inner;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    Rng rng(seed ^ (a * 0x9e3779b97f4a7c15ULL) ^ (b * 0xc2b2ae3d27d4eb4fULL));
    return rng.next();
}

SplitPlan make_splits(const std::vector<int>& labels, const CvOptions& opts) {
    SplitPlan plan;
    plan.outer.resize(static_cast<std::size_t>(opts.repeats));
    plan.inner.resize(static_cast<std::size_t>(opts.repeats));
    for (int r = 0; r < opts.repeats; ++r) {
        plan.outer[static_cast<std::size_t>(r)] = stratified_folds(
            labels, opts.outer_folds, mix_seed(opts.seed, static_cast<std::uint64_t>(r) + 1, 0));
        plan.inner[static_cast<std::size_t>(r)].resize(
            static_cast<std::size_t>(opts.outer_folds));
        for (int of = 0; of < opts.outer_folds; ++of) {
            // stratify the outer training subset
            std::vector<int> train_indices;
            std::vector<int> train_labels;
            for (std::size_t i = 0; i < labels.size(); ++i) {
                if (plan.outer[static_cast<std::size_t>(r)][i] != of) {
                    train_indices.push_back(static_cast<int>(i));
                    train_labels.push_back(labels[i]);
                }
            }
            const auto inner_folds = stratified_folds(
                train_labels, opts.inner_folds,
                mix_seed(opts.seed, static_cast<std::uint64_t>(r) + 1,
                         static_cast<std::uint64_t>(of) + 1));
            auto& slot = plan.inner[static_cast<std::size_t>(r)][static_cast<std::size_t>(of)];
            slot.assign(labels.size(), -1);
            for (std::size_t k = 0; k < train_indices.size(); ++k) {
                slot[static_cast<std::size_t>(train_indices[k])] = inner_folds[k];
            }
        }
    }
    return plan;
}

Matrix slice(const GramMatrix& g, const std::vector<int>& rows, const std::vector<int>& cols) {
    Matrix m(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            m(i, j) = g.at(rows[i], cols[j]);
        }
    }
    return m;
}

std::vector<int> subset(const std::vector<int>& labels, const std::vector<int>& idx) {
    std::vector<int> out;
    out.reserve(idx.size());
    for (int i : idx) out.push_back(labels[static_cast<std::size_t>(i)]);
    return out;
}

double fold_accuracy(const GramMatrix& gram_matrix, const std::vector<int>& labels,
                     const std::vector<int>& train, const std::vector<int>& test, double c_value) {
    const SvmModel model =
        svm_train(slice(gram_matrix, train, train), subset(labels, train), SvmOptions{c_value});
    const auto predicted = svm_predict(model, slice(gram_matrix, test, train));
    std::size_t correct = 0;
    for (std::size_t i = 0; i < test.size(); ++i) {
        if (predicted[i] == labels[static_cast<std::size_t>(test[i])]) ++correct;
    }
    return test.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(test.size());
}

}  // namespace

CvReport nested_cv(const Dataset& ds, FeatureSpaceTag space, const GridSpec& grid,
                   const CvOptions& opts, const CvObserver& observer) {
    if (auto v = validate_dataset(ds)) throw ValidationError(v->message);
    if (grid.heights.empty() || grid.lambdas.empty() || grid.c_values.empty()) {
        throw ConfigError("nested_cv: empty parameter grid");
    }
    if (opts.repeats < 1) throw ConfigError("nested_cv: repeats must be >= 1");

    const std::vector<int>& labels = ds.labels;
    const SplitPlan plan = make_splits(labels, opts);

    if (observer) {
        for (int r = 0; r < opts.repeats; ++r) {
            for (int of = 0; of < opts.outer_folds; ++of) {
                CvSplitAudit audit;
                audit.repeat = r;
                audit.outer_fold = of;
                const auto& outer = plan.outer[static_cast<std::size_t>(r)];
                for (std::size_t i = 0; i < labels.size(); ++i) {
                    (outer[i] == of ? audit.outer_test : audit.outer_train)
                        .push_back(static_cast<int>(i));
                }
                const auto& inner =
                    plan.inner[static_cast<std::size_t>(r)][static_cast<std::size_t>(of)];
                for (int inf = 0; inf < opts.inner_folds; ++inf) {
                    std::pair<std::vector<int>, std::vector<int>> split;
                    for (std::size_t i = 0; i < labels.size(); ++i) {
                        if (inner[i] < 0) continue;
                        (inner[i] == inf ? split.second : split.first).push_back(static_cast<int>(i));
                    }
                    audit.inner.push_back(std::move(split));
                }
                observer(audit);
            }
        }
    }

    // Phase 1: inner-CV accuracy for every (repeat, outer fold, grid point).
    // One Gram matrix per (h, lambda) is alive at a time; features are
    // extracted once per height.
    const std::size_t contexts =
        static_cast<std::size_t>(opts.repeats) * static_cast<std::size_t>(opts.outer_folds);
    const std::size_t points = grid.heights.size() * grid.lambdas.size() * grid.c_values.size();
    std::vector<std::vector<double>> inner_accuracy(contexts, std::vector<double>(points, 0.0));

    std::vector<int> distinct_heights = grid.heights;
    std::sort(distinct_heights.begin(), distinct_heights.end());
    distinct_heights.erase(std::unique(distinct_heights.begin(), distinct_heights.end()),
                           distinct_heights.end());

    auto point_index = [&](std::size_t hi, std::size_t li, std::size_t ci) {
        return (hi * grid.lambdas.size() + li) * grid.c_values.size() + ci;
    };

    std::map<int, std::vector<FeatureProfile>> profiles_by_height;
    std::map<int, FeatureInterner> interner_by_height;
    for (int h : distinct_heights) {
        profiles_by_height[h] =
            extract_profiles(ds.graphs, space, h, interner_by_height[h], opts.threads);
    }

    auto gram_for = [&](int h, double lambda) {
        KernelTag tag{space, h, lambda, false, false};
        GramMatrix g = gram_from_profiles(profiles_by_height.at(h), tag, opts.threads);
        return opts.normalize ? normalize(g) : g;
    };

    for (std::size_t hi = 0; hi < grid.heights.size(); ++hi) {
        for (std::size_t li = 0; li < grid.lambdas.size(); ++li) {
            const GramMatrix g = gram_for(grid.heights[hi], grid.lambdas[li]);
            // every (context, inner fold, C) is an independent task
            struct Task {
                int repeat;
                int outer_fold;
                int inner_fold;
            };
            std::vector<Task> tasks;
            tasks.reserve(contexts * static_cast<std::size_t>(opts.inner_folds));
            for (int r = 0; r < opts.repeats; ++r) {
                for (int of = 0; of < opts.outer_folds; ++of) {
                    for (int inf = 0; inf < opts.inner_folds; ++inf) {
                        tasks.push_back(Task{r, of, inf});
                    }
                }
            }
            // per (task, C): fold accuracy; reduced afterwards in fixed order
            std::vector<std::vector<double>> task_acc(
                tasks.size(), std::vector<double>(grid.c_values.size(), 0.0));
            parallel_for(tasks.size(), opts.threads, [&](std::size_t t) {
                const auto& task = tasks[t];
                const auto& inner = plan.inner[static_cast<std::size_t>(task.repeat)]
                                              [static_cast<std::size_t>(task.outer_fold)];
                std::vector<int> train, validation;
                for (std::size_t i = 0; i < labels.size(); ++i) {
                    if (inner[i] < 0) continue;
                    (inner[i] == task.inner_fold ? validation : train).push_back(
                        static_cast<int>(i));
                }
                const Matrix train_k = slice(g, train, train);
                const Matrix val_k = slice(g, validation, train);
                const auto train_y = subset(labels, train);
                for (std::size_t ci = 0; ci < grid.c_values.size(); ++ci) {
                    const SvmModel model =
                        svm_train(train_k, train_y, SvmOptions{grid.c_values[ci]});
                    const auto predicted = svm_predict(model, val_k);
                    std::size_t correct = 0;
                    for (std::size_t i = 0; i < validation.size(); ++i) {
                        if (predicted[i] == labels[static_cast<std::size_t>(validation[i])]) {
                            ++correct;
                        }
                    }
                    task_acc[t][ci] = validation.empty()
                                          ? 0.0
                                          : static_cast<double>(correct) /
                                                static_cast<double>(validation.size());
                }
            });
            for (std::size_t t = 0; t < tasks.size(); ++t) {
                const std::size_t ctx =
                    static_cast<std::size_t>(tasks[t].repeat) *
                        static_cast<std::size_t>(opts.outer_folds) +
                    static_cast<std::size_t>(tasks[t].outer_fold);
                for (std::size_t ci = 0; ci < grid.c_values.size(); ++ci) {
                    inner_accuracy[ctx][point_index(hi, li, ci)] +=
                        task_acc[t][ci] / static_cast<double>(opts.inner_folds);
                }
            }
        }
    }

    // Phase 2: pick the winner per outer fold (first grid point on ties),
    // retrain on the outer training set, score the outer test fold.
    struct Winner {
        std::size_t hi, li, ci;
    };
    std::vector<Winner> winners(contexts);
    for (std::size_t ctx = 0; ctx < contexts; ++ctx) {
        std::size_t best = 0;
        for (std::size_t p = 1; p < points; ++p) {
            if (inner_accuracy[ctx][p] > inner_accuracy[ctx][best]) best = p;
        }
        const std::size_t ci = best % grid.c_values.size();
        const std::size_t rest = best / grid.c_values.size();
        winners[ctx] = Winner{rest / grid.lambdas.size(), rest % grid.lambdas.size(), ci};
    }

    CvReport report;
    report.dataset = ds.name;
    report.kernel = std::string(to_string(space));
    report.grid = grid;
    report.repeats = opts.repeats;
    report.outer_folds = opts.outer_folds;
    report.inner_folds = opts.inner_folds;
    report.seed = opts.seed;
    report.normalized = opts.normalize;
    report.folds.resize(contexts);

    // group by winning (h, lambda) so each Gram is rebuilt once
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> by_params;
    for (std::size_t ctx = 0; ctx < contexts; ++ctx) {
        by_params[{winners[ctx].hi, winners[ctx].li}].push_back(ctx);
    }
    for (const auto& [hl, ctxs] : by_params) {
        const GramMatrix g = gram_for(grid.heights[hl.first], grid.lambdas[hl.second]);
        for (std::size_t ctx : ctxs) {
            const int r = static_cast<int>(ctx / static_cast<std::size_t>(opts.outer_folds));
            const int of = static_cast<int>(ctx % static_cast<std::size_t>(opts.outer_folds));
            const auto& outer = plan.outer[static_cast<std::size_t>(r)];
            std::vector<int> train, test;
            for (std::size_t i = 0; i < labels.size(); ++i) {
                (outer[i] == of ? test : train).push_back(static_cast<int>(i));
            }
            FoldResult fr;
            fr.repeat = r;
            fr.fold = of;
            fr.height = grid.heights[winners[ctx].hi];
            fr.lambda = grid.lambdas[winners[ctx].li];
            fr.c_value = grid.c_values[winners[ctx].ci];
            fr.accuracy = fold_accuracy(g, labels, train, test, fr.c_value);
            report.folds[ctx] = fr;
        }
    }

    report.repeat_accuracy.assign(static_cast<std::size_t>(opts.repeats), 0.0);
    for (const FoldResult& fr : report.folds) {
        report.repeat_accuracy[static_cast<std::size_t>(fr.repeat)] +=
            fr.accuracy / static_cast<double>(opts.outer_folds);
    }
    report.mean = std::accumulate(report.repeat_accuracy.begin(), report.repeat_accuracy.end(),
                                  0.0) /
                  static_cast<double>(opts.repeats);
    double var = 0.0;
    for (double a : report.repeat_accuracy) var += (a - report.mean) * (a - report.mean);
    report.stddev = std::sqrt(var / static_cast<double>(opts.repeats));
    return report;
}

std::string report_to_json(const CvReport& report) {
    nlohmann::ordered_json j;
    j["dataset"] = report.dataset;
    j["kernel"] = report.kernel;
    j["grid"] = {{"h", report.grid.heights},
                 {"lambda", report.grid.lambdas},
                 {"C", report.grid.c_values}};
    j["repeats"] = report.repeats;
    j["outer_folds"] = report.outer_folds;
    j["inner_folds"] = report.inner_folds;
    j["seed"] = report.seed;
    j["normalized"] = report.normalized;
    auto folds = nlohmann::ordered_json::array();
    for (const FoldResult& fr : report.folds) {
        folds.push_back({{"repeat", fr.repeat},
                         {"fold", fr.fold},
                         {"accuracy", fr.accuracy},
                         {"selected", {{"h", fr.height}, {"lambda", fr.lambda}, {"C", fr.c_value}}}});
    }
    j["folds"] = std::move(folds);
    j["repeat_accuracy"] = report.repeat_accuracy;
    j["mean"] = report.mean;
    j["std"] = report.stddev;
    return j.dump(2);
}

}  // namespace treek
