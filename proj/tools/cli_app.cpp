#include "cli_app.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "treek/cross_validation.hpp"
#include "treek/dag_visit.hpp"
#include "treek/dataset_io.hpp"
#include "treek/errors.hpp"
#include "treek/feature_space.hpp"
#include "treek/implicit.hpp"
#include "treek/kernel_ops.hpp"
#include "treek/oracle.hpp"
#include "treek/synthetic.hpp"

namespace treek::cli {

namespace {

Dataset load_dataset(const RunConfig& config) {
    if (config.dataset.empty()) throw ConfigError("--dataset is required");
    if (config.format == "tu") return parse_tu_dataset(config.dataset);
    if (config.format == "jsonl") return parse_jsonl_dataset(config.dataset);
    throw ConfigError("unknown --format \"" + config.format + "\" (expected tu or jsonl)");
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open for writing: " + path);
    return out;
}

std::vector<int> parse_heights(const std::string& spec) {
    std::vector<int> heights;
    const auto dots = spec.find("..");
    if (dots != std::string::npos) {
        const int lo = std::stoi(spec.substr(0, dots));
        const int hi = std::stoi(spec.substr(dots + 2));
        if (lo < 1 || hi < lo) throw ConfigError("bad --heights range \"" + spec + "\"");
        for (int h = lo; h <= hi; ++h) heights.push_back(h);
        return heights;
    }
    std::stringstream ss(spec);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (!token.empty()) heights.push_back(std::stoi(token));
    }
    if (heights.empty()) throw ConfigError("bad --heights \"" + spec + "\"");
    return heights;
}

std::vector<std::string> split_csv(const std::string& spec) {
    std::vector<std::string> out;
    std::stringstream ss(spec);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (!token.empty()) out.push_back(token);
    }
    return out;
}

Dataset synthetic_corpus(const RunConfig& config) {
    Dataset ds;
    ds.name = "synthetic";
    Rng rng(config.seed);
    const auto alphabet = letter_alphabet(std::max(config.alphabet, 1));
    for (int i = 0; i < config.graphs; ++i) {
        ds.graphs.push_back(
            random_molecule_graph(rng, 4, std::max(config.max_nodes, 4), 4, alphabet));
        ds.labels.push_back(i % 2 == 0 ? 1 : -1);
    }
    return ds;
}

int cmd_validate(const RunConfig& config) {
    const Dataset ds = load_dataset(config);
    if (auto v = validate_dataset(ds)) throw ValidationError(v->message);
    std::cout << "ok, " << ds.size() << " graphs\n";
    return kExitOk;
}

int cmd_features(const RunConfig& config) {
    const Dataset ds = load_dataset(config);
    const FeatureSpaceTag space = feature_space_from_string(config.kernel);
    FeatureInterner interner;
    const auto profiles =
        extract_profiles(ds.graphs, space, config.height, interner, config.threads);
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!config.out.empty()) {
        file = open_out(config.out);
        out = &file;
    }
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        const SparseFeatureVector v = materialize(profiles[i], config.lambda);
        *out << feature_vector_jsonl(v, i, interner) << '\n';
    }
    std::cout << "wrote " << profiles.size() << " feature vectors (" << to_string(space)
              << ", h=" << config.height << ", lambda=" << config.lambda << ")\n";
    return kExitOk;
}

KernelTag tag_from_config(const RunConfig& config) {
    KernelTag tag;
    tag.space = feature_space_from_string(config.kernel);
    tag.height = config.height;
    tag.lambda = config.lambda;
    if (config.engine == "implicit") {
        tag.implicit_engine = true;
    } else if (config.engine != "explicit") {
        throw ConfigError("unknown --engine \"" + config.engine +
                          "\" (expected explicit or implicit)");
    }
    return tag;
}

int cmd_gram(const RunConfig& config) {
    const Dataset ds = load_dataset(config);
    if (config.out.empty()) throw ConfigError("gram requires --out");
    GramMatrix g = gram(ds, tag_from_config(config), config.threads);
    if (config.normalize) g = normalize(g);
    write_gram_csv(config.out, g);
    write_gram_meta(config.out + ".meta.json", g);
    std::cout << "gram " << g.size() << "x" << g.size() << " [" << to_string(g.tag())
              << "] extract " << g.timing().extract_seconds << "s, fill "
              << g.timing().fill_seconds << "s -> " << config.out << '\n';
    return kExitOk;
}

GridSpec grid_from_config(const RunConfig& config, FeatureSpaceTag space) {
    if (config.grid == "default") return default_grid(space);
    if (config.grid == "small") return small_grid(space);
    std::ifstream in(config.grid, std::ios::binary);
    if (!in) throw ParseError("cannot read grid file: " + config.grid);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("bad grid file " + config.grid + ": " + e.what());
    }
    GridSpec grid;
    try {
        grid.heights = j.at("h").get<std::vector<int>>();
        grid.lambdas = j.at("lambda").get<std::vector<double>>();
        grid.c_values = j.at("C").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("bad grid file " + config.grid + ": " + e.what());
    }
    return grid;
}

int cmd_cv(const RunConfig& config) {
    const Dataset ds = load_dataset(config);
    const FeatureSpaceTag space = feature_space_from_string(config.kernel);
    CvOptions opts;
    opts.outer_folds = config.outer_folds;
    opts.inner_folds = config.inner_folds;
    opts.repeats = config.repeats;
    opts.seed = config.seed;
    opts.normalize = config.normalize;
    opts.threads = config.threads;
    const CvReport report = nested_cv(ds, space, grid_from_config(config, space), opts);
    const std::string json = report_to_json(report);
    if (!config.out.empty()) {
        open_out(config.out) << json << '\n';
    } else {
        std::cout << json << '\n';
    }
    char line[160];
    std::snprintf(line, sizeof(line), "%s on %s: accuracy %.4f +- %.4f (%d repeats)\n",
                  report.kernel.c_str(), report.dataset.c_str(), report.mean, report.stddev,
                  report.repeats);
    std::cout << line;
    return kExitOk;
}

int cmd_oracle_check(const RunConfig& config) {
    Rng rng(config.seed);
    const auto alphabet = letter_alphabet(std::max(config.alphabet, 1));
    std::vector<Graph> graphs;
    graphs.reserve(static_cast<std::size_t>(config.graphs));
    for (int i = 0; i < config.graphs; ++i) {
        graphs.push_back(
            random_labeled_graph(rng, 4, std::max(config.max_nodes, 4), config.edge_prob,
                                 alphabet));
    }
    const KernelParams params{config.height, config.lambda};
    double max_err_tck = 0.0;
    double max_err_odd = 0.0;
    for (std::size_t i = 0; i + 1 < graphs.size(); i += 2) {
        const Graph& g1 = graphs[i];
        const Graph& g2 = graphs[i + 1];
        FeatureInterner interner;
        const auto t1 = tck_features(g1, params, interner);
        const auto t2 = tck_features(g2, params, interner);
        const auto o1 = odd_features(g1, params, interner);
        const auto o2 = odd_features(g2, params, interner);
        const double tck_exact = brute_force_tck(g1, g2, params, config.budget);
        const double odd_exact = brute_force_odd(g1, g2, params, config.budget);
        max_err_tck = std::max(max_err_tck, std::abs(dot(t1, t2) - tck_exact) /
                                                std::max(1.0, std::abs(tck_exact)));
        max_err_odd = std::max(max_err_odd, std::abs(dot(o1, o2) - odd_exact) /
                                                std::max(1.0, std::abs(odd_exact)));
    }
    std::printf("oracle check over %d graphs (h=%d, lambda=%g, seed=%llu)\n", config.graphs,
                config.height, config.lambda,
                static_cast<unsigned long long>(config.seed));
    std::printf("  tck  max relative error: %.3e\n", max_err_tck);
    std::printf("  odd  max relative error: %.3e\n", max_err_odd);
    return kExitOk;
}

int cmd_bench(const RunConfig& config) {
    const Dataset ds = config.dataset.empty() ? synthetic_corpus(config) : load_dataset(config);
    const auto heights = parse_heights(config.heights);
    const auto kernels = split_csv(config.kernels);
    if (kernels.empty()) throw ConfigError("bench requires --kernels");

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!config.out.empty()) {
        file = open_out(config.out);
        out = &file;
    }
    *out << "kernel,h,lambda,extract_seconds,fill_seconds,total_seconds\n";
    char line[192];
    for (const std::string& kernel : kernels) {
        const FeatureSpaceTag space = feature_space_from_string(kernel);
        for (int h : heights) {
            KernelTag tag{space, h, config.lambda, false, false};
            const GramMatrix g = gram(ds, tag, config.threads);
            std::snprintf(line, sizeof(line), "%s,%d,%.17g,%.17g,%.17g,%.17g\n", kernel.c_str(),
                          h, config.lambda, g.timing().extract_seconds, g.timing().fill_seconds,
                          g.timing().total_seconds());
            *out << line;
            std::cout << kernel << " h=" << h << ": " << g.timing().total_seconds() << "s\n";
        }
    }
    return kExitOk;
}

int cmd_visit(const RunConfig& config) {
    const Dataset ds = load_dataset(config);
    if (config.graph_index < 0 || static_cast<std::size_t>(config.graph_index) >= ds.size()) {
        throw ConfigError("--graph index out of range");
    }
    const Graph& g = ds.graphs[static_cast<std::size_t>(config.graph_index)];
    const DagVisit visit = dag_visit(g, config.root, config.height);
    std::cout << "visit of graph " << config.graph_index << " rooted at " << config.root
              << " (height " << config.height << "): " << visit.size() << " nodes, diam "
              << visit.diam << '\n';
    for (int local : visit.order) {
        const std::size_t u = static_cast<std::size_t>(local);
        std::cout << "  node " << visit.node[u] << " label " << g.label(visit.node[u])
                  << " depth " << visit.depth[u] << " n_sp " << visit.n_sp[u] << " children [";
        bool first = true;
        for (int c : visit.children[u]) {
            if (!first) std::cout << ' ';
            std::cout << visit.node[static_cast<std::size_t>(c)];
            first = false;
        }
        std::cout << "]\n";
    }
    return kExitOk;
}

}  // namespace

int run(const RunConfig& config) {
    try {
        switch (config.command) {
            case RunConfig::Command::Validate: return cmd_validate(config);
            case RunConfig::Command::Features: return cmd_features(config);
            case RunConfig::Command::Gram: return cmd_gram(config);
            case RunConfig::Command::Cv: return cmd_cv(config);
            case RunConfig::Command::OracleCheck: return cmd_oracle_check(config);
            case RunConfig::Command::Bench: return cmd_bench(config);
            case RunConfig::Command::Visit: return cmd_visit(config);
        }
        return kExitInternal;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kExitSolver;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInternal;
    }
}

}  // namespace treek::cli
