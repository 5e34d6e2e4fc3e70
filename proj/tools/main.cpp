#include <thread>

#include <CLI11.hpp>

#include "cli_app.hpp"

namespace {

void add_dataset_flags(CLI::App* cmd, treek::cli::RunConfig& config, bool required = true) {
    auto* opt = cmd->add_option("--dataset", config.dataset,
                                "dataset directory (tu) or file (jsonl)");
    if (required) opt->required();
    cmd->add_option("--format", config.format, "dataset format: tu | jsonl")
        ->check(CLI::IsMember({"tu", "jsonl"}));
}

void add_kernel_flags(CLI::App* cmd, treek::cli::RunConfig& config) {
    cmd->add_option("--kernel", config.kernel, "kernel family: tck | odd | tck+odd | wl")
        ->check(CLI::IsMember({"tck", "odd", "tck+odd", "wl"}));
    cmd->add_option("--height", config.height, "maximum visit height h (>= 1)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--lambda", config.lambda, "subtree weight factor (> 0)");
}

}  // namespace

int main(int argc, char** argv) {
    treek::cli::RunConfig config;
    config.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    CLI::App app{"tree-based graph kernels: feature extraction, Gram matrices, SVM evaluation"};
    app.require_subcommand(1);
    app.add_option("--threads", config.threads, "worker threads")->check(CLI::PositiveNumber);

    auto* validate = app.add_subcommand("validate", "parse a dataset and check its invariants");
    add_dataset_flags(validate, config);

    auto* features = app.add_subcommand("features", "dump sparse feature vectors as JSON lines");
    add_dataset_flags(features, config);
    add_kernel_flags(features, config);
    features->add_option("--out", config.out, "output file (default: stdout)");

    auto* gram = app.add_subcommand("gram", "compute and export a Gram matrix");
    add_dataset_flags(gram, config);
    add_kernel_flags(gram, config);
    gram->add_option("--engine", config.engine, "explicit | implicit")
        ->check(CLI::IsMember({"explicit", "implicit"}));
    gram->add_flag("--normalize", config.normalize, "cosine-normalize the matrix");
    gram->add_option("--out", config.out, "output CSV path")->required();

    auto* cv = app.add_subcommand("cv", "nested cross-validation with grid search");
    add_dataset_flags(cv, config);
    cv->add_option("--kernel", config.kernel, "kernel family: tck | odd | tck+odd | wl")
        ->check(CLI::IsMember({"tck", "odd", "tck+odd", "wl"}));
    cv->add_option("--grid", config.grid, "default | small | path to a {h,lambda,C} JSON file");
    cv->add_option("--repeats", config.repeats, "number of repeated runs")
        ->check(CLI::PositiveNumber);
    cv->add_option("--outer-folds", config.outer_folds, "outer folds")->check(CLI::PositiveNumber);
    cv->add_option("--inner-folds", config.inner_folds, "inner folds")->check(CLI::PositiveNumber);
    cv->add_option("--seed", config.seed, "split seed");
    cv->add_flag("--normalize", config.normalize, "cosine-normalize Gram matrices");
    cv->add_option("--out", config.out, "report JSON path (default: stdout)");

    auto* oracle = app.add_subcommand(
        "oracle-check", "compare fast kernels against the brute-force reference on random graphs");
    oracle->add_option("--graphs", config.graphs, "number of random graphs")
        ->check(CLI::PositiveNumber);
    oracle->add_option("--max-nodes", config.max_nodes, "maximum graph order")
        ->check(CLI::PositiveNumber);
    oracle->add_option("--edge-prob", config.edge_prob, "edge probability");
    oracle->add_option("--alphabet", config.alphabet, "label alphabet size")
        ->check(CLI::PositiveNumber);
    oracle->add_option("--height", config.height, "visit height h")->check(CLI::PositiveNumber);
    oracle->add_option("--lambda", config.lambda, "weight factor");
    oracle->add_option("--seed", config.seed, "generator seed");
    oracle->add_option("--budget", config.budget, "tree-visit node budget");

    auto* bench = app.add_subcommand("bench", "Gram timing table over kernels and heights");
    add_dataset_flags(bench, config, /*required=*/false);
    bench->add_option("--kernels", config.kernels, "comma-separated kernel list");
    bench->add_option("--heights", config.heights, "height list: lo..hi or comma-separated");
    bench->add_option("--lambda", config.lambda, "weight factor");
    bench->add_option("--graphs", config.graphs, "synthetic corpus size (no --dataset)");
    bench->add_option("--max-nodes", config.max_nodes, "synthetic graph order cap");
    bench->add_option("--alphabet", config.alphabet, "synthetic label alphabet size");
    bench->add_option("--seed", config.seed, "synthetic corpus seed");
    bench->add_option("--out", config.out, "timing CSV path (default: stdout)");

    auto* visit = app.add_subcommand("visit", "dump one shortest-path DAG visit as text");
    add_dataset_flags(visit, config);
    visit->add_option("--graph", config.graph_index, "graph index");
    visit->add_option("--root", config.root, "root node index");
    visit->add_option("--height", config.height, "visit height h");

    // bench defaults differ from the oracle sizes
    bench->parse_complete_callback([&] {
        if (config.dataset.empty() && bench->count("--graphs") == 0) config.graphs = 300;
        if (config.dataset.empty() && bench->count("--max-nodes") == 0) config.max_nodes = 30;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : treek::cli::kExitConfig;
    }

    if (validate->parsed()) config.command = treek::cli::RunConfig::Command::Validate;
    if (features->parsed()) config.command = treek::cli::RunConfig::Command::Features;
    if (gram->parsed()) config.command = treek::cli::RunConfig::Command::Gram;
    if (cv->parsed()) config.command = treek::cli::RunConfig::Command::Cv;
    if (oracle->parsed()) config.command = treek::cli::RunConfig::Command::OracleCheck;
    if (bench->parsed()) config.command = treek::cli::RunConfig::Command::Bench;
    if (visit->parsed()) config.command = treek::cli::RunConfig::Command::Visit;

    return treek::cli::run(config);
}
