#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace treek::cli {

// Exit code categories, one per error family.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitParse = 3;
inline constexpr int kExitValidation = 4;
inline constexpr int kExitBudget = 5;
inline constexpr int kExitSolver = 6;

struct RunConfig {
    enum class Command { Validate, Features, Gram, Cv, OracleCheck, Bench, Visit };
    Command command = Command::Validate;

    std::string dataset;           // directory (tu) or file (jsonl)
    std::string format = "tu";     // tu | jsonl
    std::string kernel = "tck";    // tck | odd | tck+odd | wl
    int height = 3;
    double lambda = 1.0;
    std::string engine = "explicit";  // explicit | implicit
    std::string out;
    std::uint64_t seed = 7;
    int threads = 1;
    bool normalize = false;
    std::size_t budget = 1'000'000;

    // cv
    std::string grid = "default";  // default | small | path to a JSON grid
    int repeats = 10;
    int outer_folds = 10;
    int inner_folds = 10;

    // oracle-check and synthetic corpora
    int graphs = 50;
    int max_nodes = 10;
    double edge_prob = 0.3;
    int alphabet = 3;

    // bench
    std::string kernels = "odd,tck";
    std::string heights = "1..10";

    // visit
    int graph_index = 0;
    int root = 0;
};

/// Dispatches one subcommand; prints a human summary to stdout, writes
/// machine-readable artifacts to the configured output path, and maps
/// errors to the exit codes above (message on stderr).
int run(const RunConfig& config);

}  // namespace treek::cli
