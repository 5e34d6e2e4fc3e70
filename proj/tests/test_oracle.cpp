#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "treek/dag_visit.hpp"
#include "treek/errors.hpp"
#include "treek/kernel_ops.hpp"
#include "treek/oracle.hpp"
#include "treek/synthetic.hpp"

using namespace treek;

namespace {

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("tree_visit of a single node") {
    const Graph g({"A"}, {});
    const TreeVisit t = tree_visit(g, 0, 3);
    REQUIRE(t.size() == 1);
    CHECK(t.nodes[0].label == "A");
    CHECK(t.nodes[0].children.empty());
}

TEST_CASE("tree_visit duplicates the antipode of a 4-cycle") {
    const Graph g = test::cycle_graph({"a", "b", "c", "d"});
    const TreeVisit t = tree_visit(g, 0, 2);
    CHECK(t.size() == 5);  // a, b, d, and c under both
    int c_copies = 0;
    for (const auto& n : t.nodes) {
        if (n.graph_vertex == 2) ++c_copies;
    }
    CHECK(c_copies == 2);
}

TEST_CASE("path graphs unfold without duplication") {
    const Graph g = test::path_graph({"A", "B", "C", "D"});
    for (int j = 0; j <= 3; ++j) {
        const TreeVisit t = tree_visit(g, 0, j);
        CHECK(static_cast<int>(t.size()) == j + 1);
    }
}

TEST_CASE("tree size equals the n_sp-weighted DagVisit prediction") {
    Rng rng(41);
    const auto alphabet = letter_alphabet(3);
    for (int trial = 0; trial < 30; ++trial) {
        const Graph g = random_labeled_graph(rng, 2, 9, 0.35, alphabet);
        const int root = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.node_count())));
        const int j = static_cast<int>(rng.below(4));
        const TreeVisit t = tree_visit(g, root, j);
        const DagVisit d = dag_visit(g, root, j);
        double expected = 0.0;
        for (int lu = 0; lu < d.size(); ++lu) expected += d.n_sp[static_cast<std::size_t>(lu)];
        CHECK(static_cast<double>(t.size()) == expected);
    }
}

TEST_CASE("tree_visit node budget") {
    const Graph g = test::cycle_graph({"a", "b", "c", "d"});
    CHECK_THROWS_AS(tree_visit(g, 0, 2, 3), BudgetError);
}

TEST_CASE("c_st base cases") {
    const Graph leaf_a({"A"}, {});
    const Graph leaf_a2({"A"}, {});
    const Graph leaf_b({"B"}, {});
    const TreeVisit ta = tree_visit(leaf_a, 0, 1);
    const TreeVisit ta2 = tree_visit(leaf_a2, 0, 1);
    const TreeVisit tb = tree_visit(leaf_b, 0, 1);
    CHECK(c_st(ta, 0, ta2, 0, 0.5) == doctest::Approx(0.5));
    CHECK(c_st(ta, 0, tb, 0, 0.5) == doctest::Approx(0.0));
}

TEST_CASE("c_st on identical three-node trees") {
    // star: root A with leaves B, C materializes as a full height-1 tree
    const Graph g({"A", "B", "C"}, {{0, 1}, {0, 2}});
    const TreeVisit t1 = tree_visit(g, 0, 1);
    const TreeVisit t2 = tree_visit(g, 0, 1);
    CHECK(c_st(t1, 0, t2, 0, 1.0) == doctest::Approx(1.0));
    // mismatched out-degree
    const Graph g2({"A", "B"}, {{0, 1}});
    const TreeVisit t3 = tree_visit(g2, 0, 1);
    CHECK(c_st(t1, 0, t3, 0, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("brute-force kernels on the closed-form cases") {
    const Graph a1({"A"}, {});
    const Graph a2({"A"}, {});
    for (double lambda : {0.5, 1.0, 1.3}) {
        const KernelParams params{2, lambda};
        CHECK(brute_force_odd(a1, a2, params) == doctest::Approx(lambda));
        CHECK(brute_force_tck(a1, a2, params) == doctest::Approx(lambda));
    }

    // disjoint label alphabets share nothing
    Rng rng(7);
    const Graph g1 = random_labeled_graph(rng, 2, 8, 0.4, letter_alphabet(3));
    const Graph g2 = random_labeled_graph(rng, 2, 8, 0.4, {"X", "Y", "Z"});
    const KernelParams params{3, 0.8};
    CHECK(brute_force_odd(g1, g2, params) == doctest::Approx(0.0));
    CHECK(brute_force_tck(g1, g2, params) == doctest::Approx(0.0));
}

TEST_CASE("two-node self kernel has the closed form 4l + 2l^2 at h=1") {
    const Graph g({"A", "B"}, {{0, 1}});
    for (double lambda : {0.5, 1.0, 1.2}) {
        const KernelParams params{1, lambda};
        const double expected = 4.0 * lambda + 2.0 * lambda * lambda;
        CHECK(brute_force_tck(g, g, params) == doctest::Approx(expected).epsilon(1e-12));
        FeatureInterner interner;
        const auto v = tck_features(g, params, interner);
        CHECK(dot(v, v) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("oracles are symmetric in their arguments") {
    Rng rng(13);
    const auto alphabet = letter_alphabet(3);
    for (int trial = 0; trial < 10; ++trial) {
        const Graph g1 = random_labeled_graph(rng, 2, 8, 0.3, alphabet);
        const Graph g2 = random_labeled_graph(rng, 2, 8, 0.3, alphabet);
        const KernelParams params{2, 0.9};
        CHECK(brute_force_odd(g1, g2, params) == doctest::Approx(brute_force_odd(g2, g1, params)));
        CHECK(brute_force_tck(g1, g2, params) == doctest::Approx(brute_force_tck(g2, g1, params)));
    }
}

TEST_CASE("explicit features agree with the brute-force oracles") {
    Rng rng(1023);
    const auto alphabet = letter_alphabet(3);
    std::vector<Graph> graphs;
    for (int i = 0; i < 30; ++i) graphs.push_back(random_labeled_graph(rng, 4, 10, 0.3, alphabet));
    for (int pair = 0; pair < 12; ++pair) {
        const Graph& g1 = graphs[static_cast<std::size_t>(rng.below(graphs.size()))];
        const Graph& g2 = graphs[static_cast<std::size_t>(rng.below(graphs.size()))];
        for (int h : {1, 2, 3}) {
            for (double lambda : {0.5, 1.0, 1.2}) {
                const KernelParams params{h, lambda};
                FeatureInterner interner;
                const double tck_fast = dot(tck_features(g1, params, interner),
                                            tck_features(g2, params, interner));
                const double odd_fast = dot(odd_features(g1, params, interner),
                                            odd_features(g2, params, interner));
                CHECK(rel_err(tck_fast, brute_force_tck(g1, g2, params)) <= 1e-9);
                CHECK(rel_err(odd_fast, brute_force_odd(g1, g2, params)) <= 1e-9);
            }
        }
    }
}
