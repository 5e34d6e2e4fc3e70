#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "test_support.hpp"
#include "treek/errors.hpp"
#include "treek/feature_space.hpp"
#include "treek/kernel_ops.hpp"
#include "treek/synthetic.hpp"

using namespace treek;

namespace {

std::string ctx(const std::string& f, const std::string& c) {
    return f + std::string(kContextSep) + c;
}
std::string empty_ctx(const std::string& f) {
    return f + std::string(kContextSep) + std::string(kEmptyContext);
}
std::string comp(const std::string& label, const std::vector<std::string>& kids) {
    std::string out = label + std::string(kOpenSym);
    for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i) out += kChildSep;
        out += kids[i];
    }
    return out + std::string(kCloseSym);
}

std::map<std::string, double> resolved(const SparseFeatureVector& v,
                                       const FeatureInterner& interner) {
    std::map<std::string, double> out;
    for (const auto& e : v.entries) out[interner.resolve(e.id)] += e.weight;
    return out;
}

// test-local tree type for the canonical-encoding property
struct TinyTree {
    std::string label;
    std::vector<TinyTree> children;
};

TinyTree random_tree(Rng& rng, int max_nodes, const std::vector<std::string>& alphabet) {
    TinyTree t{alphabet[static_cast<std::size_t>(rng.below(alphabet.size()))], {}};
    int budget = max_nodes - 1;
    if (budget > 0) {
        const int kids = static_cast<int>(rng.below(3));
        for (int i = 0; i < kids && budget > 0; ++i) {
            const int sub = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(budget)));
            t.children.push_back(random_tree(rng, sub, alphabet));
            budget -= sub;
        }
    }
    return t;
}

// independent canonical form: recursive sort of child serializations
std::string canon_by_labels(const TinyTree& t) {
    if (t.children.empty()) return t.label;
    std::vector<std::string> kids;
    for (const auto& c : t.children) kids.push_back(canon_by_labels(c));
    std::sort(kids.begin(), kids.end());
    std::string out = t.label + "(";
    for (const auto& k : kids) out += k + ",";
    return out + ")";
}

FeatureId intern_tree(const TinyTree& t, FeatureInterner& interner, Rng& rng) {
    if (t.children.empty()) return interner.leaf(t.label);
    std::vector<FeatureId> kids;
    for (const auto& c : t.children) kids.push_back(intern_tree(c, interner, rng));
    shuffle(kids, rng);  // insertion order must not matter
    return interner.composite(t.label, kids);
}

}  // namespace

TEST_CASE("leaf and composite encodings") {
    CHECK(encode_leaf("C") == "C");
    CHECK(encode_leaf("Br") == "Br");
    CHECK_THROWS_AS(encode_leaf("a#b"), ValidationError);

    std::vector<FeatureId> kids{5, 3};
    CHECK(encode_composite("C", kids) == comp("C", {"3", "5"}));
    std::vector<FeatureId> one{7};
    CHECK(encode_composite("N", one) == comp("N", {"7"}));
    std::vector<FeatureId> none;
    CHECK_THROWS_AS(encode_composite("C", none), ValidationError);
}

TEST_CASE("isomorphic subtrees intern to the same id") {
    Rng rng(17);
    const auto alphabet = letter_alphabet(3);
    FeatureInterner interner;
    std::map<FeatureId, std::string> id_to_canon;
    std::map<std::string, FeatureId> canon_to_id;
    for (int trial = 0; trial < 80; ++trial) {
        const TinyTree t = random_tree(rng, 8, alphabet);
        const FeatureId a = intern_tree(t, interner, rng);
        const FeatureId b = intern_tree(t, interner, rng);
        CHECK(a == b);
        const std::string canon = canon_by_labels(t);
        if (id_to_canon.contains(a)) CHECK(id_to_canon[a] == canon);
        if (canon_to_id.contains(canon)) CHECK(canon_to_id[canon] == a);
        id_to_canon[a] = canon;
        canon_to_id[canon] = a;
    }
}

TEST_CASE("tck features of a single node") {
    FeatureInterner interner;
    const Graph g({"A"}, {});
    const auto v = tck_features(g, KernelParams{3, 0.5}, interner);
    REQUIRE(v.nnz() == 1);
    const auto entries = resolved(v, interner);
    REQUIRE(entries.contains(empty_ctx("A")));
    CHECK(entries.at(empty_ctx("A")) == doctest::Approx(std::pow(0.5, 0.5)).epsilon(1e-12));
}

TEST_CASE("tck features of the two-node graph, h=1, lambda=1") {
    FeatureInterner interner;
    const Graph g({"A", "B"}, {{0, 1}});
    const auto v = tck_features(g, KernelParams{1, 1.0}, interner);
    const auto entries = resolved(v, interner);
    REQUIRE(entries.size() == 6);
    const std::string ab = comp("A", {"B"});
    const std::string ba = comp("B", {"A"});
    for (const std::string& key :
         {empty_ctx("A"), empty_ctx("B"), empty_ctx(ab), empty_ctx(ba), ctx("B", ab), ctx("A", ba)}) {
        REQUIRE_MESSAGE(entries.contains(key), key);
        CHECK(entries.at(key) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(dot(v, v) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("odd features of the spec examples") {
    FeatureInterner interner;
    const Graph single({"A"}, {});
    const auto sv = odd_features(single, KernelParams{2, 0.5}, interner);
    const auto sentries = resolved(sv, interner);
    REQUIRE(sentries.size() == 1);
    CHECK(sentries.at("A") == doctest::Approx(std::pow(0.5, 0.5)).epsilon(1e-12));

    const Graph g({"A", "B"}, {{0, 1}});
    const auto v = odd_features(g, KernelParams{1, 1.0}, interner);
    const auto entries = resolved(v, interner);
    REQUIRE(entries.size() == 4);
    CHECK(entries.at("A") == doctest::Approx(2.0));
    CHECK(entries.at("B") == doctest::Approx(2.0));
    CHECK(entries.at(comp("A", {"B"})) == doctest::Approx(1.0));
    CHECK(entries.at(comp("B", {"A"})) == doctest::Approx(1.0));
}

TEST_CASE("context-sum: contextualized weights add up to the plain weight") {
    Rng rng(2024);
    const auto alphabet = letter_alphabet(3);
    for (int trial = 0; trial < 100; ++trial) {
        const Graph g = random_labeled_graph(rng, 2, 10, 0.3, alphabet);
        const int h = 1 + static_cast<int>(rng.below(3));
        const double lambda = std::vector<double>{0.5, 1.0, 1.2}[static_cast<std::size_t>(trial % 3)];
        FeatureInterner interner;
        const auto tck = tck_features(g, KernelParams{h, lambda}, interner);
        const auto odd = odd_features(g, KernelParams{h, lambda}, interner);
        std::map<FeatureId, double> context_sum;
        for (const auto& e : tck.entries) {
            const FeatureInfo info = interner.info(e.id);
            REQUIRE((info.kind == FeatureInfo::Kind::ContextPair ||
                     info.kind == FeatureInfo::Kind::EmptyContextPair));
            context_sum[info.parts[0]] += e.weight;
        }
        REQUIRE(context_sum.size() == odd.nnz());
        for (const auto& e : odd.entries) {
            REQUIRE(context_sum.contains(e.id));
            CHECK(context_sum.at(e.id) == doctest::Approx(e.weight).epsilon(1e-9));
        }
    }
}

TEST_CASE("tck+odd is the disjoint union of both feature sets") {
    FeatureInterner interner;
    const Graph single({"A"}, {});
    const auto sv = tck_plus_odd_features(single, KernelParams{1, 1.0}, interner);
    REQUIRE(sv.nnz() == 2);
    CHECK(dot(sv, sv) == doctest::Approx(2.0));

    const Graph g({"A", "B"}, {{0, 1}});
    const auto v = tck_plus_odd_features(g, KernelParams{1, 1.0}, interner);
    CHECK(v.nnz() == 10);
    CHECK(dot(v, v) == doctest::Approx(16.0));
}

TEST_CASE("combined kernel equals the sum of its parts on random pairs") {
    Rng rng(88);
    const auto alphabet = letter_alphabet(3);
    for (int trial = 0; trial < 30; ++trial) {
        const Graph g1 = random_labeled_graph(rng, 2, 9, 0.3, alphabet);
        const Graph g2 = random_labeled_graph(rng, 2, 9, 0.3, alphabet);
        const KernelParams params{2, 0.8};
        FeatureInterner interner;
        const double combined = dot(tck_plus_odd_features(g1, params, interner),
                                    tck_plus_odd_features(g2, params, interner));
        const double tck = dot(tck_features(g1, params, interner),
                               tck_features(g2, params, interner));
        const double odd = dot(odd_features(g1, params, interner),
                               odd_features(g2, params, interner));
        CHECK(combined == doctest::Approx(tck + odd).epsilon(1e-12));
    }
}

TEST_CASE("wl features: degenerate refinements of a single node") {
    FeatureInterner interner;
    const Graph g({"A"}, {});
    const auto v = wl_features(g, 2, interner);
    REQUIRE(v.nnz() == 3);
    for (const auto& e : v.entries) CHECK(e.weight == doctest::Approx(1.0));
    // one entry per iteration tag
    std::set<std::string> prefixes;
    for (const auto& e : v.entries) {
        const std::string r = interner.resolve(e.id);
        prefixes.insert(r.substr(0, r.find(kContextSep)));
    }
    CHECK(prefixes == std::set<std::string>{"0", "1", "2"});
}

TEST_CASE("wl features of the A-B-A path") {
    FeatureInterner interner;
    const Graph g = test::path_graph({"A", "B", "A"});
    const auto v = wl_features(g, 1, interner);
    std::map<int, std::multiset<double>> weights_by_iteration;
    for (const auto& e : v.entries) {
        const FeatureInfo info = interner.info(e.id);
        REQUIRE(info.kind == FeatureInfo::Kind::WlFeature);
        weights_by_iteration[static_cast<int>(info.iteration)].insert(e.weight);
    }
    CHECK(weights_by_iteration.at(0) == std::multiset<double>{1.0, 2.0});
    CHECK(weights_by_iteration.at(1) == std::multiset<double>{1.0, 2.0});
}

TEST_CASE("isomorphic graphs have identical wl vectors") {
    Rng rng(3);
    const auto alphabet = letter_alphabet(3);
    for (int trial = 0; trial < 20; ++trial) {
        const Graph g = random_labeled_graph(rng, 2, 10, 0.3, alphabet);
        const Graph pg = permute_graph(g, random_permutation(g.node_count(), rng));
        FeatureInterner interner;
        const auto a = resolved(wl_features(g, 3, interner), interner);
        const auto b = resolved(wl_features(pg, 3, interner), interner);
        CHECK(a == b);
    }
}

TEST_CASE("permutation invariance of the resolved feature multiset") {
    Rng rng(9001);
    const auto alphabet = letter_alphabet(3);
    for (int trial = 0; trial < 25; ++trial) {
        const Graph g = random_labeled_graph(rng, 2, 9, 0.35, alphabet);
        const Graph pg = permute_graph(g, random_permutation(g.node_count(), rng));
        const KernelParams params{2, 0.9};
        for (FeatureSpaceTag space : {FeatureSpaceTag::Tck, FeatureSpaceTag::Odd,
                                      FeatureSpaceTag::TckOdd, FeatureSpaceTag::Wl}) {
            FeatureInterner interner;
            const auto va = materialize(extract_profile(g, space, params.height, interner),
                                        params.lambda);
            const auto vb = materialize(extract_profile(pg, space, params.height, interner),
                                        params.lambda);
            CHECK(resolved(va, interner) == resolved(vb, interner));
        }
    }
}

TEST_CASE("weights factor as integer times lambda^(size/2)") {
    Rng rng(55);
    const auto alphabet = letter_alphabet(3);
    for (int trial = 0; trial < 20; ++trial) {
        const Graph g = random_labeled_graph(rng, 2, 9, 0.3, alphabet);
        FeatureInterner interner;
        const FeatureProfile profile = extract_profile(g, FeatureSpaceTag::TckOdd, 3, interner);
        const auto at_one = materialize(profile, 1.0);
        const auto weighted = materialize(profile, 0.7);
        REQUIRE(at_one.nnz() == weighted.nnz());
        for (std::size_t i = 0; i < profile.entries.size(); ++i) {
            const double m = at_one.entries[i].weight;
            CHECK(m == doctest::Approx(std::round(m)).epsilon(1e-12));  // integer multiplicity
            CHECK(m >= 1.0);
            const double expected =
                m * std::pow(0.7, 0.5 * static_cast<double>(profile.entries[i].size));
            CHECK(weighted.entries[i].weight == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("odd feature support grows monotonically with h") {
    Rng rng(66);
    const auto alphabet = letter_alphabet(3);
    for (int trial = 0; trial < 15; ++trial) {
        const Graph g = random_labeled_graph(rng, 2, 9, 0.35, alphabet);
        FeatureInterner interner;
        std::set<std::string> previous;
        for (int h = 1; h <= 4; ++h) {
            const auto v = materialize(extract_profile(g, FeatureSpaceTag::Odd, h, interner), 1.0);
            std::set<std::string> support;
            for (const auto& e : v.entries) support.insert(interner.resolve(e.id));
            CHECK(std::includes(support.begin(), support.end(), previous.begin(), previous.end()));
            previous = std::move(support);
        }
    }
}

TEST_CASE("batch extraction is identical for every thread count") {
    Rng rng(1234);
    const auto alphabet = letter_alphabet(3);
    std::vector<Graph> graphs;
    for (int i = 0; i < 70; ++i) graphs.push_back(random_labeled_graph(rng, 2, 10, 0.3, alphabet));
    for (FeatureSpaceTag space : {FeatureSpaceTag::Tck, FeatureSpaceTag::Wl}) {
        FeatureInterner serial;
        FeatureInterner threaded;
        const auto p1 = extract_profiles(graphs, space, 3, serial, 1);
        const auto p3 = extract_profiles(graphs, space, 3, threaded, 3);
        REQUIRE(serial.count() == threaded.count());
        for (FeatureId id = 0; id < serial.count(); ++id) {
            CHECK(serial.encoding(id) == threaded.encoding(id));
        }
        REQUIRE(p1.size() == p3.size());
        for (std::size_t i = 0; i < p1.size(); ++i) {
            REQUIRE(p1[i].entries.size() == p3[i].entries.size());
            for (std::size_t k = 0; k < p1[i].entries.size(); ++k) {
                CHECK(p1[i].entries[k].id == p3[i].entries[k].id);
                CHECK(p1[i].entries[k].count == p3[i].entries[k].count);
                CHECK(p1[i].entries[k].size == p3[i].entries[k].size);
            }
        }
    }
}

TEST_CASE("invalid kernel parameters are rejected") {
    FeatureInterner interner;
    const Graph g({"A"}, {});
    CHECK_THROWS_AS(tck_features(g, KernelParams{0, 1.0}, interner), ConfigError);
    CHECK_THROWS_AS(tck_features(g, KernelParams{1, 0.0}, interner), ConfigError);
    CHECK_THROWS_AS(tck_features(g, KernelParams{1, -0.5}, interner), ConfigError);
}
