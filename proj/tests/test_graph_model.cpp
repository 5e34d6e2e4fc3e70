#include <doctest.h>

#include <fstream>
#include <set>

#include "test_support.hpp"
#include "treek/dataset_io.hpp"
#include "treek/errors.hpp"
#include "treek/graph.hpp"
#include "treek/synthetic.hpp"

using namespace treek;

TEST_CASE("labels reject reserved encoding symbols") {
    CHECK(label_is_valid("C"));
    CHECK(label_is_valid("Br"));
    CHECK(label_is_valid("42"));
    CHECK_FALSE(label_is_valid(""));
    CHECK_FALSE(label_is_valid("a#b"));
    CHECK_FALSE(label_is_valid("a⌈b"));
    CHECK_FALSE(label_is_valid("a⌋b"));
    CHECK_FALSE(label_is_valid("a∘b"));
}

TEST_CASE("validate_graph reports the first violation") {
    CHECK_FALSE(validate_graph({"A"}, {}).has_value());

    auto self_loop = validate_graph({"A"}, {{0, 0}});
    REQUIRE(self_loop.has_value());
    CHECK(self_loop->kind == Violation::Kind::SelfLoop);

    auto bad_index = validate_graph({"A", "B"}, {{0, 5}});
    REQUIRE(bad_index.has_value());
    CHECK(bad_index->kind == Violation::Kind::IndexOutOfRange);

    auto reserved = validate_graph({"a#b"}, {});
    REQUIRE(reserved.has_value());
    CHECK(reserved->kind == Violation::Kind::ReservedSymbol);
}

TEST_CASE("graph construction normalizes edges and adjacency") {
    Graph g({"A", "B", "C"}, {{1, 0}, {0, 1}, {2, 1}});
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(1, 0));
    CHECK_FALSE(g.adjacent(0, 2));
    CHECK(g.neighbors(1) == std::vector<int>{0, 2});
    CHECK_THROWS_AS(Graph({"A"}, {{0, 0}}), ValidationError);
}

TEST_CASE("adjacency is symmetric for random graphs") {
    Rng rng(123);
    const auto alphabet = letter_alphabet(3);
    for (int trial = 0; trial < 20; ++trial) {
        const Graph g = random_labeled_graph(rng, 2, 10, 0.4, alphabet);
        for (int u = 0; u < g.node_count(); ++u) {
            for (int v = 0; v < g.node_count(); ++v) {
                CHECK(g.adjacent(u, v) == g.adjacent(v, u));
            }
        }
    }
}

TEST_CASE("tu fixture parses to the hand-written dataset") {
    const Dataset ds = parse_tu_dataset(test::fixture_dir() / "tu_tiny");
    REQUIRE(ds.size() == 3);
    CHECK(ds.name == "tu_tiny");

    // graph 0: triangle with labels 6,7,6 (duplicate directed pair collapsed)
    CHECK(ds.graphs[0].labels() == std::vector<std::string>{"6", "7", "6"});
    CHECK(ds.graphs[0].edge_count() == 3);
    CHECK(ds.graphs[0].adjacent(0, 1));
    CHECK(ds.graphs[0].adjacent(1, 2));
    CHECK(ds.graphs[0].adjacent(0, 2));

    // graph 1: single edge, labels 7,7
    CHECK(ds.graphs[1].labels() == std::vector<std::string>{"7", "7"});
    CHECK(ds.graphs[1].edges() == std::vector<std::pair<int, int>>{{0, 1}});

    // graph 2: isolated node labeled 8
    CHECK(ds.graphs[2].labels() == std::vector<std::string>{"8"});
    CHECK(ds.graphs[2].edge_count() == 0);

    // raw classes 2,1,2 -> +1,-1,+1 (smaller raw label becomes -1)
    CHECK(ds.labels == std::vector<int>{1, -1, 1});
}

TEST_CASE("tu fixture cross-checked by an independent re-read") {
    // Re-derive the per-graph node counts and degree sums straight from the
    // raw files, without the parser.
    const auto dir = test::fixture_dir() / "tu_tiny";
    std::ifstream ind(dir / "tu_tiny_graph_indicator.txt");
    std::vector<int> graph_of;
    int gid = 0;
    while (ind >> gid) graph_of.push_back(gid - 1);

    std::ifstream edges_in(dir / "tu_tiny_A.txt");
    std::set<std::pair<long, long>> undirected;
    std::string line;
    while (std::getline(edges_in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        const long a = std::stol(line.substr(0, comma));
        const long b = std::stol(line.substr(comma + 1));
        undirected.insert({std::min(a, b), std::max(a, b)});
    }

    const Dataset ds = parse_tu_dataset(dir);
    std::vector<std::size_t> node_counts(ds.size(), 0);
    for (int g : graph_of) ++node_counts[static_cast<std::size_t>(g)];
    std::size_t total_edges = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        CHECK(static_cast<std::size_t>(ds.graphs[i].node_count()) == node_counts[i]);
        total_edges += ds.graphs[i].edge_count();
    }
    CHECK(total_edges == undirected.size());
}

TEST_CASE("tu parser accepts the degenerate single-node layout") {
    const auto dir = test::temp_path("treek_tu_degenerate");
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "mini_A.txt") << "";
    std::ofstream(dir / "mini_graph_indicator.txt") << "1\r\n";  // CRLF accepted
    std::ofstream(dir / "mini_node_labels.txt") << "5\n";
    std::ofstream(dir / "mini_graph_labels.txt") << "1\n";
    const Dataset ds = parse_tu_dataset(dir);
    REQUIRE(ds.size() == 1);
    CHECK(ds.graphs[0].node_count() == 1);
    CHECK(ds.graphs[0].label(0) == "5");
    CHECK(ds.labels[0] == -1);
}

TEST_CASE("tu parser error paths") {
    const auto dir = test::temp_path("treek_tu_bad");
    std::filesystem::create_directories(dir);
    auto write = [&](const char* name, const char* content) {
        std::ofstream(dir / name) << content;
    };
    write("bad_graph_indicator.txt", "1\n1\n2\n2\n");
    write("bad_node_labels.txt", "1\n2\n3\n4\n");
    write("bad_graph_labels.txt", "1\n2\n");

    SUBCASE("missing file") {
        std::filesystem::remove(dir / "bad_A.txt");
        CHECK_THROWS_AS(parse_tu_dataset(dir), ParseError);
    }
    SUBCASE("self-loop reports its line") {
        write("bad_A.txt", "1, 2\n3, 3\n");
        try {
            parse_tu_dataset(dir);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find(":2") != std::string::npos);
            CHECK(std::string(e.what()).find("self-loop") != std::string::npos);
        }
    }
    SUBCASE("edge crossing two graphs") {
        write("bad_A.txt", "2, 3\n");
        CHECK_THROWS_AS(parse_tu_dataset(dir), ParseError);
    }
    SUBCASE("node id out of range") {
        write("bad_A.txt", "1, 9\n");
        CHECK_THROWS_AS(parse_tu_dataset(dir), ParseError);
    }
}

TEST_CASE("jsonl parsing of the spec records") {
    const auto path = test::temp_path("treek_tiny.jsonl");
    {
        std::ofstream out(path);
        out << R"({"labels":["A"],"edges":[],"class":1})" << '\n';
        out << R"({"labels":["A","B"],"edges":[[0,1]],"class":-1})" << '\n';
    }
    const Dataset ds = parse_jsonl_dataset(path);
    REQUIRE(ds.size() == 2);
    CHECK(ds.graphs[0].node_count() == 1);
    CHECK(ds.graphs[1].adjacent(0, 1));
    CHECK(ds.labels == std::vector<int>{1, -1});
}

TEST_CASE("jsonl rejects malformed lines with their line number") {
    const auto path = test::temp_path("treek_bad.jsonl");
    {
        std::ofstream out(path);
        out << R"({"labels":["A"],"edges":[],"class":1})" << '\n';
        out << R"({"labels":["A"],"edges":[[0,0]],"class":1})" << '\n';
    }
    try {
        parse_jsonl_dataset(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find(":2") != std::string::npos);
    }
}

TEST_CASE("jsonl round-trip preserves random datasets") {
    Rng rng(77);
    const auto alphabet = letter_alphabet(4);
    Dataset ds;
    ds.name = "roundtrip";
    for (int i = 0; i < 25; ++i) {
        ds.graphs.push_back(random_labeled_graph(rng, 1, 9, 0.3, alphabet));
        ds.labels.push_back(rng.below(2) == 0 ? -1 : 1);
    }
    const auto path = test::temp_path("roundtrip.jsonl");
    write_jsonl_dataset(path, ds);
    const Dataset back = parse_jsonl_dataset(path);
    REQUIRE(back.size() == ds.size());
    CHECK(back.labels == ds.labels);
    for (std::size_t i = 0; i < ds.size(); ++i) CHECK(back.graphs[i] == ds.graphs[i]);
}

TEST_CASE("parsing is deterministic") {
    const auto dir = test::fixture_dir() / "tu_tiny";
    const Dataset a = parse_tu_dataset(dir);
    const Dataset b = parse_tu_dataset(dir);
    CHECK(a.labels == b.labels);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.graphs[i] == b.graphs[i]);
}
