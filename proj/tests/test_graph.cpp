#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <sstream>

#include "lowerstar/graph.hpp"
#include "helpers.hpp"

using namespace lowerstar;
using namespace testutil;

TEST_CASE("edge list: default weights and vertex count") {
    std::istringstream in("0 1\n1 2\n");
    auto g = parse_edge_list(in);
    CHECK(g.n_vertices() == 3);
    REQUIRE(g.edges().size() == 2);
    CHECK(g.edges()[0].w == 1.0);
    CHECK(g.edges()[1].w == 1.0);
}

TEST_CASE("edge list: duplicate edge is an error") {
    std::istringstream in("0 1 0.5\n0 1 0.7\n");
    CHECK_THROWS_AS(parse_edge_list(in), input_error);
}

TEST_CASE("edge list: reversed duplicate is still a duplicate") {
    std::istringstream in("0 1\n1 0\n");
    CHECK_THROWS_AS(parse_edge_list(in), input_error);
}

TEST_CASE("edge list: #n header overrides vertex count") {
    std::istringstream in("#n 5\n0 1\n");
    auto g = parse_edge_list(in);
    CHECK(g.n_vertices() == 5);
    CHECK(g.edges().size() == 1);
    CHECK(g.degree(4) == 0);
}

TEST_CASE("edge list: comments and blank lines are skipped") {
    std::istringstream in("# a comment\n\n0 1 2.5\n");
    auto g = parse_edge_list(in);
    CHECK(g.n_vertices() == 2);
    CHECK(g.edges()[0].w == 2.5);
}

TEST_CASE("edge list: malformed line reports its number") {
    std::istringstream in("0 1\nnope\n");
    try {
        parse_edge_list(in, "f");
        FAIL("expected input_error");
    } catch (const input_error& e) {
        CHECK(std::string(e.what()).find("f:2") != std::string::npos);
    }
}

TEST_CASE("edge list: self-loop and negative weight rejected") {
    std::istringstream a("2 2\n");
    CHECK_THROWS_AS(parse_edge_list(a), input_error);
    std::istringstream b("0 1 -0.5\n");
    CHECK_THROWS_AS(parse_edge_list(b), input_error);
    std::istringstream c("0 1 1.0 junk\n");
    CHECK_THROWS_AS(parse_edge_list(c), input_error);
}

TEST_CASE("edge list: header smaller than max id is out of range") {
    std::istringstream in("#n 2\n0 5\n");
    CHECK_THROWS_AS(parse_edge_list(in), input_error);
}

TEST_CASE("loaders are deterministic: write/parse round trip") {
    std::istringstream in("#n 6\n0 1 0.25\n2 5 3.5\n1 3\n");
    auto g = parse_edge_list(in);
    std::ostringstream out;
    write_edge_list(g, out);
    std::istringstream in2(out.str());
    auto g2 = parse_edge_list(in2);
    CHECK(g.fingerprint() == g2.fingerprint());
    CHECK(g.edges() == g2.edges());
}

TEST_CASE("off mesh: unit right triangle edge weights") {
    std::istringstream in(
        "OFF\n3 1 3\n"
        "0 0 0\n1 0 0\n0 1 0\n"
        "3 0 1 2\n");
    auto g = mesh_graph(parse_off(in));
    REQUIRE(g.edges().size() == 3);
    std::multiset<double> weights;
    for (const auto& e : g.edges()) weights.insert(e.w);
    auto it = weights.begin();
    CHECK(*it++ == 1.0);
    CHECK(*it++ == 1.0);
    CHECK_THAT(*it, Catch::Matchers::WithinAbs(std::sqrt(2.0), 1e-15));
}

TEST_CASE("off mesh: shared edge stored once") {
    std::istringstream in(
        "OFF\n4 2 0\n"
        "0 0 0\n1 0 0\n0 1 0\n1 1 0\n"
        "3 0 1 2\n3 1 2 3\n");
    auto g = mesh_graph(parse_off(in));
    CHECK(g.n_vertices() == 4);
    CHECK(g.edges().size() == 5);
}

TEST_CASE("off mesh: malformed inputs") {
    SECTION("non-triangle face") {
        std::istringstream in("OFF\n4 1 0\n0 0 0\n1 0 0\n0 1 0\n1 1 0\n4 0 1 2 3\n");
        CHECK_THROWS_AS(parse_off(in), input_error);
    }
    SECTION("index out of range") {
        std::istringstream in("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 7\n");
        CHECK_THROWS_AS(parse_off(in), input_error);
    }
    SECTION("bad header") {
        std::istringstream in("OFX\n3 1 0\n");
        CHECK_THROWS_AS(parse_off(in), input_error);
    }
    SECTION("degenerate face") {
        std::istringstream in("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 1\n");
        CHECK_THROWS_AS(parse_off(in), input_error);
    }
}

TEST_CASE("off mesh: edge count equals distinct triangle edges") {
    SplitMix64 rng(7);
    MeshSpec mesh;
    for (int i = 0; i < 12; ++i)
        mesh.vertex_positions.push_back({rng.unit(), rng.unit(), rng.unit()});
    std::set<std::pair<int, int>> distinct;
    for (int t = 0; t < 15; ++t) {
        int a = static_cast<int>(rng.below(12)), b, c;
        do b = static_cast<int>(rng.below(12)); while (b == a);
        do c = static_cast<int>(rng.below(12)); while (c == a || c == b);
        mesh.triangles.push_back({a, b, c});
        distinct.insert(std::minmax(a, b));
        distinct.insert(std::minmax(b, c));
        distinct.insert(std::minmax(a, c));
    }
    CHECK(mesh_graph(mesh).edges().size() == distinct.size());
}

TEST_CASE("ego network: complete graph within one hop") {
    auto g = complete_graph(4);
    auto ego = ego_network(g, 0, 1);
    CHECK(ego.graph.n_vertices() == 4);
    CHECK(ego.graph.edges().size() == 6);
}

TEST_CASE("ego network: two hops on a path") {
    auto g = path_graph(5);
    auto ego = ego_network(g, 0, 2);
    CHECK(ego.graph.n_vertices() == 3);
    CHECK(ego.graph.edges().size() == 2);
    CHECK(ego.original_ids == std::vector<int>{0, 1, 2});
}

TEST_CASE("ego network: zero hops is the single vertex") {
    auto g = path_graph(5);
    auto ego = ego_network(g, 3, 0);
    CHECK(ego.graph.n_vertices() == 1);
    CHECK(ego.graph.edges().empty());
    CHECK(ego.original_ids == std::vector<int>{3});
}

TEST_CASE("ego network: invalid vertex and hop count") {
    auto g = path_graph(3);
    CHECK_THROWS_AS(ego_network(g, 9, 1), input_error);
    CHECK_THROWS_AS(ego_network(g, 0, -1), input_error);
}

TEST_CASE("ego network: vertex sets nest as k grows, then stabilize") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = random_graph(rng, 4 + static_cast<int>(rng.below(8)), 0.3);
        int w = static_cast<int>(rng.below(g.n_vertices()));
        std::set<int> prev;
        for (int k = 0; k <= g.n_vertices(); ++k) {
            auto ego = ego_network(g, w, k);
            std::set<int> cur(ego.original_ids.begin(), ego.original_ids.end());
            CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
            prev = std::move(cur);
        }
        // k = n reaches the whole component of w
        auto parts = connected_components(g);
        for (const auto& part : parts)
            if (std::find(part.begin(), part.end(), w) != part.end())
                CHECK(std::vector<int>(prev.begin(), prev.end()) == part);
    }
}

TEST_CASE("connected components") {
    CHECK(connected_components(path_graph(4)).size() == 1);

    auto isolated = WeightedGraph(2, {});
    auto parts = connected_components(isolated);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0] == std::vector<int>{0});
    CHECK(parts[1] == std::vector<int>{1});

    auto two_triangles = WeightedGraph(
        6, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {3, 4, 1}, {4, 5, 1}, {3, 5, 1}});
    parts = connected_components(two_triangles);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].size() == 3);
    CHECK(parts[1].size() == 3);
}

TEST_CASE("graph invariants: canonical storage and adjacency") {
    auto g = WeightedGraph(4, {{2, 0, 1.5}, {3, 1, 0.5}});
    CHECK(g.edges()[0].u == 0);
    CHECK(g.edges()[0].v == 2);
    CHECK(g.has_edge(0, 2));
    CHECK(g.has_edge(2, 0));
    CHECK_FALSE(g.has_edge(0, 1));
    CHECK(g.neighbors(3) == std::vector<int>{1});
}
