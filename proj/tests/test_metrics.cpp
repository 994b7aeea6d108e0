#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "lowerstar/metrics.hpp"
#include "helpers.hpp"

using namespace lowerstar;
using namespace testutil;

namespace {

PersistenceDiagram make_diagram(std::vector<std::pair<double, double>> pairs) {
    PersistenceDiagram d;
    d.finite = std::move(pairs);
    for (const auto& [b, death] : d.finite) d.f_max = std::max(d.f_max, death);
    d.canonicalize();
    return d;
}

}  // namespace

TEST_CASE("assignment: small hand cases") {
    auto a = assignment_solve({{0.0, 1.0}, {1.0, 0.0}});
    CHECK(a.col_of_row == std::vector<int>{0, 1});
    CHECK(a.total == 0.0);

    auto b = assignment_solve({{1.0, 2.0}, {2.0, 1.0}});
    CHECK(b.col_of_row == std::vector<int>{0, 1});
    CHECK(b.total == 2.0);

    CHECK(assignment_solve({}).total == 0.0);
}

TEST_CASE("assignment: rejects bad input") {
    CHECK_THROWS_AS(assignment_solve({{1.0, 2.0}}), input_error);
    double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(assignment_solve({{inf}}), numeric_error);
}

TEST_CASE("assignment matches permutation enumeration on random 6x6 matrices") {
    SplitMix64 rng(61);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<std::vector<double>> cost(6, std::vector<double>(6));
        for (auto& row : cost)
            for (double& c : row) c = rng.unit() * 10.0;
        double expected = assignment_oracle(cost);
        CHECK_THAT(assignment_solve(cost).total, Catch::Matchers::WithinAbs(expected, 1e-9));
    }
}

TEST_CASE("wasserstein: identity and worked examples") {
    auto x = make_diagram({{1.0, 3.0}, {0.0, 0.5}});
    CHECK(wasserstein(x, x, 2.0) == 0.0);

    // single point vs empty: matched to its diagonal projection
    CHECK(wasserstein(make_diagram({{1.0, 3.0}}), make_diagram({}), 2.0) == 1.0);

    // direct match (cost 2) beats the double-diagonal route (cost sqrt 5)
    CHECK(wasserstein(make_diagram({{0.0, 4.0}}), make_diagram({{0.0, 2.0}}), 2.0) == 2.0);
}

TEST_CASE("wasserstein: rejects essential classes and q < 1") {
    PersistenceDiagram raw;
    raw.essential = {0.0};
    CHECK_THROWS_AS(wasserstein(raw, raw, 2.0), input_error);
    auto x = make_diagram({{0.0, 1.0}});
    CHECK_THROWS_AS(wasserstein(x, x, 0.5), input_error);
}

TEST_CASE("wasserstein equals brute-force matching enumeration") {
    SplitMix64 rng(67);
    for (int trial = 0; trial < 200; ++trial) {
        auto x = random_diagram(rng, 5);
        auto y = random_diagram(rng, 5);
        double q = trial % 2 == 0 ? 2.0 : 1.0;
        double expected = wasserstein_oracle(x, y, q);
        CHECK_THAT(wasserstein(x, y, q), Catch::Matchers::WithinAbs(expected, 1e-9));
    }
}

TEST_CASE("wasserstein: metric axioms on random diagrams") {
    SplitMix64 rng(71);
    for (int trial = 0; trial < 200; ++trial) {
        auto x = random_diagram(rng, 6);
        auto y = random_diagram(rng, 6);
        auto z = random_diagram(rng, 6);
        double xy = wasserstein(x, y, 2.0);
        double yx = wasserstein(y, x, 2.0);
        CHECK(xy == yx);  // bitwise, by canonical argument ordering
        double xz = wasserstein(x, z, 2.0);
        double yz = wasserstein(y, z, 2.0);
        CHECK(xz <= xy + yz + 1e-9);
    }
}

TEST_CASE("wasserstein: zero iff equal up to diagonal points") {
    auto x = make_diagram({{0.0, 1.0}});
    auto with_diag = make_diagram({{0.0, 1.0}, {0.7, 0.7}});
    CHECK(wasserstein(x, with_diag, 2.0) == 0.0);
    CHECK(wasserstein(x, make_diagram({{0.0, 1.1}}), 2.0) > 0.0);
}

TEST_CASE("wasserstein: scale equivariance") {
    SplitMix64 rng(73);
    for (int trial = 0; trial < 50; ++trial) {
        auto x = random_diagram(rng, 5);
        auto y = random_diagram(rng, 5);
        const double s = 2.0;  // power of two keeps the scaling exact
        auto scale = [&](PersistenceDiagram d) {
            for (auto& [b, death] : d.finite) {
                b *= s;
                death *= s;
            }
            d.f_max *= s;
            return d;
        };
        CHECK_THAT(wasserstein(scale(x), scale(y), 2.0),
                   Catch::Matchers::WithinAbs(s * wasserstein(x, y, 2.0), 1e-12));
    }
}

TEST_CASE("bottleneck: hand cases and relation to wasserstein") {
    auto x = make_diagram({{1.0, 3.0}});
    CHECK(bottleneck(x, x) == 0.0);
    CHECK(bottleneck(x, make_diagram({})) == 1.0);
    // on one-point diagrams, bottleneck is a lower bound for W_q
    CHECK(bottleneck(x, make_diagram({})) <= wasserstein(x, make_diagram({}), 2.0));
    CHECK(bottleneck(make_diagram({{0.0, 4.0}}), make_diagram({{0.0, 2.0}})) <=
          wasserstein(make_diagram({{0.0, 4.0}}), make_diagram({{0.0, 2.0}}), 2.0));
}

TEST_CASE("bottleneck: max per-pair cost of the best matching on random diagrams") {
    SplitMix64 rng(79);
    for (int trial = 0; trial < 100; ++trial) {
        auto x = random_diagram(rng, 4);
        auto y = random_diagram(rng, 4);
        double b = bottleneck(x, y);
        CHECK(b >= 0.0);
        // a large-q Wasserstein approaches the bottleneck from above
        CHECK(b <= wasserstein(x, y, 16.0) + 1e-6);
    }
}

TEST_CASE("distance matrix: hand cases") {
    auto x = make_diagram({{0.0, 1.0}});
    auto y = make_diagram({{0.0, 2.0}});
    auto z = make_diagram({});

    auto single = distance_matrix({{"a", x}}, 2.0);
    CHECK(single.size() == 1);
    CHECK(single.values[0][0] == 0.0);

    auto dup = distance_matrix({{"a", x}, {"b", x}, {"c", y}}, 2.0);
    CHECK(dup.values[0][1] == 0.0);
    CHECK(dup.values[1][0] == 0.0);
    CHECK(dup.values[0][2] == wasserstein(x, y, 2.0));
    CHECK(dup.values[1][2] == wasserstein(x, y, 2.0));

    auto three = distance_matrix({{"a", x}, {"b", y}, {"c", z}}, 2.0);
    CHECK(three.values[0][1] == wasserstein(x, y, 2.0));
    CHECK(three.values[0][2] == wasserstein(x, z, 2.0));
    CHECK(three.values[1][2] == wasserstein(y, z, 2.0));
    three.validate();
}

TEST_CASE("distance matrix CSV round trip") {
    auto m = distance_matrix(
        {{"cat", make_diagram({{0.0, 1.0}})}, {"dog", make_diagram({{0.5, 2.5}})}}, 2.0);
    std::ostringstream out;
    write_matrix_csv(m, out);
    std::istringstream in(out.str());
    auto back = read_matrix_csv(in);
    CHECK(back.labels == m.labels);
    CHECK(back.values == m.values);
}

TEST_CASE("distance matrix validation") {
    DistanceMatrix bad;
    bad.labels = {"a", "b"};
    bad.values = {{0.0, 1.0}, {2.0, 0.0}};
    CHECK_THROWS_AS(bad.validate(), input_error);
}
