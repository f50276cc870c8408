#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "orient/exact.hpp"
#include "orient/inequality.hpp"

using namespace orient;
using doctest::Approx;

namespace {

const Vertex kZero[] = {0};

} // namespace

TEST_CASE("triangle reference values from the independent oracle") {
    Graph tri = oracle::triangle();
    // 8 orientations: the direct edge gives 1/2, the detour 0->2->1 adds 1/8
    CHECK(std::abs(oracle::connection(tri, {0}, 1) - 0.625) < 1e-15);
    CHECK(std::abs(oracle::joint(tri, {0}, 1, 2) - 0.5) < 1e-15);
}

TEST_CASE("brute_force_prob examples") {
    Graph edge(2, {{0, 1, 0.7}});
    CHECK(brute_force_prob(edge, EventExpr::connection({0}, 1)).probability == Approx(0.7).epsilon(1e-15));

    Graph tri = oracle::triangle();
    ExactResult r = brute_force_prob(tri, EventExpr::connection({0}, 1));
    CHECK(r.method == ExactMethod::enumeration);
    CHECK(std::abs(r.probability - 0.625) <= 1e-12);
    CHECK(std::abs(brute_force_prob(tri, EventExpr::joint({0}, 1, 2)).probability - 0.5) <= 1e-12);
}

TEST_CASE("brute_force_prob cap error names m and cap") {
    Graph tri = oracle::triangle();
    try {
        (void)brute_force_prob(tri, EventExpr::connection({0}, 1), 2);
        FAIL("expected ResourceError");
    } catch (const ResourceError& e) {
        std::string msg = e.what();
        CHECK(msg.find("m = 3") != std::string::npos);
        CHECK(msg.find("2") != std::string::npos);
    }
}

TEST_CASE("out_neighborhood_distribution examples") {
    Graph star(3, {{0, 1, 0.7}, {0, 2, 0.5}});
    SubsetDistribution d = out_neighborhood_distribution(star, kZero);
    REQUIRE(d.ground == std::vector<Vertex>{1, 2});
    CHECK(d.at(d.key_of(std::vector<Vertex>{1, 2})) == Approx(0.35).epsilon(1e-15));
    CHECK(d.at(d.key_of(std::vector<Vertex>{1})) == Approx(0.35).epsilon(1e-15));
    CHECK(d.at(d.key_of(std::vector<Vertex>{2})) == Approx(0.15).epsilon(1e-15));
    CHECK(d.at(0) == Approx(0.15).epsilon(1e-15));

    Graph two(3, {{0, 2, 0.5}, {1, 2, 0.5}});
    const Vertex both[] = {0, 1};
    SubsetDistribution d2 = out_neighborhood_distribution(two, both);
    REQUIRE(d2.ground == std::vector<Vertex>{2});
    CHECK(d2.at(1) == Approx(0.75).epsilon(1e-15));

    Graph lonely(3, {{1, 2, 0.5}});
    SubsetDistribution d3 = out_neighborhood_distribution(lonely, kZero);
    CHECK(d3.ground.empty());
    CHECK(d3.at(0) == 1.0);
}

TEST_CASE("out_neighborhood_distribution ignores edges inside the source set") {
    // the edge 0-1 points into the sources either way
    Graph g(3, {{0, 1, 0.9}, {1, 2, 0.3}});
    const Vertex s[] = {0, 1};
    SubsetDistribution d = out_neighborhood_distribution(g, s);
    REQUIRE(d.ground == std::vector<Vertex>{2});
    CHECK(d.at(1) == Approx(0.3).epsilon(1e-15));
}

TEST_CASE("exact_connection_prob examples") {
    Graph tri = oracle::triangle();
    CHECK(exact_connection_prob(tri, kZero, 0).probability == 1.0);
    ExactResult r = exact_connection_prob(tri, kZero, 1);
    CHECK(r.method == ExactMethod::recursion);
    CHECK(r.states_visited > 0);
    CHECK(std::abs(r.probability - 0.625) <= 1e-12);

    Graph split(4, {{0, 1, 0.5}, {2, 3, 0.5}});
    CHECK(exact_connection_prob(split, kZero, 3).probability == 0.0);
    CHECK_THROWS_AS((void)exact_connection_prob(split, kZero, 4), InputError);
    CHECK_THROWS_AS((void)exact_connection_prob(split, std::span<const Vertex>{}, 1), InputError);
}

TEST_CASE("exact_joint_prob examples") {
    Graph tri = oracle::triangle();
    const Vertex s[] = {1, 2};
    CHECK(exact_joint_prob(tri, s, 1, 2).probability == 1.0);
    CHECK(std::abs(exact_joint_prob(tri, kZero, 1, 2).probability - 0.5) <= 1e-12);
    // one target inside the sources reduces to a single connection
    CHECK(exact_joint_prob(tri, kZero, 0, 1).probability ==
          Approx(exact_connection_prob(tri, kZero, 1).probability).epsilon(1e-15));

    Graph path(3, {{0, 1, 0.5}, {1, 2, 0.5}});
    const double joint = exact_joint_prob(path, kZero, 1, 2).probability;
    CHECK(std::abs(joint - 0.25) <= 1e-12);
    const double product =
        exact_connection_prob(path, kZero, 1).probability * exact_connection_prob(path, kZero, 2).probability;
    CHECK(std::abs(product - 0.125) <= 1e-12);
    CHECK(product <= joint);
}

TEST_CASE("recursion matches the independent oracle on random graphs") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        Graph g = oracle::random_graph(rng, 7, 12);
        const Vertex n = static_cast<Vertex>(g.vertex_count());
        ExactEngine engine(g);
        std::uniform_int_distribution<Vertex> pick(0, n - 1);
        for (int q = 0; q < 6; ++q) {
            std::vector<Vertex> ids;
            for (int k = 0; k <= q % 3; ++k) ids.push_back(pick(rng));
            VertexSet s = make_vertex_set(ids);
            const Vertex a = pick(rng), b = pick(rng);
            CHECK(std::abs(engine.connection(s, a).probability - oracle::connection(g, s, a)) <= 1e-9);
            CHECK(std::abs(engine.joint(s, a, b).probability - oracle::joint(g, s, a, b)) <= 1e-9);
            CHECK(std::abs(brute_force_prob(g, EventExpr::joint(s, a, b)).probability - oracle::joint(g, s, a, b)) <=
                  1e-12);
        }
    }
}

TEST_CASE("reachable_set_law matches the oracle law") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        Graph g = oracle::random_graph(rng, 6, 10);
        const VertexSet s{0};
        SubsetDistribution law = reachable_set_law(g, s);
        auto ref = oracle::reach_law(g, s);
        CHECK(law.total() == Approx(1.0).epsilon(1e-12));
        for (const auto& [set, p] : ref) CHECK(std::abs(law.at(to_mask(set)) - p) <= 1e-12);
    }
}

TEST_CASE("out-neighborhood law: normalization and lattice identity") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        Graph g = oracle::random_graph(rng, 8, 16);
        std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(g.vertex_count() - 1));
        VertexSet s = make_vertex_set({pick(rng), pick(rng)});
        SubsetDistribution d = out_neighborhood_distribution(g, s);
        CHECK(std::abs(d.total() - 1.0) <= 1e-12);
        for (const auto& [key, p] : d.mass) CHECK(p >= 0.0);
        CHECK(check_lattice_identity(d, 1e-12).ok());
    }
}

TEST_CASE("source monotonicity and irrelevance of internal edges") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        Graph g = oracle::random_graph(rng, 7, 12);
        const Vertex n = static_cast<Vertex>(g.vertex_count());
        std::uniform_int_distribution<Vertex> pick(0, n - 1);
        const Vertex s0 = pick(rng), s1 = pick(rng), t = pick(rng);
        VertexSet small{s0};
        VertexSet big = make_vertex_set({s0, s1});
        CHECK(exact_connection_prob(g, small, t).probability <=
              exact_connection_prob(g, big, t).probability + 1e-12);

        if (s0 == s1) continue;
        // add or drop the edge s0-s1 inside the source set
        std::vector<Edge> edges(g.edges().begin(), g.edges().end());
        auto it = std::find_if(edges.begin(), edges.end(), [&](const Edge& e) {
            return e.low == std::min(s0, s1) && e.high == std::max(s0, s1);
        });
        if (it == edges.end()) {
            edges.push_back(Edge{s0, s1, 0.37});
        } else {
            edges.erase(it);
        }
        Graph h(g.vertex_count(), edges);
        for (Vertex target = 0; target < n; ++target) {
            CHECK(std::abs(exact_connection_prob(g, big, target).probability -
                           exact_connection_prob(h, big, target).probability) <= 1e-12);
        }
    }
}

TEST_CASE("memo cap raises a resource error") {
    Graph k5 = orient::complete_graph(5, 0.3);
    CHECK_THROWS_AS((void)exact_connection_prob(k5, kZero, 4, 1), ResourceError);
    CHECK_NOTHROW((void)exact_connection_prob(k5, kZero, 4));
}

TEST_CASE("exact engines reject graphs beyond 64 vertices") {
    std::vector<Edge> edges;
    for (Vertex v = 0; v + 1 < 70; ++v) edges.push_back({v, v + 1, 0.5});
    Graph path(70, edges);
    CHECK_THROWS_AS((void)exact_connection_prob(path, kZero, 3), ResourceError);
}

TEST_CASE("total_variation of identical and disjoint laws") {
    SubsetDistribution p{{0, 1}, {{1, 0.5}, {3, 0.5}}};
    SubsetDistribution q{{0, 1}, {{1, 0.5}, {2, 0.5}}};
    CHECK(total_variation(p, p) == 0.0);
    CHECK(total_variation(p, q) == Approx(0.5));
}
