#include "ecohen/significance.hpp"

#include "ecohen/nullmodel.hpp"
#include "ecohen/rng.hpp"
#include "testutil.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

using ecohen::connection_counts;
using ecohen::HetGraph;
using ecohen::log_adjusted_significant;
using ecohen::log_node_set_pvalue;
using ecohen::NodeId;
using ecohen::node_set_pvalue;
using ecohen::success_probs;

TEST_CASE("connection counts on the four-node example") {
    const HetGraph g = testutil::four_node_graph();

    auto counts = connection_counts(g, 0, std::vector<NodeId>{1, 2});
    CHECK(counts.x == std::vector<std::int64_t>{1, 1});
    CHECK(counts.c == std::vector<std::int64_t>{1, 1});

    counts = connection_counts(g, 0, std::vector<NodeId>{});
    CHECK(counts.x == std::vector<std::int64_t>{0, 0});

    // duplicates in B collapse; order is irrelevant
    counts = connection_counts(g, 2, std::vector<NodeId>{3, 1, 0, 3});
    CHECK(counts.x == std::vector<std::int64_t>{2, 1});

    CHECK_THROWS_AS((void)connection_counts(g, 0, std::vector<NodeId>{5}),
                    std::invalid_argument);
}

TEST_CASE("own self-loops enter the count only for members") {
    const HetGraph g = HetGraph::build({0, 0}, {{0, 0}, {0, 1}});
    const auto outside = connection_counts(g, 0, std::vector<NodeId>{1});
    CHECK(outside.x == std::vector<std::int64_t>{1});
    const auto inside = connection_counts(g, 0, std::vector<NodeId>{0, 1});
    CHECK(inside.x == std::vector<std::int64_t>{3}); // self-loop counts twice
}

TEST_CASE("success probabilities on the four-node example") {
    const HetGraph g = testutil::four_node_graph();

    // u = a outside B = {b, c}: k=0 gives 1/1, k=1 gives 2/2
    auto p = success_probs(g, 0, std::vector<NodeId>{1, 2});
    CHECK(p == std::vector<double>{1.0, 1.0});

    // empty set: empty-sum numerators
    p = success_probs(g, 0, std::vector<NodeId>{});
    CHECK(p == std::vector<double>{0.0, 0.0});

    // u = a inside B = V: the membership correction cancels u's own stubs
    p = success_probs(g, 0, std::vector<NodeId>{0, 1, 2, 3});
    CHECK(p == std::vector<double>{1.0, 1.0});
}

TEST_CASE("joint p-value on the four-node example") {
    const HetGraph g = testutil::four_node_graph();
    CHECK(node_set_pvalue(g, 0, std::vector<NodeId>{1, 2}) == 1.0);
    // no observed connections: every tail is 1
    CHECK(node_set_pvalue(g, 3, std::vector<NodeId>{0, 1}) == 1.0);
}

TEST_CASE("membership invariance: adding u to B never changes its p-value") {
    // exact (bitwise) equality on self-loop-free graphs
    for (std::uint64_t seed : {21u, 22u, 23u}) {
        const HetGraph g = testutil::er_graph(30, 0.15, seed);
        ecohen::Rng rng(seed * 97);
        for (int rep = 0; rep < 20; ++rep) {
            const NodeId u = static_cast<NodeId>(rng.next_below(30));
            std::vector<NodeId> B;
            for (NodeId v = 0; v < 30; ++v)
                if (v != u && rng.next_double() < 0.3) B.push_back(v);
            const double without = log_node_set_pvalue(g, u, B);
            B.push_back(u);
            const double with = log_node_set_pvalue(g, u, B);
            CHECK(without == with);
        }
    }
}

TEST_CASE("p-value is independent of the order B is given in") {
    const HetGraph g = testutil::random_multigraph(25, 2, 60, 5);
    std::vector<NodeId> B = {3, 7, 11, 19, 2, 14};
    const double base = log_node_set_pvalue(g, 7, B);
    std::sort(B.begin(), B.end());
    CHECK(log_node_set_pvalue(g, 7, B) == base);
    std::reverse(B.begin(), B.end());
    CHECK(log_node_set_pvalue(g, 7, B) == base);
}

TEST_CASE("degenerate buckets: owning every stub neutralizes the test") {
    // u carries the only type-0/type-0 stubs (its self-loop): denominator 0
    const HetGraph g = HetGraph::build({0, 0, 1}, {{0, 0}, {1, 2}});
    const auto p = success_probs(g, 0, std::vector<NodeId>{0});
    CHECK(p[0] == 1.0);
    CHECK(node_set_pvalue(g, 0, std::vector<NodeId>{0}) == 1.0);
}

TEST_CASE("self-loops with a zero numerator collapse the p-value to 0") {
    // u's self-loop is its only in-set connection, but other type-0 stubs
    // exist elsewhere: successes are impossible under the null yet observed
    const HetGraph g = HetGraph::build({0, 0, 0}, {{0, 0}, {1, 2}});
    const auto p = success_probs(g, 0, std::vector<NodeId>{0});
    CHECK(p[0] == 0.0);
    CHECK(node_set_pvalue(g, 0, std::vector<NodeId>{0}) == 0.0);
    CHECK(log_node_set_pvalue(g, 0, std::vector<NodeId>{0}) ==
          -std::numeric_limits<double>::infinity());
}

TEST_CASE("product form matches HDCM Monte Carlo on single-stub cases") {
    // With one stub per bucket the binomial is a Bernoulli and bucket
    // pairings are independent permutations, so the product form is exact;
    // the Monte Carlo frequency must land within 3 standard errors.
    //
    // Graph: 3 type-0 and 3 type-1 nodes, 8 edges. u = node 0 (type 0) has
    // exactly one same-type and one cross-type stub.
    const HetGraph g = HetGraph::build({0, 0, 0, 1, 1, 1},
                                       {{0, 1}, {0, 3}, {1, 2}, {1, 4}, {2, 3}, {3, 4}, {4, 5}, {2, 5}});
    const std::vector<NodeId> B = {1, 3, 4};
    const NodeId u = 0;

    const auto counts = connection_counts(g, u, B);
    REQUIRE(counts.x == std::vector<std::int64_t>{1, 1});
    const double product = node_set_pvalue(g, u, B);

    std::vector<std::uint8_t> in_b(g.node_count(), 0);
    for (NodeId w : B) in_b[w] = 1;

    const ecohen::HdcmSampler sampler(g, 2024);
    const int draws = 100000;
    int hits = 0;
    for (int i = 0; i < draws; ++i) {
        const auto edges = sampler.sample_edges(i);
        std::int64_t x0 = 0, x1 = 0;
        for (const auto& e : edges) {
            if (e.u == u && in_b[e.v]) (g.type_of(e.v) == 0 ? x0 : x1)++;
            if (e.v == u && in_b[e.u]) (g.type_of(e.u) == 0 ? x0 : x1)++;
        }
        if (x0 >= counts.x[0] && x1 >= counts.x[1]) ++hits;
    }
    const double freq = static_cast<double>(hits) / draws;
    const double se = std::sqrt(product * (1.0 - product) / draws);
    CHECK(std::abs(freq - product) <= 3.0 * se);
}

TEST_CASE("threshold test spans the representable and underflow ranges") {
    CHECK(log_adjusted_significant(std::log(0.05), 0.10));
    CHECK_FALSE(log_adjusted_significant(std::log(0.2), 0.10));
    CHECK(log_adjusted_significant(std::log(0.10), 0.10)); // at-threshold qualifies
    CHECK(log_adjusted_significant(-1000.0, 0.10));        // deep tail auto-qualifies
    CHECK(log_adjusted_significant(-std::numeric_limits<double>::infinity(), 0.10));
    CHECK_FALSE(log_adjusted_significant(0.0, 0.10)); // p = 1
}
