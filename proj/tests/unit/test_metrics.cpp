#include "ecohen/metrics.hpp"

#include "ecohen/rng.hpp"
#include "testutil.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

using ecohen::Community;
using ecohen::CommunitySet;
using ecohen::community_stats;
using ecohen::CommunityStats;
using ecohen::HetGraph;
using ecohen::max_jaccard;
using ecohen::nearest_rank_quantile;
using ecohen::NodeId;
using ecohen::ratio_of_densities;
using ecohen::snowball_sample;

namespace {

CommunitySet communities_of(std::vector<std::vector<NodeId>> member_lists) {
    CommunitySet out;
    for (auto& m : member_lists) {
        Community c;
        c.members = std::move(m);
        out.communities.push_back(std::move(c));
    }
    return out;
}

} // namespace

TEST_CASE("triangle with two outgoing edges") {
    // nodes 0..9, triangle on {0,1,2}, boundary edges {0,3} and {1,4}
    const HetGraph g = HetGraph::build(
        std::vector<ecohen::TypeId>(10, 0),
        {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 4}});
    const auto s = community_stats(g, std::vector<NodeId>{0, 1, 2});
    CHECK(s.size == 3);
    CHECK(s.internal_edges == 3);
    CHECK(s.boundary_edges == 2);
    CHECK(s.internal_density == 1.0);
    CHECK(s.between_density == doctest::Approx(2.0 / 21.0));
    CHECK(s.ratio_of_densities == doctest::Approx(10.5));
    CHECK_FALSE(s.ratd_infinite);
    CHECK(ratio_of_densities(g, std::vector<NodeId>{0, 1, 2}) == doctest::Approx(10.5));
}

TEST_CASE("type composition reports member proportions per type") {
    const HetGraph g = HetGraph::build({0, 0, 1, 1, 1, 0},
                                       {{0, 1}, {0, 2}, {1, 2}, {3, 4}});
    const auto s = community_stats(g, std::vector<NodeId>{0, 1, 2});
    REQUIRE(s.type_composition.size() == 2);
    CHECK(s.type_composition[0] == doctest::Approx(2.0 / 3.0));
    CHECK(s.type_composition[1] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("an isolated community has an infinite density ratio") {
    std::vector<ecohen::Edge> edges;
    testutil::add_clique(edges, 0, 3);
    testutil::add_clique(edges, 3, 3);
    const HetGraph g = HetGraph::build(std::vector<ecohen::TypeId>(6, 0), edges);
    const auto s = community_stats(g, std::vector<NodeId>{0, 1, 2});
    CHECK(s.ratd_infinite);
    CHECK(std::isinf(s.ratio_of_densities));
    CHECK(s.boundary_edges == 0);
}

TEST_CASE("density statistics reject undefined inputs") {
    const HetGraph g = testutil::er_graph(6, 0.5, 8);
    CHECK_THROWS_AS((void)community_stats(g, std::vector<NodeId>{0}), std::invalid_argument);
    CHECK_THROWS_AS((void)community_stats(g, std::vector<NodeId>{0, 1, 2, 3, 4, 5}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)community_stats(g, std::vector<NodeId>{0, 99}), std::invalid_argument);

    const HetGraph loop = HetGraph::build({0, 0, 0}, {{0, 0}, {0, 1}, {1, 2}});
    CHECK_THROWS_AS((void)community_stats(loop, std::vector<NodeId>{0, 1}), std::invalid_argument);
    const HetGraph multi = HetGraph::build({0, 0, 0}, {{0, 1}, {0, 1}, {1, 2}});
    CHECK_THROWS_AS((void)community_stats(multi, std::vector<NodeId>{0, 1}), std::invalid_argument);
}

TEST_CASE("best overlap against a collection") {
    const std::vector<NodeId> truth = {1, 2, 3};
    CHECK(max_jaccard(truth, communities_of({{2, 3, 4}})) == 0.5);
    CHECK(max_jaccard(truth, communities_of({{1, 2, 3}})) == 1.0);
    CHECK(max_jaccard(truth, communities_of({})) == 0.0);
    CHECK(max_jaccard(truth, communities_of({{7, 8}, {2, 3, 4}, {3}})) == 0.5);
    // truth may arrive unsorted or with duplicates
    CHECK(max_jaccard(std::vector<NodeId>{3, 1, 2, 3}, communities_of({{2, 3, 4}})) == 0.5);
    CHECK_THROWS_AS((void)max_jaccard(std::vector<NodeId>{}, communities_of({{1}})),
                    std::invalid_argument);
}

TEST_CASE("snowball samples are sorted, distinct and exactly sized") {
    const HetGraph g = testutil::er_graph(50, 0.1, 17);
    ecohen::Rng rng(1);
    for (std::int64_t size : {1, 7, 50}) {
        const auto s = snowball_sample(g, size, rng);
        REQUIRE(static_cast<std::int64_t>(s.size()) == size);
        CHECK(std::is_sorted(s.begin(), s.end()));
        CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
    }
    CHECK_THROWS_AS((void)snowball_sample(g, 0, rng), std::invalid_argument);
    CHECK_THROWS_AS((void)snowball_sample(g, 51, rng), std::invalid_argument);
}

TEST_CASE("snowball sampling is deterministic in the generator state") {
    const HetGraph g = testutil::er_graph(60, 0.08, 23);
    ecohen::Rng a(9);
    ecohen::Rng b(9);
    CHECK(snowball_sample(g, 12, a) == snowball_sample(g, 12, b));
}

TEST_CASE("snowball restarts across disconnected components") {
    // components {0,1,2} and {3,4,5,6,7}: a size-6 sample must span both
    std::vector<ecohen::Edge> edges;
    testutil::add_clique(edges, 0, 3);
    testutil::add_clique(edges, 3, 5);
    const HetGraph g = HetGraph::build(std::vector<ecohen::TypeId>(8, 0), edges);
    ecohen::Rng rng(4);
    const auto s = snowball_sample(g, 6, rng);
    CHECK(s.size() == 6);
    const bool touches_small = std::any_of(s.begin(), s.end(), [](NodeId v) { return v <= 2; });
    const bool touches_large = std::any_of(s.begin(), s.end(), [](NodeId v) { return v >= 3; });
    CHECK(touches_small);
    CHECK(touches_large);
}

TEST_CASE("random size-10 snowballs in a uniform graph still look denser inside") {
    // The sampler follows edges, so even a structureless graph yields samples
    // whose internal density beats the between density at the 95th percentile.
    const HetGraph g = testutil::er_graph(1000, 0.05, 600);
    ecohen::Rng rng(601);
    std::vector<double> ratios;
    ratios.reserve(1000);
    for (int i = 0; i < 1000; ++i)
        ratios.push_back(ratio_of_densities(g, snowball_sample(g, 10, rng)));
    CHECK(nearest_rank_quantile(ratios, 0.95) > 1.0);
}

TEST_CASE("background proportion counts nodes in no community") {
    const HetGraph g = testutil::er_graph(10, 0.3, 2);
    CHECK(ecohen::background_proportion(g, communities_of({{0, 1, 2}, {2, 3}})) == 0.6);
    CHECK(ecohen::background_proportion(g, communities_of({})) == 1.0);
    std::vector<NodeId> all(10);
    for (NodeId v = 0; v < 10; ++v) all[v] = v;
    CHECK(ecohen::background_proportion(g, communities_of({all})) == 0.0);
}

TEST_CASE("nearest-rank quantiles") {
    CHECK(nearest_rank_quantile({3.0, 1.0, 2.0}, 0.5) == 2.0);
    CHECK(nearest_rank_quantile({3.0, 1.0, 2.0}, 1.0) == 3.0);
    CHECK(nearest_rank_quantile({3.0, 1.0, 2.0}, 0.0) == 1.0);
    CHECK(nearest_rank_quantile({3.0, 1.0, 2.0}, 0.34) == 2.0); // rank ceil(1.02) = 2
    CHECK(nearest_rank_quantile({5.0}, 0.95) == 5.0);
    CHECK_THROWS_AS((void)nearest_rank_quantile({}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS((void)nearest_rank_quantile({1.0}, 1.5), std::invalid_argument);
}
