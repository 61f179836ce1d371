#include "ecohen/metrics.hpp"

#include "ecohen/refinement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ecohen {

namespace {

bool is_simple(const HetGraph& g) {
    const auto edges = g.canonical_edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i].u == edges[i].v) return false;
        if (i > 0 && edges[i] == edges[i - 1]) return false;
    }
    return true;
}

} // namespace

CommunityStats community_stats(const HetGraph& g, std::span<const NodeId> community) {
    const std::int64_t n = g.node_count();
    std::vector<std::uint8_t> in(n, 0);
    std::int64_t size = 0;
    for (NodeId u : community) {
        if (u < 0 || u >= n) throw std::invalid_argument("unknown node id in community");
        if (!in[u]) {
            in[u] = 1;
            ++size;
        }
    }
    if (size < 2) throw std::invalid_argument("community must contain at least 2 nodes");
    if (size >= n) throw std::invalid_argument("community must exclude at least one node");
    if (!is_simple(g))
        throw std::invalid_argument("density ratio is defined for simple graphs only");

    CommunityStats s;
    s.size = size;
    s.type_composition.assign(g.type_count(), 0.0);
    std::int64_t internal_endpoints = 0;
    for (NodeId u = 0; u < n; ++u) {
        if (!in[u]) continue;
        s.type_composition[g.type_of(u)] += 1.0;
        for (NodeId v : g.neighbors(u)) {
            if (in[v])
                ++internal_endpoints; // counted from both sides
            else
                ++s.boundary_edges;
        }
    }
    s.internal_edges = internal_endpoints / 2;
    for (double& t : s.type_composition) t /= static_cast<double>(size);

    const double pairs_in = static_cast<double>(size) * (size - 1) / 2.0;
    const double pairs_out = static_cast<double>(size) * static_cast<double>(n - size);
    s.internal_density = static_cast<double>(s.internal_edges) / pairs_in;
    s.between_density = static_cast<double>(s.boundary_edges) / pairs_out;
    if (s.boundary_edges == 0) {
        s.ratd_infinite = true;
        s.ratio_of_densities = std::numeric_limits<double>::infinity();
    } else {
        s.ratio_of_densities = s.internal_density / s.between_density;
    }
    return s;
}

double ratio_of_densities(const HetGraph& g, std::span<const NodeId> community) {
    return community_stats(g, community).ratio_of_densities;
}

double max_jaccard(std::span<const NodeId> truth, const CommunitySet& communities) {
    if (truth.empty()) throw std::invalid_argument("truth set must be nonempty");
    std::vector<NodeId> t(truth.begin(), truth.end());
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    double best = 0.0;
    for (const Community& c : communities.communities)
        best = std::max(best, jaccard(t, c.members));
    return best;
}

std::vector<NodeId> snowball_sample(const HetGraph& g, std::int64_t size, Rng& rng) {
    const std::int64_t n = g.node_count();
    if (size < 1 || size > n)
        throw std::invalid_argument("snowball size must lie in [1, node count]");

    std::vector<std::uint8_t> in(n, 0);
    std::vector<NodeId> sample;
    sample.reserve(size);
    std::vector<NodeId> frontier;

    auto admit = [&](NodeId u) {
        in[u] = 1;
        sample.push_back(u);
    };
    auto restart = [&]() {
        // uniform over the nodes not yet sampled
        std::int64_t pick = static_cast<std::int64_t>(
            rng.next_below(static_cast<std::uint64_t>(n - sample.size())));
        for (NodeId u = 0; u < n; ++u) {
            if (in[u]) continue;
            if (pick-- == 0) {
                admit(u);
                frontier.assign(1, u);
                return;
            }
        }
    };

    restart(); // initial uniform start node
    while (static_cast<std::int64_t>(sample.size()) < size) {
        // distinct not-yet-sampled neighbors of the frontier, in id order
        std::vector<NodeId> candidates;
        std::vector<std::uint8_t> seen(n, 0);
        for (NodeId u : frontier)
            for (NodeId v : g.neighbors(u))
                if (!in[v] && !seen[v]) {
                    seen[v] = 1;
                    candidates.push_back(v);
                }
        std::sort(candidates.begin(), candidates.end());

        if (candidates.empty()) {
            restart();
            continue;
        }
        const std::int64_t quota = size - static_cast<std::int64_t>(sample.size());
        if (static_cast<std::int64_t>(candidates.size()) > quota) {
            rng.shuffle(candidates);
            candidates.resize(quota);
        }
        for (NodeId v : candidates) admit(v);
        frontier = std::move(candidates);
    }
    std::sort(sample.begin(), sample.end());
    return sample;
}

double background_proportion(const HetGraph& g, const CommunitySet& communities) {
    const std::int64_t n = g.node_count();
    if (n == 0) return 1.0;
    std::vector<std::uint8_t> covered(n, 0);
    for (const Community& c : communities.communities)
        for (NodeId u : c.members)
            if (u >= 0 && u < n) covered[u] = 1;
    std::int64_t uncovered = 0;
    for (NodeId u = 0; u < n; ++u)
        if (!covered[u]) ++uncovered;
    return static_cast<double>(uncovered) / static_cast<double>(n);
}

double nearest_rank_quantile(std::vector<double> values, double q) {
    if (values.empty()) throw std::invalid_argument("quantile of an empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile level must lie in [0, 1]");
    std::sort(values.begin(), values.end());
    const auto n = static_cast<double>(values.size());
    auto rank = static_cast<std::int64_t>(std::ceil(q * n));
    rank = std::clamp<std::int64_t>(rank, 1, values.size());
    return values[rank - 1];
}

} // namespace ecohen
