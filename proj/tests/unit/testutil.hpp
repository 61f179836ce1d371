#pragma once

#include "ecohen/hetgraph.hpp"
#include "ecohen/rng.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace testutil {

using ecohen::Edge;
using ecohen::HetGraph;
using ecohen::NodeId;
using ecohen::TypeId;

// Two type-0 nodes a=0, b=1 and two type-1 nodes c=2, d=3 with edges
// {a,b}, {a,c}, {b,c}, {c,d} — the worked example used across the
// significance tests.
inline HetGraph four_node_graph() {
    return HetGraph::build({0, 0, 1, 1}, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
}

// Complete graph on `size` nodes, single type, node ids offset..offset+size-1
// appended onto `edges`.
inline void add_clique(std::vector<Edge>& edges, NodeId offset, NodeId size) {
    for (NodeId i = 0; i < size; ++i)
        for (NodeId j = i + 1; j < size; ++j) edges.push_back({offset + i, offset + j});
}

// Random multigraph: n nodes with uniform types over K, m edges drawn with
// replacement over ordered pairs (so self-loops and multi-edges occur).
inline HetGraph random_multigraph(std::int64_t n, TypeId K, std::int64_t m, std::uint64_t seed) {
    ecohen::Rng rng(seed);
    std::vector<TypeId> types(n);
    for (auto& t : types) t = static_cast<TypeId>(rng.next_below(K));
    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::int64_t e = 0; e < m; ++e)
        edges.push_back({static_cast<NodeId>(rng.next_below(n)),
                         static_cast<NodeId>(rng.next_below(n))});
    return HetGraph::build(std::move(types), edges);
}

// Erdos-Renyi edge list over nodes 0..n-1.
inline std::vector<Edge> er_edges(std::int64_t n, double prob, std::uint64_t seed) {
    ecohen::Rng rng(seed);
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j)
            if (rng.next_double() < prob) edges.push_back({i, j});
    return edges;
}

// Erdos-Renyi simple graph, single type.
inline HetGraph er_graph(std::int64_t n, double prob, std::uint64_t seed) {
    return HetGraph::build(std::vector<TypeId>(n, 0), er_edges(n, prob, seed));
}

// Reference upper binomial tail in long double, by direct pmf summation.
inline double oracle_log_binom_sf(std::int64_t x, std::int64_t c, double p) {
    if (x <= 0) return 0.0;
    if (x > c) return -std::numeric_limits<double>::infinity();
    const long double lp = std::log(static_cast<long double>(p));
    const long double lq = std::log1p(-static_cast<long double>(p));
    long double s = 0.0L;
    for (std::int64_t j = x; j <= c; ++j) {
        const long double lt = std::lgamma(static_cast<long double>(c) + 1.0L) -
                               std::lgamma(static_cast<long double>(j) + 1.0L) -
                               std::lgamma(static_cast<long double>(c - j) + 1.0L) +
                               static_cast<long double>(j) * lp +
                               static_cast<long double>(c - j) * lq;
        s += std::exp(lt);
    }
    return static_cast<double>(std::log(s));
}

} // namespace testutil
