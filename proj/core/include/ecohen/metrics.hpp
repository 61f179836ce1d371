#pragma once

#include "ecohen/extraction.hpp"
#include "ecohen/hetgraph.hpp"
#include "ecohen/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ecohen {

struct CommunityStats {
    std::int64_t size = 0;
    std::int64_t internal_edges = 0; // edges with both endpoints inside
    std::int64_t boundary_edges = 0; // edges with exactly one endpoint inside
    double internal_density = 0.0;   // internal_edges / C(size, 2)
    double between_density = 0.0;    // boundary_edges / (size * (n - size))
    double ratio_of_densities = 0.0; // +inf when no boundary edges exist
    bool ratd_infinite = false;
    std::vector<double> type_composition; // member proportion per type
};

// Densities and their ratio for one community. Requires a simple graph and
// 2 <= |C| < n (between-density is undefined otherwise).
CommunityStats community_stats(const HetGraph& g, std::span<const NodeId> community);

// Just the density ratio; +inf (see CommunityStats) when boundary is empty.
double ratio_of_densities(const HetGraph& g, std::span<const NodeId> community);

// Best Jaccard overlap between the (sorted, nonempty) truth set and any
// community in the collection; 0 for an empty collection.
double max_jaccard(std::span<const NodeId> truth, const CommunitySet& communities);

// Breadth-first random node set: start uniformly, absorb frontier neighbors,
// draw uniformly among them when they exceed the remaining quota, and restart
// from a uniform unvisited node if the frontier dies out early.
std::vector<NodeId> snowball_sample(const HetGraph& g, std::int64_t size, Rng& rng);

// Fraction of nodes covered by no community.
double background_proportion(const HetGraph& g, const CommunitySet& communities);

// Nearest-rank quantile: value at rank ceil(q * N) of the sorted sample.
double nearest_rank_quantile(std::vector<double> values, double q);

} // namespace ecohen
