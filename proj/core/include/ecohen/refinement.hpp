#pragma once

#include "ecohen/extraction.hpp"
#include "ecohen/hetgraph.hpp"

#include <cstdint>
#include <limits>
#include <span>

namespace ecohen {

struct RefinementConfig {
    std::int64_t min_size = 1;
    std::int64_t max_size = std::numeric_limits<std::int64_t>::max();
    double beta = 1.0;            // maximum pairwise Jaccard overlap
    bool exclude_complete = false; // drop communities that induce a complete subgraph
};

// |A ∩ B| / |A ∪ B| for sorted, duplicate-free node lists. Both empty -> 0,
// so degenerate inputs never block greedy selection.
double jaccard(std::span<const NodeId> a, std::span<const NodeId> b);

// Size/completeness filter followed by greedy selection: repeatedly keep the
// largest remaining community whose overlap with everything already kept is
// at most beta. Size ties break toward the lexicographically smaller member
// list, making the result deterministic.
CommunitySet refine(const CommunitySet& communities, const RefinementConfig& config,
                    const HetGraph& g);

} // namespace ecohen
