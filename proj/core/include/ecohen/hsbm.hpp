#pragma once

#include "ecohen/hetgraph.hpp"

#include <cstdint>
#include <vector>

namespace ecohen {

// K-type, C-block stochastic block model with additive within-block boosts:
// a pair of distinct nodes with types k,l gets an edge with probability
// baseline[k][l], raised to baseline[k][l] + boost[k][l] when the two nodes
// share a block. Generated graphs are simple.
struct HsbmSpec {
    std::vector<std::vector<std::int64_t>> block_sizes; // K rows, C columns
    std::vector<std::vector<double>> baseline;          // K x K, symmetric
    std::vector<std::vector<double>> boost;             // K x K, symmetric
    std::uint64_t seed = 0;
    // If >= 0, pairs inside this block stay at the baseline rate: the block
    // models unstructured background rather than a planted community.
    std::int64_t background_block = -1;
};

struct HsbmResult {
    HetGraph graph;
    std::vector<std::int64_t> block_of; // per node
};

HsbmResult generate_hsbm(const HsbmSpec& spec);

// Two-type, two-block family: per type, a fraction p of nodes forms a
// high-connectivity block (HCB) boosted by r11/r22 within type and r12 across
// types; everything else is background wired uniformly at rate b.
struct TwoBlockSpec {
    double p = 0.0;  // HCB proportion per type
    double b = 0.0;  // baseline (background) rate
    double r11 = 0.0;
    double r22 = 0.0;
    double r12 = 0.0;
    std::int64_t per_type = 500;
    std::uint64_t seed = 0;
};

struct TwoBlockResult {
    HetGraph graph;
    std::vector<NodeId> hcb; // planted community, sorted
};

TwoBlockResult two_block(const TwoBlockSpec& spec);

} // namespace ecohen
