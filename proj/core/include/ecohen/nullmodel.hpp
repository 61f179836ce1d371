#pragma once

#include "ecohen/hetgraph.hpp"
#include "ecohen/rng.hpp"

#include <cstdint>

namespace ecohen {

// Uniform sampler over multigraphs sharing the source graph's node types and
// per-node typed-degree vectors (the heterogeneous configuration null).
//
// Each bucket is randomized independently by constrained permutation:
//   - same-type bucket: concatenate the 2m stub endpoints, permute, pair
//     consecutive entries (self-loops and multi-edges may appear);
//   - between-type bucket: keep the first-type column, permute the second.
// No rejection to simple graphs — the null is defined over multigraphs.
//
// sample(i) is a pure function of (source, seed, i), so draws can be taken
// from any thread in any order and remain reproducible.
class HdcmSampler {
  public:
    HdcmSampler(const HetGraph& source, std::uint64_t seed)
        : source_(&source), root_(Rng(seed)) {}

    // Edge list of the index-th draw; types are the source's.
    std::vector<Edge> sample_edges(std::uint64_t index) const;

    // Full graph of the index-th draw.
    HetGraph sample(std::uint64_t index) const;

    // Stream count draws (indices 0..count-1) through fn(const HetGraph&).
    template <class Fn>
    void sample_many(std::uint64_t count, Fn&& fn) const {
        for (std::uint64_t i = 0; i < count; ++i) fn(sample(i));
    }

    const HetGraph& source() const { return *source_; }

  private:
    const HetGraph* source_;
    Rng root_;
};

} // namespace ecohen
