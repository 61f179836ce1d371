#pragma once

#include "ecohen/hetgraph.hpp"

#include <span>
#include <vector>

namespace ecohen {

// Per-type evidence for one node u against a candidate set B:
// x[k] = edges from u to type-k members of B (multiplicity; u's own
// self-loops only when u is in B), c[k] = u's type-k degree.
struct ConnectionCounts {
    std::vector<std::int64_t> x;
    std::vector<std::int64_t> c;
};

// B is interpreted as a set; duplicates are collapsed. Throws on unknown ids.
ConnectionCounts connection_counts(const HetGraph& g, NodeId u, std::span<const NodeId> B);

// Null success probabilities per type for node u of type l against B:
//   p[k] = (sum over w in B of type k of d^[l](w)  -  [k==l][u in B] * c[k])
//          / (stub_total(k, l)                     -  [k==l]        * c[k])
// so the value never depends on whether u itself is counted inside B.
// Degenerate cases: c[k] == 0 -> p[k] = 0 (tail is 1 regardless); if u owns
// every stub of the bucket (denominator 0) -> p[k] = 1 (tail is 1: the only
// possible wiring is deterministic).
std::vector<double> success_probs(const HetGraph& g, NodeId u, std::span<const NodeId> B);

// Joint connectivity p-value: product over types of P(Bin(c[k], p[k]) >= x[k]),
// accumulated in log space. Invariant under adding/removing u itself from B
// for self-loop-free u (a self-loop enters x only when u is a member, while
// the success probabilities never count it — the intended one-sided test).
double log_node_set_pvalue(const HetGraph& g, NodeId u, std::span<const NodeId> B);
double node_set_pvalue(const HetGraph& g, NodeId u, std::span<const NodeId> B);

// Candidate threshold test used by the extraction phases: is the (log-domain)
// adjusted p-value at or below alpha? Compared in log space, so values far
// beneath the smallest positive double still qualify and a value sitting
// exactly on the threshold is not rounded past it.
bool log_adjusted_significant(double log_adjusted_p, double alpha);

} // namespace ecohen
