#include "ecohen/significance.hpp"

#include "ecohen/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace ecohen {

namespace {

std::vector<std::uint8_t> membership(const HetGraph& g, std::span<const NodeId> B) {
    std::vector<std::uint8_t> in_b(g.node_count(), 0);
    for (NodeId w : B) {
        if (w < 0 || w >= g.node_count())
            throw std::invalid_argument("unknown node id " + std::to_string(w) + " in node set");
        in_b[w] = 1;
    }
    return in_b;
}

} // namespace

ConnectionCounts connection_counts(const HetGraph& g, NodeId u, std::span<const NodeId> B) {
    const auto in_b = membership(g, B);
    const TypeId K = g.type_count();
    ConnectionCounts out;
    out.x.assign(K, 0);
    const auto d = g.typed_degree(u);
    out.c.assign(d.begin(), d.end());
    for (NodeId v : g.neighbors(u))
        if (in_b[v]) out.x[g.type_of(v)]++;
    // A self-loop lists u twice in its own adjacency, so the loop above
    // already counts it with weight 2 — and only when u is in B.
    return out;
}

std::vector<double> success_probs(const HetGraph& g, NodeId u, std::span<const NodeId> B) {
    const auto in_b = membership(g, B);
    const TypeId K = g.type_count();
    const TypeId l = g.type_of(u);
    const bool u_in_b = in_b[u] != 0;

    // S[k] = sum over w in B of type k of d^[l](w)
    std::vector<std::int64_t> S(K, 0);
    std::vector<std::uint8_t> seen(g.node_count(), 0);
    for (NodeId w : B) {
        if (seen[w]) continue; // B is a set; collapse duplicates
        seen[w] = 1;
        S[g.type_of(w)] += g.typed_degree(w, l);
    }

    std::vector<double> p(K, 0.0);
    for (TypeId k = 0; k < K; ++k) {
        const std::int64_t c = g.typed_degree(u, k);
        if (c == 0) {
            p[k] = 0.0;
            continue;
        }
        const std::int64_t denom = g.stub_total(k, l) - (k == l ? c : 0);
        if (denom <= 0) {
            // u owns every stub of this bucket; the wiring is deterministic.
            p[k] = 1.0;
            continue;
        }
        const std::int64_t num = S[k] - (k == l && u_in_b ? c : 0);
        if (num < 0)
            throw std::logic_error("negative success-probability numerator (corrupt graph state)");
        if (num > denom)
            throw std::logic_error("success probability above 1 (corrupt graph state)");
        p[k] = static_cast<double>(num) / static_cast<double>(denom);
    }
    return p;
}

double log_node_set_pvalue(const HetGraph& g, NodeId u, std::span<const NodeId> B) {
    const auto counts = connection_counts(g, u, B);
    const auto p = success_probs(g, u, B);
    double acc = 0.0;
    for (TypeId k = 0; k < g.type_count(); ++k) {
        if (counts.x[k] == 0) continue; // tail is exactly 1
        // p[k] can be 0 when u's only in-set connections are its own
        // self-loops; the tail is then exactly 0 and the product collapses
        acc += log_binom_sf(counts.x[k], counts.c[k], p[k]);
    }
    return acc;
}

double node_set_pvalue(const HetGraph& g, NodeId u, std::span<const NodeId> B) {
    return std::exp(log_node_set_pvalue(g, u, B));
}

bool log_adjusted_significant(double log_adjusted_p, double alpha) {
    // Compare in log space: exp() would round a value sitting exactly on the
    // threshold to just above it, and it cannot represent the deep tail at all.
    return log_adjusted_p <= std::log(alpha);
}

} // namespace ecohen
