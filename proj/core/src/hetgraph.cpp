#include "ecohen/hetgraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ecohen {

NodeId HetGraph::check_node(NodeId u) const {
    if (u < 0 || static_cast<std::size_t>(u) >= types_.size())
        throw std::invalid_argument("unknown node id " + std::to_string(u));
    return u;
}

TypeId HetGraph::check_type(TypeId k) const {
    if (k < 0 || k >= K_)
        throw std::invalid_argument("type id " + std::to_string(k) + " out of range");
    return k;
}

HetGraph HetGraph::build(std::vector<TypeId> node_types, const std::vector<Edge>& edges) {
    HetGraph g;
    const auto n = static_cast<std::int64_t>(node_types.size());
    TypeId K = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        if (node_types[i] < 0)
            throw std::invalid_argument("node " + std::to_string(i) + " has negative type");
        K = std::max(K, node_types[i] + 1);
    }
    g.K_ = K;
    g.types_ = std::move(node_types);
    g.edge_count_ = static_cast<std::int64_t>(edges.size());

    for (const Edge& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw std::invalid_argument("edge endpoint out of range: (" + std::to_string(e.u) +
                                        ", " + std::to_string(e.v) + ")");
    }

    // adjacency (CSR), self-loops listed twice
    std::vector<std::int64_t> deg_total(n, 0);
    for (const Edge& e : edges) {
        deg_total[e.u]++;
        deg_total[e.v]++;
    }
    g.adj_off_.assign(n + 1, 0);
    for (std::int64_t i = 0; i < n; ++i) g.adj_off_[i + 1] = g.adj_off_[i] + deg_total[i];
    g.adj_.resize(g.adj_off_[n]);
    {
        std::vector<std::int64_t> cursor(g.adj_off_.begin(), g.adj_off_.end() - 1);
        for (const Edge& e : edges) {
            g.adj_[cursor[e.u]++] = e.v;
            g.adj_[cursor[e.v]++] = e.u;
        }
    }

    // typed degrees
    g.deg_.assign(static_cast<std::size_t>(n) * K, 0);
    for (const Edge& e : edges) {
        g.deg_[static_cast<std::size_t>(e.u) * K + g.types_[e.v]]++;
        g.deg_[static_cast<std::size_t>(e.v) * K + g.types_[e.u]]++;
    }

    // buckets, canonical endpoint order (type-k endpoint first; min id first when same type)
    g.buckets_.assign(static_cast<std::size_t>(K) * (K + 1) / 2, {});
    for (const Edge& e : edges) {
        TypeId tu = g.types_[e.u], tv = g.types_[e.v];
        Edge stored = e;
        if (tu > tv) {
            std::swap(stored.u, stored.v);
            std::swap(tu, tv);
        } else if (tu == tv && stored.u > stored.v) {
            std::swap(stored.u, stored.v);
        }
        g.buckets_[g.bucket_index(tu, tv)].push_back(stored);
    }

    // stub totals per (owner type, neighbor type)
    g.stub_total_.assign(static_cast<std::size_t>(K) * K, 0);
    for (std::int64_t u = 0; u < n; ++u) {
        const TypeId k = g.types_[u];
        for (TypeId l = 0; l < K; ++l)
            g.stub_total_[static_cast<std::size_t>(k) * K + l] +=
                g.deg_[static_cast<std::size_t>(u) * K + l];
    }

    g.by_type_.assign(K, {});
    for (std::int64_t u = 0; u < n; ++u) g.by_type_[g.types_[u]].push_back(static_cast<NodeId>(u));

    return g;
}

std::int64_t HetGraph::degree(NodeId u) const {
    check_node(u);
    return adj_off_[u + 1] - adj_off_[u];
}

std::vector<NodeId> HetGraph::neighborhood(NodeId u) const {
    check_node(u);
    std::vector<NodeId> out;
    const auto nb = neighbors(u);
    out.reserve(nb.size() + 1);
    out.push_back(u);
    out.insert(out.end(), nb.begin(), nb.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::int64_t HetGraph::bucket_size(TypeId k, TypeId l) const {
    check_type(k);
    check_type(l);
    if (k > l) std::swap(k, l);
    return static_cast<std::int64_t>(buckets_[bucket_index(k, l)].size());
}

const std::vector<Edge>& HetGraph::bucket_edges(TypeId k, TypeId l) const {
    check_type(k);
    check_type(l);
    if (k > l) std::swap(k, l);
    return buckets_[bucket_index(k, l)];
}

std::vector<Edge> HetGraph::canonical_edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (const auto& bucket : buckets_)
        for (const Edge& e : bucket)
            out.push_back(e.u <= e.v ? e : Edge{e.v, e.u});
    std::sort(out.begin(), out.end());
    return out;
}

bool HetGraph::same_structure(const HetGraph& other) const {
    return types_ == other.types_ && canonical_edges() == other.canonical_edges();
}

} // namespace ecohen
