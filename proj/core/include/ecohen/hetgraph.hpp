#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ecohen {

using NodeId = std::int32_t;
using TypeId = std::int32_t;

struct Edge {
    NodeId u;
    NodeId v;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Undirected multigraph whose nodes each carry one categorical type.
// The edge multiset is partitioned into per-type-pair buckets E[k][l] (k <= l).
// Immutable after construction, so concurrent readers need no synchronization.
//
// Conventions baked into every downstream computation:
//   - a self-loop {u,u} adds 2 to u's same-type degree (it occupies two stubs),
//     and u appears twice in its own adjacency list;
//   - multi-edges are kept and counted with multiplicity everywhere.
class HetGraph {
  public:
    // node_types[i] is the type of node i, in [0, K). K is inferred as
    // max(type)+1 and every type in [0, K) must be occupied by construction
    // of the caller (gaps are allowed structurally but waste bucket slots).
    // Throws std::invalid_argument on out-of-range endpoints or types.
    static HetGraph build(std::vector<TypeId> node_types, const std::vector<Edge>& edges);

    std::int64_t node_count() const { return static_cast<std::int64_t>(types_.size()); }
    std::int64_t edge_count() const { return edge_count_; }
    TypeId type_count() const { return K_; }
    TypeId type_of(NodeId u) const { return types_[check_node(u)]; }

    // Neighbors with multiplicity; a self-loop lists u twice.
    std::span<const NodeId> neighbors(NodeId u) const {
        check_node(u);
        return {adj_.data() + adj_off_[u], adj_.data() + adj_off_[u + 1]};
    }

    // d(u) split by neighbor type: entry k counts edge endpoints of type k
    // incident to u, with multiplicity, self-loops counting 2.
    std::span<const std::int64_t> typed_degree(NodeId u) const {
        check_node(u);
        return {deg_.data() + static_cast<std::size_t>(u) * K_, static_cast<std::size_t>(K_)};
    }
    std::int64_t typed_degree(NodeId u, TypeId k) const {
        check_node(u);
        check_type(k);
        return deg_[static_cast<std::size_t>(u) * K_ + k];
    }
    std::int64_t degree(NodeId u) const;

    // Closed neighborhood {u} plus distinct neighbors, sorted ascending.
    std::vector<NodeId> neighborhood(NodeId u) const;

    // |E[k][l]| — number of edges whose endpoint types are {k, l}.
    std::int64_t bucket_size(TypeId k, TypeId l) const;

    // Total stubs of type l owned by type-k nodes: sum over w of type k of
    // d^[l](w). Equals |E[k][l]| for k != l and 2|E[k][k]| for k == l.
    std::int64_t stub_total(TypeId k, TypeId l) const {
        check_type(k);
        check_type(l);
        return stub_total_[static_cast<std::size_t>(k) * K_ + l];
    }

    const std::vector<NodeId>& nodes_of_type(TypeId k) const {
        check_type(k);
        return by_type_[k];
    }

    // Edges of bucket (k, l) for k <= l. Each edge is stored with the type-k
    // endpoint first (for k == l, smaller id first). Order is insertion order.
    const std::vector<Edge>& bucket_edges(TypeId k, TypeId l) const;

    // Whole edge multiset, each edge as (min, max), sorted — a canonical form
    // used for equality, dedup and emission.
    std::vector<Edge> canonical_edges() const;

    // Structural equality: same node count, same types, same edge multiset.
    bool same_structure(const HetGraph& other) const;

  private:
    HetGraph() = default;
    NodeId check_node(NodeId u) const;
    TypeId check_type(TypeId k) const;
    std::size_t bucket_index(TypeId k, TypeId l) const {
        // upper-triangle indexing over k <= l
        return static_cast<std::size_t>(k) * K_ + l - static_cast<std::size_t>(k) * (k + 1) / 2;
    }

    TypeId K_ = 0;
    std::int64_t edge_count_ = 0;
    std::vector<TypeId> types_;
    std::vector<std::int64_t> adj_off_;   // n+1 offsets into adj_
    std::vector<NodeId> adj_;             // 2|E| endpoints
    std::vector<std::int64_t> deg_;       // n*K typed degrees
    std::vector<std::int64_t> stub_total_;// K*K
    std::vector<std::vector<NodeId>> by_type_;
    std::vector<std::vector<Edge>> buckets_; // K(K+1)/2 buckets, k <= l
};

} // namespace ecohen
