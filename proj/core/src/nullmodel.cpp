#include "ecohen/nullmodel.hpp"

namespace ecohen {

std::vector<Edge> HdcmSampler::sample_edges(std::uint64_t index) const {
    const HetGraph& g = *source_;
    const TypeId K = g.type_count();
    std::vector<Edge> out;
    out.reserve(g.edge_count());
    Rng draw = root_.derive(index);

    for (TypeId k = 0; k < K; ++k) {
        for (TypeId l = k; l < K; ++l) {
            const auto& bucket = g.bucket_edges(k, l);
            if (bucket.empty()) continue;
            Rng rng = draw.derive(static_cast<std::uint64_t>(k) * K + l);
            if (k == l) {
                std::vector<NodeId> stubs;
                stubs.reserve(bucket.size() * 2);
                for (const Edge& e : bucket) {
                    stubs.push_back(e.u);
                    stubs.push_back(e.v);
                }
                rng.shuffle(stubs);
                for (std::size_t i = 0; i < stubs.size(); i += 2)
                    out.push_back({stubs[i], stubs[i + 1]});
            } else {
                // bucket edges store the type-k endpoint first
                std::vector<NodeId> right;
                right.reserve(bucket.size());
                for (const Edge& e : bucket) right.push_back(e.v);
                rng.shuffle(right);
                for (std::size_t i = 0; i < bucket.size(); ++i)
                    out.push_back({bucket[i].u, right[i]});
            }
        }
    }
    return out;
}

HetGraph HdcmSampler::sample(std::uint64_t index) const {
    std::vector<TypeId> types(source_->node_count());
    for (NodeId u = 0; u < source_->node_count(); ++u) types[u] = source_->type_of(u);
    return HetGraph::build(std::move(types), sample_edges(index));
}

} // namespace ecohen
