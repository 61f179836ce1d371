#include "ecohen/refinement.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace ecohen {

double jaccard(std::span<const NodeId> a, std::span<const NodeId> b) {
    if (a.empty() && b.empty()) return 0.0;
    std::size_t inter = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            ++inter;
            ++i;
            ++j;
        }
    }
    const std::size_t uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

namespace {

bool induces_complete_subgraph(const HetGraph& g, const std::vector<NodeId>& members) {
    if (members.size() <= 1) return true;
    std::unordered_set<NodeId> in(members.begin(), members.end());
    for (NodeId u : members) {
        std::unordered_set<NodeId> distinct;
        for (NodeId v : g.neighbors(u))
            if (v != u && in.count(v)) distinct.insert(v);
        if (distinct.size() != members.size() - 1) return false;
    }
    return true;
}

} // namespace

CommunitySet refine(const CommunitySet& communities, const RefinementConfig& config,
                    const HetGraph& g) {
    if (config.min_size < 1 || config.min_size > config.max_size)
        throw std::invalid_argument("size bounds must satisfy 1 <= min_size <= max_size");
    if (!(config.beta >= 0.0 && config.beta <= 1.0))
        throw std::invalid_argument("beta must lie in [0, 1]");

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < communities.communities.size(); ++i) {
        const auto& c = communities.communities[i];
        const auto size = static_cast<std::int64_t>(c.members.size());
        if (size < config.min_size || size > config.max_size) continue;
        if (config.exclude_complete && induces_complete_subgraph(g, c.members)) continue;
        order.push_back(i);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& ma = communities.communities[a].members;
        const auto& mb = communities.communities[b].members;
        if (ma.size() != mb.size()) return ma.size() > mb.size();
        return ma < mb;
    });

    CommunitySet out;
    out.seeds_run = communities.seeds_run;
    out.seeds_converged = communities.seeds_converged;
    out.audit = communities.audit;
    for (std::size_t idx : order) {
        const auto& cand = communities.communities[idx];
        const bool overlaps = std::any_of(
            out.communities.begin(), out.communities.end(), [&](const Community& kept) {
                return jaccard(kept.members, cand.members) > config.beta;
            });
        if (!overlaps) out.communities.push_back(cand);
    }
    return out;
}

} // namespace ecohen
