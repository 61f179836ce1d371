#include "ecohen/hsbm.hpp"

#include "ecohen/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ecohen {

namespace {

void validate(const HsbmSpec& spec) {
    const std::size_t K = spec.block_sizes.size();
    if (K == 0) throw std::invalid_argument("block size matrix must have at least one type row");
    const std::size_t C = spec.block_sizes[0].size();
    if (C == 0) throw std::invalid_argument("block size matrix must have at least one block column");
    for (const auto& row : spec.block_sizes) {
        if (row.size() != C) throw std::invalid_argument("ragged block size matrix");
        for (std::int64_t v : row)
            if (v < 0) throw std::invalid_argument("negative block size");
    }
    auto check_rates = [&](const std::vector<std::vector<double>>& m, const char* name) {
        if (m.size() != K) throw std::invalid_argument(std::string(name) + " must be K x K");
        for (std::size_t k = 0; k < K; ++k) {
            if (m[k].size() != K) throw std::invalid_argument(std::string(name) + " must be K x K");
            for (std::size_t l = 0; l < K; ++l) {
                if (!(m[k][l] >= 0.0)) throw std::invalid_argument(std::string(name) + " has a negative entry");
                if (m[k][l] != m[l][k]) throw std::invalid_argument(std::string(name) + " must be symmetric");
            }
        }
    };
    check_rates(spec.baseline, "baseline rate matrix");
    check_rates(spec.boost, "boost matrix");
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t l = 0; l < K; ++l)
            if (spec.baseline[k][l] + spec.boost[k][l] > 1.0)
                throw std::invalid_argument("baseline + boost exceeds 1");
    if (spec.background_block >= static_cast<std::int64_t>(C))
        throw std::invalid_argument("background block index out of range");
}

// Bernoulli(rate) over a linearly indexed collection of pairs, visiting only
// successes: geometric jumps make the cost proportional to the edge count.
template <typename Place>
void sample_pairs(std::int64_t pair_count, double rate, Rng& rng, Place place) {
    if (pair_count <= 0 || rate <= 0.0) return;
    if (rate >= 1.0) {
        for (std::int64_t t = 0; t < pair_count; ++t) place(t);
        return;
    }
    const double log_miss = std::log1p(-rate);
    std::int64_t t = 0;
    while (t < pair_count) {
        const double u = 1.0 - rng.next_double(); // (0, 1]
        const double jump = std::floor(std::log(u) / log_miss);
        if (jump >= static_cast<double>(pair_count - t)) return;
        t += static_cast<std::int64_t>(jump);
        if (t >= pair_count) return;
        place(t);
        ++t;
    }
}

} // namespace

HsbmResult generate_hsbm(const HsbmSpec& spec) {
    validate(spec);
    const std::size_t K = spec.block_sizes.size();
    const std::size_t C = spec.block_sizes[0].size();

    std::int64_t n = 0;
    for (const auto& row : spec.block_sizes) n += std::accumulate(row.begin(), row.end(), std::int64_t{0});

    // Deterministic (type, block) slots, then a seeded shuffle of node ids so
    // id order carries no information about the planted structure.
    std::vector<TypeId> slot_type;
    std::vector<std::int64_t> slot_block;
    slot_type.reserve(n);
    slot_block.reserve(n);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t c = 0; c < C; ++c)
            for (std::int64_t i = 0; i < spec.block_sizes[k][c]; ++i) {
                slot_type.push_back(static_cast<TypeId>(k));
                slot_block.push_back(static_cast<std::int64_t>(c));
            }

    Rng root(spec.seed);
    Rng assign_rng = root.derive(1);
    std::vector<NodeId> slot_node(n);
    std::iota(slot_node.begin(), slot_node.end(), NodeId{0});
    assign_rng.shuffle(slot_node);

    std::vector<TypeId> types(n);
    std::vector<std::int64_t> block_of(n);
    for (std::int64_t s = 0; s < n; ++s) {
        types[slot_node[s]] = slot_type[s];
        block_of[slot_node[s]] = slot_block[s];
    }

    // Cell (k, c) membership in slot order (node ids inside are shuffled but
    // the cell contents are reproducible).
    std::vector<std::vector<NodeId>> cell(K * C);
    for (std::int64_t s = 0; s < n; ++s)
        cell[static_cast<std::size_t>(slot_type[s]) * C + slot_block[s]].push_back(slot_node[s]);

    Rng edge_rng = root.derive(2);
    std::vector<Edge> edges;
    for (std::size_t a = 0; a < cell.size(); ++a) {
        const std::size_t ka = a / C, ca = a % C;
        for (std::size_t b = a; b < cell.size(); ++b) {
            const std::size_t kb = b / C, cb = b % C;
            const bool boosted =
                ca == cb && static_cast<std::int64_t>(ca) != spec.background_block;
            const double rate = spec.baseline[ka][kb] + (boosted ? spec.boost[ka][kb] : 0.0);
            const auto& A = cell[a];
            const auto& B = cell[b];
            if (a == b) {
                const std::int64_t m = static_cast<std::int64_t>(A.size());
                sample_pairs(m * (m - 1) / 2, rate, edge_rng, [&](std::int64_t t) {
                    // unrank t to the (i, j), i < j pair in row-major order
                    std::int64_t i = 0;
                    std::int64_t row_len = m - 1;
                    while (t >= row_len) {
                        t -= row_len;
                        --row_len;
                        ++i;
                    }
                    const std::int64_t j = i + 1 + t;
                    edges.push_back({A[i], A[j]});
                });
            } else {
                const auto nb = static_cast<std::int64_t>(B.size());
                sample_pairs(static_cast<std::int64_t>(A.size()) * nb, rate, edge_rng,
                             [&](std::int64_t t) { edges.push_back({A[t / nb], B[t % nb]}); });
            }
        }
    }

    return {HetGraph::build(types, edges), std::move(block_of)};
}

TwoBlockResult two_block(const TwoBlockSpec& spec) {
    if (!(spec.p >= 0.0 && spec.p <= 1.0))
        throw std::invalid_argument("HCB proportion must lie in [0, 1]");
    if (spec.per_type < 0) throw std::invalid_argument("per-type size must be nonnegative");

    // Fractions like 0.45*500 are mathematically integral; snap before the
    // floor so representation noise cannot shave a node off the block.
    const double raw = spec.p * static_cast<double>(spec.per_type);
    const double snapped = std::abs(raw - std::round(raw)) < 1e-6 ? std::round(raw) : raw;
    const std::int64_t hcb_per_type = static_cast<std::int64_t>(std::floor(snapped));
    const std::int64_t bg_per_type = spec.per_type - hcb_per_type;

    HsbmSpec h;
    h.block_sizes = {{bg_per_type, hcb_per_type}, {bg_per_type, hcb_per_type}};
    h.baseline = {{spec.b, spec.b}, {spec.b, spec.b}};
    h.boost = {{spec.r11, spec.r12}, {spec.r12, spec.r22}};
    h.seed = spec.seed;
    h.background_block = 0;

    HsbmResult r = generate_hsbm(h);
    std::vector<NodeId> hcb;
    for (NodeId u = 0; u < r.graph.node_count(); ++u)
        if (r.block_of[u] == 1) hcb.push_back(u);
    return {std::move(r.graph), std::move(hcb)};
}

} // namespace ecohen
