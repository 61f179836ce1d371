#pragma once

#include "ecohen/hetgraph.hpp"

#include <optional>
#include <span>
#include <vector>

namespace ecohen {

struct ExtractionConfig {
    double alpha = 0.10; // per-phase FDR level
    double xi = 1.0;     // allowance learning rate
    double phi = 0.99;   // allowance decay rate
    std::int64_t max_iters = 0; // 0 -> node count
    int threads = 0;            // 0 -> ECOHEN_THREADS env or hardware concurrency
    // Seed sets to grow from; default is every node's closed neighborhood
    // (seed_id = node id). For custom seeds, seed_id = index in this vector.
    std::optional<std::vector<std::vector<NodeId>>> seeds;
};

// Counters that make tie-break-sensitive runs auditable: how often the
// allowance cap truncated a phase's selection, and how often equal adjusted
// p-values straddled the truncation cut (the only places where the node-id
// tie-break rule can influence the outcome).
struct PhaseAudit {
    std::int64_t phases = 0;
    std::int64_t allowance_capped_phases = 0;
    std::int64_t boundary_tie_phases = 0;

    void operator+=(const PhaseAudit& o) {
        phases += o.phases;
        allowance_capped_phases += o.allowance_capped_phases;
        boundary_tie_phases += o.boundary_tie_phases;
    }
};

struct ExtractionResult {
    std::vector<NodeId> community; // sorted; empty when not converged
    std::int64_t iterations = 0;
    bool converged = false;
    bool terminated_by_cap = false;
    bool two_cycle_detected = false;
    bool long_cycle_detected = false;
    // log p-value of each member against the final community, aligned with
    // `community`; empty when community is empty.
    std::vector<double> member_log_pvalues;
    PhaseAudit audit;
};

struct Community {
    std::vector<NodeId> members;        // sorted
    std::vector<std::int64_t> seed_ids; // every seed that converged to this set
    std::int64_t iterations = 0;        // from the lowest-id producing seed
    std::vector<double> member_log_pvalues;
};

struct CommunitySet {
    // Sorted by size descending, ties by lexicographically smaller member list.
    std::vector<Community> communities;
    std::int64_t seeds_run = 0;
    std::int64_t seeds_converged = 0;
    PhaseAudit audit; // aggregated over all extractions
};

// Per-iteration cap on added/removed nodes: max(1, floor(xi * phi^(i-1) * n)).
// iteration is 1-based.
std::int64_t maximal_allowance(double xi, double phi, std::int64_t iteration, std::int64_t n);

// Each phase scores every node in the graph against the current set and
// applies one BH step-up adjustment over all |V| tests; only the candidates on
// the phase's side of the membership boundary are acted on. Pooling members
// with non-members is what lets candidate sets dissolve in unstructured
// graphs: a member must stand out among all |V| scores to be kept, not merely
// against its few peers.

// One add phase: admit at most mu non-members with adjusted p <= alpha
// (smallest adjusted first, ties by smaller node id). Returns the enlarged
// set, sorted.
std::vector<NodeId> add_well_connected(const HetGraph& g, std::span<const NodeId> B,
                                       double alpha, std::int64_t mu);

// One remove phase: drop at most mu members with adjusted p > alpha (largest
// adjusted first, ties by smaller node id). Returns the reduced set, sorted.
std::vector<NodeId> remove_loosely_connected(const HetGraph& g, std::span<const NodeId> B,
                                             double alpha, std::int64_t mu);

// Alternate add/remove from one seed until the set is stable across a full
// iteration (converged), empties out (converged, empty), revisits an earlier
// state (cycle flags), or hits the iteration cap. Non-converged runs report an
// empty community.
ExtractionResult extract_one(const HetGraph& g, std::span<const NodeId> seed,
                             const ExtractionConfig& config);

// Run extract_one for every seed (in parallel), drop empty results, merge
// identical communities, and order deterministically. Output is independent
// of the thread count.
CommunitySet extract_all(const HetGraph& g, const ExtractionConfig& config);

// Thread-count resolution used by extract_all: explicit value, else the
// ECOHEN_THREADS environment variable, else hardware concurrency.
int resolve_thread_count(int requested);

} // namespace ecohen
