#include "ecohen/extraction.hpp"

#include "ecohen/significance.hpp"
#include "ecohen/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <map>
#include <stdexcept>
#include <thread>

namespace ecohen {

std::int64_t maximal_allowance(double xi, double phi, std::int64_t iteration, std::int64_t n) {
    if (iteration < 1) throw std::invalid_argument("iteration must be >= 1");
    if (n < 1) throw std::invalid_argument("node count must be >= 1");
    if (!(xi >= 0.0 && xi <= 1.0) || !(phi >= 0.0 && phi <= 1.0))
        throw std::invalid_argument("xi and phi must lie in [0, 1]");
    const double raw = xi * std::pow(phi, static_cast<double>(iteration - 1)) *
                       static_cast<double>(n);
    // tiny epsilon so values like 0.99*1000 that are mathematically integral
    // cannot round down through representation noise
    const auto floored = static_cast<std::int64_t>(std::floor(raw + 1e-9));
    return std::max<std::int64_t>(1, floored);
}

namespace {

// Incremental state for one extraction: membership bitmap, sorted member
// list, and S[k][l] = sum over members w of type k of d^[l](w) — everything
// needed to evaluate the corrected success probabilities in O(1) per type.
class Engine {
  public:
    Engine(const HetGraph& g, std::span<const NodeId> seed)
        : g_(g),
          n_(g.node_count()),
          K_(g.type_count()),
          in_b_(n_, 0),
          S_(static_cast<std::size_t>(K_) * K_, 0),
          xcnt_(static_cast<std::size_t>(n_) * K_, 0),
          seen_(n_, 0) {
        members_.assign(seed.begin(), seed.end());
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
        if (!members_.empty() && (members_.front() < 0 || members_.back() >= n_))
            throw std::invalid_argument("seed contains unknown node ids");
        for (NodeId w : members_) {
            in_b_[w] = 1;
            account(w, +1);
        }
    }

    const std::vector<NodeId>& members() const { return members_; }

    // Both phases rank one family of |V| hypotheses — every node scored
    // against the current set — under a single step-up adjustment, then act on
    // the candidates on the phase's side of the membership boundary. Scoring
    // members and non-members in the same pool is what lets a candidate set
    // dissolve in an unstructured graph: a member that merely out-scores its
    // |B|-1 peers still has to stand out among all |V| scores to be kept.

    bool add_phase(std::int64_t mu, double alpha, PhaseAudit& audit) {
        const auto ladj = adjusted_all();
        sel_.clear();
        for (NodeId u = 0; u < n_; ++u)
            if (!in_b_[u] && log_adjusted_significant(ladj[u], alpha)) sel_.push_back(u);
        // smallest adjusted p first, ties by smaller node id
        std::sort(sel_.begin(), sel_.end(), [&](NodeId a, NodeId b) {
            if (ladj[a] != ladj[b]) return ladj[a] < ladj[b];
            return a < b;
        });
        record_audit(audit, ladj, mu);
        const std::size_t take = std::min<std::size_t>(sel_.size(), static_cast<std::size_t>(mu));
        changed_.assign(sel_.begin(), sel_.begin() + take);
        apply_change(+1);
        return !changed_.empty();
    }

    bool remove_phase(std::int64_t mu, double alpha, PhaseAudit& audit) {
        const auto ladj = adjusted_all();
        sel_.clear();
        for (NodeId u : members_)
            if (!log_adjusted_significant(ladj[u], alpha)) sel_.push_back(u);
        // largest adjusted p first, ties by smaller node id
        std::sort(sel_.begin(), sel_.end(), [&](NodeId a, NodeId b) {
            if (ladj[a] != ladj[b]) return ladj[a] > ladj[b];
            return a < b;
        });
        record_audit(audit, ladj, mu);
        const std::size_t take = std::min<std::size_t>(sel_.size(), static_cast<std::size_t>(mu));
        changed_.assign(sel_.begin(), sel_.begin() + take);
        apply_change(-1);
        return !changed_.empty();
    }

    // log p-value of every current member against the current set, aligned
    // with members().
    std::vector<double> member_log_pvalues() {
        scan_connections();
        std::vector<double> out;
        out.reserve(members_.size());
        for (NodeId u : members_) out.push_back(seen_[u] ? log_pvalue(u) : 0.0);
        clear_scan();
        return out;
    }

  private:
    // Adjusted log p-value of every node against the current member set, one
    // step-up pass over all n tests. Index == node id. Nodes with no edge
    // into the set have p-value exactly 1 and still occupy a pool slot.
    std::vector<double> adjusted_all() {
        scan_connections();
        logp_.resize(static_cast<std::size_t>(n_));
        for (NodeId u = 0; u < n_; ++u)
            logp_[static_cast<std::size_t>(u)] = seen_[u] ? log_pvalue(u) : 0.0;
        clear_scan();
        return bh_adjust_log(logp_);
    }
    void account(NodeId w, int sign) {
        const auto d = g_.typed_degree(w);
        const std::size_t row = static_cast<std::size_t>(g_.type_of(w)) * K_;
        for (TypeId l = 0; l < K_; ++l) S_[row + l] += sign * d[l];
    }

    // Tally, for every node v touching the set, its edges into the current
    // members, split by member type.
    void scan_connections() {
        for (NodeId w : members_) {
            const TypeId tw = g_.type_of(w);
            for (NodeId v : g_.neighbors(w)) {
                if (!seen_[v]) {
                    seen_[v] = 1;
                    touched_.push_back(v);
                }
                xcnt_[static_cast<std::size_t>(v) * K_ + tw]++;
            }
        }
    }

    void clear_scan() {
        for (NodeId v : touched_) {
            seen_[v] = 0;
            std::fill_n(xcnt_.begin() + static_cast<std::size_t>(v) * K_, K_, 0);
        }
        touched_.clear();
    }

    // Joint tail probability for node u given the scanned connection counts.
    double log_pvalue(NodeId u) const {
        const TypeId l = g_.type_of(u);
        const bool member = in_b_[u] != 0;
        const std::size_t xrow = static_cast<std::size_t>(u) * K_;
        double acc = 0.0;
        for (TypeId k = 0; k < K_; ++k) {
            const std::int64_t x = xcnt_[xrow + k];
            if (x == 0) continue; // tail is exactly 1
            const std::int64_t c = g_.typed_degree(u, k);
            const std::int64_t denom = g_.stub_total(k, l) - (k == l ? c : 0);
            if (denom <= 0) continue; // u owns the whole bucket: deterministic, tail 1
            const std::int64_t num =
                S_[static_cast<std::size_t>(k) * K_ + l] - (k == l && member ? c : 0);
            if (num < 0 || num > denom)
                throw std::logic_error("stub accounting out of range");
            // num can be 0 when all of u's in-set connections are its own
            // self-loops; the tail is then exactly 0
            const double p = static_cast<double>(num) / static_cast<double>(denom);
            acc += log_binom_sf(x, c, p);
        }
        return acc;
    }

    void record_audit(PhaseAudit& audit, const std::vector<double>& ladj, std::int64_t mu) {
        audit.phases++;
        if (sel_.size() > static_cast<std::size_t>(mu)) {
            audit.allowance_capped_phases++;
            const std::size_t cut = static_cast<std::size_t>(mu);
            if (ladj[static_cast<std::size_t>(sel_[cut - 1])] ==
                ladj[static_cast<std::size_t>(sel_[cut])])
                audit.boundary_tie_phases++;
        }
    }

    void apply_change(int sign) {
        if (changed_.empty()) return;
        std::sort(changed_.begin(), changed_.end());
        for (NodeId w : changed_) {
            in_b_[w] = sign > 0 ? 1 : 0;
            account(w, sign);
        }
        if (sign > 0) {
            std::vector<NodeId> merged;
            merged.reserve(members_.size() + changed_.size());
            std::merge(members_.begin(), members_.end(), changed_.begin(), changed_.end(),
                       std::back_inserter(merged));
            members_ = std::move(merged);
        } else {
            std::vector<NodeId> remaining;
            remaining.reserve(members_.size() - changed_.size());
            std::set_difference(members_.begin(), members_.end(), changed_.begin(),
                                changed_.end(), std::back_inserter(remaining));
            members_ = std::move(remaining);
        }
    }

    const HetGraph& g_;
    const std::int64_t n_;
    const TypeId K_;
    std::vector<std::uint8_t> in_b_;
    std::vector<NodeId> members_;
    std::vector<std::int64_t> S_;
    std::vector<std::int64_t> xcnt_;
    std::vector<std::uint8_t> seen_;
    std::vector<NodeId> touched_;
    // phase scratch
    std::vector<double> logp_;
    std::vector<NodeId> sel_;
    std::vector<NodeId> changed_;
};

} // namespace

std::vector<NodeId> add_well_connected(const HetGraph& g, std::span<const NodeId> B,
                                       double alpha, std::int64_t mu) {
    Engine engine(g, B);
    PhaseAudit audit;
    engine.add_phase(mu, alpha, audit);
    return engine.members();
}

std::vector<NodeId> remove_loosely_connected(const HetGraph& g, std::span<const NodeId> B,
                                             double alpha, std::int64_t mu) {
    Engine engine(g, B);
    PhaseAudit audit;
    engine.remove_phase(mu, alpha, audit);
    return engine.members();
}

ExtractionResult extract_one(const HetGraph& g, std::span<const NodeId> seed,
                             const ExtractionConfig& config) {
    if (seed.empty()) throw std::invalid_argument("seed set must be nonempty");
    if (!(config.alpha > 0.0 && config.alpha < 1.0))
        throw std::invalid_argument("alpha must lie in (0, 1)");
    const std::int64_t n = g.node_count();
    const std::int64_t max_iters = config.max_iters > 0 ? config.max_iters : n;

    Engine engine(g, seed);
    ExtractionResult result;

    // Recent iteration-start states B_1, B_2, ... for convergence and cycle
    // checks. Bounded: cycles longer than the window would go undetected and
    // fall through to the iteration cap, which is the documented backstop.
    constexpr std::size_t kHistoryWindow = 64;
    std::deque<std::vector<NodeId>> history;
    history.push_back(engine.members());

    for (std::int64_t i = 1; i <= max_iters; ++i) {
        const std::int64_t mu = maximal_allowance(config.xi, config.phi, i, n);
        const std::vector<NodeId>& b_start = history.back();
        const bool added = engine.add_phase(mu, config.alpha, result.audit);
        const bool removed = engine.remove_phase(mu, config.alpha, result.audit);
        const std::vector<NodeId>& b_next = engine.members();
        result.iterations = i;

        if (b_next.empty()) {
            // nothing left to test; the empty set is a fixed point
            result.converged = true;
            return result;
        }
        if (!added && !removed) {
            result.converged = true;
            result.community = b_next;
            result.member_log_pvalues = engine.member_log_pvalues();
            return result;
        }
        // B_{i+1} == B_i with an intermediate change is a within-iteration
        // bounce, not a cycle: the decaying allowance can still break it on a
        // later iteration, so just keep going (the iteration cap backstops).
        if (b_next == b_start) continue;
        // two-cycle: the new state equals the previous distinct state
        if (history.size() >= 2) {
            const auto& b_prev = history[history.size() - 2];
            if (b_next == b_prev) {
                result.two_cycle_detected = true;
                return result;
            }
        }
        // longer revisits: any match further back is an orbit; flag and stop
        if (history.size() >= 3) {
            for (std::size_t j = history.size() - 2; j-- > 0;) {
                if (history[j] == b_next) {
                    result.long_cycle_detected = true;
                    result.terminated_by_cap = true;
                    return result;
                }
            }
        }
        history.push_back(b_next);
        if (history.size() > kHistoryWindow) history.pop_front();
    }
    result.terminated_by_cap = true;
    return result;
}

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("ECOHEN_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

CommunitySet extract_all(const HetGraph& g, const ExtractionConfig& config) {
    const std::int64_t n = g.node_count();
    std::vector<std::vector<NodeId>> default_seeds;
    const std::vector<std::vector<NodeId>>* seeds = nullptr;
    if (config.seeds.has_value()) {
        seeds = &config.seeds.value();
    } else {
        default_seeds.reserve(n);
        for (NodeId u = 0; u < n; ++u) default_seeds.push_back(g.neighborhood(u));
        seeds = &default_seeds;
    }

    std::vector<ExtractionResult> results(seeds->size());
    const int threads = std::max(1, std::min<int>(resolve_thread_count(config.threads),
                                                  static_cast<int>(seeds->size())));
    if (threads <= 1) {
        for (std::size_t s = 0; s < seeds->size(); ++s)
            results[s] = extract_one(g, (*seeds)[s], config);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t s = next.fetch_add(1);
                    if (s >= seeds->size()) return;
                    results[s] = extract_one(g, (*seeds)[s], config);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    CommunitySet out;
    out.seeds_run = static_cast<std::int64_t>(seeds->size());
    std::map<std::vector<NodeId>, std::size_t> index_of;
    for (std::size_t s = 0; s < results.size(); ++s) {
        ExtractionResult& r = results[s];
        out.audit += r.audit;
        if (r.converged) out.seeds_converged++;
        if (r.community.empty()) continue;
        const std::int64_t seed_id = static_cast<std::int64_t>(s);
        auto [it, inserted] = index_of.try_emplace(r.community, out.communities.size());
        if (inserted) {
            Community c;
            c.members = std::move(r.community);
            c.seed_ids = {seed_id};
            c.iterations = r.iterations;
            c.member_log_pvalues = std::move(r.member_log_pvalues);
            out.communities.push_back(std::move(c));
        } else {
            out.communities[it->second].seed_ids.push_back(seed_id);
        }
    }
    std::sort(out.communities.begin(), out.communities.end(),
              [](const Community& a, const Community& b) {
                  if (a.members.size() != b.members.size())
                      return a.members.size() > b.members.size();
                  return a.members < b.members;
              });
    return out;
}

} // namespace ecohen
