#pragma once

#include <cstdint>
#include <vector>

namespace ecohen {

// log P(Binomial(c, p) >= x), the inclusive upper tail.
//   x <= 0        -> 0 (probability 1)
//   x > c         -> -infinity
//   p <= 0, x > 0 -> -infinity;  p >= 1, x <= c -> 0
// Computed through the regularized incomplete beta survival identity
// P(X >= x) = I_p(x, c - x + 1) for large c, with direct log-space summation
// for c <= 64 and as a fallback when the beta value underflows double range
// (keeps tails finite for significance comparisons down past 1e-300).
double log_binom_sf(std::int64_t x, std::int64_t c, double p);

// P(Binomial(c, p) >= x) in linear space.
double binom_sf(std::int64_t x, std::int64_t c, double p);

// Benjamini–Hochberg step-up adjustment, returned in input order:
// adj_i = min(1, min_{j >= rank(i)} m * p_(j) / j).
// Entries must lie in [0, 1] (throws std::invalid_argument otherwise).
std::vector<double> bh_adjust(const std::vector<double>& pvalues);

// Same adjustment computed entirely in log space; input and output are
// log p-values (non-positive, -infinity allowed). Used on tails too small to
// represent linearly.
std::vector<double> bh_adjust_log(const std::vector<double>& log_pvalues);

} // namespace ecohen
