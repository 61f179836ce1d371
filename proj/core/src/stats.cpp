#include "ecohen/stats.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ecohen {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log n! with a table for the degree range every real graph here lives in.
double log_factorial(std::int64_t n) {
    static const std::vector<double> table = [] {
        std::vector<double> t(16384);
        for (std::size_t i = 0; i < t.size(); ++i)
            t[i] = std::lgamma(static_cast<double>(i) + 1.0);
        return t;
    }();
    const auto u = static_cast<std::size_t>(n);
    return u < table.size() ? table[u] : std::lgamma(static_cast<double>(n) + 1.0);
}

// log pmf of Binomial(c, p) at j
double log_pmf(std::int64_t j, std::int64_t c, double lp, double lq) {
    return log_factorial(c) - log_factorial(j) - log_factorial(c - j) +
           static_cast<double>(j) * lp + static_cast<double>(c - j) * lq;
}

// Direct summation of the upper tail. One pmf evaluation anchors the sum in
// log space; the remaining terms follow by the pmf ratio recurrence, so each
// costs a multiply-add. Above the mode the tail itself is accumulated; below
// it the complement CDF is, keeping the relative error small on both sides.
// Preconditions: 1 <= x <= c, 0 < p < 1.
double log_sf_by_summation(std::int64_t x, std::int64_t c, double p) {
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    const double mode = static_cast<double>(c + 1) * p;
    if (static_cast<double>(x) >= mode) {
        // pmf(j+1)/pmf(j) = ((c-j)/(j+1)) * p/q, nonincreasing from here up
        const double odds = p / (1.0 - p);
        double term = 1.0;
        double sum = 1.0;
        for (std::int64_t j = x; j < c; ++j) {
            term *= static_cast<double>(c - j) / static_cast<double>(j + 1) * odds;
            sum += term;
            if (term <= sum * 1e-18) break;
        }
        return log_pmf(x, c, lp, lq) + std::log(sum);
    }
    // below the mode the upper tail is near 1: sum P(X <= x-1) downward,
    // where pmf(j-1)/pmf(j) = (j/(c-j+1)) * q/p shrinks as j descends
    const double inv_odds = (1.0 - p) / p;
    double term = 1.0;
    double sum = 1.0;
    for (std::int64_t j = x - 1; j > 0; --j) {
        term *= static_cast<double>(j) / static_cast<double>(c - j + 1) * inv_odds;
        sum += term;
        if (term <= sum * 1e-18) break;
    }
    const double cdf = std::exp(log_pmf(x - 1, c, lp, lq)) * sum;
    return std::log1p(-std::min(cdf, 1.0));
}

} // namespace

double log_binom_sf(std::int64_t x, std::int64_t c, double p) {
    if (c < 0) throw std::invalid_argument("binomial trial count must be non-negative");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial probability outside [0,1]");
    if (x <= 0) return 0.0;
    if (x > c) return kNegInf;
    if (p <= 0.0) return kNegInf;
    if (p >= 1.0) return 0.0;

    if (c > 64) {
        // P(X >= x) = I_p(x, c - x + 1)
        const double v = boost::math::ibeta(static_cast<double>(x),
                                            static_cast<double>(c - x + 1), p);
        if (v >= 1e-280) return std::log(v);
        // underflow region: fall back to summation so the log tail stays finite
    }
    return log_sf_by_summation(x, c, p);
}

double binom_sf(std::int64_t x, std::int64_t c, double p) {
    return std::exp(log_binom_sf(x, c, p));
}

namespace {

template <class Compare>
std::vector<std::size_t> sorted_order(std::size_t n, Compare cmp) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), cmp);
    return order;
}

} // namespace

std::vector<double> bh_adjust(const std::vector<double>& pvalues) {
    for (double p : pvalues)
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p-value outside [0,1]");
    const std::size_t m = pvalues.size();
    if (m == 0) return {};
    auto order = sorted_order(m, [&](std::size_t a, std::size_t b) { return pvalues[a] < pvalues[b]; });
    std::vector<double> adjusted(m);
    double running = 1.0;
    for (std::size_t r = m; r-- > 0;) {
        const double scaled = pvalues[order[r]] * static_cast<double>(m) / static_cast<double>(r + 1);
        running = std::min(running, scaled);
        adjusted[order[r]] = running;
    }
    return adjusted;
}

std::vector<double> bh_adjust_log(const std::vector<double>& log_pvalues) {
    for (double lp : log_pvalues)
        if (!(lp <= 0.0)) throw std::invalid_argument("log p-value must be <= 0");
    const std::size_t m = log_pvalues.size();
    if (m == 0) return {};
    auto order = sorted_order(
        m, [&](std::size_t a, std::size_t b) { return log_pvalues[a] < log_pvalues[b]; });
    const double log_m = std::log(static_cast<double>(m));
    std::vector<double> adjusted(m);
    double running = 0.0;
    for (std::size_t r = m; r-- > 0;) {
        const double scaled =
            log_pvalues[order[r]] + log_m - std::log(static_cast<double>(r + 1));
        running = std::min(running, scaled);
        adjusted[order[r]] = running;
    }
    return adjusted;
}

} // namespace ecohen
