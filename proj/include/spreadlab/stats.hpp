#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace spreadlab {

inline constexpr double kZ95 = 1.959963984540054;  // two-sided 95% normal quantile

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

// Wilson score interval for a binomial proportion.
inline Interval wilson_interval(std::int64_t hits, std::int64_t trials, double z = kZ95) {
    if (trials <= 0) return {0.0, 1.0};
    double n = static_cast<double>(trials);
    double phat = static_cast<double>(hits) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (phat + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    double lo = center - half, hi = center + half;
    if (lo < 0.0) lo = 0.0;
    if (hi > 1.0) hi = 1.0;
    return {lo, hi};
}

struct MeanCi {
    double mean = 0.0;
    double stderr_ = 0.0;
    Interval ci;
    std::int64_t count = 0;
};

// Normal-approximation CI for the mean of a sample; summation order is the
// vector order, so results are reproducible for a fixed trial layout.
inline MeanCi mean_ci(const std::vector<double>& xs, double z = kZ95) {
    MeanCi r;
    r.count = static_cast<std::int64_t>(xs.size());
    if (xs.empty()) return r;
    double s = 0.0;
    for (double x : xs) s += x;
    r.mean = s / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    if (xs.size() > 1)
        r.stderr_ = std::sqrt(ss / (static_cast<double>(xs.size()) - 1.0) /
                              static_cast<double>(xs.size()));
    r.ci = {r.mean - z * r.stderr_, r.mean + z * r.stderr_};
    return r;
}

inline double binom_coeff(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double prod = 1.0;
    for (int j = 1; j <= k; ++j) prod *= static_cast<double>(n + 1 - j) / j;
    return prod;
}

// exact log C(n,k) via lgamma, safe for large n
inline double log_binom(int n, int k) {
    if (k < 0 || k > n) return -INFINITY;
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// P(Bin(n,p) >= m), summed directly (n at desk scale)
inline double binomial_tail_geq(int n, double p, int m) {
    if (m <= 0) return 1.0;
    if (m > n) return 0.0;
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    double total = 0.0;
    for (int k = m; k <= n; ++k)
        total += std::exp(log_binom(n, k) + k * std::log(p) + (n - k) * std::log1p(-p));
    return total;
}

}  // namespace spreadlab
