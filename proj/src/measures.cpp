#include "spreadlab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "spreadlab/parallel.hpp"
#include "spreadlab/rng.hpp"
#include "spreadlab/stats.hpp"

namespace spreadlab {

namespace {

void check_nontrivial(const MinGenerators& g) {
    if (g.gens.empty()) throw std::invalid_argument("empty generator list (F is empty)");
    if (g.has_empty_generator())
        throw std::invalid_argument("empty generator present (F = 2^X, trivial family)");
}

double neumaier_sum(const std::vector<double>& xs) {
    double s = 0.0, c = 0.0;
    for (double x : xs) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    return s + c;
}

bool hits_family(const std::vector<VertexSet>& gens, const VertexSet& t) {
    for (const auto& s : gens)
        if (s.subset_of(t)) return true;
    return false;
}

}  // namespace

bool mu_p_exact_applicable(const MinGenerators& g, ExactCaps caps) {
    return g.n <= caps.max_n || static_cast<int>(g.gens.size()) <= caps.max_gens;
}

double mu_p_exact(const MinGenerators& g, double p, ExactCaps caps, int threads) {
    check_nontrivial(g);
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("mu_p_exact: p outside [0,1]");
    if (g.n <= caps.max_n) return mu_p_exact_enum(g, p, threads);
    if (static_cast<int>(g.gens.size()) <= caps.max_gens)
        return mu_p_exact_inclexcl(g, p, threads);
    throw std::runtime_error("mu_p_exact: both exact caps exceeded (n and generator count)");
}

double mu_p_exact_enum(const MinGenerators& g, double p, int threads) {
    check_nontrivial(g);
    if (g.n > 24) throw std::runtime_error("mu_p_exact_enum: n too large for enumeration");
    int n = g.n;
    std::size_t size = std::size_t{1} << n;
    std::vector<std::uint8_t> up(size, 0);
    for (const auto& s : g.gens) {
        std::uint64_t m = s.words().empty() ? 0 : s.words()[0];
        up[m] = 1;
    }
    for (std::uint64_t t = 1; t < size; ++t) {
        if (up[t]) continue;
        std::uint64_t m = t;
        while (m) {
            std::uint64_t v = m & (~m + 1);  // lowest set bit
            if (up[t ^ v]) {
                up[t] = 1;
                break;
            }
            m &= m - 1;
        }
    }
    std::vector<double> weight(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        weight[static_cast<std::size_t>(k)] = std::pow(p, k) * std::pow(1.0 - p, n - k);

    int nt = threads > 0 ? threads : worker_count();
    constexpr std::uint64_t kChunk = 1u << 14;
    std::uint64_t nchunks = (size + kChunk - 1) / kChunk;
    std::vector<double> partial(nchunks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nt)
#endif
    for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(nchunks); ++ci) {
        std::uint64_t lo = static_cast<std::uint64_t>(ci) * kChunk;
        std::uint64_t hi = std::min<std::uint64_t>(lo + kChunk, size);
        double s = 0.0;
        for (std::uint64_t t = lo; t < hi; ++t)
            if (up[t]) s += weight[static_cast<std::size_t>(std::popcount(t))];
        partial[static_cast<std::size_t>(ci)] = s;
    }
    return neumaier_sum(partial);
}

double mu_p_exact_inclexcl(const MinGenerators& g, double p, int threads) {
    check_nontrivial(g);
    int k = static_cast<int>(g.gens.size());
    if (k > 24) throw std::runtime_error("mu_p_exact_inclexcl: too many generators");
    if (g.n > 128) throw std::runtime_error("mu_p_exact_inclexcl: ground set too large");
    std::size_t size = std::size_t{1} << k;
    // union sizes over generator subsets, bottom-up over masks
    std::vector<std::uint64_t> u0(size, 0), u1(size, 0);
    std::vector<std::uint64_t> g0(static_cast<std::size_t>(k), 0),
        g1(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i) {
        const auto& w = g.gens[static_cast<std::size_t>(i)].words();
        if (!w.empty()) g0[static_cast<std::size_t>(i)] = w[0];
        if (w.size() > 1) g1[static_cast<std::size_t>(i)] = w[1];
    }
    for (std::uint64_t m = 1; m < size; ++m) {
        int low = std::countr_zero(m);
        std::uint64_t rest = m & (m - 1);
        u0[m] = u0[rest] | g0[static_cast<std::size_t>(low)];
        u1[m] = u1[rest] | g1[static_cast<std::size_t>(low)];
    }
    int nt = threads > 0 ? threads : worker_count();
    constexpr std::uint64_t kChunk = 1u << 14;
    std::uint64_t nchunks = (size + kChunk - 1) / kChunk;
    std::vector<double> partial(nchunks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nt)
#endif
    for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(nchunks); ++ci) {
        std::uint64_t lo = static_cast<std::uint64_t>(ci) * kChunk;
        std::uint64_t hi = std::min<std::uint64_t>(lo + kChunk, size);
        double s = 0.0;
        for (std::uint64_t m = std::max<std::uint64_t>(lo, 1); m < hi; ++m) {
            int usize = std::popcount(u0[m]) + std::popcount(u1[m]);
            double term = std::pow(p, usize);
            s += (std::popcount(m) & 1) ? term : -term;
        }
        partial[static_cast<std::size_t>(ci)] = s;
    }
    return neumaier_sum(partial);
}

ThresholdEstimate mu_p_mc(const MinGenerators& g, double p, std::int64_t trials,
                          std::uint64_t seed, int threads) {
    check_nontrivial(g);
    if (trials < 1) throw std::invalid_argument("mu_p_mc: trials must be >= 1");
    int nt = threads > 0 ? threads : worker_count();
    std::int64_t hits = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nt) reduction(+ : hits)
#endif
    for (std::int64_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        VertexSet x;
        for (int v = 0; v < g.n; ++v)
            if (rng.next_double() < p) x.insert(v);
        if (hits_family(g.gens, x)) ++hits;
    }
    auto ci = wilson_interval(hits, trials);
    ThresholdEstimate est;
    est.p = static_cast<double>(hits) / static_cast<double>(trials);
    est.method = "monte-carlo";
    est.ci_low = ci.low;
    est.ci_high = ci.high;
    est.trials = trials;
    return est;
}

ThresholdEstimate prob_xm_hits(const Hypergraph& h, int m, std::int64_t trials,
                               std::uint64_t seed, int threads) {
    if (m < 0 || m > h.n) throw std::invalid_argument("prob_xm_hits: m outside [0,n]");
    ThresholdEstimate est;
    est.trials = 0;
    est.method = "exact";
    if (h.n <= 20) {
        // count m-subsets in the up-closure by enumeration
        std::size_t size = std::size_t{1} << h.n;
        std::vector<std::uint64_t> masks;
        masks.reserve(h.edges.size());
        for (const auto& e : h.edges)
            masks.push_back(e.words().empty() ? 0 : e.words()[0]);
        std::int64_t hit = 0, all = 0;
        for (std::uint64_t t = 0; t < size; ++t) {
            if (std::popcount(t) != m) continue;
            ++all;
            for (auto em : masks)
                if ((em & ~t) == 0) {
                    ++hit;
                    break;
                }
        }
        est.p = static_cast<double>(hit) / static_cast<double>(all);
        est.ci_low = est.ci_high = est.p;
        return est;
    }
    double log_count = log_binom(h.n, m);
    if (log_count <= std::log(1e6)) {
        // iterate combinations directly
        std::vector<int> idx(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) idx[static_cast<std::size_t>(i)] = i;
        std::int64_t hit = 0, all = 0;
        for (;;) {
            VertexSet t = VertexSet::from_vector(idx);
            ++all;
            if (up_closure_contains(h, t)) ++hit;
            int i = m - 1;
            while (i >= 0 && idx[static_cast<std::size_t>(i)] == h.n - m + i) --i;
            if (i < 0) break;
            ++idx[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < m; ++j)
                idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
        est.p = static_cast<double>(hit) / static_cast<double>(all);
        est.ci_low = est.ci_high = est.p;
        return est;
    }
    if (trials < 1) throw std::invalid_argument("prob_xm_hits: trials must be >= 1 for MC");
    int nt = threads > 0 ? threads : worker_count();
    std::int64_t hits = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nt) reduction(+ : hits)
#endif
    for (std::int64_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        VertexSet w = VertexSet::from_vector(rng.sample_subset(h.n, m));
        if (up_closure_contains(h, w)) ++hits;
    }
    auto ci = wilson_interval(hits, trials);
    est.p = static_cast<double>(hits) / static_cast<double>(trials);
    est.method = "monte-carlo";
    est.ci_low = ci.low;
    est.ci_high = ci.high;
    est.trials = trials;
    return est;
}

ThresholdEstimate p_c(const MinGenerators& g, double tol, std::int64_t trials,
                      std::uint64_t seed, ExactCaps caps, int threads) {
    check_nontrivial(g);
    if (!(tol > 0)) throw std::invalid_argument("p_c: tolerance must be positive");
    ThresholdEstimate est;
    if (mu_p_exact_applicable(g, caps)) {
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 60 && hi - lo > tol; ++it) {
            double mid = 0.5 * (lo + hi);
            if (mu_p_exact(g, mid, caps, threads) < 0.5)
                lo = mid;
            else
                hi = mid;
        }
        est.p = 0.5 * (lo + hi);
        est.method = "exact";
        est.ci_low = lo;
        est.ci_high = hi;
        est.trials = 0;
        return est;
    }
    // Monte Carlo path: bisection on noisy estimates, then a refinement pass
    double lo = 0.0, hi = 1.0;
    int steps = std::max(12, static_cast<int>(std::ceil(std::log2(1.0 / tol))));
    for (int it = 0; it < steps; ++it) {
        double mid = 0.5 * (lo + hi);
        auto probe = mu_p_mc(g, mid, trials, derive_seed(seed, 1000 + static_cast<std::uint64_t>(it)),
                             threads);
        if (probe.p < 0.5)
            lo = mid;
        else
            hi = mid;
    }
    double p = 0.5 * (lo + hi);
    auto final_probe = mu_p_mc(g, p, trials, derive_seed(seed, 999), threads);
    est.p = p;
    est.method = "monte-carlo";
    // CI on p_c itself is not available from one probe; report the bracket
    // widened by the final probe's distance from 1/2 in estimate units.
    est.ci_low = std::max(0.0, lo - (final_probe.ci_high - final_probe.ci_low));
    est.ci_high = std::min(1.0, hi + (final_probe.ci_high - final_probe.ci_low));
    est.trials = trials;
    return est;
}

}  // namespace spreadlab
