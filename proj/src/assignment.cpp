#include "spreadlab/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spreadlab/parallel.hpp"
#include "spreadlab/rng.hpp"
#include "spreadlab/spread.hpp"

namespace spreadlab {

AssignmentInstance AssignmentInstance::random(int d, int n, WeightDist dist,
                                              std::uint64_t seed) {
    if (d < 2) throw std::invalid_argument("AssignmentInstance: d must be >= 2");
    if (n < 1) throw std::invalid_argument("AssignmentInstance: n must be >= 1");
    AssignmentInstance inst;
    inst.d = d;
    inst.n = n;
    inst.dist = dist;
    std::size_t count = 1;
    for (int i = 0; i < d; ++i) count *= static_cast<std::size_t>(n);
    inst.weights.resize(count);
    Rng rng(seed);
    for (auto& w : inst.weights)
        w = dist == WeightDist::Exp1 ? rng.next_exp1() : rng.next_double();
    return inst;
}

namespace {

// O(n^3) shortest-augmenting-path Hungarian with potentials; returns the row
// assignment and checks the zero-duality-gap certificate.
AxialResult hungarian(const AssignmentInstance& inst) {
    int n = inst.n;
    std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0),
        v(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<int> p(static_cast<std::size_t>(n) + 1, 0),
        way(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<std::size_t>(n) + 1,
                                 std::numeric_limits<double>::infinity());
        std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
        do {
            used[static_cast<std::size_t>(j0)] = 1;
            int i0 = p[static_cast<std::size_t>(j0)], j1 = 0;
            double delta = std::numeric_limits<double>::infinity();
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                double cur = inst.at2(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] -
                             v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (p[static_cast<std::size_t>(j0)] != 0);
        do {
            int j1 = way[static_cast<std::size_t>(j0)];
            p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0);
    }
    AxialResult res;
    res.method = "hungarian";
    std::vector<int> rowsol(static_cast<std::size_t>(n), -1);
    for (int j = 1; j <= n; ++j)
        if (p[static_cast<std::size_t>(j)])
            rowsol[static_cast<std::size_t>(p[static_cast<std::size_t>(j)] - 1)] = j - 1;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        res.cells.push_back({i, rowsol[static_cast<std::size_t>(i)], -1});
        total += inst.at2(i, rowsol[static_cast<std::size_t>(i)]);
    }
    res.value = total;
    // duality certificate: u_i + v_j <= w_ij and the potentials sum to value
    double pot = 0.0;
    for (int i = 1; i <= n; ++i) pot += u[static_cast<std::size_t>(i)];
    for (int j = 1; j <= n; ++j) pot += v[static_cast<std::size_t>(j)];
    double scale = std::max(1.0, std::abs(total));
    if (std::abs(pot - total) > 1e-7 * scale)
        throw std::runtime_error("hungarian: duality gap certificate failed");
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (u[static_cast<std::size_t>(i)] + v[static_cast<std::size_t>(j)] >
                inst.at2(i - 1, j - 1) + 1e-7 * scale)
                throw std::runtime_error("hungarian: dual feasibility certificate failed");
    return res;
}

// DP over pairs of masks with equal popcount; row index = popcount.
// suffix[m2][m3] = min cost of assigning rows popcount..n-1 with the columns
// in m2 and layers in m3 already used.
AxialResult dp3(const AssignmentInstance& inst) {
    int n = inst.n;
    std::size_t full = std::size_t{1} << n;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<std::uint32_t>> by_pop(static_cast<std::size_t>(n) + 1);
    for (std::uint32_t m = 0; m < full; ++m)
        by_pop[static_cast<std::size_t>(std::popcount(m))].push_back(m);
    AxialResult res;
    res.method = "dp";
    std::vector<double> suffix(full * full, inf);
    suffix[(full - 1) * full + (full - 1)] = 0.0;
    for (int i = n - 1; i >= 0; --i) {
        for (std::uint32_t m2 : by_pop[static_cast<std::size_t>(i)]) {
            for (std::uint32_t m3 : by_pop[static_cast<std::size_t>(i)]) {
                double best = inf;
                for (int j = 0; j < n; ++j) {
                    if ((m2 >> j) & 1) continue;
                    for (int k = 0; k < n; ++k) {
                        if ((m3 >> k) & 1) continue;
                        double cand =
                            inst.at3(i, j, k) +
                            suffix[(static_cast<std::size_t>(m2) | (1u << j)) * full +
                                   (m3 | (1u << k))];
                        if (cand < best) best = cand;
                    }
                }
                suffix[static_cast<std::size_t>(m2) * full + m3] = best;
            }
        }
    }
    res.value = suffix[0];
    std::uint32_t m2 = 0, m3 = 0;
    for (int i = 0; i < n; ++i) {
        bool found = false;
        for (int j = 0; j < n && !found; ++j) {
            if ((m2 >> j) & 1) continue;
            for (int k = 0; k < n && !found; ++k) {
                if ((m3 >> k) & 1) continue;
                double cand = inst.at3(i, j, k) +
                              suffix[(static_cast<std::size_t>(m2) | (1u << j)) * full +
                                     (m3 | (1u << k))];
                if (cand == suffix[static_cast<std::size_t>(m2) * full + m3]) {
                    res.cells.push_back({i, j, k});
                    m2 |= 1u << j;
                    m3 |= 1u << k;
                    found = true;
                }
            }
        }
        if (!found) throw std::runtime_error("dp3: reconstruction failed");
    }
    return res;
}

}  // namespace

AxialResult solve_axial(const AssignmentInstance& inst) {
    if (inst.d == 2) {
        if (inst.n > 2000) throw std::runtime_error("solve_axial: d=2 cap is n <= 2000");
        return hungarian(inst);
    }
    if (inst.d == 3) {
        if (inst.n > 10) throw std::runtime_error("solve_axial: d=3 cap is n <= 10");
        return dp3(inst);
    }
    throw std::runtime_error("solve_axial: only d=2 and d=3 have exact solvers");
}

AxialResult solve_axial_enum(const AssignmentInstance& inst) {
    int n = inst.n;
    if (inst.d == 2) {
        if (n > 8) throw std::runtime_error("solve_axial_enum: d=2 cap is n <= 8");
        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
        AxialResult best;
        best.method = "enumeration";
        best.value = std::numeric_limits<double>::infinity();
        do {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += inst.at2(i, perm[static_cast<std::size_t>(i)]);
            if (s < best.value) {
                best.value = s;
                best.cells.clear();
                for (int i = 0; i < n; ++i)
                    best.cells.push_back({i, perm[static_cast<std::size_t>(i)], -1});
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }
    if (inst.d == 3) {
        if (n > 5) throw std::runtime_error("solve_axial_enum: d=3 cap is n <= 5");
        std::vector<int> p2(static_cast<std::size_t>(n)), p3(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) p2[static_cast<std::size_t>(i)] = i;
        AxialResult best;
        best.method = "enumeration";
        best.value = std::numeric_limits<double>::infinity();
        do {
            for (int i = 0; i < n; ++i) p3[static_cast<std::size_t>(i)] = i;
            do {
                double s = 0.0;
                for (int i = 0; i < n; ++i)
                    s += inst.at3(i, p2[static_cast<std::size_t>(i)],
                                  p3[static_cast<std::size_t>(i)]);
                if (s < best.value) {
                    best.value = s;
                    best.cells.clear();
                    for (int i = 0; i < n; ++i)
                        best.cells.push_back({i, p2[static_cast<std::size_t>(i)],
                                              p3[static_cast<std::size_t>(i)]});
                }
            } while (std::next_permutation(p3.begin(), p3.end()));
        } while (std::next_permutation(p2.begin(), p2.end()));
        return best;
    }
    throw std::runtime_error("solve_axial_enum: only d=2 and d=3");
}

ExplicitMinResult xi_min_explicit(const Hypergraph& h, const std::vector<double>& weights) {
    if (h.edges.empty()) throw std::invalid_argument("xi_min_explicit: empty hypergraph");
    if (static_cast<int>(weights.size()) != h.n)
        throw std::invalid_argument("xi_min_explicit: weight vector size mismatch");
    ExplicitMinResult best;
    best.value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < h.edges.size(); ++i) {
        double s = 0.0;
        h.edges[i].for_each([&](int v) { s += weights[static_cast<std::size_t>(v)]; });
        if (s < best.value) {
            best.value = s;
            best.argmin = h.edges[i];
            best.edge_index = i;
        }
    }
    return best;
}

namespace {

template <class Solve>
MeanCi run_trials(std::int64_t trials, std::uint64_t seed, int threads, Solve&& solve) {
    if (trials < 1) throw std::invalid_argument("estimate_z: trials must be >= 1");
    std::vector<double> xs(static_cast<std::size_t>(trials), 0.0);
    int nt = threads > 0 ? threads : worker_count();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) num_threads(nt)
#endif
    for (std::int64_t t = 0; t < trials; ++t)
        xs[static_cast<std::size_t>(t)] = solve(derive_seed(seed, static_cast<std::uint64_t>(t)));
    return mean_ci(xs);
}

}  // namespace

MeanCi estimate_z_axial(int d, int n, WeightDist dist, std::int64_t trials, std::uint64_t seed,
                        int threads) {
    return run_trials(trials, seed, threads, [&](std::uint64_t s) {
        auto inst = AssignmentInstance::random(d, n, dist, s);
        return solve_axial(inst).value;
    });
}

MeanCi estimate_z_explicit(const Hypergraph& h, WeightDist dist, std::int64_t trials,
                           std::uint64_t seed, int threads) {
    return run_trials(trials, seed, threads, [&](std::uint64_t s) {
        Rng rng(s);
        std::vector<double> w(static_cast<std::size_t>(h.n));
        for (auto& x : w) x = dist == WeightDist::Exp1 ? rng.next_exp1() : rng.next_double();
        return xi_min_explicit(h, w).value;
    });
}

ScalingFit scaling_fit(int d, const std::vector<int>& n_list, std::int64_t trials,
                       std::uint64_t seed, WeightDist dist, int threads) {
    if (n_list.size() < 2) throw std::invalid_argument("scaling_fit: need at least 2 sizes");
    ScalingFit fit;
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        auto mc = estimate_z_axial(d, n_list[i], dist, trials, derive_seed(seed, i), threads);
        fit.means.push_back(mc.mean);
        xs.push_back(std::log(static_cast<double>(n_list[i])));
        ys.push_back(std::log(mc.mean));
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double resid = ys[i] - (fit.intercept + fit.slope * xs[i]);
        sse += resid * resid;
    }
    if (xs.size() > 2)
        fit.slope_stderr = std::sqrt(sse / (static_cast<double>(xs.size()) - 2.0) / sxx);
    return fit;
}

TfsReport tfs_bound_report(const Hypergraph& h, std::int64_t trials, std::uint64_t seed,
                           WeightDist dist, int threads) {
    TfsReport rep;
    rep.kappa = spread_kappa(h).kappa;
    rep.ell = h.max_edge_size();
    std::vector<double> xs(static_cast<std::size_t>(trials), 0.0);
    int nt = threads > 0 ? threads : worker_count();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) num_threads(nt)
#endif
    for (std::int64_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        std::vector<double> w(static_cast<std::size_t>(h.n));
        for (auto& x : w) x = dist == WeightDist::Exp1 ? rng.next_exp1() : rng.next_double();
        xs[static_cast<std::size_t>(t)] = xi_min_explicit(h, w).value;
    }
    rep.raw = mean_ci(xs);
    double mx = 0.0;
    for (double x : xs) mx = std::max(mx, x);
    rep.mean_normalized = rep.raw.mean * rep.kappa / rep.ell;
    rep.max_normalized = mx * rep.kappa / rep.ell;
    return rep;
}

StaircaseDiag staircase_diag(int ell, double kappa, double c, double gamma) {
    if (ell < 1 || !(kappa > 0.0) || !(c > 0.0) || !(gamma > 0.0) || !(gamma < 1.0))
        throw std::invalid_argument("staircase_diag: parameters must be positive (gamma in (0,1))");
    StaircaseDiag d;
    d.p = c / kappa;
    double logl = std::log(static_cast<double>(ell));
    double target = ell > 1 ? logl / ell : 0.0;
    d.m = 1;
    if (target > 0.0 && target < 1.0)
        d.m = std::max(1, static_cast<int>(std::ceil(std::log(target) / std::log(1.0 - gamma))));
    d.q = std::log(c) * logl * logl / kappa;
    d.threshold = (3.0 * c / gamma) * static_cast<double>(ell) / kappa;
    for (int i = 1; i <= d.m; ++i) d.epsilons.push_back(2.0 * i * d.p);
    d.epsilons.push_back(2.0 * (d.m * d.p + d.q));
    return d;
}

}  // namespace spreadlab
