#include "spreadlab/fragmentation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spreadlab/parallel.hpp"
#include "spreadlab/rng.hpp"
#include "spreadlab/spread.hpp"

namespace spreadlab {

double FragConfig::b() const { return std::sqrt(C); }

VertexSet chi(const Hypergraph& h, const VertexSet& s, const VertexSet& w) {
    VertexSet z = s | w;
    for (const auto& e : h.edges)
        if (e.subset_of(z)) return e - w;
    throw std::invalid_argument("chi: S is not an edge of the hypergraph");
}

namespace {

// chi for every edge at once: first edge j with E_j \ W below S
struct RoundOutcome {
    std::vector<VertexSet> chi;  // per good edge
    std::vector<int> parent;     // psi index per good edge
    std::vector<int> good_idx;
    std::int64_t bad = 0;
};

RoundOutcome classify_round(const std::vector<VertexSet>& edges, const VertexSet& w,
                            double r_prime) {
    RoundOutcome out;
    std::vector<VertexSet> diff(edges.size());
    std::size_t first_empty = edges.size();
    for (std::size_t j = 0; j < edges.size(); ++j) {
        diff[j] = edges[j] - w;
        if (first_empty == edges.size() && diff[j].empty()) first_empty = j;
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        std::size_t stop = std::min(first_empty, i);
        std::size_t pick = i;
        for (std::size_t j = 0; j <= stop; ++j) {
            if (diff[j].subset_of(edges[i])) {  // E_j subset of S union W
                pick = j;
                break;
            }
        }
        const VertexSet& value = diff[pick];
        if (static_cast<double>(value.size()) > r_prime) {
            ++out.bad;
        } else {
            out.good_idx.push_back(static_cast<int>(i));
            out.chi.push_back(value);
            out.parent.push_back(static_cast<int>(pick));
        }
    }
    return out;
}

}  // namespace

ClassifyResult classify_pairs(const Hypergraph& h, const VertexSet& w, double r_prime) {
    auto outcome = classify_round(h.edges, w, r_prime);
    ClassifyResult r;
    r.good_indices = std::move(outcome.good_idx);
    r.chi_values = std::move(outcome.chi);
    r.psi_indices = std::move(outcome.parent);
    r.bad = outcome.bad;
    return r;
}

PathologyResult is_pathological(const Hypergraph& h, const VertexSet& s, const VertexSet& z,
                                double b, double p, double kappa, double r_prime) {
    if (!s.subset_of(z)) throw std::invalid_argument("is_pathological: Z must contain S");
    int slice = s.size();
    int r = h.max_edge_size();
    auto total = static_cast<double>(h.edges.size());
    auto verts = s.to_vector();
    if (verts.size() > 30) throw std::runtime_error("is_pathological: edge too large");
    PathologyResult out;
    // enumerate T subset of S, smallest masks first for a deterministic witness
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << verts.size()); ++mask) {
        int t = std::popcount(mask);
        if (static_cast<double>(t) <= r_prime) continue;
        VertexSet tset;
        for (std::size_t i = 0; i < verts.size(); ++i)
            if ((mask >> i) & 1) tset.insert(verts[i]);
        std::int64_t count = 0;
        for (const auto& e : h.edges)
            if (e.size() == slice && tset.subset_of(e) && e.subset_of(z)) ++count;
        double bound = std::pow(b, r) * total * std::pow(kappa, -t) * std::pow(p, slice - t);
        if (static_cast<double>(count) > bound) {
            out.pathological = true;
            out.witness_t = tset;
            return out;
        }
    }
    return out;
}

namespace {

struct BadRateSetup {
    double kappa;
    double p;
    int w_size;
    double r;
    double r_prime;
    bool precondition_ok;
};

BadRateSetup bad_rate_setup(const Hypergraph& h, double c, double gamma) {
    if (h.edges.empty()) throw std::invalid_argument("bad_pair_rate: empty hypergraph");
    auto cert = spread_kappa(h);
    BadRateSetup s;
    s.kappa = cert.kappa;
    s.precondition_ok = cert.kappa >= c;
    s.p = c / cert.kappa;
    s.w_size = std::min(h.n, static_cast<int>(std::floor(h.n * s.p)));
    s.r = h.max_edge_size();
    s.r_prime = (1.0 - gamma) * s.r;
    return s;
}

double bad_fraction(const std::vector<VertexSet>& edges, const VertexSet& w, double r_prime) {
    auto outcome = classify_round(edges, w, r_prime);
    return static_cast<double>(outcome.bad) / static_cast<double>(edges.size());
}

}  // namespace

BadRateReport bad_pair_rate_mc(const Hypergraph& h, double c, std::int64_t trials,
                               std::uint64_t seed, double gamma, int threads) {
    if (trials < 1) throw std::invalid_argument("bad_pair_rate_mc: trials must be >= 1");
    auto setup = bad_rate_setup(h, c, gamma);
    std::vector<double> fractions(static_cast<std::size_t>(trials), 0.0);
    int nt = threads > 0 ? threads : worker_count();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) num_threads(nt)
#endif
    for (std::int64_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        VertexSet w = VertexSet::from_vector(rng.sample_subset(h.n, setup.w_size));
        fractions[static_cast<std::size_t>(t)] = bad_fraction(h.edges, w, setup.r_prime);
    }
    auto ci = mean_ci(fractions);
    BadRateReport rep;
    rep.empirical = ci.mean;
    rep.ci = ci.ci;
    rep.bound = std::pow(c, -setup.r / 3.0);
    rep.kappa = setup.kappa;
    rep.p = setup.p;
    rep.w_size = setup.w_size;
    rep.trials = trials;
    rep.precondition_ok = setup.precondition_ok;
    rep.exact = false;
    return rep;
}

BadRateReport bad_pair_rate_exact(const Hypergraph& h, double c, double gamma) {
    auto setup = bad_rate_setup(h, c, gamma);
    double log_count = log_binom(h.n, setup.w_size);
    if (log_count > std::log(2e6))
        throw std::runtime_error("bad_pair_rate_exact: C(n, w) too large for enumeration");
    std::vector<int> idx(static_cast<std::size_t>(setup.w_size));
    for (int i = 0; i < setup.w_size; ++i) idx[static_cast<std::size_t>(i)] = i;
    double sum = 0.0;
    std::int64_t count = 0;
    bool done = setup.w_size == 0;
    if (done) {
        sum = bad_fraction(h.edges, VertexSet{}, setup.r_prime);
        count = 1;
    }
    while (!done) {
        VertexSet w = VertexSet::from_vector(idx);
        sum += bad_fraction(h.edges, w, setup.r_prime);
        ++count;
        int i = setup.w_size - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == h.n - setup.w_size + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < setup.w_size; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    BadRateReport rep;
    rep.empirical = sum / static_cast<double>(count);
    rep.ci = {rep.empirical, rep.empirical};
    rep.bound = std::pow(c, -setup.r / 3.0);
    rep.kappa = setup.kappa;
    rep.p = setup.p;
    rep.w_size = setup.w_size;
    rep.trials = count;
    rep.precondition_ok = setup.precondition_ok;
    rep.exact = true;
    return rep;
}

namespace {

int rounds_from_ell(int ell, double gamma, bool weight_ordered) {
    if (ell <= 1) return 1;
    double target = weight_ordered ? std::log(static_cast<double>(ell)) / ell
                                   : std::sqrt(std::log(static_cast<double>(ell))) / ell;
    if (target <= 0.0 || target >= 1.0) return 1;
    int m = static_cast<int>(std::ceil(std::log(target) / std::log(1.0 - gamma)));
    return std::max(m, 1);
}

}  // namespace

FragmentationTrace run_fragmentation(const Hypergraph& h, const FragConfig& cfg) {
    if (h.edges.empty()) throw std::invalid_argument("run_fragmentation: empty hypergraph");
    if (!(cfg.gamma > 0.0 && cfg.gamma < 1.0))
        throw std::invalid_argument("run_fragmentation: gamma outside (0,1)");
    if (!(cfg.C > 0.0)) throw std::invalid_argument("run_fragmentation: C must be positive");
    const int n = h.n;
    const int ell = h.max_edge_size();

    FragmentationTrace trace;
    trace.kappa = cfg.kappa > 0.0 ? cfg.kappa : spread_kappa(h).kappa;
    trace.p = cfg.C / trace.kappa;
    trace.m = cfg.m > 0 ? cfg.m : rounds_from_ell(ell, cfg.gamma, cfg.weight_ordered);
    trace.delta = 1.0 / (2.0 * trace.m);
    double logl = std::log(std::max(2.0, static_cast<double>(ell)));
    if (cfg.q_final >= 0.0)
        trace.q_final = cfg.q_final;
    else if (cfg.weight_ordered)
        trace.q_final = std::log(cfg.C) * logl * logl / trace.kappa;
    else
        trace.q_final = std::log(static_cast<double>(std::max(ell, 1))) / trace.kappa;

    if (!(trace.p > 0.0 && trace.p < 1.0)) {
        trace.precondition_ok = false;
        trace.warnings.push_back("p = C/kappa outside (0,1); W sizes clamped");
    }
    if (trace.kappa < 2.0 * cfg.C0 * logl / cfg.gamma) {
        trace.precondition_ok = false;
        trace.warnings.push_back("kappa below 2 gamma^-1 C0 log(ell)");
    }
    if (ell < cfg.C0 * cfg.C0 || trace.kappa < cfg.C0 * cfg.C0) {
        trace.precondition_ok = false;
        trace.warnings.push_back("r or kappa below C0^2");
    }

    // weight-ordered block boundaries
    std::vector<int> order_by_weight;
    std::vector<std::int64_t> block_bound(static_cast<std::size_t>(trace.m) + 2, 0);
    if (cfg.weight_ordered) {
        if (static_cast<int>(cfg.weights.size()) != n)
            throw std::invalid_argument("run_fragmentation: weight vector must have size n");
        order_by_weight.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) order_by_weight[static_cast<std::size_t>(i)] = i;
        std::sort(order_by_weight.begin(), order_by_weight.end(), [&](int a, int b) {
            double wa = cfg.weights[static_cast<std::size_t>(a)];
            double wb = cfg.weights[static_cast<std::size_t>(b)];
            if (wa != wb) return wa < wb;
            return a < b;
        });
        for (int i = 1; i <= trace.m; ++i)
            block_bound[static_cast<std::size_t>(i)] = std::min<std::int64_t>(
                n, std::llround(static_cast<double>(i) * trace.p * n));
        block_bound[static_cast<std::size_t>(trace.m) + 1] = std::min<std::int64_t>(
            n, std::llround((trace.m * trace.p + trace.q_final) * n));
        for (int i = 1; i <= trace.m + 1; ++i)
            block_bound[static_cast<std::size_t>(i)] = std::max(
                block_bound[static_cast<std::size_t>(i)], block_bound[static_cast<std::size_t>(i) - 1]);
        trace.epsilons.resize(static_cast<std::size_t>(trace.m) + 1);
        for (int i = 1; i <= trace.m; ++i)
            trace.epsilons[static_cast<std::size_t>(i - 1)] = 2.0 * i * trace.p;
        trace.epsilons[static_cast<std::size_t>(trace.m)] =
            2.0 * (trace.m * trace.p + trace.q_final);
    }

    Rng rng(cfg.seed);
    VertexSet x = VertexSet::full(n);

    struct Entry {
        VertexSet set;
        int parent;
    };
    std::vector<std::vector<Entry>> levels;
    levels.reserve(static_cast<std::size_t>(trace.m) + 1);
    {
        std::vector<Entry> base;
        base.reserve(h.edges.size());
        for (const auto& e : h.edges) base.push_back({e, -1});
        levels.push_back(std::move(base));
    }

    auto draw_w = [&](int round, const VertexSet& avail, int target) {
        if (cfg.weight_ordered) {
            VertexSet w;
            for (std::int64_t pos = block_bound[static_cast<std::size_t>(round - 1)];
                 pos < block_bound[static_cast<std::size_t>(round)]; ++pos)
                w.insert(order_by_weight[static_cast<std::size_t>(pos)]);
            return w;
        }
        auto avail_vec = avail.to_vector();
        int size = std::min<int>(target, static_cast<int>(avail_vec.size()));
        VertexSet w;
        if (size > 0)
            for (int pos : rng.sample_subset(static_cast<int>(avail_vec.size()), size))
                w.insert(avail_vec[static_cast<std::size_t>(pos)]);
        return w;
    };

    int np_target = static_cast<int>(std::floor(n * std::min(trace.p, 1.0)));
    for (int i = 1; i <= trace.m; ++i) {
        const auto& prev = levels.back();
        RoundRecord rec;
        rec.round = i;
        rec.h_prev = static_cast<std::int64_t>(prev.size());
        rec.r_i = std::max(std::pow(1.0 - cfg.gamma, i) * ell, 1.0);

        VertexSet w = draw_w(i, x, np_target);
        rec.w_size = w.size();
        if (rec.w_size == 0 && !cfg.weight_ordered) {
            rec.skipped = true;
            trace.warnings.push_back("round " + std::to_string(i) + ": floor(np)=0, skipped");
            std::vector<Entry> copy;
            copy.reserve(prev.size());
            for (std::size_t j = 0; j < prev.size(); ++j)
                copy.push_back({prev[j].set, static_cast<int>(j)});
            rec.h_cur = rec.h_prev;
            rec.good = rec.h_prev;
            rec.success = true;
            trace.w_rounds.push_back(w);
            trace.rounds.push_back(rec);
            levels.push_back(std::move(copy));
            continue;
        }

        std::vector<VertexSet> sets;
        sets.reserve(prev.size());
        for (const auto& en : prev) sets.push_back(en.set);
        auto outcome = classify_round(sets, w, rec.r_i);
        std::vector<Entry> next;
        next.reserve(outcome.chi.size());
        for (std::size_t k = 0; k < outcome.chi.size(); ++k)
            next.push_back({outcome.chi[k], outcome.parent[k]});
        rec.good = static_cast<std::int64_t>(next.size());
        rec.bad = outcome.bad;
        rec.h_cur = rec.good;
        rec.success =
            static_cast<double>(rec.h_cur) >= (1.0 - trace.delta) * static_cast<double>(rec.h_prev);
        x = x - w;
        trace.w_rounds.push_back(w);
        trace.rounds.push_back(rec);
        levels.push_back(std::move(next));
    }

    // final phase
    int nq_target = static_cast<int>(std::floor(n * std::min(trace.q_final, 1.0)));
    VertexSet w_final = draw_w(trace.m + 1, x, nq_target);
    trace.w_rounds.push_back(w_final);

    const auto& last = levels.back();
    int hit = -1;
    for (std::size_t j = 0; j < last.size(); ++j)
        if (last[j].set.subset_of(w_final)) {
            hit = static_cast<int>(j);
            break;
        }
    trace.janson_success = hit >= 0;
    trace.overall_success = trace.janson_success;

    trace.w_union = VertexSet{};
    for (const auto& w : trace.w_rounds) trace.w_union = trace.w_union | w;

    if (trace.overall_success) {
        // walk the psi back-pointers to the root edge and check
        // S_i = S_0 \ (W_1 .. W_i) at every level
        std::vector<int> chain(static_cast<std::size_t>(trace.m) + 1, -1);
        chain[static_cast<std::size_t>(trace.m)] = hit;
        for (int lvl = trace.m; lvl >= 1; --lvl)
            chain[static_cast<std::size_t>(lvl - 1)] =
                levels[static_cast<std::size_t>(lvl)][static_cast<std::size_t>(
                                                          chain[static_cast<std::size_t>(lvl)])]
                    .parent;
        trace.root_edge = levels[0][static_cast<std::size_t>(chain[0])].set;
        trace.soundness_ok = true;
        VertexSet removed;
        trace.ancestor_sets.clear();
        trace.ancestor_sets.push_back(trace.root_edge);
        for (int lvl = 1; lvl <= trace.m; ++lvl) {
            removed = removed | trace.w_rounds[static_cast<std::size_t>(lvl - 1)];
            const VertexSet& recorded =
                levels[static_cast<std::size_t>(lvl)][static_cast<std::size_t>(
                                                          chain[static_cast<std::size_t>(lvl)])]
                    .set;
            trace.ancestor_sets.push_back(recorded);
            if (recorded != trace.root_edge - removed) trace.soundness_ok = false;
        }
        if (!trace.root_edge.subset_of(trace.w_union)) trace.soundness_ok = false;
        if (!up_closure_contains(h, trace.w_union)) trace.soundness_ok = false;
    }

    if (cfg.weight_ordered) {
        trace.weight_bound_ok = true;
        for (std::size_t i = 0; i < trace.w_rounds.size(); ++i) {
            double eps = trace.epsilons[i];
            trace.w_rounds[i].for_each([&](int v) {
                if (cfg.weights[static_cast<std::size_t>(v)] > eps) trace.weight_bound_ok = false;
            });
        }
    }
    return trace;
}

}  // namespace spreadlab
