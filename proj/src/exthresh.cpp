#include "spreadlab/exthresh.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace spreadlab {

Rational rat_pow(const Rational& x, int e) {
    if (e < 0) throw std::invalid_argument("rat_pow: negative exponent");
    Rational r(1);
    Rational base = x;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

double ThresholdBracket::value() const {
    Rational mid = (lo + hi) / 2;
    return mid.get_d();
}

namespace {

void subsets_rec(const std::vector<int>& vs, std::size_t i, VertexSet& cur,
                 std::unordered_set<VertexSet, VertexSetHash>& out) {
    if (i == vs.size()) {
        out.insert(cur);
        return;
    }
    subsets_rec(vs, i + 1, cur, out);
    cur.insert(vs[i]);
    subsets_rec(vs, i + 1, cur, out);
    cur.erase(vs[i]);
}

void check_family(const MinGenerators& g) {
    if (g.gens.empty()) throw std::invalid_argument("empty generator list");
    if (g.has_empty_generator())
        throw std::invalid_argument("empty generator present (trivial family)");
}

}  // namespace

std::vector<VertexSet> generator_subsets(const MinGenerators& g, std::int64_t cap) {
    std::int64_t raw = 0;
    for (const auto& t : g.gens) {
        if (t.size() > 40) throw std::runtime_error("generator_subsets: generator too large");
        raw += std::int64_t{1} << t.size();
        if (raw > 64 * cap)
            throw std::runtime_error("generator_subsets: candidate cap exceeded");
    }
    std::unordered_set<VertexSet, VertexSetHash> set;
    for (const auto& t : g.gens) {
        auto vs = t.to_vector();
        VertexSet cur;
        subsets_rec(vs, 0, cur, set);
        if (static_cast<std::int64_t>(set.size()) > cap)
            throw std::runtime_error("generator_subsets: candidate cap exceeded");
    }
    std::vector<VertexSet> out(set.begin(), set.end());
    std::sort(out.begin(), out.end(), VertexSet::size_lex_less);
    return out;
}

namespace {

struct CoverSearch {
    const std::vector<VertexSet>* cands;
    std::vector<Rational> cost;
    std::vector<VertexSet> gens_ordered;
    // per generator: candidate indices below it, sorted by (cost asc, index)
    std::vector<std::vector<int>> below;
    std::vector<Rational> min_below;  // cheapest candidate cost per generator
    Rational best_cost;
    bool have_best = false;
    std::vector<int> best_choice;
    std::vector<int> choice;

    void run(std::vector<char>& covered, int ncovered, const Rational& acc) {
        int ngens = static_cast<int>(covered.size());
        if (ncovered == ngens) {
            if (!have_best || acc < best_cost) {
                best_cost = acc;
                best_choice = choice;
                have_best = true;
            }
            return;
        }
        // admissible bound: every uncovered generator needs something below
        // it, and one chosen set costs at least the max of the per-generator
        // cheapest options
        Rational lb(0);
        int target = -1;
        for (int t = 0; t < ngens; ++t) {
            if (covered[static_cast<std::size_t>(t)]) continue;
            if (min_below[static_cast<std::size_t>(t)] > lb) lb = min_below[static_cast<std::size_t>(t)];
            if (target < 0) target = t;  // generators pre-sorted by candidate count
        }
        if (have_best && acc + lb >= best_cost) return;
        for (int ci : below[static_cast<std::size_t>(target)]) {
            Rational next = acc + cost[static_cast<std::size_t>(ci)];
            if (have_best && next >= best_cost) continue;
            std::vector<int> newly;
            for (int t = 0; t < ngens; ++t) {
                if (!covered[static_cast<std::size_t>(t)] &&
                    (*cands)[static_cast<std::size_t>(ci)].subset_of(
                        gens_ordered[static_cast<std::size_t>(t)])) {
                    covered[static_cast<std::size_t>(t)] = 1;
                    newly.push_back(t);
                }
            }
            choice.push_back(ci);
            run(covered, ncovered + static_cast<int>(newly.size()), next);
            choice.pop_back();
            for (int t : newly) covered[static_cast<std::size_t>(t)] = 0;
        }
    }
};

}  // namespace

CoverSolution min_cover_cost(const MinGenerators& g, const Rational& p) {
    check_family(g);
    if (p < 0 || p > 1) throw std::invalid_argument("min_cover_cost: p outside [0,1]");
    auto cands = generator_subsets(g, kCoverCandidateCap);
    CoverSearch search;
    search.cands = &cands;
    search.cost.reserve(cands.size());
    for (const auto& s : cands) search.cost.push_back(rat_pow(p, s.size()));

    int ngens = static_cast<int>(g.gens.size());
    search.below.resize(static_cast<std::size_t>(ngens));
    search.min_below.assign(static_cast<std::size_t>(ngens), Rational(2));
    for (int t = 0; t < ngens; ++t) {
        for (int ci = 0; ci < static_cast<int>(cands.size()); ++ci)
            if (cands[static_cast<std::size_t>(ci)].subset_of(g.gens[static_cast<std::size_t>(t)])) {
                search.below[static_cast<std::size_t>(t)].push_back(ci);
                if (search.cost[static_cast<std::size_t>(ci)] < search.min_below[static_cast<std::size_t>(t)])
                    search.min_below[static_cast<std::size_t>(t)] = search.cost[static_cast<std::size_t>(ci)];
            }
        auto& lst = search.below[static_cast<std::size_t>(t)];
        std::sort(lst.begin(), lst.end(), [&](int a, int b) {
            const Rational& ca = search.cost[static_cast<std::size_t>(a)];
            const Rational& cb = search.cost[static_cast<std::size_t>(b)];
            if (ca != cb) return ca < cb;
            return a < b;
        });
    }
    // order generators so the ones with the fewest options branch first
    std::vector<int> order(static_cast<std::size_t>(ngens));
    for (int t = 0; t < ngens; ++t) order[static_cast<std::size_t>(t)] = t;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return search.below[static_cast<std::size_t>(a)].size() <
               search.below[static_cast<std::size_t>(b)].size();
    });
    std::vector<std::vector<int>> below2(static_cast<std::size_t>(ngens));
    std::vector<Rational> min2(static_cast<std::size_t>(ngens));
    search.gens_ordered.resize(static_cast<std::size_t>(ngens));
    for (int t = 0; t < ngens; ++t) {
        int src = order[static_cast<std::size_t>(t)];
        below2[static_cast<std::size_t>(t)] = search.below[static_cast<std::size_t>(src)];
        min2[static_cast<std::size_t>(t)] = search.min_below[static_cast<std::size_t>(src)];
        search.gens_ordered[static_cast<std::size_t>(t)] = g.gens[static_cast<std::size_t>(src)];
    }
    search.below = std::move(below2);
    search.min_below = std::move(min2);

    std::vector<char> covered(static_cast<std::size_t>(ngens), 0);
    search.run(covered, 0, Rational(0));
    if (!search.have_best) throw std::runtime_error("min_cover_cost: no cover found (bug)");
    CoverSolution sol;
    sol.cost = search.best_cost;
    sol.optimal = true;
    std::sort(search.best_choice.begin(), search.best_choice.end());
    for (int ci : search.best_choice) sol.cover.push_back(cands[static_cast<std::size_t>(ci)]);
    return sol;
}

CoverSolution min_cover_cost_d(const MinGenerators& g, double p) {
    return min_cover_cost(g, Rational(p));
}

WeakCoverResult weak_cover_lp(const MinGenerators& g, const Rational& p, LpMode mode) {
    check_family(g);
    if (p < 0 || p > 1) throw std::invalid_argument("weak_cover_lp: p outside [0,1]");
    auto cands = generator_subsets(g, kLpVariableCap);
    int nvars = static_cast<int>(cands.size());
    if (mode == LpMode::Auto)
        mode = nvars <= kLpExactDefaultCap ? LpMode::Exact : LpMode::Float;

    std::unordered_map<VertexSet, int, VertexSetHash> index;
    for (int j = 0; j < nvars; ++j) index[cands[static_cast<std::size_t>(j)]] = j;

    WeakCoverResult out;
    out.cover.p = p;
    if (mode == LpMode::Exact) {
        LpProblem<Rational> prob;
        prob.nvars = nvars;
        prob.objective.reserve(static_cast<std::size_t>(nvars));
        for (const auto& s : cands) prob.objective.push_back(rat_pow(p, s.size()));
        for (const auto& t : g.gens) {
            LpRow<Rational> row;
            row.sense = RowSense::GE;
            row.rhs = 1;
            auto vs = t.to_vector();
            VertexSet cur;
            std::unordered_set<VertexSet, VertexSetHash> subs;
            subsets_rec(vs, 0, cur, subs);
            for (const auto& s : subs) row.coeffs.emplace_back(index.at(s), Rational(1));
            std::sort(row.coeffs.begin(), row.coeffs.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            prob.rows.push_back(std::move(row));
        }
        auto sol = lp_solve(prob);
        if (sol.status != LpStatus::Optimal)
            throw std::runtime_error("weak_cover_lp: unexpected LP status");
        out.value = sol.objective;
        out.exact = true;
        out.duality_gap = 0.0;
        for (int j = 0; j < nvars; ++j)
            if (sgn(sol.x[static_cast<std::size_t>(j)]) != 0)
                out.cover.weights.emplace_back(cands[static_cast<std::size_t>(j)],
                                               sol.x[static_cast<std::size_t>(j)]);
        out.cover.value = out.value;
        return out;
    }

    LpProblem<double> prob;
    prob.nvars = nvars;
    double pd = p.get_d();
    for (const auto& s : cands) prob.objective.push_back(std::pow(pd, s.size()));
    for (const auto& t : g.gens) {
        LpRow<double> row;
        row.sense = RowSense::GE;
        row.rhs = 1.0;
        auto vs = t.to_vector();
        VertexSet cur;
        std::unordered_set<VertexSet, VertexSetHash> subs;
        subsets_rec(vs, 0, cur, subs);
        for (const auto& s : subs) row.coeffs.emplace_back(index.at(s), 1.0);
        std::sort(row.coeffs.begin(), row.coeffs.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        prob.rows.push_back(std::move(row));
    }
    auto sol = lp_solve(prob);
    if (sol.status != LpStatus::Optimal)
        throw std::runtime_error("weak_cover_lp: unexpected LP status");
    out.value = Rational(sol.objective);
    out.exact = false;
    out.duality_gap = sol.gap;
    for (int j = 0; j < nvars; ++j)
        if (sol.x[static_cast<std::size_t>(j)] > 1e-12)
            out.cover.weights.emplace_back(cands[static_cast<std::size_t>(j)],
                                           Rational(sol.x[static_cast<std::size_t>(j)]));
    out.cover.value = out.value;
    return out;
}

namespace {

template <class CostFn>
ThresholdBracket bisect_threshold(double tol, const Rational& budget, CostFn&& cost_leq_budget) {
    if (!(tol > 0)) throw std::invalid_argument("bisection tolerance must be positive");
    Rational lo(0), hi(1);
    if (!cost_leq_budget(lo))
        throw std::runtime_error("threshold bisection: infeasible already at p=0");
    if (cost_leq_budget(hi)) return {Rational(1), Rational(1)};
    Rational width(1);
    Rational rtol(tol);
    while (width > rtol) {
        Rational mid = (lo + hi) / 2;
        if (cost_leq_budget(mid))
            lo = mid;
        else
            hi = mid;
        width = hi - lo;
    }
    return {lo, hi};
}

}  // namespace

ThresholdBracket q_expectation_threshold(const MinGenerators& g, double tol,
                                         const Rational& budget) {
    check_family(g);
    return bisect_threshold(tol, budget, [&](const Rational& p) {
        return min_cover_cost(g, p).cost <= budget;
    });
}

ThresholdBracket qf_fractional(const MinGenerators& g, double tol, const Rational& budget,
                               LpMode mode) {
    check_family(g);
    return bisect_threshold(tol, budget, [&](const Rational& p) {
        return weak_cover_lp(g, p, mode).value <= budget;
    });
}

Rational dual_bound(const Rational& q, int set_size, DualVariant variant) {
    if (variant == DualVariant::PowOfTwoQ) return rat_pow(2 * q, set_size);
    return 2 * rat_pow(q, set_size);
}

ExtractResult extract_spread_measure(const MinGenerators& g, const Rational& q,
                                     DualVariant variant, LpMode mode) {
    check_family(g);
    if (q < 0) throw std::invalid_argument("extract_spread_measure: q must be >= 0");
    auto cands = generator_subsets(g, kLpVariableCap);
    int ngens = static_cast<int>(g.gens.size());
    if (mode == LpMode::Auto) mode = LpMode::Exact;  // few variables: one per generator
    if (mode == LpMode::Float)
        throw std::invalid_argument("extract_spread_measure: float mode not supported");

    LpProblem<Rational> prob;
    prob.nvars = ngens;
    prob.objective.assign(static_cast<std::size_t>(ngens), Rational(0));
    {
        LpRow<Rational> total;
        total.sense = RowSense::EQ;
        total.rhs = 1;
        for (int i = 0; i < ngens; ++i) total.coeffs.emplace_back(i, Rational(1));
        prob.rows.push_back(std::move(total));
    }
    std::vector<VertexSet> constraint_sets;
    for (const auto& s : cands) {
        if (s.empty()) continue;  // nu(<empty>) = 1 = bound, always tight
        LpRow<Rational> row;
        row.sense = RowSense::LE;
        row.rhs = dual_bound(q, s.size(), variant);
        for (int i = 0; i < ngens; ++i)
            if (s.subset_of(g.gens[static_cast<std::size_t>(i)]))
                row.coeffs.emplace_back(i, Rational(1));
        prob.rows.push_back(std::move(row));
        constraint_sets.push_back(s);
    }
    auto sol = lp_solve(prob);
    ExtractResult out;
    if (sol.status == LpStatus::Infeasible) {
        out.feasible = false;
        out.farkas = sol.farkas;
        return out;
    }
    if (sol.status != LpStatus::Optimal)
        throw std::runtime_error("extract_spread_measure: unexpected LP status");
    out.feasible = true;
    out.measure.q = q.get_d();
    for (int i = 0; i < ngens; ++i) {
        if (sgn(sol.x[static_cast<std::size_t>(i)]) != 0) {
            out.measure.support.push_back(g.gens[static_cast<std::size_t>(i)]);
            out.measure.mass.push_back(sol.x[static_cast<std::size_t>(i)]);
        }
    }
    // post-hoc exhaustive verification of every bound
    out.verified = true;
    Rational total(0);
    for (const auto& m : out.measure.mass) total += m;
    if (total != 1) out.verified = false;
    for (const auto& s : constraint_sets) {
        Rational nu(0);
        for (std::size_t i = 0; i < out.measure.support.size(); ++i)
            if (s.subset_of(out.measure.support[i])) nu += out.measure.mass[i];
        if (nu > dual_bound(q, s.size(), variant)) {
            out.verified = false;
            out.violation = s;
            break;
        }
    }
    return out;
}

}  // namespace spreadlab
