#include "spreadlab/spread.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "spreadlab/parallel.hpp"

namespace spreadlab {

namespace {

mpz_class mpz_pow(const mpz_class& base, unsigned exp) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

// (total/c1)^(1/s1) < (total/c2)^(1/s2), exact on log-scale near-ties
bool ratio_root_less(std::int64_t total, std::int64_t c1, int s1, std::int64_t c2, int s2) {
    double l1 = (std::log(static_cast<double>(total)) - std::log(static_cast<double>(c1))) / s1;
    double l2 = (std::log(static_cast<double>(total)) - std::log(static_cast<double>(c2))) / s2;
    if (std::abs(l1 - l2) > 1e-12) return l1 < l2;
    mpz_class t(static_cast<long>(total));
    mpz_class lhs = mpz_pow(t, static_cast<unsigned>(s2)) *
                    mpz_pow(mpz_class(static_cast<long>(c2)), static_cast<unsigned>(s1));
    mpz_class rhs = mpz_pow(t, static_cast<unsigned>(s1)) *
                    mpz_pow(mpz_class(static_cast<long>(c1)), static_cast<unsigned>(s2));
    return lhs < rhs;
}

struct Best {
    bool set = false;
    VertexSet witness;
    std::int64_t count = 0;
    int size = 0;
};

void consider(Best& best, std::int64_t total, const VertexSet& s, std::int64_t count) {
    int sz = s.size();
    if (!best.set) {
        best = {true, s, count, sz};
        return;
    }
    if (ratio_root_less(total, count, sz, best.count, best.size)) {
        best = {true, s, count, sz};
        return;
    }
    if (!ratio_root_less(total, best.count, best.size, count, sz)) {
        // exact tie: smallest size, then lexicographic
        if (sz < best.size || (sz == best.size && VertexSet::lex_less(s, best.witness)))
            best = {true, s, count, sz};
    }
}

VertexSet mask_to_set(std::uint64_t m) {
    VertexSet s;
    while (m) {
        s.insert(std::countr_zero(m));
        m &= m - 1;
    }
    return s;
}

// candidate counts for n <= 64 via the submask trick
std::unordered_map<std::uint64_t, std::int64_t> count_word(const Hypergraph& h, int threads) {
    std::vector<std::uint64_t> masks(h.edges.size());
    for (std::size_t i = 0; i < h.edges.size(); ++i)
        masks[i] = h.edges[i].words().empty() ? 0 : h.edges[i].words()[0];

    int nt = threads > 0 ? threads : worker_count();
    std::vector<std::unordered_map<std::uint64_t, std::int64_t>> local(
        static_cast<std::size_t>(nt));
#ifdef _OPENMP
#pragma omp parallel num_threads(nt)
#endif
    {
#ifdef _OPENMP
        int tid = omp_get_thread_num();
#else
        int tid = 0;
#endif
        auto& map = local[static_cast<std::size_t>(tid)];
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(masks.size()); ++i) {
            std::uint64_t m = masks[static_cast<std::size_t>(i)];
            for (std::uint64_t sub = m;; sub = (sub - 1) & m) {
                if (sub) ++map[sub];
                if (sub == 0) break;
            }
        }
    }
    auto merged = std::move(local[0]);
    for (std::size_t t = 1; t < local.size(); ++t)
        for (const auto& [k, v] : local[t]) merged[k] += v;
    if (static_cast<std::int64_t>(merged.size()) > kSpreadCandidateCap)
        throw std::runtime_error(
            "spread_kappa: candidate-set cap exceeded; use Monte Carlo sampling of "
            "subsets instead of exact enumeration");
    return merged;
}

void enumerate_subsets(const std::vector<int>& verts, std::size_t i, VertexSet& cur,
                       std::unordered_map<VertexSet, std::int64_t, VertexSetHash>& map) {
    if (i == verts.size()) {
        if (!cur.empty()) ++map[cur];
        return;
    }
    enumerate_subsets(verts, i + 1, cur, map);
    cur.insert(verts[i]);
    enumerate_subsets(verts, i + 1, cur, map);
    cur.erase(verts[i]);
}

SpreadCertificate finish(const Hypergraph& h, std::int64_t total, Best best,
                         std::vector<double> table) {
    if (!best.set)
        throw std::invalid_argument("spread_kappa: no nonempty edge subsets (empty hypergraph?)");
    SpreadCertificate cert;
    cert.total = total;
    cert.witness = best.witness;
    cert.witness_count = best.count;
    cert.kappa = std::pow(static_cast<double>(total) / static_cast<double>(best.count),
                          1.0 / best.size);
    cert.ratio_table = std::move(table);
    (void)h;
    return cert;
}

}  // namespace

SpreadCertificate spread_kappa(const Hypergraph& h, int threads) {
    if (h.edges.empty()) throw std::invalid_argument("spread_kappa: empty hypergraph");
    std::int64_t total = static_cast<std::int64_t>(h.edges.size());
    std::int64_t raw = 0;
    for (const auto& e : h.edges) {
        if (e.size() > 62)
            throw std::runtime_error("spread_kappa: edge too large for exact enumeration");
        raw += std::int64_t{1} << e.size();
        if (raw > 4 * kSpreadCandidateCap)
            throw std::runtime_error(
                "spread_kappa: subset enumeration too large; use Monte Carlo sampling");
    }

    int ell = h.max_edge_size();
    std::vector<double> table(static_cast<std::size_t>(ell) + 1, 0.0);
    std::vector<std::int64_t> best_count(static_cast<std::size_t>(ell) + 1, -1);
    Best best;

    if (h.n <= 64) {
        auto counts = count_word(h, threads);
        // deterministic selection pass: edges in order, submasks in trick order
        for (const auto& e : h.edges) {
            std::uint64_t m = e.words().empty() ? 0 : e.words()[0];
            for (std::uint64_t sub = m;; sub = (sub - 1) & m) {
                if (sub) {
                    auto it = counts.find(sub);
                    if (it != counts.end() && it->second > 0) {
                        std::int64_t c = it->second;
                        it->second = -c;  // mark visited
                        VertexSet s = mask_to_set(sub);
                        int sz = s.size();
                        if (best_count[static_cast<std::size_t>(sz)] < 0 ||
                            c > best_count[static_cast<std::size_t>(sz)])
                            best_count[static_cast<std::size_t>(sz)] = c;
                        consider(best, total, s, c);
                    }
                }
                if (sub == 0) break;
            }
        }
    } else {
        std::unordered_map<VertexSet, std::int64_t, VertexSetHash> counts;
        for (const auto& e : h.edges) {
            auto verts = e.to_vector();
            VertexSet cur;
            enumerate_subsets(verts, 0, cur, counts);
        }
        if (static_cast<std::int64_t>(counts.size()) > kSpreadCandidateCap)
            throw std::runtime_error(
                "spread_kappa: candidate-set cap exceeded; use Monte Carlo sampling of "
                "subsets instead of exact enumeration");
        for (const auto& e : h.edges) {
            auto verts = e.to_vector();
            std::unordered_map<VertexSet, std::int64_t, VertexSetHash> local;
            VertexSet cur;
            enumerate_subsets(verts, 0, cur, local);
            for (auto& [s, unused] : local) {
                auto it = counts.find(s);
                if (it != counts.end() && it->second > 0) {
                    std::int64_t c = it->second;
                    it->second = -c;
                    int sz = s.size();
                    if (best_count[static_cast<std::size_t>(sz)] < 0 ||
                        c > best_count[static_cast<std::size_t>(sz)])
                        best_count[static_cast<std::size_t>(sz)] = c;
                    consider(best, total, s, c);
                }
            }
        }
    }

    for (int s = 1; s <= ell; ++s)
        if (best_count[static_cast<std::size_t>(s)] > 0)
            table[static_cast<std::size_t>(s)] =
                std::pow(static_cast<double>(total) /
                             static_cast<double>(best_count[static_cast<std::size_t>(s)]),
                         1.0 / s);
    return finish(h, total, best, std::move(table));
}

SpreadCertificate spread_kappa_serial(const Hypergraph& h) { return spread_kappa(h, 1); }

SpreadCheck is_kappa_spread(const Hypergraph& h, double kappa) {
    if (!(kappa > 0)) throw std::invalid_argument("is_kappa_spread: kappa must be positive");
    auto cert = spread_kappa(h);
    // kappa* >= kappa  <=>  total/count >= kappa^size  (exact via rationals)
    mpq_class k(kappa);  // exact binary value of the double
    mpq_class lhs(static_cast<long>(cert.total), static_cast<long>(cert.witness_count));
    mpq_class rhs = 1;
    for (int i = 0; i < cert.witness.size(); ++i) rhs *= k;
    if (lhs >= rhs) return {true, std::nullopt};
    return {false, cert.witness};
}

bool spread_value_leq(const SpreadCertificate& a, const SpreadCertificate& b) {
    // (Ta/ca)^(1/sa) <= (Tb/cb)^(1/sb)  <=>  (Ta/ca)^sb <= (Tb/cb)^sa
    int sa = a.witness.size(), sb = b.witness.size();
    mpq_class ra(static_cast<long>(a.total), static_cast<long>(a.witness_count));
    mpq_class rb(static_cast<long>(b.total), static_cast<long>(b.witness_count));
    mpz_class lhs_num = mpz_pow(ra.get_num(), static_cast<unsigned>(sb));
    mpz_class lhs_den = mpz_pow(ra.get_den(), static_cast<unsigned>(sb));
    mpz_class rhs_num = mpz_pow(rb.get_num(), static_cast<unsigned>(sa));
    mpz_class rhs_den = mpz_pow(rb.get_den(), static_cast<unsigned>(sa));
    return lhs_num * rhs_den <= rhs_num * lhs_den;
}

Hypergraph uniformize(const Hypergraph& h, int ell, int m_copies) {
    if (m_copies < 1) throw std::invalid_argument("uniformize: M must be >= 1");
    if (ell < h.max_edge_size())
        throw std::invalid_argument("uniformize: ell smaller than the largest edge");
    Hypergraph out;
    int fresh = h.n;
    out.edges.reserve(h.edges.size() * static_cast<std::size_t>(m_copies));
    for (const auto& e : h.edges) {
        int pad = ell - e.size();
        for (int c = 0; c < m_copies; ++c) {
            VertexSet copy = e;
            for (int j = 0; j < pad; ++j) copy.insert(fresh++);
            out.edges.push_back(std::move(copy));
        }
    }
    out.n = fresh;
    return out;
}

std::optional<int> uniformize_spread_preserving_m(const Hypergraph& h, int ell, int max_m) {
    auto in_cert = spread_kappa(h);
    for (int m = 1; m <= max_m; ++m) {
        auto out = uniformize(h, ell, m);
        auto out_cert = spread_kappa(out);
        if (spread_value_leq(in_cert, out_cert)) return m;
    }
    return std::nullopt;
}

}  // namespace spreadlab
