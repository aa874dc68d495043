#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spreadlab/hypergraph.hpp"

namespace spreadlab {

// Certificate for the largest kappa such that H is kappa-spread:
//   kappa = min over nonempty S with |H cap <S>| > 0 of (|H|/|H cap <S>|)^(1/|S|).
// Only subsets of edges have nonzero count, so enumeration ranges over those.
struct SpreadCertificate {
    double kappa = 0.0;
    VertexSet witness;            // attains the minimum; smallest size, then lex
    std::int64_t witness_count = 0;  // |H cap <witness>|
    std::int64_t total = 0;          // |H|, multiplicities included
    // ratio_table[s] = min over |S|=s of (|H|/count)^(1/s); 0 when no candidate
    std::vector<double> ratio_table;
};

// Distinct candidate sets are capped; beyond this exact enumeration refuses.
inline constexpr std::int64_t kSpreadCandidateCap = 10'000'000;

SpreadCertificate spread_kappa(const Hypergraph& h, int threads = 0);
SpreadCertificate spread_kappa_serial(const Hypergraph& h);

struct SpreadCheck {
    bool ok = false;
    std::optional<VertexSet> violator;  // present when ok == false
};

// true iff H is kappa-spread (closed convention: kappa* >= kappa passes);
// decided in exact arithmetic on the certificate witness.
SpreadCheck is_kappa_spread(const Hypergraph& h, double kappa);

// exact comparison of two certificates' kappa values (a.kappa <= b.kappa)
bool spread_value_leq(const SpreadCertificate& a, const SpreadCertificate& b);

// Each edge S becomes M copies of S padded to size ell with fresh vertices
// (each fresh vertex used once). Copy order follows the input edge order.
Hypergraph uniformize(const Hypergraph& h, int ell, int m_copies);

// Smallest M in [1, max_m] for which uniformize preserves the spread value
// (output kappa* >= input kappa*, exact comparison); nullopt if none does.
std::optional<int> uniformize_spread_preserving_m(const Hypergraph& h, int ell, int max_m);

}  // namespace spreadlab
