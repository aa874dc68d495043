#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spreadlab/hypergraph.hpp"
#include "spreadlab/stats.hpp"

namespace spreadlab {

// Parameters of the iterated rounds. Derived quantities (kappa, p, m, the
// final-phase size) are filled in at run time when left at their sentinel
// values and recorded in the trace.
struct FragConfig {
    double gamma = 0.1;
    double C = 8.0;
    double C0 = 8.0;
    double q_final = -1.0;  // < 0: log(ell)/kappa (weight mode: log C log^2 ell / kappa)
    int m = -1;             // < 0: from (1-gamma)^m = sqrt(log ell)/ell (weight mode: log ell/ell)
    std::uint64_t seed = 1;
    double kappa = 0.0;  // <= 0: computed via spread_kappa
    // ordered-by-weight variant: W_i are consecutive blocks of the ground
    // set sorted by the provided weights instead of uniform random draws
    bool weight_ordered = false;
    std::vector<double> weights;
    double b() const;  // B = sqrt(C)
};

struct RoundRecord {
    int round = 0;
    std::int64_t h_prev = 0;
    std::int64_t h_cur = 0;
    double r_i = 0.0;
    int w_size = 0;
    std::int64_t good = 0;
    std::int64_t bad = 0;
    bool success = false;
    bool skipped = false;
};

struct FragmentationTrace {
    std::vector<RoundRecord> rounds;
    bool janson_success = false;
    bool overall_success = false;
    std::vector<VertexSet> w_rounds;  // W_1 .. W_{m+1}
    VertexSet w_union;
    bool precondition_ok = true;  // the asymptotic preconditions at desk scale
    std::vector<std::string> warnings;
    double kappa = 0.0, p = 0.0, q_final = 0.0, delta = 0.0;
    int m = 0;
    // back-pointer reconstruction on success
    bool soundness_ok = false;
    VertexSet root_edge;                  // S with S \ (W_1..W_i) in H_i for all i
    std::vector<VertexSet> ancestor_sets; // S_0 .. S_m along the reconstruction
    // weight-ordered runs
    std::vector<double> epsilons;  // eps_1..eps_{m+1}
    bool weight_bound_ok = false;  // xi_x <= eps_i for all x in W_i
};

// chi(S, W) = (first edge of h contained in S union W, in list order) minus W.
// S must be an edge of h, so the scan always terminates.
VertexSet chi(const Hypergraph& h, const VertexSet& s, const VertexSet& w);

struct ClassifyResult {
    std::vector<int> good_indices;       // indices into h.edges, in order
    std::vector<VertexSet> chi_values;   // chi per good edge
    std::vector<int> psi_indices;        // index of the chosen first edge
    std::int64_t bad = 0;
};
// partition of the edge list into good (|chi| <= r_prime) and bad
ClassifyResult classify_pairs(const Hypergraph& h, const VertexSet& w, double r_prime);

struct PathologyResult {
    bool pathological = false;
    std::optional<VertexSet> witness_t;
};
// exhaustive scan over T subset of S with |T| > r_prime against the
// B^r |H| kappa^{-t} p^{s-t} count bound on the size-|S| slice within [T, Z]
PathologyResult is_pathological(const Hypergraph& h, const VertexSet& s, const VertexSet& z,
                                double b, double p, double kappa, double r_prime);

struct BadRateReport {
    double empirical = 0.0;  // mean of per-trial (#bad / |H|)
    Interval ci;
    double bound = 0.0;  // C^{-r/3}
    double kappa = 0.0;
    double p = 0.0;
    int w_size = 0;
    std::int64_t trials = 0;
    bool precondition_ok = true;  // kappa >= C
    bool exact = false;
};
// W uniform from the size-floor(np) subsets of the full ground set
BadRateReport bad_pair_rate_mc(const Hypergraph& h, double c, std::int64_t trials,
                               std::uint64_t seed, double gamma = 0.1, int threads = 0);
// exact expectation by enumerating all W (requires C(n, w) <= 2e6)
BadRateReport bad_pair_rate_exact(const Hypergraph& h, double c, double gamma = 0.1);

FragmentationTrace run_fragmentation(const Hypergraph& h, const FragConfig& cfg);

}  // namespace spreadlab
