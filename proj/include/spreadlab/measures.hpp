#pragma once

#include <cstdint>
#include <string>

#include "spreadlab/hypergraph.hpp"

namespace spreadlab {

struct ThresholdEstimate {
    double p = 0.0;
    std::string method;  // "exact" | "monte-carlo"
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::int64_t trials = 0;
};

// caps for the exact evaluation routes
struct ExactCaps {
    int max_n = 20;     // full 2^n enumeration
    int max_gens = 20;  // inclusion-exclusion over generator unions
};

// mu_p(<G>) under the product measure; exact to ~1e-12.
double mu_p_exact(const MinGenerators& g, double p, ExactCaps caps = {}, int threads = 0);
// the two exact routes, exposed for cross-checking
double mu_p_exact_enum(const MinGenerators& g, double p, int threads = 0);
double mu_p_exact_inclexcl(const MinGenerators& g, double p, int threads = 0);
bool mu_p_exact_applicable(const MinGenerators& g, ExactCaps caps = {});

ThresholdEstimate mu_p_mc(const MinGenerators& g, double p, std::int64_t trials,
                          std::uint64_t seed, int threads = 0);

// P(uniform m-subset lands in <H>); exact when n <= 20 or C(n,m) <= 1e6.
ThresholdEstimate prob_xm_hits(const Hypergraph& h, int m, std::int64_t trials,
                               std::uint64_t seed, int threads = 0);

// threshold p with mu_p = 1/2, bisection; exact path when caps allow,
// Monte Carlo with a final refinement pass otherwise
ThresholdEstimate p_c(const MinGenerators& g, double tol = 1e-4, std::int64_t trials = 20000,
                      std::uint64_t seed = 1, ExactCaps caps = {}, int threads = 0);

}  // namespace spreadlab
