#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "spreadlab/hypergraph.hpp"
#include "spreadlab/lp.hpp"

namespace spreadlab {

using Rational = mpq_class;

Rational rat_pow(const Rational& x, int e);

// Distinct subsets of the generators (including the empty set), ordered by
// size then lexicographically. These are the only sets that ever help a
// cover or a fractional cover: a weight on S not below any generator T can
// be moved to S' = S cap T for every constraint it serves, and constraints
// for non-minimal members of F are implied by the generator constraints.
std::vector<VertexSet> generator_subsets(const MinGenerators& g, std::int64_t cap);

struct CoverSolution {
    std::vector<VertexSet> cover;
    Rational cost;  // sum over the cover of p^{|S|}
    bool optimal = true;
};

struct FractionalCover {
    std::vector<std::pair<VertexSet, Rational>> weights;  // nonzero g(S)
    Rational value;                                       // sum g(S) p^{|S|}
    Rational p;
};

struct SpreadMeasure {
    std::vector<VertexSet> support;
    std::vector<Rational> mass;
    double q = 0.0;
};

// Exact minimum-cost integral cover: every generator contains a cover
// member; branch-and-bound over generator subsets.
inline constexpr std::int64_t kCoverCandidateCap = 100'000;
CoverSolution min_cover_cost(const MinGenerators& g, const Rational& p);
CoverSolution min_cover_cost_d(const MinGenerators& g, double p);

enum class LpMode { Auto, Exact, Float };
inline constexpr std::int64_t kLpVariableCap = 10'000;
inline constexpr std::int64_t kLpExactDefaultCap = 2'000;

struct WeakCoverResult {
    Rational value;
    FractionalCover cover;
    bool exact = true;
    double duality_gap = 0.0;  // certified gap in float mode; 0 in exact mode
};
WeakCoverResult weak_cover_lp(const MinGenerators& g, const Rational& p,
                              LpMode mode = LpMode::Auto);

// Bracket [lo, hi] with predicate(lo) feasible and predicate(hi) not;
// hi - lo <= tol. The true threshold lies in [lo, hi].
struct ThresholdBracket {
    Rational lo, hi;
    double value() const;
};

// max p with integral cover cost <= budget (default 1/2)
ThresholdBracket q_expectation_threshold(const MinGenerators& g, double tol = 1e-4,
                                         const Rational& budget = Rational(1, 2));
// max p with LP value <= budget (default 1/2)
ThresholdBracket qf_fractional(const MinGenerators& g, double tol = 1e-4,
                               const Rational& budget = Rational(1, 2),
                               LpMode mode = LpMode::Auto);

// Which dual spread bound to certify: nu(<S>) <= (2q)^{|S|}, or the
// footnote form nu(<S>) <= 2 q^{|S|}.
enum class DualVariant { PowOfTwoQ, TwoTimesPow };
Rational dual_bound(const Rational& q, int set_size, DualVariant variant);

struct ExtractResult {
    bool feasible = false;
    SpreadMeasure measure;        // valid when feasible (zero-mass entries dropped)
    std::vector<Rational> farkas;  // infeasibility witness over constraints
    bool verified = false;         // exhaustive post-hoc bound check
    std::optional<VertexSet> violation;
};

ExtractResult extract_spread_measure(const MinGenerators& g, const Rational& q,
                                     DualVariant variant = DualVariant::PowOfTwoQ,
                                     LpMode mode = LpMode::Auto);

}  // namespace spreadlab
