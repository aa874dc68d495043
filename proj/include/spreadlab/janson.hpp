#pragma once

#include "spreadlab/hypergraph.hpp"

namespace spreadlab {

// Lower-tail failure bound for r-bounded kappa-spread hypergraphs under the
// alpha-random subset: exp[-(sum_{t=1..r} C(r,t) (alpha kappa)^{-t})^{-1}].
double janson_bound(int r, double kappa, double alpha);

// fixed-size variant 2 exp[-alpha kappa/(2r)]; valid when alpha*kappa >= 2r
double janson_fixed_size_bound(int r, double kappa, double alpha);

struct JansonCheck {
    double exact_failure = 0.0;  // P(Y_alpha not in <G>), exact enumeration
    double bound = 0.0;
    int r = 0;
    double kappa = 0.0;
};

// exact failure probability vs the bound, with r and kappa computed from G
JansonCheck janson_exact_vs_bound(const Hypergraph& g, double alpha);

}  // namespace spreadlab
