#include "spreadlab/janson.hpp"

#include <cmath>
#include <stdexcept>

#include "spreadlab/measures.hpp"
#include "spreadlab/spread.hpp"
#include "spreadlab/stats.hpp"

namespace spreadlab {

double janson_bound(int r, double kappa, double alpha) {
    if (r < 1) throw std::invalid_argument("janson_bound: r must be >= 1");
    if (!(alpha * kappa > 0.0))
        throw std::invalid_argument("janson_bound: alpha*kappa must be positive");
    double sum = 0.0;
    for (int t = 1; t <= r; ++t)
        sum += binom_coeff(r, t) * std::pow(alpha * kappa, -t);
    return std::exp(-1.0 / sum);
}

double janson_fixed_size_bound(int r, double kappa, double alpha) {
    if (r < 1) throw std::invalid_argument("janson_fixed_size_bound: r must be >= 1");
    return 2.0 * std::exp(-alpha * kappa / (2.0 * r));
}

JansonCheck janson_exact_vs_bound(const Hypergraph& g, double alpha) {
    if (g.n > 20)
        throw std::runtime_error("janson_exact_vs_bound: n too large for exact enumeration");
    if (g.edges.empty()) throw std::invalid_argument("janson_exact_vs_bound: empty hypergraph");
    JansonCheck out;
    out.r = g.max_edge_size();
    out.kappa = spread_kappa(g).kappa;
    bool has_empty_edge = false;
    for (const auto& e : g.edges)
        if (e.empty()) has_empty_edge = true;
    if (alpha >= 1.0 || has_empty_edge) {
        out.exact_failure = 0.0;
    } else {
        auto gens = min_generators(g);
        out.exact_failure = 1.0 - mu_p_exact(gens, alpha);
    }
    out.bound = janson_bound(out.r, out.kappa, alpha);
    return out;
}

}  // namespace spreadlab
