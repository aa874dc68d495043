#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "spreadlab/hypergraph.hpp"
#include "spreadlab/stats.hpp"

namespace spreadlab {

enum class WeightDist { Uniform01, Exp1 };

// Weight tensor over [n]^d, row-major.
struct AssignmentInstance {
    int d = 2;
    int n = 1;
    std::vector<double> weights;
    WeightDist dist = WeightDist::Exp1;

    double at2(int i, int j) const { return weights[static_cast<std::size_t>(i) * n + j]; }
    double at3(int i, int j, int k) const {
        return weights[(static_cast<std::size_t>(i) * n + j) * n + k];
    }
    static AssignmentInstance random(int d, int n, WeightDist dist, std::uint64_t seed);
};

struct AxialResult {
    double value = 0.0;
    // cells[i] = coordinates of the cell chosen in hyperplane x_0 = i
    std::vector<std::array<int, 3>> cells;  // third coordinate -1 for d=2
    std::string method;                     // "hungarian" | "dp" | "enumeration"
};

// exact minimum-weight axial assignment: Hungarian for d=2 (n <= 2000),
// bitmask DP over (used-column, used-layer) masks for d=3 (n <= 10)
AxialResult solve_axial(const AssignmentInstance& inst);
// brute force over permutation tuples; oracle for the above (d=2 n<=8, d=3 n<=5)
AxialResult solve_axial_enum(const AssignmentInstance& inst);

struct ExplicitMinResult {
    double value = 0.0;
    VertexSet argmin;
    std::size_t edge_index = 0;
};
// min over edges of the vertex-weight sum; first edge in list order on ties
ExplicitMinResult xi_min_explicit(const Hypergraph& h, const std::vector<double>& weights);

// mean of the process minimum over independently re-drawn weights
MeanCi estimate_z_axial(int d, int n, WeightDist dist, std::int64_t trials, std::uint64_t seed,
                        int threads = 0);
MeanCi estimate_z_explicit(const Hypergraph& h, WeightDist dist, std::int64_t trials,
                           std::uint64_t seed, int threads = 0);

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    std::vector<double> means;  // per n in the input order
};
// least-squares fit of log(mean) against log(n)
ScalingFit scaling_fit(int d, const std::vector<int>& n_list, std::int64_t trials,
                       std::uint64_t seed, WeightDist dist = WeightDist::Exp1, int threads = 0);

struct TfsReport {
    double mean_normalized = 0.0;  // E[xi_H] * kappa / ell
    double max_normalized = 0.0;   // max over trials of xi_H * kappa / ell
    double kappa = 0.0;
    int ell = 0;
    MeanCi raw;
};
TfsReport tfs_bound_report(const Hypergraph& h, std::int64_t trials, std::uint64_t seed,
                           WeightDist dist = WeightDist::Uniform01, int threads = 0);

struct StaircaseDiag {
    double threshold = 0.0;         // (3C/gamma) * ell / kappa
    std::vector<double> epsilons;   // eps_1..eps_{m+1}
    int m = 0;
    double p = 0.0;
    double q = 0.0;
};
StaircaseDiag staircase_diag(int ell, double kappa, double c, double gamma);

}  // namespace spreadlab
