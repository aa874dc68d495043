#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spreadlab/hypergraph.hpp"

namespace spreadlab {

// r-uniform pattern (simple, no repeated edges) on vertices [0, nverts)
struct PatternGraph {
    int r = 2;
    int nverts = 0;
    std::vector<VertexSet> edges;

    int max_degree() const;
    std::size_t size() const { return edges.size(); }
};

PatternGraph make_pattern(int r, int nverts, const std::vector<std::vector<int>>& edges);

// perfect matchings of the complete r-graph on [n]; ground set indexes the
// r-subsets of [n] in lexicographic order
Hypergraph gen_matchings(int r, int n);
// perfect matchings of the complete balanced d-partite d-graph (permutation
// matrices for d=2); ground set = the n^d cells, row-major
Hypergraph gen_dpartite_matchings(int d, int n);

// shapes: "path", "star", "binary"; when degree_cap > 0 the shape's maximum
// degree must respect it
PatternGraph gen_tree(const std::string& shape, int n, int degree_cap = 0);
PatternGraph gen_loose_hamilton(int r, int n);
PatternGraph gen_factor(int clique_size, int n);

// P(sigma(S) contained in H0) for a uniform permutation sigma of [n]:
// emb(S -> H0) * (n-w)! / n!, with emb counted by backtracking over
// injections of the w pattern vertices
mpq_class embedding_probability(const PatternGraph& s, const PatternGraph& h0, int n);

struct CopySpread {
    double q_star = 0.0;
    std::vector<int> witness_edges;  // edge indices of the maximizing subgraph
    mpq_class witness_probability;
    int witness_size = 0;
    bool connected_only = true;
};
// q* = max over nonempty subgraphs S of H (no isolated vertices; connected
// representatives by default) of P(sigma(S) in H0)^(1/|S|), H0 = H on [n]
CopySpread spread_of_copies(const PatternGraph& h, int n, int size_cap,
                            bool connected_only = true);

// the explicit hypergraph of copies of H in the complete r-graph on [n];
// ground set indexes the r-subsets of [n]
Hypergraph gen_copies(const PatternGraph& h, int n, std::int64_t cap = 100'000);

// max size of a forest subfamily (no Berge cycle; equivalently the bipartite
// incidence graph of the chosen edges is acyclic)
int forest_rho(const PatternGraph& f);

struct ForestStats {
    int rho = 0;     // of the full family
    double phi = 0.0;
    std::vector<int> witness_subfamily;  // edge indices attaining phi
};
// phi = max over nonempty subfamilies F' of 1 - rho(F')/|F'|; by default the
// search restricts to connected-support subfamilies (the max is attained on
// one since rho and size are additive over incidence components)
ForestStats phi(const PatternGraph& f, bool connected_only = true);

// all connected graphs (r=2) on <= max_vertices vertices with max degree <=
// max_degree, one representative per isomorphism class
std::vector<PatternGraph> enumerate_connected_graphs(int max_vertices, int max_degree);

bool graphs_isomorphic(const PatternGraph& a, const PatternGraph& b);

struct DspReport {
    int d = 0;
    int graphs_enumerated = 0;
    int excluded_cliques = 0;  // K_{d+1}'s skipped per the hypothesis
    bool ratio_ok = true;      // f/s >= 2(d+1)/((d+2)d) for every graph kept
    int min_f = 0, min_s = 1;  // minimizing ratio over the enumeration
    bool equality_attained = false;
    int embedding_checks = 0;
    bool embedding_ok = true;  // P(sigma(S) in H0) < (e^2 d/n)^f on samples
};
DspReport dsp_checks(int d, int max_vertices);

// c_d n^{-2/(d+1)} (log n)^{2/(d(d+1))} with c_d = (d!)^{2/(d(d+1))}
double p_star(int d, int n);

}  // namespace spreadlab
