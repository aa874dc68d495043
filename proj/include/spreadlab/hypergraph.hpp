#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "spreadlab/vertex_set.hpp"

namespace spreadlab {

// Hypergraph on ground set {0..n-1}. Edges are stored canonically (each a
// set), repeats allowed, and the list position is the fixed total order on
// edges that the fragmentation rounds rely on.
struct Hypergraph {
    int n = 0;
    std::vector<VertexSet> edges;

    std::size_t size() const { return edges.size(); }
    // max edge size (the ell for which the hypergraph is ell-bounded)
    int max_edge_size() const {
        int m = 0;
        for (const auto& e : edges) m = std::max(m, e.size());
        return m;
    }
    bool is_uniform() const {
        for (const auto& e : edges)
            if (e.size() != edges.front().size()) return false;
        return true;
    }
};

// Antichain of minimal generators of an increasing family.
struct MinGenerators {
    int n = 0;
    std::vector<VertexSet> gens;

    std::size_t size() const { return gens.size(); }
    bool has_empty_generator() const {
        for (const auto& g : gens)
            if (g.empty()) return true;
        return false;
    }
};

Hypergraph make_hypergraph(int n, const std::vector<std::vector<int>>& edges,
                           bool allow_empty_edges = false);
Hypergraph make_hypergraph(int n, std::vector<VertexSet> edges,
                           bool allow_empty_edges = false);

// T in <H>: some edge of H is contained in T.
bool up_closure_contains(const Hypergraph& h, const VertexSet& t);

// Inclusion-minimal sets of the input, duplicates removed, order-normalized
// (size then lexicographic).
MinGenerators min_generators(int n, const std::vector<VertexSet>& sets);
MinGenerators min_generators(const Hypergraph& h);

// size of a largest generator
int ell_bound(const MinGenerators& g);

Hypergraph generators_as_hypergraph(const MinGenerators& g);

}  // namespace spreadlab
