#include "spreadlab/hypergraph.hpp"

#include <algorithm>

namespace spreadlab {

Hypergraph make_hypergraph(int n, const std::vector<std::vector<int>>& edges,
                           bool allow_empty_edges) {
    std::vector<VertexSet> es;
    es.reserve(edges.size());
    for (const auto& e : edges) es.push_back(VertexSet::from_vector(e));
    return make_hypergraph(n, std::move(es), allow_empty_edges);
}

Hypergraph make_hypergraph(int n, std::vector<VertexSet> edges, bool allow_empty_edges) {
    if (n < 0) throw std::invalid_argument("make_hypergraph: negative ground-set size");
    for (const auto& e : edges) {
        if (e.max_vertex() >= n)
            throw std::invalid_argument("make_hypergraph: vertex " +
                                        std::to_string(e.max_vertex()) +
                                        " out of range [0," + std::to_string(n) + ")");
        if (e.empty() && !allow_empty_edges)
            throw std::invalid_argument("make_hypergraph: empty edge (pass allow_empty_edges to permit)");
    }
    Hypergraph h;
    h.n = n;
    h.edges = std::move(edges);
    return h;
}

bool up_closure_contains(const Hypergraph& h, const VertexSet& t) {
    for (const auto& e : h.edges)
        if (e.subset_of(t)) return true;
    return false;
}

MinGenerators min_generators(int n, const std::vector<VertexSet>& sets) {
    if (sets.empty()) throw std::invalid_argument("min_generators: empty input");
    std::vector<VertexSet> sorted = sets;
    std::sort(sorted.begin(), sorted.end(), VertexSet::size_lex_less);
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<VertexSet> keep;
    for (const auto& s : sorted) {
        bool dominated = false;
        for (const auto& k : keep) {
            if (k.subset_of(s)) {  // k is no larger, so k strictly below or equal
                dominated = true;
                break;
            }
        }
        if (!dominated) keep.push_back(s);
    }
    MinGenerators g;
    g.n = n;
    g.gens = std::move(keep);
    return g;
}

MinGenerators min_generators(const Hypergraph& h) { return min_generators(h.n, h.edges); }

int ell_bound(const MinGenerators& g) {
    int m = 0;
    for (const auto& s : g.gens) m = std::max(m, s.size());
    return m;
}

Hypergraph generators_as_hypergraph(const MinGenerators& g) {
    Hypergraph h;
    h.n = g.n;
    h.edges = g.gens;
    return h;
}

}  // namespace spreadlab
