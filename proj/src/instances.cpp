#include "spreadlab/instances.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace spreadlab {

int PatternGraph::max_degree() const {
    std::vector<int> deg(static_cast<std::size_t>(nverts), 0);
    for (const auto& e : edges) e.for_each([&](int v) { ++deg[static_cast<std::size_t>(v)]; });
    int m = 0;
    for (int d : deg) m = std::max(m, d);
    return m;
}

PatternGraph make_pattern(int r, int nverts, const std::vector<std::vector<int>>& edges) {
    PatternGraph g;
    g.r = r;
    g.nverts = nverts;
    std::unordered_set<VertexSet, VertexSetHash> seen;
    for (const auto& e : edges) {
        VertexSet s = VertexSet::from_vector(e);
        if (s.size() != r) throw std::invalid_argument("make_pattern: edge of wrong uniformity");
        if (s.max_vertex() >= nverts) throw std::invalid_argument("make_pattern: vertex out of range");
        if (!seen.insert(s).second) throw std::invalid_argument("make_pattern: repeated edge");
        g.edges.push_back(std::move(s));
    }
    return g;
}

namespace {

// lexicographic list of the r-subsets of [n] plus the reverse lookup
struct SubsetIndex {
    std::vector<VertexSet> sets;
    std::unordered_map<VertexSet, int, VertexSetHash> index;
};

SubsetIndex r_subset_index(int n, int r) {
    SubsetIndex si;
    std::vector<int> idx(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (;;) {
        VertexSet s = VertexSet::from_vector(idx);
        si.index[s] = static_cast<int>(si.sets.size());
        si.sets.push_back(s);
        int i = r - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - r + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < r; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return si;
}

void matchings_rec(int n, int r, VertexSet& covered, std::vector<int>& chosen,
                   const SubsetIndex& si, std::vector<VertexSet>& out, std::int64_t cap) {
    if (covered.size() == n) {
        out.push_back(VertexSet::from_vector(chosen));
        if (static_cast<std::int64_t>(out.size()) > cap)
            throw std::runtime_error("gen_matchings: matching count cap exceeded");
        return;
    }
    int v = 0;
    while (covered.contains(v)) ++v;
    // choose the r-1 partners of v among the uncovered vertices above it
    std::vector<int> avail;
    for (int u = v + 1; u < n; ++u)
        if (!covered.contains(u)) avail.push_back(u);
    std::vector<int> pick(static_cast<std::size_t>(r - 1));
    std::vector<int> stack;
    // iterate (r-1)-subsets of avail in lexicographic order
    std::vector<int> c(static_cast<std::size_t>(r - 1));
    int k = r - 1;
    if (static_cast<int>(avail.size()) < k) return;
    for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
    for (;;) {
        VertexSet edge;
        edge.insert(v);
        for (int i = 0; i < k; ++i) edge.insert(avail[static_cast<std::size_t>(c[static_cast<std::size_t>(i)])]);
        chosen.push_back(si.index.at(edge));
        VertexSet saved = covered;
        covered = covered | edge;
        matchings_rec(n, r, covered, chosen, si, out, cap);
        covered = saved;
        chosen.pop_back();
        int i = k - 1;
        while (i >= 0 && c[static_cast<std::size_t>(i)] == static_cast<int>(avail.size()) - k + i) --i;
        if (i < 0) break;
        ++c[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    }
}

}  // namespace

Hypergraph gen_matchings(int r, int n) {
    if (r < 2) throw std::invalid_argument("gen_matchings: r must be >= 2");
    if (n % r != 0) throw std::invalid_argument("gen_matchings: r must divide n");
    if ((r == 2 && n > 12) || (r == 3 && n > 9) || (r >= 4 && n > 4 * r))
        throw std::runtime_error("gen_matchings: size cap exceeded");
    auto si = r_subset_index(n, r);
    std::vector<VertexSet> matchings;
    VertexSet covered;
    std::vector<int> chosen;
    matchings_rec(n, r, covered, chosen, si, matchings, 100'000);
    Hypergraph h;
    h.n = static_cast<int>(si.sets.size());
    h.edges = std::move(matchings);
    return h;
}

Hypergraph gen_dpartite_matchings(int d, int n) {
    if (d != 2 && d != 3) throw std::invalid_argument("gen_dpartite_matchings: d must be 2 or 3");
    if ((d == 2 && n > 8) || (d == 3 && n > 5))
        throw std::runtime_error("gen_dpartite_matchings: size cap exceeded");
    if (n < 1) throw std::invalid_argument("gen_dpartite_matchings: n must be >= 1");
    Hypergraph h;
    std::vector<int> sigma(static_cast<std::size_t>(n)), tau(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) sigma[static_cast<std::size_t>(i)] = i;
    if (d == 2) {
        h.n = n * n;
        do {
            VertexSet e;
            for (int i = 0; i < n; ++i) e.insert(i * n + sigma[static_cast<std::size_t>(i)]);
            h.edges.push_back(e);
        } while (std::next_permutation(sigma.begin(), sigma.end()));
        return h;
    }
    h.n = n * n * n;
    do {
        for (int i = 0; i < n; ++i) tau[static_cast<std::size_t>(i)] = i;
        do {
            VertexSet e;
            for (int i = 0; i < n; ++i)
                e.insert((i * n + sigma[static_cast<std::size_t>(i)]) * n +
                         tau[static_cast<std::size_t>(i)]);
            h.edges.push_back(e);
        } while (std::next_permutation(tau.begin(), tau.end()));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return h;
}

PatternGraph gen_tree(const std::string& shape, int n, int degree_cap) {
    if (n < 1) throw std::invalid_argument("gen_tree: n must be >= 1");
    std::vector<std::vector<int>> edges;
    if (shape == "path") {
        for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    } else if (shape == "star") {
        for (int i = 1; i < n; ++i) edges.push_back({0, i});
    } else if (shape == "binary") {
        for (int i = 1; i < n; ++i) edges.push_back({(i - 1) / 2, i});
    } else {
        throw std::invalid_argument("gen_tree: unknown shape '" + shape + "'");
    }
    auto g = make_pattern(2, n, edges);
    if (degree_cap > 0 && g.max_degree() > degree_cap)
        throw std::invalid_argument("gen_tree: shape exceeds the degree cap");
    return g;
}

PatternGraph gen_loose_hamilton(int r, int n) {
    if (r < 2) throw std::invalid_argument("gen_loose_hamilton: r must be >= 2");
    if (n % (r - 1) != 0 || n / (r - 1) < 3)
        throw std::invalid_argument("gen_loose_hamilton: need (r-1) | n and at least 3 edges");
    std::vector<std::vector<int>> edges;
    int m = n / (r - 1);
    for (int i = 0; i < m; ++i) {
        std::vector<int> e;
        for (int t = 0; t <= r - 1; ++t) e.push_back((i * (r - 1) + t) % n);
        edges.push_back(e);
    }
    return make_pattern(r, n, edges);
}

PatternGraph gen_factor(int clique_size, int n) {
    if (clique_size < 2) throw std::invalid_argument("gen_factor: clique size must be >= 2");
    if (n % clique_size != 0) throw std::invalid_argument("gen_factor: clique size must divide n");
    std::vector<std::vector<int>> edges;
    for (int b = 0; b < n; b += clique_size)
        for (int i = 0; i < clique_size; ++i)
            for (int j = i + 1; j < clique_size; ++j) edges.push_back({b + i, b + j});
    return make_pattern(2, n, edges);
}

namespace {

mpz_class factorial(int n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

struct EmbedCounter {
    const PatternGraph* s;
    const std::unordered_set<VertexSet, VertexSetHash>* h0_edges;
    int n;
    std::vector<int> order;                   // vertex processing order
    std::vector<std::vector<int>> check_at;   // edges fully mapped at position
    std::vector<int> image;                   // order position -> image
    std::vector<char> used;
    std::int64_t nodes = 0;
    std::int64_t count = 0;

    void run(std::size_t pos) {
        if (++nodes > 10'000'000)
            throw std::runtime_error("embedding search node cap exceeded");
        if (pos == order.size()) {
            ++count;
            return;
        }
        for (int img = 0; img < n; ++img) {
            if (used[static_cast<std::size_t>(img)]) continue;
            image[pos] = img;
            bool ok = true;
            for (int ei : check_at[pos]) {
                VertexSet mapped;
                s->edges[static_cast<std::size_t>(ei)].for_each([&](int v) {
                    for (std::size_t q = 0; q <= pos; ++q)
                        if (order[q] == v) mapped.insert(image[q]);
                });
                if (!h0_edges->count(mapped)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            used[static_cast<std::size_t>(img)] = 1;
            run(pos + 1);
            used[static_cast<std::size_t>(img)] = 0;
        }
    }
};

}  // namespace

mpq_class embedding_probability(const PatternGraph& s, const PatternGraph& h0, int n) {
    int w = s.nverts;
    if (w > 12) throw std::runtime_error("embedding_probability: pattern cap is 12 vertices");
    if (h0.nverts > n)
        throw std::invalid_argument("embedding_probability: H0 does not fit in [n]");
    if (w > n) return mpq_class(0);
    std::unordered_set<VertexSet, VertexSetHash> h0_edges(h0.edges.begin(), h0.edges.end());

    EmbedCounter ec;
    ec.s = &s;
    ec.h0_edges = &h0_edges;
    ec.n = n;
    // order: repeatedly take the unplaced vertex with most placed neighbors
    // (ties by degree then index) so edges close early
    std::vector<char> placed(static_cast<std::size_t>(w), 0);
    std::vector<std::vector<int>> vert_edges(static_cast<std::size_t>(w));
    for (std::size_t ei = 0; ei < s.edges.size(); ++ei)
        s.edges[ei].for_each(
            [&](int v) { vert_edges[static_cast<std::size_t>(v)].push_back(static_cast<int>(ei)); });
    for (int step = 0; step < w; ++step) {
        int best = -1, best_links = -1, best_deg = -1;
        for (int v = 0; v < w; ++v) {
            if (placed[static_cast<std::size_t>(v)]) continue;
            int links = 0;
            for (int ei : vert_edges[static_cast<std::size_t>(v)]) {
                bool any = false;
                s.edges[static_cast<std::size_t>(ei)].for_each([&](int u) {
                    if (u != v && placed[static_cast<std::size_t>(u)]) any = true;
                });
                if (any) ++links;
            }
            int deg = static_cast<int>(vert_edges[static_cast<std::size_t>(v)].size());
            if (links > best_links || (links == best_links && deg > best_deg)) {
                best = v;
                best_links = links;
                best_deg = deg;
            }
        }
        placed[static_cast<std::size_t>(best)] = 1;
        ec.order.push_back(best);
    }
    std::vector<int> pos_of(static_cast<std::size_t>(w));
    for (std::size_t i = 0; i < ec.order.size(); ++i)
        pos_of[static_cast<std::size_t>(ec.order[i])] = static_cast<int>(i);
    ec.check_at.resize(static_cast<std::size_t>(w));
    for (std::size_t ei = 0; ei < s.edges.size(); ++ei) {
        int last = 0;
        s.edges[ei].for_each(
            [&](int v) { last = std::max(last, pos_of[static_cast<std::size_t>(v)]); });
        ec.check_at[static_cast<std::size_t>(last)].push_back(static_cast<int>(ei));
    }
    ec.image.assign(static_cast<std::size_t>(w), -1);
    ec.used.assign(static_cast<std::size_t>(n), 0);
    ec.run(0);

    mpq_class pr(ec.count);
    pr *= mpq_class(factorial(n - w));
    pr /= mpq_class(factorial(n));
    pr.canonicalize();
    return pr;
}

namespace {

// connectivity of an edge subset via shared vertices
bool edges_connected(const std::vector<VertexSet>& edges, const std::vector<int>& subset) {
    if (subset.empty()) return false;
    std::vector<int> open{subset[0]};
    std::unordered_set<int> seen{subset[0]};
    while (!open.empty()) {
        int cur = open.back();
        open.pop_back();
        for (int other : subset) {
            if (seen.count(other)) continue;
            if (edges[static_cast<std::size_t>(cur)].intersects(
                    edges[static_cast<std::size_t>(other)])) {
                seen.insert(other);
                open.push_back(other);
            }
        }
    }
    return seen.size() == subset.size();
}

PatternGraph subgraph_pattern(const PatternGraph& h, const std::vector<int>& edge_idx) {
    // relabel the touched vertices to 0..w-1
    std::vector<int> verts;
    for (int ei : edge_idx)
        h.edges[static_cast<std::size_t>(ei)].for_each([&](int v) { verts.push_back(v); });
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    std::unordered_map<int, int> relabel;
    for (std::size_t i = 0; i < verts.size(); ++i) relabel[verts[i]] = static_cast<int>(i);
    PatternGraph s;
    s.r = h.r;
    s.nverts = static_cast<int>(verts.size());
    for (int ei : edge_idx) {
        VertexSet e;
        h.edges[static_cast<std::size_t>(ei)].for_each([&](int v) { e.insert(relabel[v]); });
        s.edges.push_back(e);
    }
    return s;
}

}  // namespace

CopySpread spread_of_copies(const PatternGraph& h, int n, int size_cap, bool connected_only) {
    if (h.edges.empty()) throw std::invalid_argument("spread_of_copies: pattern has no edges");
    if (h.edges.size() > 22) throw std::runtime_error("spread_of_copies: too many pattern edges");
    if (h.nverts > n) throw std::invalid_argument("spread_of_copies: pattern does not fit in [n]");
    CopySpread out;
    out.connected_only = connected_only;
    int ne = static_cast<int>(h.edges.size());
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << ne); ++mask) {
        int s = std::popcount(mask);
        if (s > size_cap) continue;
        std::vector<int> idx;
        for (int i = 0; i < ne; ++i)
            if ((mask >> i) & 1) idx.push_back(i);
        if (connected_only && !edges_connected(h.edges, idx)) continue;
        PatternGraph sub = subgraph_pattern(h, idx);
        mpq_class pr = embedding_probability(sub, h, n);
        double q = std::pow(pr.get_d(), 1.0 / s);
        if (q > out.q_star) {
            out.q_star = q;
            out.witness_edges = idx;
            out.witness_probability = pr;
            out.witness_size = s;
        }
    }
    return out;
}

Hypergraph gen_copies(const PatternGraph& h, int n, std::int64_t cap) {
    if (h.nverts > n) throw std::invalid_argument("gen_copies: pattern does not fit in [n]");
    if (h.nverts > 12) throw std::runtime_error("gen_copies: pattern cap is 12 vertices");
    auto si = r_subset_index(n, h.r);
    std::unordered_set<VertexSet, VertexSetHash> copies;
    int w = h.nverts;
    std::vector<int> image(static_cast<std::size_t>(w), -1);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    std::int64_t nodes = 0;
    auto rec = [&](auto&& self, int pos) -> void {
        if (++nodes > 10'000'000) throw std::runtime_error("gen_copies: search cap exceeded");
        if (pos == w) {
            VertexSet copy;
            for (const auto& e : h.edges) {
                VertexSet mapped;
                e.for_each([&](int v) { mapped.insert(image[static_cast<std::size_t>(v)]); });
                copy.insert(si.index.at(mapped));
            }
            copies.insert(copy);
            if (static_cast<std::int64_t>(copies.size()) > cap)
                throw std::runtime_error("gen_copies: copy count cap exceeded");
            return;
        }
        for (int img = 0; img < n; ++img) {
            if (used[static_cast<std::size_t>(img)]) continue;
            image[static_cast<std::size_t>(pos)] = img;
            used[static_cast<std::size_t>(img)] = 1;
            self(self, pos + 1);
            used[static_cast<std::size_t>(img)] = 0;
        }
    };
    rec(rec, 0);
    Hypergraph out;
    out.n = static_cast<int>(si.sets.size());
    out.edges.assign(copies.begin(), copies.end());
    std::sort(out.edges.begin(), out.edges.end(), VertexSet::size_lex_less);
    return out;
}

namespace {

// union-find without path compression so includes can be rolled back
struct RollbackUf {
    std::vector<int> parent, size;
    std::vector<int> trail;

    explicit RollbackUf(int n) : parent(static_cast<std::size_t>(n)), size(static_cast<std::size_t>(n), 1) {
        for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    }
    int find(int x) const {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
        return x;
    }
    // link roots a <- b; records the change
    void link(int ra, int rb) {
        if (size[static_cast<std::size_t>(ra)] < size[static_cast<std::size_t>(rb)]) std::swap(ra, rb);
        parent[static_cast<std::size_t>(rb)] = ra;
        size[static_cast<std::size_t>(ra)] += size[static_cast<std::size_t>(rb)];
        trail.push_back(rb);
    }
    int mark() const { return static_cast<int>(trail.size()); }
    void rollback(int mark_pos) {
        while (static_cast<int>(trail.size()) > mark_pos) {
            int rb = trail.back();
            trail.pop_back();
            int ra = parent[static_cast<std::size_t>(rb)];
            parent[static_cast<std::size_t>(rb)] = rb;
            size[static_cast<std::size_t>(ra)] -= size[static_cast<std::size_t>(rb)];
        }
    }
    // true (and applies) when the edge closes no cycle among its vertices
    bool add_edge_acyclic(const VertexSet& e) {
        std::vector<int> roots;
        bool ok = true;
        e.for_each([&](int v) {
            int r = find(v);
            for (int q : roots)
                if (q == r) ok = false;
            roots.push_back(r);
        });
        if (!ok) return false;
        for (std::size_t i = 1; i < roots.size(); ++i) {
            int ra = find(roots[0]);
            int rb = find(roots[i]);
            if (ra != rb) link(ra, rb);
        }
        return true;
    }
};

struct RhoSearch {
    const std::vector<VertexSet>* edges;
    RollbackUf uf;
    int best = 0;

    explicit RhoSearch(int nverts) : uf(nverts) {}

    void run(std::size_t i, int count) {
        if (count + static_cast<int>(edges->size() - i) <= best) return;
        if (i == edges->size()) {
            best = std::max(best, count);
            return;
        }
        int mark = uf.mark();
        if (uf.add_edge_acyclic((*edges)[i])) {
            run(i + 1, count + 1);
            uf.rollback(mark);
        }
        run(i + 1, count);
    }
};

}  // namespace

int forest_rho(const PatternGraph& f) {
    if (f.edges.size() > 20) throw std::runtime_error("forest_rho: cap is 20 edges");
    if (f.edges.empty()) return 0;
    RhoSearch search(f.nverts);
    search.edges = &f.edges;
    search.run(0, 0);
    return search.best;
}

ForestStats phi(const PatternGraph& f, bool connected_only) {
    if (f.edges.empty()) throw std::invalid_argument("phi: empty family");
    if (f.edges.size() > 15) throw std::runtime_error("phi: cap is 15 edges");
    ForestStats stats;
    stats.rho = forest_rho(f);
    int ne = static_cast<int>(f.edges.size());
    stats.phi = 0.0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << ne); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < ne; ++i)
            if ((mask >> i) & 1) idx.push_back(i);
        if (connected_only && !edges_connected(f.edges, idx)) continue;
        PatternGraph sub;
        sub.r = f.r;
        sub.nverts = f.nverts;
        for (int ei : idx) sub.edges.push_back(f.edges[static_cast<std::size_t>(ei)]);
        int rho_sub = forest_rho(sub);
        double value = 1.0 - static_cast<double>(rho_sub) / static_cast<double>(idx.size());
        if (value > stats.phi + 1e-15) {
            stats.phi = value;
            stats.witness_subfamily = idx;
        }
    }
    if (stats.witness_subfamily.empty()) {
        // every subfamily is a forest; the witness is the full family
        for (int i = 0; i < ne; ++i) stats.witness_subfamily.push_back(i);
    }
    return stats;
}

namespace {

struct SmallGraph {
    int w = 0;
    std::vector<std::uint16_t> adj;  // adjacency bitmask rows

    int degree(int v) const { return std::popcount(adj[static_cast<std::size_t>(v)]); }
    int edge_count() const {
        int s = 0;
        for (int v = 0; v < w; ++v) s += degree(v);
        return s / 2;
    }
};

std::vector<int> invariant_key(const SmallGraph& g) {
    std::vector<int> key;
    key.push_back(g.w);
    key.push_back(g.edge_count());
    std::vector<std::vector<int>> per_vertex;
    for (int v = 0; v < g.w; ++v) {
        std::vector<int> sig;
        sig.push_back(g.degree(v));
        std::vector<int> nbr_degs;
        for (int u = 0; u < g.w; ++u)
            if ((g.adj[static_cast<std::size_t>(v)] >> u) & 1) nbr_degs.push_back(g.degree(u));
        std::sort(nbr_degs.begin(), nbr_degs.end());
        sig.insert(sig.end(), nbr_degs.begin(), nbr_degs.end());
        int tri = 0;
        for (int u = 0; u < g.w; ++u)
            if ((g.adj[static_cast<std::size_t>(v)] >> u) & 1)
                tri += std::popcount(
                    static_cast<unsigned>(g.adj[static_cast<std::size_t>(v)] &
                                          g.adj[static_cast<std::size_t>(u)]));
        sig.push_back(tri);
        per_vertex.push_back(sig);
    }
    std::sort(per_vertex.begin(), per_vertex.end());
    for (const auto& sig : per_vertex) {
        key.push_back(-1);
        key.insert(key.end(), sig.begin(), sig.end());
    }
    return key;
}

bool iso_backtrack(const SmallGraph& a, const SmallGraph& b, std::vector<int>& map,
                   std::vector<char>& used, int pos) {
    if (pos == a.w) return true;
    for (int img = 0; img < b.w; ++img) {
        if (used[static_cast<std::size_t>(img)]) continue;
        if (a.degree(pos) != b.degree(img)) continue;
        bool ok = true;
        for (int q = 0; q < pos && ok; ++q) {
            bool ea = (a.adj[static_cast<std::size_t>(pos)] >> q) & 1;
            bool eb = (b.adj[static_cast<std::size_t>(img)] >> map[static_cast<std::size_t>(q)]) & 1;
            if (ea != eb) ok = false;
        }
        if (!ok) continue;
        map[static_cast<std::size_t>(pos)] = img;
        used[static_cast<std::size_t>(img)] = 1;
        if (iso_backtrack(a, b, map, used, pos + 1)) return true;
        used[static_cast<std::size_t>(img)] = 0;
    }
    return false;
}

bool small_isomorphic(const SmallGraph& a, const SmallGraph& b) {
    if (a.w != b.w || a.edge_count() != b.edge_count()) return false;
    std::vector<int> map(static_cast<std::size_t>(a.w), -1);
    std::vector<char> used(static_cast<std::size_t>(b.w), 0);
    return iso_backtrack(a, b, map, used, 0);
}

PatternGraph small_to_pattern(const SmallGraph& g) {
    PatternGraph p;
    p.r = 2;
    p.nverts = g.w;
    for (int v = 0; v < g.w; ++v)
        for (int u = v + 1; u < g.w; ++u)
            if ((g.adj[static_cast<std::size_t>(v)] >> u) & 1) {
                VertexSet e;
                e.insert(v);
                e.insert(u);
                p.edges.push_back(e);
            }
    return p;
}

SmallGraph pattern_to_small(const PatternGraph& p) {
    SmallGraph g;
    g.w = p.nverts;
    g.adj.assign(static_cast<std::size_t>(p.nverts), 0);
    for (const auto& e : p.edges) {
        auto vs = e.to_vector();
        g.adj[static_cast<std::size_t>(vs[0])] |= static_cast<std::uint16_t>(1u << vs[1]);
        g.adj[static_cast<std::size_t>(vs[1])] |= static_cast<std::uint16_t>(1u << vs[0]);
    }
    return g;
}

}  // namespace

bool graphs_isomorphic(const PatternGraph& a, const PatternGraph& b) {
    if (a.r != 2 || b.r != 2) throw std::invalid_argument("graphs_isomorphic: r=2 only");
    return small_isomorphic(pattern_to_small(a), pattern_to_small(b));
}

std::vector<PatternGraph> enumerate_connected_graphs(int max_vertices, int max_degree) {
    if (max_vertices < 1 || max_vertices > 10)
        throw std::invalid_argument("enumerate_connected_graphs: vertex cap is 10");
    std::vector<std::vector<SmallGraph>> levels(static_cast<std::size_t>(max_vertices) + 1);
    SmallGraph k1;
    k1.w = 1;
    k1.adj = {0};
    levels[1].push_back(k1);
    for (int w = 2; w <= max_vertices; ++w) {
        std::map<std::vector<int>, std::vector<std::size_t>> buckets;
        auto& out = levels[static_cast<std::size_t>(w)];
        for (const auto& g : levels[static_cast<std::size_t>(w - 1)]) {
            // attach a new vertex to every admissible nonempty subset
            for (std::uint32_t a = 1; a < (1u << (w - 1)); ++a) {
                if (std::popcount(a) > max_degree) continue;
                bool room = true;
                for (int v = 0; v < w - 1 && room; ++v)
                    if (((a >> v) & 1) && g.degree(v) >= max_degree) room = false;
                if (!room) continue;
                SmallGraph cand = g;
                cand.w = w;
                cand.adj.push_back(static_cast<std::uint16_t>(a));
                for (int v = 0; v < w - 1; ++v)
                    if ((a >> v) & 1)
                        cand.adj[static_cast<std::size_t>(v)] |=
                            static_cast<std::uint16_t>(1u << (w - 1));
                auto key = invariant_key(cand);
                auto& bucket = buckets[key];
                bool dup = false;
                for (std::size_t pos : bucket)
                    if (small_isomorphic(cand, out[pos])) {
                        dup = true;
                        break;
                    }
                if (!dup) {
                    bucket.push_back(out.size());
                    out.push_back(cand);
                }
            }
        }
    }
    std::vector<PatternGraph> result;
    for (int w = 1; w <= max_vertices; ++w)
        for (const auto& g : levels[static_cast<std::size_t>(w)])
            result.push_back(small_to_pattern(g));
    return result;
}

DspReport dsp_checks(int d, int max_vertices) {
    if (d < 1) throw std::invalid_argument("dsp_checks: d must be >= 1");
    if (max_vertices > 9) throw std::invalid_argument("dsp_checks: vertex cap is 9");
    DspReport rep;
    rep.d = d;
    auto graphs = enumerate_connected_graphs(max_vertices, d);
    int clique_edges = d * (d + 1) / 2;
    for (const auto& g : graphs) {
        int s = static_cast<int>(g.edges.size());
        if (s == 0) continue;
        int w = g.nverts;
        if (w == d + 1 && s == clique_edges) {
            ++rep.excluded_cliques;
            continue;
        }
        ++rep.graphs_enumerated;
        int f = w - 1;  // spanning forest of a connected graph
        // f/s >= 2(d+1)/((d+2)d), exactly in integers
        if (static_cast<std::int64_t>(f) * (d + 2) * d < static_cast<std::int64_t>(s) * 2 * (d + 1))
            rep.ratio_ok = false;
        if (static_cast<std::int64_t>(f) * (d + 2) * d == static_cast<std::int64_t>(s) * 2 * (d + 1))
            rep.equality_attained = true;
        if (rep.min_s == 1 && rep.min_f == 0) {
            rep.min_f = f;
            rep.min_s = s;
        } else if (static_cast<std::int64_t>(f) * rep.min_s <
                   static_cast<std::int64_t>(rep.min_f) * s) {
            rep.min_f = f;
            rep.min_s = s;
        }
        // embedding bound spot check against the graph placed in [12]
        if (w <= 6 && s <= 9) {
            int n = 12;
            mpq_class pr = embedding_probability(g, g, n);
            double rhs = std::pow(std::exp(2.0) * d / n, f);
            ++rep.embedding_checks;
            if (!(pr.get_d() < rhs)) rep.embedding_ok = false;
        }
    }
    return rep;
}

double p_star(int d, int n) {
    if (d < 1 || n < 2) throw std::invalid_argument("p_star: need d >= 1, n >= 2");
    double fact = 1.0;
    for (int i = 2; i <= d; ++i) fact *= i;
    double cd = std::pow(fact, 2.0 / (static_cast<double>(d) * (d + 1)));
    return cd * std::pow(static_cast<double>(n), -2.0 / (d + 1)) *
           std::pow(std::log(static_cast<double>(n)), 2.0 / (static_cast<double>(d) * (d + 1)));
}

}  // namespace spreadlab
