#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace spreadlab {

// Set of vertex indices backed by 64-bit words. Trailing zero words are
// always trimmed, so equality and hashing are representation-independent.
class VertexSet {
public:
    VertexSet() = default;
    VertexSet(std::initializer_list<int> vs) {
        for (int v : vs) insert(v);
    }
    static VertexSet from_vector(const std::vector<int>& vs) {
        VertexSet s;
        for (int v : vs) s.insert(v);
        return s;
    }
    static VertexSet full(int n) {
        VertexSet s;
        for (int v = 0; v < n; ++v) s.insert(v);
        return s;
    }

    void insert(int v) {
        std::size_t wi = static_cast<std::size_t>(v) >> 6;
        if (wi >= w_.size()) w_.resize(wi + 1, 0);
        w_[wi] |= (std::uint64_t{1} << (v & 63));
    }
    void erase(int v) {
        std::size_t wi = static_cast<std::size_t>(v) >> 6;
        if (wi < w_.size()) {
            w_[wi] &= ~(std::uint64_t{1} << (v & 63));
            trim();
        }
    }
    bool contains(int v) const {
        std::size_t wi = static_cast<std::size_t>(v) >> 6;
        return wi < w_.size() && (w_[wi] >> (v & 63)) & 1;
    }
    bool empty() const { return w_.empty(); }
    int size() const {
        int c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }
    int max_vertex() const {  // -1 when empty
        if (w_.empty()) return -1;
        std::size_t wi = w_.size() - 1;
        return static_cast<int>(wi * 64 + 63 - std::countl_zero(w_.back()));
    }

    bool subset_of(const VertexSet& o) const {
        if (w_.size() > o.w_.size()) {
            for (std::size_t i = o.w_.size(); i < w_.size(); ++i)
                if (w_[i]) return false;
        }
        std::size_t m = std::min(w_.size(), o.w_.size());
        for (std::size_t i = 0; i < m; ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }
    bool intersects(const VertexSet& o) const {
        std::size_t m = std::min(w_.size(), o.w_.size());
        for (std::size_t i = 0; i < m; ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    friend VertexSet operator|(const VertexSet& a, const VertexSet& b) {
        VertexSet r;
        r.w_.resize(std::max(a.w_.size(), b.w_.size()), 0);
        for (std::size_t i = 0; i < r.w_.size(); ++i) {
            std::uint64_t w = 0;
            if (i < a.w_.size()) w |= a.w_[i];
            if (i < b.w_.size()) w |= b.w_[i];
            r.w_[i] = w;
        }
        r.trim();
        return r;
    }
    friend VertexSet operator&(const VertexSet& a, const VertexSet& b) {
        VertexSet r;
        std::size_t m = std::min(a.w_.size(), b.w_.size());
        r.w_.resize(m, 0);
        for (std::size_t i = 0; i < m; ++i) r.w_[i] = a.w_[i] & b.w_[i];
        r.trim();
        return r;
    }
    // set difference a \ b
    friend VertexSet operator-(const VertexSet& a, const VertexSet& b) {
        VertexSet r = a;
        std::size_t m = std::min(a.w_.size(), b.w_.size());
        for (std::size_t i = 0; i < m; ++i) r.w_[i] &= ~b.w_[i];
        r.trim();
        return r;
    }

    bool operator==(const VertexSet& o) const { return w_ == o.w_; }
    bool operator!=(const VertexSet& o) const { return w_ != o.w_; }

    // Order by size first, then lexicographically on the ascending vertex
    // list. Used for deterministic witness/tie-break selection.
    static bool size_lex_less(const VertexSet& a, const VertexSet& b) {
        int sa = a.size(), sb = b.size();
        if (sa != sb) return sa < sb;
        return lex_less(a, b);
    }
    static bool lex_less(const VertexSet& a, const VertexSet& b) {
        std::vector<int> va = a.to_vector(), vb = b.to_vector();
        return va < vb;
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t w = w_[i];
            while (w) {
                int b = std::countr_zero(w);
                out.push_back(static_cast<int>(i * 64 + b));
                w &= w - 1;
            }
        }
        return out;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t w = w_[i];
            while (w) {
                f(static_cast<int>(i * 64 + std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::size_t hash() const {
        std::uint64_t h = 0x9E3779B97F4A7C15ull;
        for (auto w : w_) {
            h ^= w;
            h *= 0xBF58476D1CE4E5B9ull;
            h ^= h >> 29;
        }
        return static_cast<std::size_t>(h);
    }

    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (int v : to_vector()) {
            if (!first) s += ",";
            s += std::to_string(v);
            first = false;
        }
        return s + "}";
    }

    const std::vector<std::uint64_t>& words() const { return w_; }

private:
    void trim() {
        while (!w_.empty() && w_.back() == 0) w_.pop_back();
    }
    std::vector<std::uint64_t> w_;
};

struct VertexSetHash {
    std::size_t operator()(const VertexSet& s) const { return s.hash(); }
};

}  // namespace spreadlab
