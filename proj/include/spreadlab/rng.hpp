#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace spreadlab {

// Counter-based generator: output i is splitmix64(key # i). The constants are
// the published splitmix64 ones (Steele, Lea, Flood 2014), so any
// implementation can reproduce the stream from (seed, counter) alone.
// All randomized operations take an explicit seed; per-trial substreams are
// derived with derive_seed(root, index), never by sharing a stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : key_(seed), ctr_(0) {}

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t next_u64() { return mix(key_ + 0x632BE59BD9B4E019ull * ++ctr_); }

    // uniform in [0,1) with 53 random bits
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [0, bound) via rejection; unbiased for any bound >= 1
    std::uint64_t next_below(std::uint64_t bound) {
        std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(bound | 1);
        for (;;) {
            std::uint64_t v = next_u64() & mask;
            if (v < bound) return v;
        }
    }

    double next_exp1() { return -std::log1p(-next_double()); }

    // first m entries of a partial Fisher-Yates shuffle of 0..n-1
    std::vector<int> sample_subset(int n, int m) {
        std::vector<int> idx(static_cast<std::size_t>(n));
        std::iota(idx.begin(), idx.end(), 0);
        if (m > n) m = n;
        for (int i = 0; i < m; ++i) {
            int j = i + static_cast<int>(next_below(static_cast<std::uint64_t>(n - i)));
            std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
        }
        idx.resize(static_cast<std::size_t>(m));
        return idx;
    }

private:
    std::uint64_t key_;
    std::uint64_t ctr_;
};

inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
    return Rng::mix(root ^ Rng::mix(index + 0x51ED270B0A1Full));
}

}  // namespace spreadlab
