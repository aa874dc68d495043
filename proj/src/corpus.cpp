#include "spreadlab/corpus.hpp"

#include <stdexcept>

#include "spreadlab/rng.hpp"

namespace spreadlab {

MinGenerators random_antichain(int n, int k, int max_size, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_antichain: n must be >= 1");
    if (k < 1) throw std::invalid_argument("random_antichain: k must be >= 1");
    if (max_size < 1 || max_size > n)
        throw std::invalid_argument("random_antichain: max_size outside [1, n]");
    Rng rng(seed);
    std::vector<VertexSet> sets;
    for (int i = 0; i < k; ++i) {
        int size = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_size)));
        sets.push_back(VertexSet::from_vector(rng.sample_subset(n, size)));
    }
    return min_generators(n, sets);
}

MinGenerators corpus_instance(int index, std::uint64_t root_seed) {
    int n = 4 + (index % 7);
    int k = 2 + (index % 4);
    int max_size = std::min(4, n);
    return random_antichain(n, k, max_size,
                            derive_seed(root_seed, static_cast<std::uint64_t>(index)));
}

}  // namespace spreadlab
