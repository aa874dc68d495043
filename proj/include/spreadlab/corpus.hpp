#pragma once

#include <cstdint>

#include "spreadlab/hypergraph.hpp"

namespace spreadlab {

// k sets with sizes uniform in [1, max_size] over [n], minimalized to an
// antichain (so the result may have fewer than k generators)
MinGenerators random_antichain(int n, int k, int max_size, std::uint64_t seed);

// the seeded small-instance corpus used by the sweep commands: instance i
// has n in 4..10 and up to 5 generators of size <= 4
MinGenerators corpus_instance(int index, std::uint64_t root_seed);

}  // namespace spreadlab
