#pragma once

#include "lierank/models.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <random>
#include <string>
#include <vector>

namespace lierank {

using BigInt = boost::multiprecision::cpp_int;

// Set partition of {0..n_items-1} into m disjoint non-empty blocks, kept in
// canonical form: indices ascending within a block, blocks ordered by their
// smallest element.
struct Partition {
    int n_items = 0;
    std::vector<std::vector<int>> blocks;

    int m() const { return static_cast<int>(blocks.size()); }

    // Canonicalizes and validates (disjoint, non-empty, covering).
    static Partition from_blocks(int n_items, std::vector<std::vector<int>> blocks);

    static Partition single_block(int n_items);
    static Partition singletons(int n_items);

    // Stable text form, e.g. "0,2|1|3"; doubles as a replayable id.
    std::string key() const;

    friend bool operator==(const Partition&, const Partition&) = default;
};

// Stirling number of the second kind S(n, m), exact. Throws on m out of
// [1, n] (and S(0, 0) = 1 by convention when both are zero).
BigInt count_partitions(int n, int m);

// Uniform sample over all S(n, m) partitions with exactly m blocks, via the
// S(n,m) = S(n-1,m-1) + m S(n-1,m) decision recurrence. Deterministic given
// the rng state.
Partition sample_partition(int n, int m, std::mt19937_64& rng);

// Block i becomes the sum of its member terms with the spec's coefficients,
// in canonical block order. Blocks of zero atoms yield empty operators.
std::vector<PauliOperator> generators_from_partition(const HamiltonianSpec& spec,
                                                     const Partition& partition);

} // namespace lierank
