#include "lierank/partitions.hpp"

#include <algorithm>

namespace lierank {

namespace {

void check_range(int n, int m) {
    if (n < 1 || m < 1 || m > n)
        throw std::invalid_argument("partition blocks out of range: n=" + std::to_string(n) +
                                    " m=" + std::to_string(m));
}

// S(k, j) for k <= n, j <= m
std::vector<std::vector<BigInt>> stirling_table(int n, int m) {
    std::vector<std::vector<BigInt>> table(static_cast<std::size_t>(n) + 1,
                                           std::vector<BigInt>(static_cast<std::size_t>(m) + 1));
    table[0][0] = 1;
    for (int k = 1; k <= n; ++k) {
        for (int j = 1; j <= std::min(k, m); ++j)
            table[k][j] = table[k - 1][j - 1] + j * table[k - 1][j];
    }
    return table;
}

BigInt uniform_below(const BigInt& bound, std::mt19937_64& rng) {
    if (bound <= 1)
        return 0;
    const unsigned bits = boost::multiprecision::msb(bound) + 1;
    const unsigned chunks = (bits + 63) / 64;
    while (true) {
        BigInt v = 0;
        for (unsigned i = 0; i < chunks; ++i) {
            v <<= 64;
            v |= rng();
        }
        v >>= chunks * 64 - bits;
        if (v < bound)
            return v;
    }
}

} // namespace

Partition Partition::from_blocks(int n_items, std::vector<std::vector<int>> blocks) {
    Partition p;
    p.n_items = n_items;
    p.blocks = std::move(blocks);
    std::vector<bool> seen(static_cast<std::size_t>(n_items), false);
    std::size_t covered = 0;
    for (auto& block : p.blocks) {
        if (block.empty())
            throw std::invalid_argument("partition block is empty");
        std::sort(block.begin(), block.end());
        for (int idx : block) {
            if (idx < 0 || idx >= n_items)
                throw std::invalid_argument("partition index out of range");
            if (seen[static_cast<std::size_t>(idx)])
                throw std::invalid_argument("partition blocks overlap");
            seen[static_cast<std::size_t>(idx)] = true;
            ++covered;
        }
    }
    if (covered != static_cast<std::size_t>(n_items))
        throw std::invalid_argument("partition does not cover all items");
    std::sort(p.blocks.begin(), p.blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return p;
}

Partition Partition::single_block(int n_items) {
    std::vector<int> all(static_cast<std::size_t>(n_items));
    for (int i = 0; i < n_items; ++i)
        all[static_cast<std::size_t>(i)] = i;
    return from_blocks(n_items, {all});
}

Partition Partition::singletons(int n_items) {
    std::vector<std::vector<int>> blocks;
    blocks.reserve(static_cast<std::size_t>(n_items));
    for (int i = 0; i < n_items; ++i)
        blocks.push_back({i});
    return from_blocks(n_items, std::move(blocks));
}

std::string Partition::key() const {
    std::string out;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (b)
            out.push_back('|');
        for (std::size_t i = 0; i < blocks[b].size(); ++i) {
            if (i)
                out.push_back(',');
            out += std::to_string(blocks[b][i]);
        }
    }
    return out;
}

BigInt count_partitions(int n, int m) {
    check_range(n, m);
    return stirling_table(n, m)[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)];
}

Partition sample_partition(int n, int m, std::mt19937_64& rng) {
    check_range(n, m);
    const auto table = stirling_table(n, m);
    std::vector<bool> opener(static_cast<std::size_t>(n), false);
    std::vector<int> joiner(static_cast<std::size_t>(n), 0);
    int k = n, j = m;
    while (k > 0) {
        if (k == j) {
            for (int i = 0; i < k; ++i)
                opener[static_cast<std::size_t>(i)] = true;
            break;
        }
        // item k-1 either opens its own block or joins one of the j blocks
        // formed by the first k-1 items; the residual of the draw selects
        // which block, keeping the sample exactly uniform
        const BigInt u = uniform_below(table[k][j], rng);
        const BigInt& open_weight = table[k - 1][j - 1];
        if (u < open_weight) {
            opener[static_cast<std::size_t>(k - 1)] = true;
            --k;
            --j;
        } else {
            joiner[static_cast<std::size_t>(k - 1)] =
                static_cast<int>((u - open_weight) / table[k - 1][j]);
            --k;
        }
    }
    std::vector<std::vector<int>> blocks;
    for (int i = 0; i < n; ++i) {
        if (opener[static_cast<std::size_t>(i)])
            blocks.emplace_back(1, i);
        else
            blocks[static_cast<std::size_t>(joiner[static_cast<std::size_t>(i)])].push_back(i);
    }
    return Partition::from_blocks(n, std::move(blocks));
}

std::vector<PauliOperator> generators_from_partition(const HamiltonianSpec& spec,
                                                     const Partition& partition) {
    if (partition.n_items != static_cast<int>(spec.n_terms()))
        throw SizeMismatchError("partition size differs from Hamiltonian term count");
    std::vector<PauliOperator> generators;
    generators.reserve(partition.blocks.size());
    for (const auto& block : partition.blocks) {
        PauliOperator op(spec.n_qubits);
        for (int idx : block)
            op += spec.terms[static_cast<std::size_t>(idx)].op;
        generators.push_back(std::move(op));
    }
    return generators;
}

} // namespace lierank
