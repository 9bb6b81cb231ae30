/* support.hpp -- shared test fixtures: the explicit slice of the
 * dereferencing map's partition and seeded random partition generators. */

#pragma once

#include <functional>
#include <map>

#include "gsbc/codes.hpp"
#include "gsbc/rng.hpp"

namespace gsbc::testing {

// Explicit finite slice of the dereferencing map's cylinder partition:
// C_0 = [0]_0 and, for 1 <= n <= n_max and b <= b_max, the cylinder fixing
// n at index 0 and b at index n, with output b.
inline ExplicitPartition example1_slice(Symbol n_max, Symbol b_max) {
    std::map<Symbol, std::vector<Cylinder>> by_output;
    by_output[0].push_back(Cylinder{Pattern::from_pairs({{0, 0}})});
    for (Symbol b = 0; b <= b_max; ++b) {
        for (Symbol n = 1; n <= n_max; ++n)
            by_output[b].push_back(Cylinder{Pattern::from_pairs({{0, n}, {n, b}})});
    }
    std::vector<PartitionEntry> entries;
    for (auto& [output, cylinders] : by_output)
        entries.push_back({output, std::move(cylinders)});
    return ExplicitPartition(std::move(entries), ShiftSpace::full(MonoidKind::Naturals));
}

// Complete disjoint tiling of the full shift at scale: one fixed random
// index script; every path either stops at a leaf (a cylinder with a random
// output) or splits on the script's next index over all symbols <= max_symbol.
inline ExplicitPartition random_tiling_partition(Rng& rng, IndexSet pool, Symbol max_symbol,
                                                 Symbol max_output, const ShiftSpace& space) {
    for (std::size_t k = pool.size(); k > 1; --k) {
        auto j = static_cast<std::size_t>(rng.below(static_cast<std::int64_t>(k)));
        std::swap(pool[k - 1], pool[j]);
    }
    std::map<Symbol, std::vector<Cylinder>> by_output;
    std::function<void(std::size_t, const Pattern&)> go = [&](std::size_t depth,
                                                              const Pattern& constraints) {
        bool leaf = depth == pool.size() || (depth > 0 && rng.chance(0.45)) ||
                    (depth == 0 && rng.chance(0.05));
        if (leaf) {
            by_output[rng.between(0, max_output)].push_back(Cylinder{constraints});
            return;
        }
        for (Symbol s = 0; s <= max_symbol; ++s)
            go(depth + 1, constraints.with(pool[depth], s));
    };
    go(0, Pattern());
    std::vector<PartitionEntry> entries;
    for (auto& [output, cylinders] : by_output)
        entries.push_back({output, std::move(cylinders)});
    return ExplicitPartition(std::move(entries), space);
}

// Arbitrary (possibly overlapping, possibly incomplete) random partition.
inline ExplicitPartition random_loose_partition(Rng& rng, const IndexSet& pool, Symbol max_symbol,
                                                Symbol max_output, const ShiftSpace& space) {
    std::vector<PartitionEntry> entries;
    auto outputs = static_cast<int>(rng.between(1, max_output + 1));
    for (int e = 0; e < outputs; ++e) {
        PartitionEntry entry;
        entry.output = rng.between(0, max_output);
        auto cylinders = static_cast<int>(rng.between(0, 3));
        for (int c = 0; c < cylinders; ++c) {
            Pattern p;
            for (Index i : pool) {
                if (rng.chance(0.5))
                    p = p.with(i, rng.between(0, max_symbol));
            }
            entry.cylinders.push_back(Cylinder{p});
        }
        entries.push_back(std::move(entry));
    }
    return ExplicitPartition(std::move(entries), space);
}

} // namespace gsbc::testing
