/* monoid.hpp -- the index monoids (N,+) and (Z,+): operation, identity,
 * translation-invariant metric, and the canonical probe enumeration. */

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gsbc/errors.hpp"

namespace gsbc {

using Index = std::int64_t;

// Finite set of indices, kept sorted ascending and duplicate-free.
using IndexSet = std::vector<Index>;

IndexSet make_index_set(std::vector<Index> values);
bool index_set_contains(const IndexSet& s, Index i);

enum class MonoidKind { Naturals, Integers };

/**
 * The index monoid: (N,+) or (Z,+) with identity 0 and metric |i-j|.
 *
 * probe_index(k) enumerates the monoid bijectively with nondecreasing
 * distance from the identity: N -> 0,1,2,...  Z -> 0,1,-1,2,-2,...
 * probe_rank is its inverse.
 */
class IndexMonoid {
public:
    explicit IndexMonoid(MonoidKind kind) : kind_(kind) {}

    static IndexMonoid naturals() { return IndexMonoid(MonoidKind::Naturals); }
    static IndexMonoid integers() { return IndexMonoid(MonoidKind::Integers); }

    MonoidKind kind() const { return kind_; }
    Index identity() const { return 0; }
    bool contains(Index i) const;

    // g + h, with explicit range errors on overflow or out-of-domain operands.
    Index op(Index g, Index h) const;

    // {g + i : i in n}, sorted; same cardinality as n.
    IndexSet translate_set(Index g, const IndexSet& n) const;

    static std::int64_t distance(Index i, Index j);

    Index probe_index(std::int64_t k) const;
    std::int64_t probe_rank(Index i) const;

    // All indices at distance <= radius from the identity, sorted ascending.
    IndexSet ball(std::int64_t radius) const;

    std::string name() const; // "N" or "Z"
    static IndexMonoid from_name(std::string_view name);

    friend bool operator==(const IndexMonoid&, const IndexMonoid&) = default;

private:
    MonoidKind kind_;
};

} // namespace gsbc
