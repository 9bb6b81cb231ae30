#include "gsbc/monoid.hpp"

#include <algorithm>
#include <cstdlib>

namespace gsbc {

IndexSet make_index_set(std::vector<Index> values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

bool index_set_contains(const IndexSet& s, Index i) {
    return std::binary_search(s.begin(), s.end(), i);
}

bool IndexMonoid::contains(Index i) const {
    return kind_ == MonoidKind::Integers || i >= 0;
}

Index IndexMonoid::op(Index g, Index h) const {
    if (!contains(g) || !contains(h))
        throw ArithmeticRangeError("monoid operand outside " + name());
    Index out = 0;
    if (__builtin_add_overflow(g, h, &out))
        throw ArithmeticRangeError("index addition overflow");
    return out;
}

IndexSet IndexMonoid::translate_set(Index g, const IndexSet& n) const {
    IndexSet out;
    out.reserve(n.size());
    for (Index i : n)
        out.push_back(op(g, i));
    // Adding a constant preserves ascending order.
    return out;
}

std::int64_t IndexMonoid::distance(Index i, Index j) {
    std::int64_t d = 0;
    if (__builtin_sub_overflow(i, j, &d))
        throw ArithmeticRangeError("index distance overflow");
    if (d == INT64_MIN)
        throw ArithmeticRangeError("index distance overflow");
    return d < 0 ? -d : d;
}

Index IndexMonoid::probe_index(std::int64_t k) const {
    if (k < 0)
        throw ArithmeticRangeError("probe rank must be nonnegative");
    if (kind_ == MonoidKind::Naturals)
        return k;
    if (k == 0)
        return 0;
    return (k % 2 == 1) ? (k + 1) / 2 : -(k / 2);
}

std::int64_t IndexMonoid::probe_rank(Index i) const {
    if (kind_ == MonoidKind::Naturals) {
        if (i < 0)
            throw ArithmeticRangeError("negative index has no rank in N");
        return i;
    }
    if (i == 0)
        return 0;
    return i > 0 ? 2 * i - 1 : -2 * i;
}

IndexSet IndexMonoid::ball(std::int64_t radius) const {
    if (radius < 0)
        throw ArithmeticRangeError("ball radius must be nonnegative");
    IndexSet out;
    Index lo = kind_ == MonoidKind::Naturals ? 0 : -radius;
    for (Index i = lo; i <= radius; ++i)
        out.push_back(i);
    return out;
}

std::string IndexMonoid::name() const {
    return kind_ == MonoidKind::Naturals ? "N" : "Z";
}

IndexMonoid IndexMonoid::from_name(std::string_view name) {
    if (name == "N")
        return naturals();
    if (name == "Z")
        return integers();
    throw ParseError("unknown monoid name: " + std::string(name));
}

} // namespace gsbc
