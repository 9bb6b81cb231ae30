#include "gsbc/shift_space.hpp"

#include <algorithm>
#include <set>

namespace gsbc {

std::size_t enumeration_size_guard(Symbol max_symbol, std::size_t cells) {
    if (max_symbol < 0)
        throw ArithmeticRangeError("max_symbol must be nonnegative");
    std::size_t base = static_cast<std::size_t>(max_symbol) + 1;
    std::size_t total = 1;
    for (std::size_t k = 0; k < cells; ++k) {
        if (total > kEnumerationGuard / base)
            throw SizeGuardError("enumeration of " + std::to_string(cells) + " cells over " +
                                 std::to_string(base) + " symbols exceeds the guard");
        total *= base;
    }
    return total;
}

ShiftSpace ShiftSpace::full(MonoidKind kind) {
    ShiftSpace s(kind);
    s.repr_ = FullShift{};
    return s;
}

ShiftSpace ShiftSpace::forbidden(MonoidKind kind, std::vector<Pattern> patterns) {
    ShiftSpace s(kind);
    for (const Pattern& p : patterns) {
        for (const auto& e : p.entries()) {
            if (!s.monoid_.contains(e.first))
                throw ArithmeticRangeError("forbidden pattern index outside " + s.monoid_.name());
        }
    }
    s.repr_ = ForbiddenPatterns{std::move(patterns)};
    return s;
}

ShiftSpace ShiftSpace::subalphabets(MonoidKind kind, std::vector<std::vector<Symbol>> blocks) {
    if (blocks.empty())
        throw Error("subalphabet union needs at least one block");
    std::set<Symbol> seen;
    for (auto& block : blocks) {
        if (block.empty())
            throw Error("subalphabet blocks must be nonempty");
        std::sort(block.begin(), block.end());
        block.erase(std::unique(block.begin(), block.end()), block.end());
        for (Symbol s : block) {
            if (s < 0)
                throw Error("subalphabet symbols must be nonnegative");
            if (!seen.insert(s).second)
                throw Error("subalphabet blocks must be pairwise disjoint");
        }
    }
    ShiftSpace s(kind);
    s.repr_ = SubalphabetUnion{std::move(blocks)};
    return s;
}

namespace {

// Diameter and index extremes of a finite pattern domain.
struct DomainHull {
    Index lo = 0;
    Index hi = 0;
    bool empty = true;
};

DomainHull hull_of(const Pattern& p) {
    DomainHull h;
    if (p.empty())
        return h;
    h.empty = false;
    h.lo = p.entries().front().first;
    h.hi = p.entries().back().first;
    return h;
}

bool occurrence_at(const Config& x, const Pattern& f, Index g) {
    for (const auto& e : f.entries()) {
        if (x.get(g + e.first) != e.second)
            return false;
    }
    return true;
}

// Does the pattern itself already contain a translate of some forbidden
// pattern? (All coordinates of the translate must lie inside the domain.)
bool refuted_inside(const Pattern& p, const std::vector<Pattern>& forbidden,
                    const IndexMonoid& monoid) {
    DomainHull ph = hull_of(p);
    for (const Pattern& f : forbidden) {
        if (f.empty())
            return true; // the empty pattern occurs everywhere
        if (ph.empty)
            continue;
        DomainHull fh = hull_of(f);
        Index g_lo = ph.lo - fh.lo;
        Index g_hi = ph.hi - fh.hi;
        for (Index g = g_lo; g <= g_hi; ++g) {
            if (!monoid.contains(g))
                continue;
            bool all = true;
            for (const auto& e : f.entries()) {
                auto s = p.find(g + e.first);
                if (!s || *s != e.second) {
                    all = false;
                    break;
                }
            }
            if (all)
                return true;
        }
    }
    return false;
}

// The pattern's hull filled with one constant symbol, closed by a constant tail.
Config filled_config(MonoidKind kind, const Pattern& p, Symbol fill) {
    if (kind == MonoidKind::Naturals) {
        std::vector<Symbol> prefix;
        if (!p.empty()) {
            prefix.assign(static_cast<std::size_t>(p.entries().back().first) + 1, fill);
            for (const auto& e : p.entries())
                prefix[static_cast<std::size_t>(e.first)] = e.second;
        }
        return Config::eventually_periodic(std::move(prefix), {fill});
    }
    std::vector<Symbol> core;
    Index lo = 0;
    if (!p.empty()) {
        lo = p.entries().front().first;
        core.assign(static_cast<std::size_t>(p.entries().back().first - lo) + 1, fill);
        for (const auto& e : p.entries())
            core[static_cast<std::size_t>(e.first - lo)] = e.second;
    }
    return Config::bi_periodic({fill}, std::move(core), lo, {fill});
}

// Backtracking completion of a pattern within a forbidden-patterns space.
// Free window cells are tried with symbols 0,1,... up to one symbol past
// everything mentioned by the pattern or the forbidden list; that last
// symbol cannot participate in any occurrence, so the search is complete
// whenever the budget allows it to run to the end.
class CompletionSearch {
public:
    CompletionSearch(const ShiftSpace& space, const Pattern& p, std::int64_t budget)
        : space_(space), pattern_(p), budget_(budget) {
        const auto* fp = space.as_forbidden();
        max_diameter_ = 0;
        Symbol top = 0;
        for (const Pattern& f : fp->patterns) {
            DomainHull h = hull_of(f);
            if (!h.empty)
                max_diameter_ = std::max(max_diameter_, h.hi - h.lo);
            for (Symbol s : f.symbols())
                top = std::max(top, s);
        }
        for (Symbol s : p.symbols())
            top = std::max(top, s);
        fresh_ = top + 1;

        DomainHull ph = hull_of(p);
        if (space.monoid().kind() == MonoidKind::Naturals) {
            window_lo_ = 0;
            window_hi_ = (ph.empty ? 0 : ph.hi) + max_diameter_;
        } else {
            window_lo_ = (ph.empty ? 0 : ph.lo) - max_diameter_;
            window_hi_ = (ph.empty ? 0 : ph.hi) + max_diameter_;
        }
        for (Index i = window_lo_; i <= window_hi_; ++i) {
            auto s = p.find(i);
            window_.push_back(s.value_or(-1));
            if (!s)
                free_cells_.push_back(i - window_lo_);
        }
    }

    Completion run() {
        if (refuted_inside(pattern_, space_.as_forbidden()->patterns, space_.monoid()))
            return {Decision::No, std::nullopt};
        if (auto found = assign(0))
            return {Decision::Yes, found};
        return {exhausted_ ? Decision::Undecided : Decision::No, std::nullopt};
    }

private:
    bool spend() {
        if (budget_ <= 0) {
            exhausted_ = true;
            return false;
        }
        --budget_;
        return true;
    }

    // Any forbidden translate fully inside the assigned part of the window?
    bool window_violation() const {
        for (const Pattern& f : space_.as_forbidden()->patterns) {
            if (f.empty())
                return true;
            DomainHull fh = hull_of(f);
            for (Index g = window_lo_ - fh.lo; g + fh.hi <= window_hi_; ++g) {
                if (!space_.monoid().contains(g))
                    continue;
                bool all = true;
                for (const auto& e : f.entries()) {
                    Symbol have = window_[static_cast<std::size_t>(g + e.first - window_lo_)];
                    if (have != e.second) {
                        all = false;
                        break;
                    }
                }
                if (all)
                    return true;
            }
        }
        return false;
    }

    std::optional<Config> assign(std::size_t cell) {
        if (cell == free_cells_.size())
            return close_with_tail();
        for (Symbol s = 0; s <= fresh_; ++s) {
            if (!spend())
                return std::nullopt;
            window_[static_cast<std::size_t>(free_cells_[cell])] = s;
            if (!window_violation()) {
                if (auto found = assign(cell + 1))
                    return found;
                if (exhausted_)
                    break;
            }
        }
        window_[static_cast<std::size_t>(free_cells_[cell])] = -1;
        return std::nullopt;
    }

    std::optional<Config> close_with_tail() {
        for (Symbol tail = 0; tail <= fresh_; ++tail) {
            if (!spend())
                return std::nullopt;
            Config candidate = space_.monoid().kind() == MonoidKind::Naturals
                                   ? Config::eventually_periodic(window_, {tail})
                                   : Config::bi_periodic({tail}, window_, window_lo_, {tail});
            if (space_.config_in_space(candidate))
                return candidate;
        }
        return std::nullopt;
    }

    const ShiftSpace& space_;
    const Pattern& pattern_;
    std::int64_t budget_;
    bool exhausted_ = false;
    Symbol fresh_ = 0;
    std::int64_t max_diameter_ = 0;
    Index window_lo_ = 0;
    Index window_hi_ = 0;
    std::vector<Symbol> window_; // -1 marks an unassigned cell
    std::vector<Index> free_cells_;
};

} // namespace

Completion ShiftSpace::complete_pattern(const Pattern& p, std::int64_t budget) const {
    for (const auto& e : p.entries()) {
        if (!monoid_.contains(e.first))
            return {Decision::No, std::nullopt};
    }
    if (is_full())
        return {Decision::Yes, filled_config(monoid_.kind(), p, 0)};
    if (const auto* su = as_subalphabets()) {
        for (const auto& block : su->blocks) {
            bool inside = true;
            for (Symbol s : p.symbols()) {
                if (!std::binary_search(block.begin(), block.end(), s)) {
                    inside = false;
                    break;
                }
            }
            if (inside)
                return {Decision::Yes, filled_config(monoid_.kind(), p, block.front())};
        }
        return {Decision::No, std::nullopt};
    }
    CompletionSearch search(*this, p, budget);
    return search.run();
}

Decision ShiftSpace::pattern_in_language(const Pattern& p, std::int64_t budget) const {
    return complete_pattern(p, budget).decision;
}

bool ShiftSpace::has_forbidden_occurrence(const Config& x) const {
    const auto* fp = as_forbidden();
    if (const auto* ep = x.as_eventually_periodic()) {
        auto prefix_len = static_cast<std::int64_t>(ep->prefix.size());
        auto period_len = static_cast<std::int64_t>(ep->period.size());
        for (const Pattern& f : fp->patterns) {
            if (f.empty())
                return true;
            DomainHull h = hull_of(f);
            // Past the prefix the configuration repeats with the period, so
            // anchors beyond one extra period contribute nothing new.
            Index g_hi = prefix_len + 2 * period_len + (h.hi - h.lo);
            for (Index g = 0; g <= g_hi; ++g) {
                if (g + h.lo < 0)
                    continue;
                if (occurrence_at(x, f, g))
                    return true;
            }
        }
        return false;
    }
    const auto* bp = x.as_bi_periodic();
    Index core_end = bp->core_start + static_cast<std::int64_t>(bp->core.size());
    auto left_len = static_cast<std::int64_t>(bp->left_period.size());
    auto right_len = static_cast<std::int64_t>(bp->right_period.size());
    for (const Pattern& f : fp->patterns) {
        if (f.empty())
            return true;
        DomainHull h = hull_of(f);
        // One period of purely-left anchors, everything touching the core,
        // and one period of purely-right anchors cover all translates.
        Index g_lo = bp->core_start - h.hi - left_len;
        Index g_hi = core_end - h.lo + right_len;
        for (Index g = g_lo; g <= g_hi; ++g) {
            if (occurrence_at(x, f, g))
                return true;
        }
    }
    return false;
}

bool ShiftSpace::config_in_space(const Config& x) const {
    if (x.is_generator())
        throw NotDecidableError("membership of a generator-backed config is not decidable");
    if ((monoid_.kind() == MonoidKind::Naturals) != (x.as_eventually_periodic() != nullptr))
        throw Error("config kind does not match the space's monoid");
    if (is_full())
        return true;
    if (const auto* su = as_subalphabets()) {
        std::vector<Symbol> support = x.symbol_support();
        for (const auto& block : su->blocks) {
            bool inside = true;
            for (Symbol s : support) {
                if (!std::binary_search(block.begin(), block.end(), s)) {
                    inside = false;
                    break;
                }
            }
            if (inside)
                return true;
        }
        return false;
    }
    return !has_forbidden_occurrence(x);
}

WordEnumeration ShiftSpace::enumerate_words(const IndexSet& d, Symbol max_symbol,
                                            std::int64_t budget) const {
    enumeration_size_guard(max_symbol, d.size());
    WordEnumeration out;
    std::vector<Symbol> tuple(d.size(), 0);
    while (true) {
        std::vector<Pattern::Entry> entries;
        entries.reserve(d.size());
        for (std::size_t k = 0; k < d.size(); ++k)
            entries.emplace_back(d[k], tuple[k]);
        Pattern p = Pattern::from_pairs(std::move(entries));
        switch (pattern_in_language(p, budget)) {
        case Decision::Yes:
            out.words.push_back(std::move(p));
            break;
        case Decision::Undecided:
            out.undecided.push_back(std::move(p));
            break;
        case Decision::No:
            break;
        }
        // Odometer increment, most significant cell first for lexicographic order.
        std::size_t k = tuple.size();
        while (k > 0 && tuple[k - 1] == max_symbol)
            tuple[--k] = 0;
        if (k == 0)
            break;
        ++tuple[k - 1];
    }
    return out;
}

} // namespace gsbc
