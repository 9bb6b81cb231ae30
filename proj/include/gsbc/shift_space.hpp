/* shift_space.hpp -- shift spaces with finitely checkable membership and
 * desk-scale language enumeration. Three variants: the full shift, a shift
 * defined by finitely many forbidden patterns, and a disjoint union of
 * full shifts over finite subalphabets. */

#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "gsbc/config.hpp"
#include "gsbc/monoid.hpp"

namespace gsbc {

// Outcome of a semi-decidable question. Undecided means the search budget
// ran out before either a witness or a refutation was found.
enum class Decision { Yes, No, Undecided };

inline constexpr std::int64_t kCompletionBudget = 10000;
inline constexpr std::size_t kEnumerationGuard = 1000000;

struct WordEnumeration {
    std::vector<Pattern> words;     // accepted, lexicographic by symbol tuple
    std::vector<Pattern> undecided; // membership ran out of budget
};

struct Completion {
    Decision decision = Decision::Undecided;
    std::optional<Config> witness; // a configuration extending the pattern, when found
};

class ShiftSpace {
public:
    struct FullShift {};
    struct ForbiddenPatterns {
        std::vector<Pattern> patterns;
    };
    struct SubalphabetUnion {
        std::vector<std::vector<Symbol>> blocks; // finite, nonempty, pairwise disjoint
    };

    ShiftSpace() : monoid_(MonoidKind::Naturals) {} // full shift over N

    static ShiftSpace full(MonoidKind kind);
    static ShiftSpace forbidden(MonoidKind kind, std::vector<Pattern> patterns);
    static ShiftSpace subalphabets(MonoidKind kind, std::vector<std::vector<Symbol>> blocks);

    const IndexMonoid& monoid() const { return monoid_; }

    bool is_full() const { return std::holds_alternative<FullShift>(repr_); }
    const ForbiddenPatterns* as_forbidden() const { return std::get_if<ForbiddenPatterns>(&repr_); }
    const SubalphabetUnion* as_subalphabets() const { return std::get_if<SubalphabetUnion>(&repr_); }

    // Does the pattern occur in some configuration of the space?
    Decision pattern_in_language(const Pattern& p, std::int64_t budget = kCompletionBudget) const;

    // pattern_in_language plus, on Yes, an explicit extending configuration.
    Completion complete_pattern(const Pattern& p, std::int64_t budget = kCompletionBudget) const;

    // Exact membership for finitely described configs; rejects generators.
    bool config_in_space(const Config& x) const;

    // All patterns with the given domain and symbols <= max_symbol that lie
    // in the language. Guarded: (max_symbol+1)^|d| must stay desk-scale.
    WordEnumeration enumerate_words(const IndexSet& d, Symbol max_symbol,
                                    std::int64_t budget = kCompletionBudget) const;

private:
    explicit ShiftSpace(MonoidKind kind) : monoid_(kind) {}

    bool has_forbidden_occurrence(const Config& x) const;

    IndexMonoid monoid_;
    std::variant<FullShift, ForbiddenPatterns, SubalphabetUnion> repr_;
};

// Checked guard for brute-force enumerations: (max_symbol+1)^cells.
std::size_t enumeration_size_guard(Symbol max_symbol, std::size_t cells);

} // namespace gsbc
