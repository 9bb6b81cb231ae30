/* chl.hpp -- the verification suite around the sliding-block-code
 * characterization: a shift-commutation falsifier, a local-determination
 * checker, a partition learner that rebuilds the defining cylinder
 * partition from a black-box map, and bounded-radius classification. */

#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "gsbc/codes.hpp"
#include "gsbc/rng.hpp"

namespace gsbc {

// ---------------------------------------------------------------------------
// Random configurations inside a space

struct SampleOptions {
    int max_prefix = 8;   // prefix / core length bound
    int max_period = 3;   // period length bound
    Symbol max_symbol = 5;
    int attempts = 64;    // rejection budget for forbidden-pattern spaces
};

// Seeded, reproducible sample of a finitely described configuration lying
// in the space; nullopt when rejection sampling runs out of attempts.
std::optional<Config> sample_config(Rng& rng, const ShiftSpace& space, const SampleOptions& opt);

// ---------------------------------------------------------------------------
// Shift commutation

struct CommutationOptions {
    int samples = 200;
    IndexSet shift_range;      // pairs (g, h) range over this set
    std::uint64_t seed = 42;
    std::int64_t budget = kDefaultBudget;
    SampleOptions sampling;
};

struct CommutationCounterexample {
    Config x;
    Index g = 0;
    Index h = 0;
    Symbol lhs = 0; // eval(shift(h, x), g)
    Symbol rhs = 0; // eval(x, g + h)
};

// A triple whose evaluation failed on either side; not a counterexample.
struct CommutationFinding {
    Config x;
    Index g = 0;
    Index h = 0;
    EvalOutcome lhs;
    EvalOutcome rhs;
};

struct CommutationReport {
    std::size_t tested = 0; // (x, g, h) triples fully evaluated
    std::optional<CommutationCounterexample> counterexample;
    std::vector<CommutationFinding> findings;

    bool passed() const { return !counterexample.has_value(); }
};

// Compares eval(m, shift(h, x), g) with eval(m, x, g + h) over seeded random
// configurations; stops at the first counterexample.
CommutationReport check_commutation(const CodeMap& m, const CommutationOptions& opt);

// ---------------------------------------------------------------------------
// Local determination

struct Determined {
    Symbol output = 0;
    Pattern certificate; // the pattern itself: all tested extensions agreed
};

struct SplitResult {
    Pattern pattern;
    Config extension1;
    Config extension2;
    Symbol output1 = 0;
    Symbol output2 = 0;
};

struct Unresolved {
    std::size_t completions_tested = 0;
    std::vector<std::string> diagnostics;
};

using DeterminationResult = std::variant<Determined, SplitResult, Unresolved>;

struct DeterminationOptions {
    Symbol max_symbol = 3;
    // Tail periods closing each completion; empty means the default constant
    // tails of every symbol <= max_symbol. Completions outside the ambient
    // space are skipped.
    std::vector<std::vector<Symbol>> tail_periods;
    std::int64_t budget = kDefaultBudget;
};

// Evaluates the map at the identity on completions of p: every symbol
// <= max_symbol on the first probe-order index outside the domain, closed
// with every tail period. All agree -> Determined; two disagree -> Split;
// evaluation failures or no valid completions -> Unresolved.
DeterminationResult check_determination(const CodeMap& m, const Pattern& p,
                                        const DeterminationOptions& opt);

// Learner-facing form: `skip` marks indices already found irrelevant, and
// the probe reports whether the outputs depended on the varied index.
struct DeterminationProbe {
    DeterminationResult result;
    Index next_index = 0; // the probe-order index the completions varied
    bool depends_on_next = false;
};

DeterminationProbe probe_determination(const CodeMap& m, const Pattern& p, const IndexSet& skip,
                                       const DeterminationOptions& opt);

// ---------------------------------------------------------------------------
// Partition learning

struct LearnedPartition {
    ExplicitPartition partition;
    std::int64_t max_radius = 0;
    Symbol max_symbol = 0;
    std::vector<Pattern> unresolved; // no certificate at this scale
};

// Rebuilds the cylinder partition of the map's identity coordinate by
// breadth-first refinement along probe order up to the given radius:
// determined patterns become cylinders (and are pruned), split patterns are
// refined on the index the outputs depend on, irrelevant indices are
// skipped without branching.
LearnedPartition learn_partition(const CodeMap& m, std::int64_t max_radius, Symbol max_symbol,
                                 std::int64_t budget = kDefaultBudget);

// ---------------------------------------------------------------------------
// Radius classification

struct RadiusBounded {
    std::int64_t radius = 0;
};

struct RadiusExceeds {
    std::int64_t bound = 0;
    Config witness;
    Index g = 0;
    std::int64_t observed_radius = 0;
};

struct RadiusFinding {
    Pattern pattern;
    EvalOutcome failure;
};

struct RadiusClassification {
    std::variant<RadiusBounded, RadiusExceeds> result;
    std::vector<RadiusFinding> findings;

    const RadiusBounded* bounded() const { return std::get_if<RadiusBounded>(&result); }
    const RadiusExceeds* exceeds() const { return std::get_if<RadiusExceeds>(&result); }
};

// Evaluates the variable radius over every language pattern on the radius-R
// ball (symbols <= max_symbol, completed with a space-compatible constant
// tail). Returns the maximum when all witnesses stay inside the ball, else
// the first configuration whose match reaches past it.
RadiusClassification classify_radius(const GeneralizedCode& c, std::int64_t max_radius,
                                     Symbol max_symbol, std::int64_t budget = kDefaultBudget);

} // namespace gsbc
