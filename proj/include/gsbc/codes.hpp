/* codes.hpp -- sliding block codes: the classical neighborhood-plus-rule
 * form, the generalized cylinder-partition form, opaque black-box maps, a
 * unified evaluation contract, radii, embedding and composition. */

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gsbc/cylinder.hpp"

namespace gsbc {

class RuleIncompleteError : public Error {
public:
    explicit RuleIncompleteError(Pattern missing)
        : Error("local rule has no entry for pattern '" + missing.to_string() + "'"),
          missing_(std::move(missing)) {}
    const Pattern& missing() const { return missing_; }

private:
    Pattern missing_;
};

/**
 * A local rule on the neighborhood words: either a finite table keyed by
 * the symbol tuple in neighborhood order, or a pure function for unbounded
 * alphabets. Tables are authoritative for validation; functions back the
 * built-ins.
 */
class LocalRule {
public:
    using Table = std::map<std::vector<Symbol>, Symbol>;
    using Fn = std::function<Symbol(const Pattern&)>;

    static LocalRule table(Table entries);
    static LocalRule function(Fn fn);

    bool is_table() const { return table_.has_value(); }
    const Table* as_table() const { return table_ ? &*table_ : nullptr; }

    // Rule application to a word with domain = neighborhood; table misses
    // throw RuleIncompleteError.
    Symbol apply(const Pattern& word) const;

private:
    std::optional<Table> table_;
    Fn fn_;
};

struct ClassicalCode {
    IndexSet neighborhood;
    LocalRule local_rule;
    ShiftSpace domain_space;
};

struct GeneralizedCode {
    std::variant<ExplicitPartition, ProceduralPartition> partition;
    ShiftSpace domain_space;
    std::int64_t default_budget = kDefaultBudget;

    const ExplicitPartition* explicit_partition() const {
        return std::get_if<ExplicitPartition>(&partition);
    }
    const ProceduralPartition* procedural_partition() const {
        return std::get_if<ProceduralPartition>(&partition);
    }
};

enum class EvalStatus { Ok, NoMatch, BudgetExceeded, RuleIncomplete, Undecidable };

struct EvalOutcome {
    EvalStatus status = EvalStatus::Ok;
    Symbol value = 0;
    IndexSet witness; // coordinates that determined the value, when known
    std::string note; // diagnostic annotation on failure

    bool ok() const { return status == EvalStatus::Ok; }
};

const char* eval_status_name(EvalStatus s);

EvalOutcome eval_outcome_from_match(const MatchResult& m);

// Thrown by the convenience wrappers that promise a plain Symbol.
class EvalError : public Error {
public:
    EvalError(EvalStatus status, std::string what) : Error(std::move(what)), status_(status) {}
    EvalStatus status() const { return status_; }

private:
    EvalStatus status_;
};

struct BlackBoxMap {
    std::string name;
    std::function<EvalOutcome(const Config&, Index, std::int64_t budget)> eval; // pure
    ShiftSpace domain_space;
};

/**
 * One evaluation contract over the three code forms. eval(x, g) is the g-th
 * coordinate of the image configuration; failures come back as outcomes,
 * never as exceptions.
 */
class CodeMap {
public:
    CodeMap(std::string name, ClassicalCode code);
    CodeMap(std::string name, GeneralizedCode code);
    explicit CodeMap(BlackBoxMap map);

    const std::string& name() const { return name_; }
    const ShiftSpace& domain_space() const;

    const ClassicalCode* as_classical() const { return std::get_if<ClassicalCode>(&*impl_); }
    const GeneralizedCode* as_generalized() const { return std::get_if<GeneralizedCode>(&*impl_); }
    const BlackBoxMap* as_black_box() const { return std::get_if<BlackBoxMap>(&*impl_); }

    EvalOutcome eval(const Config& x, Index g, std::int64_t budget = kDefaultBudget) const;

    // The whole map as an opaque oracle (used by the learning suite).
    BlackBoxMap as_oracle() const;

private:
    std::string name_;
    std::shared_ptr<const std::variant<ClassicalCode, GeneralizedCode, BlackBoxMap>> impl_;
};

// ---------------------------------------------------------------------------
// Spec operations. The throwing forms return plain symbols; CodeMap::eval is
// the outcome-returning route.

Symbol eval_classical(const ClassicalCode& c, const Config& x, Index g);
Symbol eval_generalized(const GeneralizedCode& c, const Config& x, Index g,
                        std::int64_t budget = kDefaultBudget);

// Pointwise evaluation over a window; failures are annotated with the index.
Pattern eval_window(const CodeMap& m, const Config& x, const IndexSet& d,
                    std::int64_t budget = kDefaultBudget);

// max distance from the identity over the neighborhood; 0 for an empty one.
std::int64_t classical_radius(const ClassicalCode& c);

// max distance from the identity over the match witness at (x, g).
std::int64_t variable_radius(const GeneralizedCode& c, const Config& x, Index g,
                             std::int64_t budget = kDefaultBudget);
MatchResult match_generalized(const GeneralizedCode& c, const Config& x, Index g,
                              std::int64_t budget = kDefaultBudget);

// One cylinder (domain = neighborhood) per language word with symbols
// <= max_symbol, grouped by output. Agrees with eval_classical wherever
// both are defined.
GeneralizedCode classical_to_generalized(const ClassicalCode& c, Symbol max_symbol);

// Demand-driven composition outer(inner(x)); inner coordinates are computed
// lazily, memoized per call, and billed against one combined budget.
CodeMap compose(const CodeMap& outer, const CodeMap& inner);

// ---------------------------------------------------------------------------
// Built-in maps.

// The dereferencing map y_j = x_{j + x_j} on the full shift over N: a
// generalized sliding block code with unbounded variable radius. Returned
// both as the procedural partition (probe 0; on n = 0 emit 0, else probe n
// and emit its value) and as the raw formula; the two must agree everywhere.
CodeMap example1_code();
CodeMap example1_formula();

// The running-supremum map y_j = max_{i >= j} x_i on a union of finite-
// subalphabet full shifts over N: shift commuting but with no finite local
// determination. Exact on eventually periodic configs.
CodeMap example2_map(std::vector<std::vector<Symbol>> blocks);

// Greedy semi-deciding prober for the supremum map: scans until it sees the
// block maximum, so it exceeds any budget on configs that stay below it.
CodeMap example2_prober(std::vector<std::vector<Symbol>> blocks);

// Identity code: neighborhood {0}, rule w -> w(0).
CodeMap identity_code(MonoidKind kind);

// Coordinate-sum code on N: neighborhood {0,1}, rule w -> w(0) + w(1).
CodeMap sum_code();

// Deliberately non-commuting fixture: eval(x, g) = x_0 regardless of g.
CodeMap broken_ignores_position();

} // namespace gsbc
