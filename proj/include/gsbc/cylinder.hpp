/* cylinder.hpp -- cylinder sets and cylinder partitions {C_b}: explicit
 * cylinder lists per output symbol, procedural adaptive probers, compiled
 * decision-tree matchers, and partition validation. */

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gsbc/config.hpp"
#include "gsbc/shift_space.hpp"

namespace gsbc {

inline constexpr std::int64_t kDefaultBudget = 256;
inline constexpr int kDefaultTreeDepthLimit = 64;

// The cylinder [pattern]: all configurations agreeing with the pattern on
// its domain. An empty domain denotes the whole space.
struct Cylinder {
    Pattern pattern;

    friend bool operator==(const Cylinder&, const Cylinder&) = default;
};

bool cylinder_contains(const Cylinder& c, const Config& x);

// True iff the two cylinders can hold a common configuration of the space:
// compatible assignments whose union lies in the language.
Decision cylinders_jointly_satisfiable(const Cylinder& a, const Cylinder& b,
                                       const ShiftSpace& space);

struct PartitionEntry {
    Symbol output = 0;
    std::vector<Cylinder> cylinders;
};

// Position of one cylinder within a partition, for reports.
struct CylinderRef {
    Symbol output = 0;
    std::size_t entry = 0;
    std::size_t cylinder = 0;
};

/**
 * {C_b}: one entry per output symbol, each C_b a finite union of cylinders.
 * Cylinders with the same output may overlap; deterministic matching scans
 * by ascending output symbol, then authoring order.
 */
class ExplicitPartition {
public:
    ExplicitPartition(std::vector<PartitionEntry> entries, ShiftSpace space);

    // The match order holds pointers into entries_, so copies rebuild it;
    // moves keep element addresses and need no fixup.
    ExplicitPartition(const ExplicitPartition& other);
    ExplicitPartition& operator=(const ExplicitPartition& other);
    ExplicitPartition(ExplicitPartition&&) = default;
    ExplicitPartition& operator=(ExplicitPartition&&) = default;

    const std::vector<PartitionEntry>& entries() const { return entries_; }
    const ShiftSpace& space() const { return space_; }

    struct OrderedCylinder {
        const Cylinder* cylinder;
        Symbol output;
        CylinderRef ref;
    };
    const std::vector<OrderedCylinder>& match_order() const { return order_; }

    std::size_t cylinder_count() const;
    std::int64_t max_cylinder_radius() const;

private:
    void rebuild_order();

    std::vector<PartitionEntry> entries_;
    ShiftSpace space_;
    std::vector<OrderedCylinder> order_;
};

/**
 * Coordinate oracle handed to a procedural prober. Probes are cached, so
 * re-probing an index is free; each distinct index costs one budget unit.
 */
class ProbeOracle {
public:
    virtual ~ProbeOracle() = default;
    virtual Symbol probe(Index i) = 0;
};

using Prober = std::function<Symbol(ProbeOracle&)>;

// A partition given procedurally: a pure prober that inspects finitely many
// coordinates through the oracle and then emits the output symbol. Its
// level sets are unions of cylinders by construction.
struct ProceduralPartition {
    std::string name;
    Prober prober;
    std::int64_t default_budget = kDefaultBudget;
};

enum class MatchStatus { Matched, NoMatch, BudgetExceeded };

struct MatchResult {
    MatchStatus status = MatchStatus::NoMatch;
    Symbol output = 0;
    // Matched: the witness cylinder domain / probe trace (feeds the variable
    // radius). NoMatch: union of probed domains. BudgetExceeded: trace so far.
    IndexSet witness;
    // Set by pattern matching when a probe fell outside the pattern's domain.
    std::optional<Index> missing_probe;
};

MatchResult match(const ExplicitPartition& p, const Config& x, std::int64_t budget = kDefaultBudget);
MatchResult match(const ProceduralPartition& p, const Config& x, std::int64_t budget = kDefaultBudget);

// Match a finite pattern instead of a configuration: only cylinders whose
// domain lies inside the pattern's domain can fire.
MatchResult match_pattern(const ExplicitPartition& p, const Pattern& w, std::int64_t budget = kDefaultBudget);

/**
 * Decision-tree form of an explicit partition. Nodes probe one index each;
 * edges carry symbol labels plus an optional else edge; no index repeats on
 * a root-to-leaf path. Match results equal first-match list scanning.
 */
class PartitionMatcher {
public:
    struct Node {
        bool leaf = false;
        std::optional<Symbol> output; // leaf payload; nullopt = NoMatch leaf
        Index probe = 0;
        std::vector<std::pair<Symbol, std::size_t>> edges;
        std::optional<std::size_t> else_edge;
    };

    static PartitionMatcher compile(const ExplicitPartition& p,
                                    int depth_limit = kDefaultTreeDepthLimit);

    MatchResult match_config(const Config& x) const;
    MatchResult match_pattern(const Pattern& w) const;

    const std::vector<Node>& nodes() const { return nodes_; }
    int depth() const;

    // Walk the tree as a prober: probes the oracle along one path.
    Prober as_prober() const;

private:
    std::vector<Node> nodes_; // nodes_[0] is the root
};

struct ValidationReport {
    std::vector<std::pair<CylinderRef, CylinderRef>> disjointness_violations;
    std::vector<std::pair<CylinderRef, CylinderRef>> disjointness_undecided;
    std::vector<Pattern> uncovered;       // ball patterns no fitting cylinder matches
    std::vector<Pattern> undecided_words; // language membership ran out of budget
    std::size_t pairs_checked = 0;
    std::size_t patterns_checked = 0;

    bool disjoint() const { return disjointness_violations.empty(); }
};

// (a) exact pairwise cross-output disjointness; (b) coverage of every
// language pattern on the radius-R ball with symbols <= max_symbol by some
// cylinder whose domain fits the ball. Uncovered patterns are findings, not
// errors: they may simply need a larger scale.
ValidationReport validate_partition(const ExplicitPartition& p, std::int64_t radius,
                                    Symbol max_symbol);

struct ExtractResult {
    ExplicitPartition partition;
    std::vector<Pattern> unresolved; // probe paths cut off by the depth limit
};

// Finite slice of a procedural partition: runs the prober against every
// symbol choice <= max_symbol along probe paths of length <= max_depth.
ExtractResult extract_cylinders(const ProceduralPartition& p, const ShiftSpace& space,
                                int max_depth, Symbol max_symbol);

} // namespace gsbc
