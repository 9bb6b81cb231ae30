#include "gsbc/cylinder.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gsbc {

bool cylinder_contains(const Cylinder& c, const Config& x) {
    for (const auto& e : c.pattern.entries()) {
        if (x.get(e.first) != e.second)
            return false;
    }
    return true;
}

Decision cylinders_jointly_satisfiable(const Cylinder& a, const Cylinder& b,
                                       const ShiftSpace& space) {
    std::optional<Pattern> merged = merge_patterns(a.pattern, b.pattern);
    if (!merged)
        return Decision::No;
    return space.pattern_in_language(*merged);
}

// ---------------------------------------------------------------------------
// ExplicitPartition

ExplicitPartition::ExplicitPartition(std::vector<PartitionEntry> entries, ShiftSpace space)
    : entries_(std::move(entries)), space_(std::move(space)) {
    for (const PartitionEntry& e : entries_) {
        if (e.output < 0)
            throw Error("partition output symbols must be nonnegative");
    }
    rebuild_order();
}

ExplicitPartition::ExplicitPartition(const ExplicitPartition& other)
    : entries_(other.entries_), space_(other.space_) {
    rebuild_order();
}

ExplicitPartition& ExplicitPartition::operator=(const ExplicitPartition& other) {
    entries_ = other.entries_;
    space_ = other.space_;
    rebuild_order();
    return *this;
}

void ExplicitPartition::rebuild_order() {
    order_.clear();
    std::vector<std::size_t> by_output(entries_.size());
    for (std::size_t k = 0; k < entries_.size(); ++k)
        by_output[k] = k;
    std::stable_sort(by_output.begin(), by_output.end(), [this](std::size_t a, std::size_t b) {
        return entries_[a].output < entries_[b].output;
    });
    for (std::size_t k : by_output) {
        const PartitionEntry& e = entries_[k];
        for (std::size_t c = 0; c < e.cylinders.size(); ++c)
            order_.push_back({&e.cylinders[c], e.output, CylinderRef{e.output, k, c}});
    }
}

std::size_t ExplicitPartition::cylinder_count() const {
    return order_.size();
}

std::int64_t ExplicitPartition::max_cylinder_radius() const {
    std::int64_t r = 0;
    for (const OrderedCylinder& oc : order_) {
        for (const auto& e : oc.cylinder->pattern.entries())
            r = std::max(r, IndexMonoid::distance(e.first, 0));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Matching

MatchResult match(const ExplicitPartition& p, const Config& x, std::int64_t budget) {
    std::set<Index> probed;
    for (const auto& oc : p.match_order()) {
        const Pattern& pat = oc.cylinder->pattern;
        if (static_cast<std::int64_t>(pat.size()) > budget)
            continue; // domain does not fit the budget
        bool ok = true;
        for (const auto& e : pat.entries()) {
            probed.insert(e.first);
            if (x.get(e.first) != e.second) {
                ok = false;
                break;
            }
        }
        if (ok)
            return {MatchStatus::Matched, oc.output, pat.domain(), std::nullopt};
    }
    return {MatchStatus::NoMatch, 0, IndexSet(probed.begin(), probed.end()), std::nullopt};
}

MatchResult match_pattern(const ExplicitPartition& p, const Pattern& w, std::int64_t budget) {
    std::set<Index> probed;
    for (const auto& oc : p.match_order()) {
        const Pattern& pat = oc.cylinder->pattern;
        if (static_cast<std::int64_t>(pat.size()) > budget)
            continue;
        bool fits = true;
        for (const auto& e : pat.entries()) {
            if (!w.has(e.first)) {
                fits = false;
                break;
            }
        }
        if (!fits)
            continue; // cylinder constrains coordinates the pattern does not fix
        bool ok = true;
        for (const auto& e : pat.entries()) {
            probed.insert(e.first);
            if (w.at(e.first) != e.second) {
                ok = false;
                break;
            }
        }
        if (ok)
            return {MatchStatus::Matched, oc.output, pat.domain(), std::nullopt};
    }
    return {MatchStatus::NoMatch, 0, IndexSet(probed.begin(), probed.end()), std::nullopt};
}

namespace {

// Thrown by oracles to unwind the prober; never escapes this module.
struct BudgetStop {};

class ConfigProbeSession final : public ProbeOracle {
public:
    ConfigProbeSession(const Config& x, std::int64_t budget) : x_(x), budget_(budget) {}

    Symbol probe(Index i) override {
        auto it = cache_.find(i);
        if (it != cache_.end())
            return it->second;
        if (static_cast<std::int64_t>(cache_.size()) >= budget_)
            throw BudgetStop{};
        Symbol s = x_.get(i);
        cache_.emplace(i, s);
        return s;
    }

    IndexSet trace() const {
        IndexSet out;
        out.reserve(cache_.size());
        for (const auto& [i, s] : cache_)
            out.push_back(i);
        return out;
    }

private:
    const Config& x_;
    std::int64_t budget_;
    std::map<Index, Symbol> cache_;
};

} // namespace

MatchResult match(const ProceduralPartition& p, const Config& x, std::int64_t budget) {
    ConfigProbeSession session(x, budget);
    try {
        Symbol out = p.prober(session);
        if (out < 0)
            throw Error("prober emitted a negative symbol");
        return {MatchStatus::Matched, out, session.trace(), std::nullopt};
    } catch (const BudgetStop&) {
        return {MatchStatus::BudgetExceeded, 0, session.trace(), std::nullopt};
    }
}

// ---------------------------------------------------------------------------
// Decision-tree compilation

namespace {

struct RuleView {
    const Pattern* pattern;
    Symbol output;
};

class TreeBuilder {
public:
    TreeBuilder(const ExplicitPartition& p, int depth_limit)
        : monoid_(p.space().monoid()), depth_limit_(depth_limit) {
        for (const auto& oc : p.match_order())
            rules_.push_back({&oc.cylinder->pattern, oc.output});
    }

    PartitionMatcher::Node& node(std::size_t k) { return nodes_[k]; }

    std::size_t build() {
        std::vector<std::size_t> live(rules_.size());
        for (std::size_t k = 0; k < rules_.size(); ++k)
            live[k] = k;
        std::size_t root = grow(live, {}, 0);
        return root;
    }

    std::vector<PartitionMatcher::Node> take_nodes() { return std::move(nodes_); }

private:
    std::size_t emit_leaf(std::optional<Symbol> output) {
        PartitionMatcher::Node n;
        n.leaf = true;
        n.output = output;
        nodes_.push_back(std::move(n));
        return nodes_.size() - 1;
    }

    // First-match semantics: the tree is equivalent to scanning the rule
    // list in order. At every internal node all symbols appearing at the
    // probed index across live rules get an edge, so after the probe no
    // surviving rule constrains that index again.
    std::size_t grow(const std::vector<std::size_t>& live, std::map<Index, Symbol> known,
                     int depth) {
        if (depth > depth_limit_)
            throw DepthLimitError("partition needs a decision tree deeper than " +
                                  std::to_string(depth_limit_));

        // Keep only rules not contradicted by the path so far.
        std::vector<std::size_t> viable;
        for (std::size_t r : live) {
            bool ok = true;
            for (const auto& e : rules_[r].pattern->entries()) {
                auto it = known.find(e.first);
                if (it != known.end() && it->second != e.second) {
                    ok = false;
                    break;
                }
            }
            if (ok)
                viable.push_back(r);
        }
        if (viable.empty())
            return emit_leaf(std::nullopt);

        // A viable rule with no unresolved constraint matches first.
        const RuleView& first = rules_[viable.front()];
        bool satisfied = true;
        for (const auto& e : first.pattern->entries()) {
            if (!known.count(e.first)) {
                satisfied = false;
                break;
            }
        }
        if (satisfied)
            return emit_leaf(first.output);

        // Probe the unresolved constraint index that comes first in probe order.
        std::optional<Index> probe;
        for (std::size_t r : viable) {
            for (const auto& e : rules_[r].pattern->entries()) {
                if (known.count(e.first))
                    continue;
                if (!probe || monoid_.probe_rank(e.first) < monoid_.probe_rank(*probe))
                    probe = e.first;
            }
        }

        std::vector<Symbol> labels;
        for (std::size_t r : viable) {
            if (auto s = rules_[r].pattern->find(*probe)) {
                if (std::find(labels.begin(), labels.end(), *s) == labels.end())
                    labels.push_back(*s);
            }
        }
        std::sort(labels.begin(), labels.end());

        PartitionMatcher::Node n;
        n.probe = *probe;
        std::size_t self = nodes_.size();
        nodes_.push_back(std::move(n));

        for (Symbol s : labels) {
            auto next_known = known;
            next_known[*probe] = s;
            std::size_t child = grow(viable, std::move(next_known), depth + 1);
            nodes_[self].edges.emplace_back(s, child);
        }
        {
            // Else edge: the probed value is none of the labels, so every
            // rule constraining this index is dead.
            std::vector<std::size_t> next;
            for (std::size_t r : viable) {
                if (!rules_[r].pattern->find(*probe))
                    next.push_back(r);
            }
            if (!next.empty()) {
                std::size_t child = grow(next, known, depth + 1);
                nodes_[self].else_edge = child;
            }
        }
        return self;
    }

    const IndexMonoid& monoid_;
    int depth_limit_;
    std::vector<RuleView> rules_;
    std::vector<PartitionMatcher::Node> nodes_;
};

} // namespace

PartitionMatcher PartitionMatcher::compile(const ExplicitPartition& p, int depth_limit) {
    TreeBuilder builder(p, depth_limit);
    std::size_t root = builder.build();
    std::vector<Node> nodes = builder.take_nodes();
    // Move the root to slot 0 by swapping and patching edges.
    if (root != 0) {
        std::swap(nodes[0], nodes[root]);
        for (Node& n : nodes) {
            for (auto& [s, t] : n.edges) {
                if (t == 0)
                    t = root;
                else if (t == root)
                    t = 0;
            }
            if (n.else_edge) {
                if (*n.else_edge == 0)
                    n.else_edge = root;
                else if (*n.else_edge == root)
                    n.else_edge = 0;
            }
        }
    }
    PartitionMatcher m;
    m.nodes_ = std::move(nodes);
    return m;
}

namespace {

template <typename Lookup>
MatchResult walk_tree(const std::vector<PartitionMatcher::Node>& nodes, Lookup&& lookup) {
    std::set<Index> probed;
    std::size_t at = 0;
    while (true) {
        const PartitionMatcher::Node& n = nodes[at];
        if (n.leaf) {
            IndexSet witness(probed.begin(), probed.end());
            if (n.output)
                return {MatchStatus::Matched, *n.output, std::move(witness), std::nullopt};
            return {MatchStatus::NoMatch, 0, std::move(witness), std::nullopt};
        }
        std::optional<Symbol> value = lookup(n.probe);
        if (!value)
            return {MatchStatus::NoMatch, 0, IndexSet(probed.begin(), probed.end()), n.probe};
        probed.insert(n.probe);
        std::optional<std::size_t> next;
        for (const auto& [s, t] : n.edges) {
            if (s == *value) {
                next = t;
                break;
            }
        }
        if (!next) {
            if (!n.else_edge)
                return {MatchStatus::NoMatch, 0, IndexSet(probed.begin(), probed.end()), std::nullopt};
            next = *n.else_edge;
        }
        at = *next;
    }
}

} // namespace

MatchResult PartitionMatcher::match_config(const Config& x) const {
    return walk_tree(nodes_, [&x](Index i) -> std::optional<Symbol> { return x.get(i); });
}

MatchResult PartitionMatcher::match_pattern(const Pattern& w) const {
    return walk_tree(nodes_, [&w](Index i) { return w.find(i); });
}

int PartitionMatcher::depth() const {
    // Depth via DFS; the tree is acyclic by construction.
    std::function<int(std::size_t)> go = [&](std::size_t at) -> int {
        const Node& n = nodes_[at];
        if (n.leaf)
            return 0;
        int best = 0;
        for (const auto& [s, t] : n.edges)
            best = std::max(best, go(t));
        if (n.else_edge)
            best = std::max(best, go(*n.else_edge));
        return best + 1;
    };
    return nodes_.empty() ? 0 : go(0);
}

Prober PartitionMatcher::as_prober() const {
    auto nodes = nodes_;
    return [nodes](ProbeOracle& oracle) -> Symbol {
        std::size_t at = 0;
        while (true) {
            const PartitionMatcher::Node& n = nodes[at];
            if (n.leaf) {
                if (n.output)
                    return *n.output;
                throw Error("compiled matcher reached a NoMatch leaf");
            }
            Symbol value = oracle.probe(n.probe);
            std::optional<std::size_t> next;
            for (const auto& [s, t] : n.edges) {
                if (s == value) {
                    next = t;
                    break;
                }
            }
            if (!next) {
                if (!n.else_edge)
                    throw Error("compiled matcher reached a NoMatch leaf");
                next = *n.else_edge;
            }
            at = *next;
        }
    };
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate_partition(const ExplicitPartition& p, std::int64_t radius,
                                    Symbol max_symbol) {
    ValidationReport report;
    const auto& order = p.match_order();
    for (std::size_t a = 0; a < order.size(); ++a) {
        for (std::size_t b = a + 1; b < order.size(); ++b) {
            if (order[a].output == order[b].output)
                continue; // same-output overlap is allowed: C_b is a union
            ++report.pairs_checked;
            Decision d = cylinders_jointly_satisfiable(*order[a].cylinder, *order[b].cylinder,
                                                       p.space());
            if (d == Decision::Yes)
                report.disjointness_violations.emplace_back(order[a].ref, order[b].ref);
            else if (d == Decision::Undecided)
                report.disjointness_undecided.emplace_back(order[a].ref, order[b].ref);
        }
    }

    IndexSet ball = p.space().monoid().ball(radius);
    WordEnumeration words = p.space().enumerate_words(ball, max_symbol);
    report.undecided_words = words.undecided;
    for (const Pattern& w : words.words) {
        ++report.patterns_checked;
        MatchResult m = match_pattern(p, w, static_cast<std::int64_t>(ball.size()));
        if (m.status != MatchStatus::Matched)
            report.uncovered.push_back(w);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Extraction

namespace {

// Oracle that replays a prescribed list of answers, then asks to branch.
struct NeedBranch {
    Index index;
};

class ReplayOracle final : public ProbeOracle {
public:
    explicit ReplayOracle(const std::vector<std::pair<Index, Symbol>>& script)
        : script_(script) {}

    Symbol probe(Index i) override {
        for (std::size_t k = 0; k < used_; ++k) {
            if (script_[k].first == i)
                return script_[k].second;
        }
        if (used_ == script_.size())
            throw NeedBranch{i};
        if (script_[used_].first != i)
            throw Error("prober is not deterministic: probe sequence diverged on replay");
        return script_[used_++].second;
    }

private:
    const std::vector<std::pair<Index, Symbol>>& script_;
    std::size_t used_ = 0;
};

} // namespace

ExtractResult extract_cylinders(const ProceduralPartition& p, const ShiftSpace& space,
                                int max_depth, Symbol max_symbol) {
    if (max_depth < 0)
        throw ArithmeticRangeError("max_depth must be nonnegative");
    enumeration_size_guard(max_symbol, static_cast<std::size_t>(max_depth));

    std::map<Symbol, std::vector<Cylinder>> by_output;
    std::vector<Pattern> unresolved;
    std::vector<std::pair<Index, Symbol>> script;

    std::function<void()> explore = [&]() {
        ReplayOracle oracle(script);
        Index branch_index = 0;
        try {
            Symbol out = p.prober(oracle);
            if (out < 0)
                throw Error("prober emitted a negative symbol");
            by_output[out].push_back(Cylinder{Pattern::from_pairs(script)});
            return;
        } catch (const NeedBranch& nb) {
            branch_index = nb.index;
        }
        if (static_cast<int>(script.size()) == max_depth) {
            unresolved.push_back(Pattern::from_pairs(script));
            return;
        }
        for (Symbol s = 0; s <= max_symbol; ++s) {
            script.emplace_back(branch_index, s);
            explore();
            script.pop_back();
        }
    };
    explore();

    std::vector<PartitionEntry> entries;
    for (auto& [output, cylinders] : by_output)
        entries.push_back({output, std::move(cylinders)});
    return {ExplicitPartition(std::move(entries), space), std::move(unresolved)};
}

} // namespace gsbc
