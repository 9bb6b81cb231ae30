#include "gsbc/chl.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace gsbc {

// ---------------------------------------------------------------------------
// Sampling

namespace {

std::vector<Symbol> draw_symbols(Rng& rng, std::size_t count, const std::vector<Symbol>& pool) {
    std::vector<Symbol> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k)
        out.push_back(pool[static_cast<std::size_t>(rng.below(static_cast<std::int64_t>(pool.size())))]);
    return out;
}

std::vector<Symbol> symbol_pool(const ShiftSpace& space, Rng& rng, Symbol max_symbol) {
    if (const auto* su = space.as_subalphabets())
        return su->blocks[static_cast<std::size_t>(rng.below(static_cast<std::int64_t>(su->blocks.size())))];
    std::vector<Symbol> pool;
    for (Symbol s = 0; s <= max_symbol; ++s)
        pool.push_back(s);
    return pool;
}

Config draw_config(Rng& rng, const ShiftSpace& space, const SampleOptions& opt) {
    std::vector<Symbol> pool = symbol_pool(space, rng, opt.max_symbol);
    if (space.monoid().kind() == MonoidKind::Naturals) {
        auto prefix_len = static_cast<std::size_t>(rng.between(0, opt.max_prefix));
        auto period_len = static_cast<std::size_t>(rng.between(1, opt.max_period));
        return Config::eventually_periodic(draw_symbols(rng, prefix_len, pool),
                                           draw_symbols(rng, period_len, pool));
    }
    auto left_len = static_cast<std::size_t>(rng.between(1, opt.max_period));
    auto core_len = static_cast<std::size_t>(rng.between(0, opt.max_prefix));
    auto right_len = static_cast<std::size_t>(rng.between(1, opt.max_period));
    Index core_start = rng.between(-opt.max_period, opt.max_period);
    return Config::bi_periodic(draw_symbols(rng, left_len, pool), draw_symbols(rng, core_len, pool),
                               core_start, draw_symbols(rng, right_len, pool));
}

} // namespace

std::optional<Config> sample_config(Rng& rng, const ShiftSpace& space, const SampleOptions& opt) {
    for (int attempt = 0; attempt < opt.attempts; ++attempt) {
        Config x = draw_config(rng, space, opt);
        if (space.config_in_space(x))
            return x;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Shift commutation

CommutationReport check_commutation(const CodeMap& m, const CommutationOptions& opt) {
    const ShiftSpace& space = m.domain_space();
    IndexSet shifts = opt.shift_range.empty() ? space.monoid().ball(4) : opt.shift_range;
    for (Index h : shifts) {
        if (!space.monoid().contains(h))
            throw ArithmeticRangeError("shift range leaves " + space.monoid().name());
    }

    Rng rng(opt.seed);
    CommutationReport report;
    for (int sample = 0; sample < opt.samples; ++sample) {
        std::optional<Config> drawn = sample_config(rng, space, opt.sampling);
        if (!drawn)
            continue; // rejection sampling starved; nothing to test on this draw
        const Config& x = *drawn;
        for (Index h : shifts) {
            Config shifted = x.shifted(h);
            for (Index g : shifts) {
                EvalOutcome lhs = m.eval(shifted, g, opt.budget);
                EvalOutcome rhs = m.eval(x, space.monoid().op(g, h), opt.budget);
                if (lhs.ok() && rhs.ok()) {
                    ++report.tested;
                    if (lhs.value != rhs.value) {
                        report.counterexample =
                            CommutationCounterexample{x, g, h, lhs.value, rhs.value};
                        return report;
                    }
                } else if (report.findings.size() < 32) {
                    report.findings.push_back(CommutationFinding{x, g, h, lhs, rhs});
                }
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Local determination

namespace {

// A completion of `p`: the varied index gets `varied`, the hull gaps take
// the tail's first symbol, and the tail period closes the configuration.
Config build_completion(const IndexMonoid& monoid, const Pattern& p, Index varied_index,
                        Symbol varied, const std::vector<Symbol>& tail) {
    Pattern filled = p.with(varied_index, varied);
    Symbol gap = tail.front();
    Index lo = monoid.kind() == MonoidKind::Naturals ? 0 : filled.entries().front().first;
    Index hi = filled.entries().back().first;
    std::vector<Symbol> window(static_cast<std::size_t>(hi - lo) + 1, gap);
    for (const auto& e : filled.entries())
        window[static_cast<std::size_t>(e.first - lo)] = e.second;
    if (monoid.kind() == MonoidKind::Naturals)
        return Config::eventually_periodic(std::move(window), tail);
    return Config::bi_periodic(tail, std::move(window), lo, tail);
}

} // namespace

DeterminationProbe probe_determination(const CodeMap& m, const Pattern& p, const IndexSet& skip,
                                       const DeterminationOptions& opt) {
    const ShiftSpace& space = m.domain_space();
    const IndexMonoid& monoid = space.monoid();

    Index next = 0;
    for (std::int64_t k = 0;; ++k) {
        Index candidate = monoid.probe_index(k);
        if (!p.has(candidate) && !index_set_contains(skip, candidate)) {
            next = candidate;
            break;
        }
    }

    std::vector<std::vector<Symbol>> tails = opt.tail_periods;
    if (tails.empty()) {
        for (Symbol s = 0; s <= opt.max_symbol; ++s)
            tails.push_back({s});
    }

    struct Row {
        Symbol varied;
        std::size_t tail;
        Config config;
        EvalOutcome outcome;
    };
    std::vector<Row> rows;
    std::vector<std::string> diagnostics;
    for (Symbol s = 0; s <= opt.max_symbol; ++s) {
        for (std::size_t t = 0; t < tails.size(); ++t) {
            Config completion = build_completion(monoid, p, next, s, tails[t]);
            if (!space.config_in_space(completion))
                continue;
            EvalOutcome out = m.eval(completion, monoid.identity(), opt.budget);
            if (!out.ok() && diagnostics.size() < 8) {
                diagnostics.push_back(std::string(eval_status_name(out.status)) + " on " +
                                      completion.to_literal() +
                                      (out.note.empty() ? "" : ": " + out.note));
            }
            rows.push_back(Row{s, t, std::move(completion), std::move(out)});
        }
    }

    DeterminationProbe probe;
    probe.next_index = next;

    // Does the output depend on the varied coordinate? Compare rows that
    // share a tail but differ in the varied symbol.
    for (std::size_t a = 0; a < rows.size() && !probe.depends_on_next; ++a) {
        for (std::size_t b = a + 1; b < rows.size(); ++b) {
            if (rows[a].tail != rows[b].tail)
                continue;
            if (rows[a].outcome.ok() && rows[b].outcome.ok() &&
                rows[a].outcome.value != rows[b].outcome.value) {
                probe.depends_on_next = true;
                break;
            }
        }
    }

    const Row* base = nullptr;
    for (const Row& row : rows) {
        if (!row.outcome.ok())
            continue;
        if (!base) {
            base = &row;
            continue;
        }
        if (row.outcome.value != base->outcome.value) {
            probe.result = SplitResult{p, base->config, row.config, base->outcome.value,
                                       row.outcome.value};
            return probe;
        }
    }

    bool any_failure = !diagnostics.empty();
    for (const Row& row : rows)
        any_failure = any_failure || !row.outcome.ok();
    if (!base || any_failure) {
        if (!base)
            diagnostics.push_back("no valid completion produced an output at this scale");
        probe.result = Unresolved{rows.size(), std::move(diagnostics)};
        return probe;
    }
    probe.result = Determined{base->outcome.value, p};
    return probe;
}

DeterminationResult check_determination(const CodeMap& m, const Pattern& p,
                                        const DeterminationOptions& opt) {
    return probe_determination(m, p, {}, opt).result;
}

// ---------------------------------------------------------------------------
// Partition learning

namespace {

// Scale-exhaustive determination used by the learner: every assignment of
// the free ball indices (symbols <= max_symbol), closed with every constant
// tail. The ball is an interval around the identity, so completions have no
// gaps. Exhaustiveness makes the learned partition exact at scale, which
// the single-index completion scheme of check_determination cannot promise
// (constant tails force coordinates beyond the varied one to agree).
struct ScaleDetermination {
    enum class Kind { Determined, Branch, Unresolved };
    Kind kind = Kind::Unresolved;
    Symbol output = 0;     // Determined
    Index branch_index = 0; // Branch: first probe-order index the output depends on
    std::vector<std::string> diagnostics;
};

ScaleDetermination determine_at_scale(const CodeMap& m, const Pattern& p, const IndexSet& ball,
                                      Symbol max_symbol, std::int64_t budget) {
    const ShiftSpace& space = m.domain_space();
    const IndexMonoid& monoid = space.monoid();

    IndexSet free;
    for (Index i : ball) {
        if (!p.has(i))
            free.push_back(i);
    }
    enumeration_size_guard(max_symbol, free.size() + 1);

    struct Row {
        std::vector<Symbol> assignment; // parallel to free
        Symbol tail;
        Symbol output;
    };
    std::vector<Row> rows;
    ScaleDetermination out;

    std::vector<Symbol> assignment(free.size(), 0);
    while (true) {
        Pattern filled = p;
        for (std::size_t k = 0; k < free.size(); ++k)
            filled = filled.with(free[k], assignment[k]);
        for (Symbol tail = 0; tail <= max_symbol; ++tail) {
            Index lo = monoid.kind() == MonoidKind::Naturals
                           ? 0
                           : (filled.empty() ? 0 : filled.entries().front().first);
            Index hi = filled.empty() ? lo : filled.entries().back().first;
            std::vector<Symbol> window(static_cast<std::size_t>(hi - lo) + 1, tail);
            for (const auto& e : filled.entries())
                window[static_cast<std::size_t>(e.first - lo)] = e.second;
            Config completion = monoid.kind() == MonoidKind::Naturals
                                    ? Config::eventually_periodic(window, {tail})
                                    : Config::bi_periodic({tail}, window, lo, {tail});
            if (!space.config_in_space(completion))
                continue;
            EvalOutcome result = m.eval(completion, monoid.identity(), budget);
            if (!result.ok()) {
                if (out.diagnostics.size() < 8)
                    out.diagnostics.push_back(std::string(eval_status_name(result.status)) +
                                              " on " + completion.to_literal() +
                                              (result.note.empty() ? "" : ": " + result.note));
                out.kind = ScaleDetermination::Kind::Unresolved;
                return out;
            }
            rows.push_back(Row{assignment, tail, result.value});
        }
        std::size_t k = assignment.size();
        while (k > 0 && assignment[k - 1] == max_symbol)
            assignment[--k] = 0;
        if (k == 0)
            break;
        ++assignment[k - 1];
    }

    if (rows.empty()) {
        out.diagnostics.push_back("no completion at this scale stays inside the space");
        return out;
    }
    bool constant = true;
    for (const Row& row : rows)
        constant = constant && row.output == rows.front().output;
    if (constant) {
        out.kind = ScaleDetermination::Kind::Determined;
        out.output = rows.front().output;
        return out;
    }

    // The output varies; find the first probe-order free index such that two
    // completions differing only there give different outputs.
    for (std::int64_t rank = 0; rank <= 2 * static_cast<std::int64_t>(ball.size()); ++rank) {
        Index candidate = monoid.probe_index(rank);
        auto slot = std::find(free.begin(), free.end(), candidate);
        if (slot == free.end())
            continue;
        auto j = static_cast<std::size_t>(slot - free.begin());
        std::map<std::pair<std::vector<Symbol>, Symbol>, Symbol> seen;
        for (const Row& row : rows) {
            std::vector<Symbol> masked = row.assignment;
            masked[j] = -1;
            auto [it, fresh] = seen.emplace(std::make_pair(std::move(masked), row.tail),
                                            row.output);
            if (!fresh && it->second != row.output) {
                out.kind = ScaleDetermination::Kind::Branch;
                out.branch_index = candidate;
                return out;
            }
        }
    }
    // Divergence driven entirely by the tails: no ball-sized certificate.
    out.diagnostics.push_back("outputs diverge only beyond the learning radius");
    return out;
}

} // namespace

LearnedPartition learn_partition(const CodeMap& m, std::int64_t max_radius, Symbol max_symbol,
                                 std::int64_t budget) {
    const ShiftSpace& space = m.domain_space();
    IndexSet ball = space.monoid().ball(max_radius);

    std::map<Symbol, std::vector<Cylinder>> by_output;
    std::vector<Pattern> unresolved;

    std::deque<Pattern> queue;
    queue.push_back(Pattern());

    while (!queue.empty()) {
        Pattern pattern = std::move(queue.front());
        queue.pop_front();

        Decision in_language = space.pattern_in_language(pattern);
        if (in_language == Decision::No)
            continue; // nothing of the space to cover under this pattern
        if (in_language == Decision::Undecided) {
            unresolved.push_back(pattern);
            continue;
        }

        ScaleDetermination det = determine_at_scale(m, pattern, ball, max_symbol, budget);
        switch (det.kind) {
        case ScaleDetermination::Kind::Determined:
            by_output[det.output].push_back(Cylinder{pattern});
            break;
        case ScaleDetermination::Kind::Unresolved:
            unresolved.push_back(pattern);
            break;
        case ScaleDetermination::Kind::Branch:
            for (Symbol s = 0; s <= max_symbol; ++s)
                queue.push_back(pattern.with(det.branch_index, s));
            break;
        }
    }

    std::vector<PartitionEntry> entries;
    for (auto& [output, cylinders] : by_output)
        entries.push_back({output, std::move(cylinders)});
    return LearnedPartition{ExplicitPartition(std::move(entries), space), max_radius, max_symbol,
                            std::move(unresolved)};
}

// ---------------------------------------------------------------------------
// Radius classification

RadiusClassification classify_radius(const GeneralizedCode& c, std::int64_t max_radius,
                                     Symbol max_symbol, std::int64_t budget) {
    const ShiftSpace& space = c.domain_space;
    IndexSet ball = space.monoid().ball(max_radius);
    WordEnumeration words = space.enumerate_words(ball, max_symbol);

    RadiusClassification out;
    for (const Pattern& w : words.undecided)
        out.findings.push_back(
            {w, EvalOutcome{EvalStatus::Undecidable, 0, {}, "language membership undecided"}});

    std::int64_t max_seen = 0;
    for (const Pattern& w : words.words) {
        Completion comp = space.complete_pattern(w);
        if (!comp.witness) {
            out.findings.push_back(
                {w, EvalOutcome{EvalStatus::Undecidable, 0, {}, "no completion found"}});
            continue;
        }
        MatchResult m = match_generalized(c, *comp.witness, space.monoid().identity(), budget);
        if (m.status != MatchStatus::Matched) {
            out.findings.push_back({w, eval_outcome_from_match(m)});
            continue;
        }
        std::int64_t r = 0;
        for (Index i : m.witness)
            r = std::max(r, IndexMonoid::distance(i, 0));
        if (r > max_radius) {
            out.result = RadiusExceeds{max_radius, *comp.witness, space.monoid().identity(), r};
            return out;
        }
        max_seen = std::max(max_seen, r);
    }
    out.result = RadiusBounded{max_seen};
    return out;
}

} // namespace gsbc
