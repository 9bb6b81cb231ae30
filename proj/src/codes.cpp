#include "gsbc/codes.hpp"

#include <algorithm>

namespace gsbc {

// ---------------------------------------------------------------------------
// LocalRule

LocalRule LocalRule::table(Table entries) {
    for (const auto& [word, output] : entries) {
        if (output < 0)
            throw Error("rule outputs must be nonnegative");
        for (Symbol s : word) {
            if (s < 0)
                throw Error("rule word symbols must be nonnegative");
        }
    }
    LocalRule r;
    r.table_ = std::move(entries);
    return r;
}

LocalRule LocalRule::function(Fn fn) {
    LocalRule r;
    r.fn_ = std::move(fn);
    return r;
}

Symbol LocalRule::apply(const Pattern& word) const {
    if (table_) {
        auto it = table_->find(word.symbols());
        if (it == table_->end())
            throw RuleIncompleteError(word);
        return it->second;
    }
    Symbol out = fn_(word);
    if (out < 0)
        throw Error("local rule emitted a negative symbol");
    return out;
}

const char* eval_status_name(EvalStatus s) {
    switch (s) {
    case EvalStatus::Ok:
        return "ok";
    case EvalStatus::NoMatch:
        return "no-match";
    case EvalStatus::BudgetExceeded:
        return "budget-exceeded";
    case EvalStatus::RuleIncomplete:
        return "rule-incomplete";
    case EvalStatus::Undecidable:
        return "undecidable";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Evaluation cores

EvalOutcome eval_outcome_from_match(const MatchResult& m) {
    switch (m.status) {
    case MatchStatus::Matched:
        return {EvalStatus::Ok, m.output, m.witness, ""};
    case MatchStatus::NoMatch:
        return {EvalStatus::NoMatch, 0, m.witness, "no cylinder matched"};
    case MatchStatus::BudgetExceeded:
        return {EvalStatus::BudgetExceeded, 0, m.witness, "prober exceeded its probe budget"};
    }
    return {EvalStatus::NoMatch, 0, {}, ""};
}

namespace {

EvalOutcome eval_classical_outcome(const ClassicalCode& c, const Config& x, Index g) {
    const IndexMonoid& monoid = c.domain_space.monoid();
    if (!monoid.contains(g))
        throw ArithmeticRangeError("evaluation index outside " + monoid.name());
    std::vector<Pattern::Entry> entries;
    entries.reserve(c.neighborhood.size());
    for (Index i : c.neighborhood)
        entries.emplace_back(i, x.get(monoid.op(g, i)));
    Pattern word = Pattern::from_pairs(std::move(entries));
    try {
        return {EvalStatus::Ok, c.local_rule.apply(word), c.neighborhood, ""};
    } catch (const RuleIncompleteError& e) {
        return {EvalStatus::RuleIncomplete, 0, c.neighborhood, e.what()};
    }
}

EvalOutcome eval_generalized_outcome(const GeneralizedCode& c, const Config& x, Index g,
                                     std::int64_t budget) {
    return eval_outcome_from_match(match_generalized(c, x, g, budget));
}

} // namespace

MatchResult match_generalized(const GeneralizedCode& c, const Config& x, Index g,
                              std::int64_t budget) {
    const IndexMonoid& monoid = c.domain_space.monoid();
    if (!monoid.contains(g))
        throw ArithmeticRangeError("evaluation index outside " + monoid.name());
    Config window = x.shifted(g);
    if (const auto* ep = c.explicit_partition())
        return match(*ep, window, budget);
    return match(*c.procedural_partition(), window, budget);
}

Symbol eval_classical(const ClassicalCode& c, const Config& x, Index g) {
    EvalOutcome out = eval_classical_outcome(c, x, g);
    if (!out.ok())
        throw EvalError(out.status, out.note);
    return out.value;
}

Symbol eval_generalized(const GeneralizedCode& c, const Config& x, Index g, std::int64_t budget) {
    EvalOutcome out = eval_generalized_outcome(c, x, g, budget);
    if (!out.ok())
        throw EvalError(out.status, out.note);
    return out.value;
}

std::int64_t classical_radius(const ClassicalCode& c) {
    std::int64_t r = 0;
    for (Index i : c.neighborhood)
        r = std::max(r, IndexMonoid::distance(i, 0));
    return r;
}

std::int64_t variable_radius(const GeneralizedCode& c, const Config& x, Index g,
                             std::int64_t budget) {
    MatchResult m = match_generalized(c, x, g, budget);
    if (m.status != MatchStatus::Matched) {
        EvalOutcome out = eval_outcome_from_match(m);
        throw EvalError(out.status, out.note);
    }
    std::int64_t r = 0;
    for (Index i : m.witness)
        r = std::max(r, IndexMonoid::distance(i, 0));
    return r;
}

// ---------------------------------------------------------------------------
// CodeMap

CodeMap::CodeMap(std::string name, ClassicalCode code)
    : name_(std::move(name)),
      impl_(std::make_shared<std::variant<ClassicalCode, GeneralizedCode, BlackBoxMap>>(
          std::move(code))) {}

CodeMap::CodeMap(std::string name, GeneralizedCode code)
    : name_(std::move(name)),
      impl_(std::make_shared<std::variant<ClassicalCode, GeneralizedCode, BlackBoxMap>>(
          std::move(code))) {}

CodeMap::CodeMap(BlackBoxMap map)
    : name_(map.name),
      impl_(std::make_shared<std::variant<ClassicalCode, GeneralizedCode, BlackBoxMap>>(
          std::move(map))) {}

const ShiftSpace& CodeMap::domain_space() const {
    if (const auto* c = as_classical())
        return c->domain_space;
    if (const auto* g = as_generalized())
        return g->domain_space;
    return as_black_box()->domain_space;
}

EvalOutcome CodeMap::eval(const Config& x, Index g, std::int64_t budget) const {
    if (const auto* c = as_classical())
        return eval_classical_outcome(*c, x, g);
    if (const auto* gc = as_generalized())
        return eval_generalized_outcome(*gc, x, g, budget);
    return as_black_box()->eval(x, g, budget);
}

BlackBoxMap CodeMap::as_oracle() const {
    CodeMap self = *this;
    return BlackBoxMap{
        name_,
        [self](const Config& x, Index g, std::int64_t budget) { return self.eval(x, g, budget); },
        domain_space()};
}

Pattern eval_window(const CodeMap& m, const Config& x, const IndexSet& d, std::int64_t budget) {
    std::vector<Pattern::Entry> entries;
    entries.reserve(d.size());
    for (Index g : d) {
        EvalOutcome out = m.eval(x, g, budget);
        if (!out.ok())
            throw EvalError(out.status, std::string(eval_status_name(out.status)) +
                                            " at index " + std::to_string(g) +
                                            (out.note.empty() ? "" : ": " + out.note));
        entries.emplace_back(g, out.value);
    }
    return Pattern::from_pairs(std::move(entries));
}

GeneralizedCode classical_to_generalized(const ClassicalCode& c, Symbol max_symbol) {
    WordEnumeration words = c.domain_space.enumerate_words(c.neighborhood, max_symbol);
    if (!words.undecided.empty())
        throw Error("language membership undecided for " + std::to_string(words.undecided.size()) +
                    " neighborhood words; raise the completion budget");
    std::map<Symbol, std::vector<Cylinder>> by_output;
    for (const Pattern& w : words.words)
        by_output[c.local_rule.apply(w)].push_back(Cylinder{w});
    std::vector<PartitionEntry> entries;
    for (auto& [output, cylinders] : by_output)
        entries.push_back({output, std::move(cylinders)});
    return GeneralizedCode{ExplicitPartition(std::move(entries), c.domain_space), c.domain_space,
                           kDefaultBudget};
}

// ---------------------------------------------------------------------------
// Composition

namespace {

// Internal unwind token carrying a failed inner evaluation out of the
// generator-backed intermediate configuration.
struct InnerEvalFailure {
    EvalOutcome outcome;
    Index at;
};

} // namespace

CodeMap compose(const CodeMap& outer, const CodeMap& inner) {
    MonoidKind kind = inner.domain_space().monoid().kind();
    std::string name = outer.name() + "." + inner.name();
    CodeMap outer_copy = outer;
    CodeMap inner_copy = inner;
    BlackBoxMap bb;
    bb.name = name;
    bb.domain_space = inner.domain_space();
    bb.eval = [outer_copy, inner_copy, kind, name](const Config& x, Index g,
                                                   std::int64_t budget) -> EvalOutcome {
        auto cache = std::make_shared<std::map<Index, Symbol>>();
        auto spent = std::make_shared<std::int64_t>(0);
        Config image = Config::generator(
            name + "(" + x.to_literal() + ")", kind,
            [inner_copy, x, budget, cache, spent](Index i) -> Symbol {
                auto it = cache->find(i);
                if (it != cache->end())
                    return it->second;
                std::int64_t remaining = budget - *spent;
                if (remaining <= 0)
                    throw InnerEvalFailure{
                        {EvalStatus::BudgetExceeded, 0, {}, "combined budget exhausted"}, i};
                EvalOutcome r = inner_copy.eval(x, i, remaining);
                if (!r.ok())
                    throw InnerEvalFailure{r, i};
                *spent += 1 + static_cast<std::int64_t>(r.witness.size());
                cache->emplace(i, r.value);
                return r.value;
            });
        try {
            return outer_copy.eval(image, g, budget);
        } catch (const InnerEvalFailure& f) {
            EvalOutcome out = f.outcome;
            out.note = "inner evaluation at index " + std::to_string(f.at) +
                       (out.note.empty() ? "" : ": " + out.note);
            return out;
        }
    };
    return CodeMap(std::move(bb));
}

// ---------------------------------------------------------------------------
// Built-ins

CodeMap example1_code() {
    ProceduralPartition prober{
        "example1",
        [](ProbeOracle& o) -> Symbol {
            Symbol n = o.probe(0);
            if (n == 0)
                return 0;
            return o.probe(n);
        },
        kDefaultBudget};
    GeneralizedCode code{std::move(prober), ShiftSpace::full(MonoidKind::Naturals),
                         kDefaultBudget};
    return CodeMap("example1", std::move(code));
}

CodeMap example1_formula() {
    BlackBoxMap bb;
    bb.name = "example1-formula";
    bb.domain_space = ShiftSpace::full(MonoidKind::Naturals);
    bb.eval = [](const Config& x, Index g, std::int64_t) -> EvalOutcome {
        Symbol n = x.get(g);
        IndexSet witness = n == 0 ? IndexSet{0} : IndexSet{0, n};
        return {EvalStatus::Ok, x.get(g + n), std::move(witness), ""};
    };
    return CodeMap(std::move(bb));
}

namespace {

ShiftSpace example2_space(std::vector<std::vector<Symbol>> blocks) {
    ShiftSpace space = ShiftSpace::subalphabets(MonoidKind::Naturals, std::move(blocks));
    bool has_pair = false;
    for (const auto& block : space.as_subalphabets()->blocks)
        has_pair = has_pair || block.size() >= 2;
    if (!has_pair)
        throw Error("supremum map needs at least one block with two or more symbols");
    return space;
}

} // namespace

CodeMap example2_map(std::vector<std::vector<Symbol>> blocks) {
    ShiftSpace space = example2_space(std::move(blocks));
    BlackBoxMap bb;
    bb.name = "example2";
    bb.domain_space = space;
    bb.eval = [](const Config& x, Index g, std::int64_t) -> EvalOutcome {
        if (g < 0)
            throw ArithmeticRangeError("evaluation index outside N");
        const auto* ep = x.as_eventually_periodic();
        if (!ep)
            return {EvalStatus::Undecidable, 0, {},
                    "tail supremum needs an eventually periodic description"};
        Symbol best = 0;
        for (Symbol s : ep->period)
            best = std::max(best, s);
        for (std::size_t i = static_cast<std::size_t>(g); i < ep->prefix.size(); ++i)
            best = std::max(best, ep->prefix[i]);
        return {EvalStatus::Ok, best, {}, ""};
    };
    return CodeMap(std::move(bb));
}

CodeMap example2_prober(std::vector<std::vector<Symbol>> blocks) {
    ShiftSpace space = example2_space(std::move(blocks));
    std::vector<std::vector<Symbol>> block_list = space.as_subalphabets()->blocks;
    ProceduralPartition prober{
        "example2-prober",
        [block_list](ProbeOracle& o) -> Symbol {
            Symbol first = o.probe(0);
            const std::vector<Symbol>* block = nullptr;
            for (const auto& b : block_list) {
                if (std::binary_search(b.begin(), b.end(), first)) {
                    block = &b;
                    break;
                }
            }
            if (!block)
                throw Error("probed symbol lies outside every block");
            if (block->size() == 1)
                return first; // constant subalphabet: the supremum is forced
            Symbol top = block->back();
            for (Index i = 0;; ++i) {
                if (o.probe(i) == top)
                    return top; // only the block maximum is finitely certifiable
            }
        },
        kDefaultBudget};
    GeneralizedCode code{std::move(prober), space, kDefaultBudget};
    return CodeMap("example2-prober", std::move(code));
}

CodeMap identity_code(MonoidKind kind) {
    ClassicalCode code{make_index_set({0}),
                       LocalRule::function([](const Pattern& w) { return w.at(0); }),
                       ShiftSpace::full(kind)};
    return CodeMap("identity", std::move(code));
}

CodeMap sum_code() {
    ClassicalCode code{make_index_set({0, 1}),
                       LocalRule::function([](const Pattern& w) { return w.at(0) + w.at(1); }),
                       ShiftSpace::full(MonoidKind::Naturals)};
    return CodeMap("sum", std::move(code));
}

CodeMap broken_ignores_position() {
    BlackBoxMap bb;
    bb.name = "broken-ignores-position";
    bb.domain_space = ShiftSpace::full(MonoidKind::Naturals);
    bb.eval = [](const Config& x, Index, std::int64_t) -> EvalOutcome {
        return {EvalStatus::Ok, x.get(0), {0}, ""};
    };
    return CodeMap(std::move(bb));
}

} // namespace gsbc
