#include "gsbc/json_io.hpp"

#include <fstream>

namespace gsbc {

namespace {

json require(const json& j, const char* key) {
    if (!j.contains(key))
        throw ParseError("missing key '" + std::string(key) + "'");
    return j.at(key);
}

} // namespace

json pattern_to_json(const Pattern& p) {
    json indices = json::array();
    json symbols = json::array();
    for (const auto& e : p.entries()) {
        indices.push_back(e.first);
        symbols.push_back(e.second);
    }
    return json{{"indices", std::move(indices)}, {"symbols", std::move(symbols)}};
}

Pattern pattern_from_json(const json& j) {
    auto indices = require(j, "indices").get<std::vector<Index>>();
    auto symbols = require(j, "symbols").get<std::vector<Symbol>>();
    if (indices.size() != symbols.size())
        throw ParseError("pattern indices and symbols differ in length");
    std::vector<Pattern::Entry> entries;
    entries.reserve(indices.size());
    for (std::size_t k = 0; k < indices.size(); ++k)
        entries.emplace_back(indices[k], symbols[k]);
    return Pattern::from_pairs(std::move(entries));
}

json space_to_json(const ShiftSpace& s) {
    if (s.is_full())
        return json{{"space", "full"}};
    if (const auto* fp = s.as_forbidden()) {
        json patterns = json::array();
        for (const Pattern& p : fp->patterns)
            patterns.push_back(pattern_to_json(p));
        return json{{"space", "forbidden"}, {"patterns", std::move(patterns)}};
    }
    json blocks = json::array();
    for (const auto& block : s.as_subalphabets()->blocks)
        blocks.push_back(block);
    return json{{"space", "subalphabets"}, {"blocks", std::move(blocks)}};
}

ShiftSpace space_from_json(const json& j, MonoidKind kind) {
    std::string tag = require(j, "space").get<std::string>();
    if (tag == "full")
        return ShiftSpace::full(kind);
    if (tag == "forbidden") {
        std::vector<Pattern> patterns;
        for (const json& p : require(j, "patterns"))
            patterns.push_back(pattern_from_json(p));
        return ShiftSpace::forbidden(kind, std::move(patterns));
    }
    if (tag == "subalphabets") {
        auto blocks = require(j, "blocks").get<std::vector<std::vector<Symbol>>>();
        return ShiftSpace::subalphabets(kind, std::move(blocks));
    }
    throw ParseError("unknown space tag '" + tag + "'");
}

json partition_to_json(const ExplicitPartition& p) {
    json entries = json::array();
    for (const PartitionEntry& e : p.entries()) {
        json cylinders = json::array();
        for (const Cylinder& c : e.cylinders)
            cylinders.push_back(pattern_to_json(c.pattern));
        entries.push_back(json{{"output", e.output}, {"cylinders", std::move(cylinders)}});
    }
    return json{{"version", 1},
                {"monoid", p.space().monoid().name()},
                {"space", space_to_json(p.space())},
                {"entries", std::move(entries)}};
}

ExplicitPartition partition_from_json(const json& j) {
    int version = require(j, "version").get<int>();
    if (version != 1)
        throw ParseError("unsupported partition version " + std::to_string(version));
    MonoidKind kind = IndexMonoid::from_name(require(j, "monoid").get<std::string>()).kind();
    ShiftSpace space = space_from_json(require(j, "space"), kind);
    std::vector<PartitionEntry> entries;
    for (const json& e : require(j, "entries")) {
        PartitionEntry entry;
        entry.output = require(e, "output").get<Symbol>();
        for (const json& c : require(e, "cylinders"))
            entry.cylinders.push_back(Cylinder{pattern_from_json(c)});
        entries.push_back(std::move(entry));
    }
    return ExplicitPartition(std::move(entries), std::move(space));
}

json code_to_json(const CodeMap& m) {
    if (const auto* c = m.as_classical()) {
        const auto* table = c->local_rule.as_table();
        if (!table)
            throw Error("only table-backed classical codes serialize to JSON");
        json rule = json::array();
        for (const auto& [word, output] : *table)
            rule.push_back(json{{"pattern", word}, {"output", output}});
        return json{{"type", "classical"},
                    {"monoid", c->domain_space.monoid().name()},
                    {"space", space_to_json(c->domain_space)},
                    {"neighborhood", c->neighborhood},
                    {"rule", std::move(rule)}};
    }
    if (const auto* g = m.as_generalized()) {
        const auto* ep = g->explicit_partition();
        if (!ep)
            throw Error("procedural partitions serialize only through extraction");
        return json{{"type", "generalized"}, {"partition", partition_to_json(*ep)}};
    }
    throw Error("black-box maps have no JSON form");
}

CodeMap code_from_json(const json& j, const std::string& name) {
    std::string type = require(j, "type").get<std::string>();
    if (type == "classical") {
        auto neighborhood = make_index_set(require(j, "neighborhood").get<std::vector<Index>>());
        MonoidKind kind;
        if (j.contains("monoid")) {
            kind = IndexMonoid::from_name(j.at("monoid").get<std::string>()).kind();
        } else {
            kind = MonoidKind::Naturals;
            for (Index i : neighborhood) {
                if (i < 0)
                    kind = MonoidKind::Integers;
            }
        }
        ShiftSpace space = j.contains("space") ? space_from_json(j.at("space"), kind)
                                               : ShiftSpace::full(kind);
        LocalRule::Table table;
        for (const json& r : require(j, "rule")) {
            auto word = require(r, "pattern").get<std::vector<Symbol>>();
            if (word.size() != neighborhood.size())
                throw ParseError("rule word length differs from the neighborhood size");
            Symbol output = require(r, "output").get<Symbol>();
            if (!table.emplace(std::move(word), output).second)
                throw ParseError("duplicate rule word");
        }
        return CodeMap(name, ClassicalCode{std::move(neighborhood),
                                           LocalRule::table(std::move(table)), std::move(space)});
    }
    if (type == "generalized") {
        ExplicitPartition partition = partition_from_json(require(j, "partition"));
        ShiftSpace space = partition.space();
        return CodeMap(name, GeneralizedCode{std::move(partition), std::move(space),
                                             kDefaultBudget});
    }
    throw ParseError("unknown code type '" + type + "'");
}

namespace {

std::vector<std::vector<Symbol>> parse_blocks_query(const std::string& query) {
    // e.g. "blocks=[[0,1],[2]]"
    const std::string key = "blocks=";
    if (query.rfind(key, 0) != 0)
        throw ParseError("builtin query must be '?blocks=[[...],...]'");
    json j = json::parse(query.substr(key.size()), nullptr, false);
    if (j.is_discarded() || !j.is_array())
        throw ParseError("malformed blocks list '" + query + "'");
    return j.get<std::vector<std::vector<Symbol>>>();
}

} // namespace

CodeMap load_code_map(const std::string& spec) {
    const std::string prefix = "builtin:";
    if (spec.rfind(prefix, 0) == 0) {
        std::string rest = spec.substr(prefix.size());
        std::vector<std::vector<Symbol>> blocks{{0, 1}};
        std::size_t q = rest.find('?');
        if (q != std::string::npos) {
            blocks = parse_blocks_query(rest.substr(q + 1));
            rest = rest.substr(0, q);
        }
        if (rest == "example1")
            return example1_code();
        if (rest == "example1-formula")
            return example1_formula();
        if (rest == "example2")
            return example2_map(std::move(blocks));
        if (rest == "example2-prober")
            return example2_prober(std::move(blocks));
        if (rest == "identity")
            return identity_code(MonoidKind::Naturals);
        if (rest == "identity-z")
            return identity_code(MonoidKind::Integers);
        if (rest == "sum")
            return sum_code();
        if (rest == "broken")
            return broken_ignores_position();
        throw ParseError("unknown builtin '" + rest + "'");
    }
    std::ifstream in(spec);
    if (!in)
        throw ParseError("cannot open code file '" + spec + "'");
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded())
        throw ParseError("malformed JSON in '" + spec + "'");
    return code_from_json(j, spec);
}

// ---------------------------------------------------------------------------
// Reports

namespace {

json outcome_to_json(const EvalOutcome& o) {
    json j{{"status", eval_status_name(o.status)}};
    if (o.ok())
        j["value"] = o.value;
    if (!o.note.empty())
        j["note"] = o.note;
    return j;
}

} // namespace

json commutation_report_to_json(const CommutationReport& r, const CommutationOptions& opt) {
    json j{{"mode", "commute"},
           {"seed", opt.seed},
           {"samples", opt.samples},
           {"tested", r.tested},
           {"verdict", r.passed() ? "pass" : "counterexample"}};
    if (r.counterexample) {
        const auto& c = *r.counterexample;
        j["counterexample"] = json{{"x", c.x.to_literal()},
                                   {"g", c.g},
                                   {"h", c.h},
                                   {"lhs", c.lhs},
                                   {"rhs", c.rhs}};
    }
    if (!r.findings.empty()) {
        json findings = json::array();
        for (const auto& f : r.findings) {
            findings.push_back(json{{"x", f.x.to_literal()},
                                    {"g", f.g},
                                    {"h", f.h},
                                    {"lhs", outcome_to_json(f.lhs)},
                                    {"rhs", outcome_to_json(f.rhs)}});
        }
        j["findings"] = std::move(findings);
    }
    return j;
}

json determination_to_json(const DeterminationResult& r) {
    if (const auto* d = std::get_if<Determined>(&r)) {
        return json{{"mode", "determine"},
                    {"verdict", "determined"},
                    {"output", d->output},
                    {"certificate", pattern_to_json(d->certificate)}};
    }
    if (const auto* s = std::get_if<SplitResult>(&r)) {
        return json{{"mode", "determine"},
                    {"verdict", "split"},
                    {"pattern", pattern_to_json(s->pattern)},
                    {"extension1", s->extension1.to_literal()},
                    {"extension2", s->extension2.to_literal()},
                    {"output1", s->output1},
                    {"output2", s->output2}};
    }
    const auto& u = std::get<Unresolved>(r);
    return json{{"mode", "determine"},
                {"verdict", "unresolved"},
                {"completions_tested", u.completions_tested},
                {"diagnostics", u.diagnostics}};
}

json learned_partition_to_json(const LearnedPartition& lp) {
    json unresolved = json::array();
    for (const Pattern& p : lp.unresolved)
        unresolved.push_back(pattern_to_json(p));
    return json{{"mode", "learn"},
                {"max_radius", lp.max_radius},
                {"max_symbol", lp.max_symbol},
                {"cylinders", lp.partition.cylinder_count()},
                {"partition", partition_to_json(lp.partition)},
                {"unresolved", std::move(unresolved)}};
}

namespace {

json cylinder_ref_to_json(const CylinderRef& r) {
    return json{{"output", r.output}, {"entry", r.entry}, {"cylinder", r.cylinder}};
}

} // namespace

json validation_report_to_json(const ValidationReport& r) {
    json violations = json::array();
    for (const auto& [a, b] : r.disjointness_violations)
        violations.push_back(json{{"first", cylinder_ref_to_json(a)}, {"second", cylinder_ref_to_json(b)}});
    json undecided_pairs = json::array();
    for (const auto& [a, b] : r.disjointness_undecided)
        undecided_pairs.push_back(json{{"first", cylinder_ref_to_json(a)}, {"second", cylinder_ref_to_json(b)}});
    json uncovered = json::array();
    for (const Pattern& p : r.uncovered)
        uncovered.push_back(pattern_to_json(p));
    json undecided_words = json::array();
    for (const Pattern& p : r.undecided_words)
        undecided_words.push_back(pattern_to_json(p));
    return json{{"mode", "validate"},
                {"disjoint", r.disjoint()},
                {"violations", std::move(violations)},
                {"undecided_pairs", std::move(undecided_pairs)},
                {"uncovered", std::move(uncovered)},
                {"undecided_words", std::move(undecided_words)},
                {"pairs_checked", r.pairs_checked},
                {"patterns_checked", r.patterns_checked}};
}

json radius_classification_to_json(const RadiusClassification& r) {
    json j{{"mode", "radius"}};
    if (const auto* b = r.bounded()) {
        j["verdict"] = "bounded";
        j["radius"] = b->radius;
    } else {
        const auto* e = r.exceeds();
        j["verdict"] = "exceeds";
        j["bound"] = e->bound;
        j["witness"] = e->witness.to_literal();
        j["g"] = e->g;
        j["radius"] = e->observed_radius;
    }
    j["findings"] = r.findings.size();
    return j;
}

} // namespace gsbc
