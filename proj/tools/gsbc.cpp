/* gsbc.cpp -- command-line front-end: evaluate codes on configurations,
 * validate cylinder partitions, learn partitions from black-box maps, run
 * the commutation / determination / radius checks, and demo the built-in
 * example maps end to end. */

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gsbc/chl.hpp"
#include "gsbc/json_io.hpp"

using namespace gsbc;

namespace {

// Exit code contract: 0 pass/success, 1 finding (counterexample, violation,
// split, no-match), 2 usage error, 3 budget or scale exhaustion.
enum ExitCode { kOk = 0, kFinding = 1, kUsage = 2, kExhausted = 3 };

struct WindowRange {
    Index lo = 0;
    Index hi = 0;
};

WindowRange parse_range(const std::string& text) {
    std::size_t dots = text.find("..");
    if (dots == std::string::npos)
        throw ParseError("range must be 'a..b', got '" + text + "'");
    WindowRange r;
    r.lo = std::stoll(text.substr(0, dots));
    r.hi = std::stoll(text.substr(dots + 2));
    if (r.lo > r.hi)
        throw ParseError("empty range '" + text + "'");
    return r;
}

IndexSet range_to_set(const WindowRange& r) {
    IndexSet out;
    for (Index i = r.lo; i <= r.hi; ++i)
        out.push_back(i);
    return out;
}

int status_exit(EvalStatus s) {
    return s == EvalStatus::BudgetExceeded ? kExhausted : kFinding;
}

std::string radius_of(const EvalOutcome& out, const CodeMap& m) {
    if (m.as_black_box())
        return "-"; // no cylinder witness to measure
    std::int64_t r = 0;
    for (Index i : out.witness)
        r = std::max(r, IndexMonoid::distance(i, 0));
    return std::to_string(r);
}

int cmd_eval(const std::string& code, const std::string& config_literal,
             const std::string& window, std::int64_t budget, bool as_json) {
    CodeMap m = load_code_map(code);
    Config x = Config::parse(config_literal);
    IndexSet d = range_to_set(parse_range(window));

    std::vector<std::string> outputs;
    std::vector<std::string> radii;
    for (Index g : d) {
        EvalOutcome out = m.eval(x, g, budget);
        if (!out.ok()) {
            if (as_json) {
                json j{{"mode", "eval"},
                       {"error", eval_status_name(out.status)},
                       {"index", g},
                       {"note", out.note}};
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "error at index " << g << ": " << eval_status_name(out.status)
                          << (out.note.empty() ? "" : " (" + out.note + ")") << "\n";
            }
            return status_exit(out.status);
        }
        outputs.push_back(std::to_string(out.value));
        radii.push_back(radius_of(out, m));
    }
    if (as_json) {
        json j{{"mode", "eval"},
               {"map", m.name()},
               {"window", json::array({d.front(), d.back()})},
               {"outputs", outputs},
               {"radii", radii}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "output:";
        for (const std::string& s : outputs)
            std::cout << " " << s;
        std::cout << "\nradius:";
        for (const std::string& s : radii)
            std::cout << " " << s;
        std::cout << "\n";
    }
    return kOk;
}

int cmd_validate(const std::string& path, std::int64_t radius, Symbol max_symbol, bool as_json) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open partition file '" + path + "'");
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded())
        throw ParseError("malformed JSON in '" + path + "'");
    ExplicitPartition p = partition_from_json(j);
    ValidationReport r = validate_partition(p, radius, max_symbol);

    if (as_json) {
        std::cout << validation_report_to_json(r).dump(2) << "\n";
    } else {
        std::cout << "cylinders: " << p.cylinder_count() << "\n";
        std::cout << "disjoint: " << (r.disjoint() ? "yes" : "no") << " (" << r.pairs_checked
                  << " cross-output pairs)\n";
        for (const auto& [a, b] : r.disjointness_violations) {
            std::cout << "  violation: output " << a.output << " cylinder " << a.cylinder
                      << " overlaps output " << b.output << " cylinder " << b.cylinder << "\n";
        }
        if (!r.disjointness_undecided.empty())
            std::cout << "  undecided pairs: " << r.disjointness_undecided.size() << "\n";
        if (r.uncovered.empty()) {
            std::cout << "coverage: covered at radius " << radius << " (" << r.patterns_checked
                      << " patterns)\n";
        } else {
            std::cout << "coverage: " << r.uncovered.size() << " of " << r.patterns_checked
                      << " patterns uncovered at radius " << radius
                      << " (may need a larger scale)\n";
            std::size_t shown = 0;
            for (const Pattern& u : r.uncovered) {
                if (shown++ == 5) {
                    std::cout << "  ...\n";
                    break;
                }
                std::cout << "  uncovered: " << u.to_string() << "\n";
            }
        }
        if (!r.undecided_words.empty())
            std::cout << "undecided language membership: " << r.undecided_words.size() << "\n";
    }
    return r.disjoint() ? kOk : kFinding;
}

int cmd_learn(const std::string& map, std::int64_t radius, Symbol max_symbol,
              const std::string& out_path, std::int64_t budget, bool as_json) {
    CodeMap m = load_code_map(map);
    LearnedPartition lp = learn_partition(m, radius, max_symbol, budget);

    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out)
            throw ParseError("cannot write '" + out_path + "'");
        out << partition_to_json(lp.partition).dump(2) << "\n";
    }

    if (as_json) {
        std::cout << learned_partition_to_json(lp).dump(2) << "\n";
    } else {
        std::cout << "learned " << lp.partition.cylinder_count() << " cylinders at radius "
                  << radius << ", symbols <= " << max_symbol << "\n";
        if (!out_path.empty())
            std::cout << "wrote " << out_path << "\n";
        if (lp.unresolved.empty()) {
            std::cout << "unresolved: none\n";
        } else {
            std::cout << "unresolved: " << lp.unresolved.size() << " patterns\n";
            std::size_t shown = 0;
            for (const Pattern& p : lp.unresolved) {
                if (shown++ == 5) {
                    std::cout << "  ...\n";
                    break;
                }
                std::cout << "  " << (p.empty() ? "(empty)" : p.to_string()) << "\n";
            }
            if (lp.partition.cylinder_count() == 0)
                std::cout << "no local determination found at this scale\n";
        }
    }
    return lp.unresolved.empty() ? kOk : kExhausted;
}

int check_commute(const CodeMap& m, int samples, const std::string& shifts, std::uint64_t seed,
                  std::int64_t budget, bool as_json) {
    CommutationOptions opt;
    opt.samples = samples;
    opt.seed = seed;
    opt.budget = budget;
    if (!shifts.empty())
        opt.shift_range = range_to_set(parse_range(shifts));
    CommutationReport r = check_commutation(m, opt);
    if (as_json) {
        std::cout << commutation_report_to_json(r, opt).dump(2) << "\n";
    } else if (r.passed()) {
        std::cout << "commutation: pass (" << r.tested << " triples";
        if (!r.findings.empty())
            std::cout << ", " << r.findings.size() << " evaluation findings";
        std::cout << ")\n";
    } else {
        const auto& c = *r.counterexample;
        std::cout << "commutation: counterexample\n";
        std::cout << "  x = " << c.x.to_literal() << "\n";
        std::cout << "  g = " << c.g << ", h = " << c.h << "\n";
        std::cout << "  eval(shift(h,x), g) = " << c.lhs << " but eval(x, g+h) = " << c.rhs
                  << "\n";
    }
    return r.passed() ? kOk : kFinding;
}

int check_determine(const CodeMap& m, const std::string& pattern_literal, Symbol max_symbol,
                    std::int64_t budget, bool as_json) {
    DeterminationOptions opt;
    opt.max_symbol = max_symbol;
    opt.budget = budget;
    Pattern p = Pattern::parse(pattern_literal);
    DeterminationResult r = check_determination(m, p, opt);
    if (as_json)
        std::cout << determination_to_json(r).dump(2) << "\n";
    if (const auto* d = std::get_if<Determined>(&r)) {
        if (!as_json)
            std::cout << "determined: output " << d->output << " on all tested extensions of '"
                      << d->certificate.to_string() << "'\n";
        return kOk;
    }
    if (const auto* s = std::get_if<SplitResult>(&r)) {
        if (!as_json) {
            std::cout << "split: the pattern does not determine the output\n";
            std::cout << "  " << s->extension1.to_literal() << " -> " << s->output1 << "\n";
            std::cout << "  " << s->extension2.to_literal() << " -> " << s->output2 << "\n";
        }
        return kFinding;
    }
    const auto& u = std::get<Unresolved>(r);
    if (!as_json) {
        std::cout << "unresolved: no certificate at this scale (" << u.completions_tested
                  << " completions tested)\n";
        for (const std::string& d : u.diagnostics)
            std::cout << "  " << d << "\n";
    }
    return kExhausted;
}

int check_radius(const CodeMap& m, std::int64_t radius, Symbol max_symbol, std::int64_t budget,
                 bool as_json) {
    const GeneralizedCode* g = m.as_generalized();
    std::optional<GeneralizedCode> embedded;
    if (!g) {
        const ClassicalCode* c = m.as_classical();
        if (!c)
            throw ParseError("radius classification needs a classical or generalized code");
        embedded = classical_to_generalized(*c, max_symbol);
        g = &*embedded;
    }
    RadiusClassification r = classify_radius(*g, radius, max_symbol, budget);
    if (as_json)
        std::cout << radius_classification_to_json(r).dump(2) << "\n";
    if (const auto* b = r.bounded()) {
        if (!as_json)
            std::cout << "bounded(" << b->radius << ") at scale R=" << radius
                      << " M=" << max_symbol << "\n";
        return kOk;
    }
    const auto* e = r.exceeds();
    if (!as_json) {
        std::cout << "exceeds(" << e->bound << "): witness x = " << e->witness.to_literal()
                  << " at g = " << e->g << " has radius " << e->observed_radius << "\n";
    }
    return kFinding;
}

int cmd_demo(std::uint64_t seed, std::int64_t max_radius, Symbol max_symbol,
             std::int64_t budget) {
    int worst = kOk;
    auto run_block = [&](const CodeMap& code, const std::string& header,
                         const std::string& eval_literal, const std::string& eval_window,
                         const std::string& det_pattern, std::int64_t learn_radius,
                         Symbol learn_symbols) {
        std::cout << "== " << header << " ==\n";

        Config x = Config::parse(eval_literal);
        IndexSet d = range_to_set(parse_range(eval_window));
        std::cout << "eval x=" << eval_literal << " window=" << eval_window << "\n  output:";
        bool eval_ok = true;
        for (Index g : d) {
            EvalOutcome out = code.eval(x, g, budget);
            if (!out.ok()) {
                eval_ok = false;
                std::cout << " <" << eval_status_name(out.status) << ">";
                break;
            }
            std::cout << " " << out.value;
        }
        std::cout << "\n";

        CommutationOptions copt;
        copt.samples = 100;
        copt.seed = seed;
        copt.budget = budget;
        CommutationReport cr = check_commutation(code, copt);
        std::cout << "commute samples=100 seed=" << seed << "\n  "
                  << (cr.passed() ? "pass" : "COUNTEREXAMPLE") << " (" << cr.tested
                  << " triples)\n";

        DeterminationOptions dopt;
        dopt.max_symbol = learn_symbols;
        dopt.budget = budget;
        DeterminationResult dr = check_determination(code, Pattern::parse(det_pattern), dopt);
        bool determined = std::holds_alternative<Determined>(dr);
        std::cout << "determine p=" << det_pattern << "\n  ";
        if (const auto* det = std::get_if<Determined>(&dr)) {
            std::cout << "determined: output " << det->output << "\n";
        } else if (const auto* s = std::get_if<SplitResult>(&dr)) {
            std::cout << "split: " << s->extension1.to_literal() << " -> " << s->output1 << " vs "
                      << s->extension2.to_literal() << " -> " << s->output2 << "\n";
        } else {
            std::cout << "unresolved at this scale\n";
        }

        LearnedPartition lp = learn_partition(code, learn_radius, learn_symbols, budget);
        std::cout << "learn R=" << learn_radius << " M=" << learn_symbols << "\n  "
                  << lp.partition.cylinder_count() << " cylinders, " << lp.unresolved.size()
                  << " unresolved\n";

        if (const auto* g = code.as_generalized()) {
            RadiusClassification rc =
                classify_radius(*g, max_radius, static_cast<Symbol>(max_radius + 2), budget);
            std::cout << "radius R=" << max_radius << " M=" << (max_radius + 2) << "\n  ";
            if (const auto* b = rc.bounded())
                std::cout << "bounded(" << b->radius << ")\n";
            else
                std::cout << "exceeds " << rc.exceeds()->bound << ": witness "
                          << rc.exceeds()->witness.to_literal() << " has radius "
                          << rc.exceeds()->observed_radius << " (no uniform radius at scale)\n";
        }

        std::cout << "verdict: shift-commuting " << (cr.passed() ? "yes" : "NO")
                  << "; locally determined " << (determined ? "yes" : "no") << "\n\n";
        if (!cr.passed() || !eval_ok)
            worst = kFinding;
        return determined;
    };

    bool d1 = run_block(example1_code(), "example 1: y_j = x_(j + x_j) on the full shift over N",
                        "2,0,5,1,3;0", "0..4", "1@0,4@1", max_radius, max_symbol);
    bool d2 = run_block(example2_map({{0, 1}}), "example 2: y_j = max over i >= j of x_i on {0,1}^N",
                        "1,0;0", "0..1", "0@0,0@1", max_radius, 1);

    std::cout << "summary\n";
    std::cout << "  map       commuting  locally-determined\n";
    std::cout << "  example1  yes        " << (d1 ? "yes" : "no") << "\n";
    std::cout << "  example2  yes        " << (d2 ? "yes" : "no") << "\n";
    return worst;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"shift spaces, sliding block codes and their verification suite"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 42;
    std::int64_t budget = kDefaultBudget;
    if (const char* env = std::getenv("GSBC_BUDGET"))
        budget = std::strtoll(env, nullptr, 10);
    bool as_json = false;
    app.add_option("--seed", seed, "seed for all randomized subcommands");
    app.add_option("--budget", budget, "probe budget per coordinate evaluation");
    app.add_flag("--json", as_json, "emit machine-readable reports");

    auto* eval = app.add_subcommand("eval", "evaluate a code on a window of a configuration");
    std::string eval_code, eval_config, eval_window;
    eval->add_option("code", eval_code, "code file or builtin:<name>")->required();
    eval->add_option("--config", eval_config, "configuration literal")->required();
    eval->add_option("--window", eval_window, "index range a..b")->required();

    auto* validate = app.add_subcommand("validate", "check a partition for disjointness and coverage");
    std::string validate_path;
    std::int64_t validate_radius = 2;
    Symbol validate_symbols = 2;
    validate->add_option("partition", validate_path, "partition JSON file")->required();
    validate->add_option("-R,--radius", validate_radius, "coverage ball radius");
    validate->add_option("-M,--max-symbol", validate_symbols, "symbol bound for coverage");

    auto* learn = app.add_subcommand("learn", "learn the cylinder partition of a black-box map");
    std::string learn_map, learn_out;
    std::int64_t learn_radius = 3;
    Symbol learn_symbols = 3;
    learn->add_option("map", learn_map, "code file or builtin:<name>")->required();
    learn->add_option("-R,--radius", learn_radius, "learning ball radius");
    learn->add_option("-M,--max-symbol", learn_symbols, "symbol bound");
    learn->add_option("-o,--out", learn_out, "write the learned partition JSON here");

    auto* check = app.add_subcommand("check", "commutation / determination / radius checks");
    std::string check_map, check_mode, check_shifts, check_pattern;
    int check_samples = 200;
    std::int64_t check_radius_bound = 3;
    Symbol check_symbols = 3;
    check->add_option("map", check_map, "code file or builtin:<name>")->required();
    check->add_option("--mode", check_mode, "commute | determine | radius")->required();
    check->add_option("--samples", check_samples, "random configurations to test");
    check->add_option("--shifts", check_shifts, "shift range a..b");
    check->add_option("--pattern", check_pattern, "pattern literal s@i,s@i,...");
    check->add_option("-R,--radius", check_radius_bound, "radius bound to test against");
    check->add_option("-M,--max-symbol", check_symbols, "symbol bound");

    auto* demo = app.add_subcommand("demo", "run both built-in example maps end to end");
    std::int64_t demo_radius = 3;
    Symbol demo_symbols = 3;
    demo->add_option("--max-radius", demo_radius, "learning/classification radius");
    demo->add_option("--max-symbol", demo_symbols, "symbol bound for learning");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (eval->parsed())
            return cmd_eval(eval_code, eval_config, eval_window, budget, as_json);
        if (validate->parsed())
            return cmd_validate(validate_path, validate_radius, validate_symbols, as_json);
        if (learn->parsed())
            return cmd_learn(learn_map, learn_radius, learn_symbols, learn_out, budget, as_json);
        if (check->parsed()) {
            CodeMap m = load_code_map(check_map);
            if (check_mode == "commute")
                return check_commute(m, check_samples, check_shifts, seed, budget, as_json);
            if (check_mode == "determine") {
                if (check->count("--pattern") == 0)
                    throw ParseError("--mode determine needs --pattern");
                return check_determine(m, check_pattern, check_symbols, budget, as_json);
            }
            if (check_mode == "radius")
                return check_radius(m, check_radius_bound, check_symbols, budget, as_json);
            throw ParseError("unknown mode '" + check_mode + "'");
        }
        if (demo->parsed())
            return cmd_demo(seed, demo_radius, demo_symbols, budget);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const SizeGuardError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExhausted;
    } catch (const EvalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return status_exit(e.status());
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
