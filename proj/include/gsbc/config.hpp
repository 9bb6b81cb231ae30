/* config.hpp -- finite patterns and finitely-described total configurations
 * over a countable alphabet, with restriction, translation and canonical
 * forms. */

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gsbc/monoid.hpp"

namespace gsbc {

// Symbols are nonnegative integers; the alphabet is all of N, no global
// bound is carried anywhere.
using Symbol = std::int64_t;

/**
 * A finite partial configuration: a finite index set plus one symbol per
 * index. Entries are kept sorted by index; this is also the data of a
 * cylinder specification.
 */
class Pattern {
public:
    using Entry = std::pair<Index, Symbol>;

    Pattern() = default;
    static Pattern from_pairs(std::vector<Entry> entries);

    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

    IndexSet domain() const;
    std::optional<Symbol> find(Index i) const;
    Symbol at(Index i) const;
    bool has(Index i) const { return find(i).has_value(); }

    Pattern translated(Index g) const;
    Pattern with(Index i, Symbol s) const; // add or overwrite one assignment

    std::vector<Symbol> symbols() const;

    // "s@i,s@i" with indices ascending; empty pattern formats as "".
    std::string to_string() const;
    static Pattern parse(const std::string& literal);

    friend bool operator==(const Pattern&, const Pattern&) = default;
    friend bool operator<(const Pattern& a, const Pattern& b) { return a.entries_ < b.entries_; }

private:
    std::vector<Entry> entries_;
};

// x agrees with sub on all of sub's domain.
bool pattern_extends(const Pattern& x, const Pattern& sub);

// Pointwise union; nullopt if the two patterns clash on a shared index.
std::optional<Pattern> merge_patterns(const Pattern& a, const Pattern& b);

// The g with domain(q) = g + domain(p) and q(g+i) = p(i) everywhere, if any.
// The offset may be negative even for patterns over N.
std::optional<Index> patterns_translation_equivalent(const Pattern& p, const Pattern& q);

/**
 * A total configuration x in A^G with a finite description.
 *
 * EventuallyPeriodic (over N):  x_i = prefix[i] for i < |prefix|, then the
 * period repeats. BiPeriodic (over Z): an explicit core on
 * [core_start, core_start+|core|), the left period repeating leftward from
 * core_start and the right period repeating rightward. GeneratorBacked: an
 * opaque pure function; equality on these is name identity and they are
 * rejected by operations that need decidable equality or membership.
 */
class Config {
public:
    struct EventuallyPeriodic {
        std::vector<Symbol> prefix;
        std::vector<Symbol> period; // nonempty
    };
    struct BiPeriodic {
        std::vector<Symbol> left_period; // nonempty
        std::vector<Symbol> core;
        Index core_start = 0;
        std::vector<Symbol> right_period; // nonempty
    };
    struct Generator {
        std::string name;
        std::function<Symbol(Index)> fn; // pure
    };

    static Config eventually_periodic(std::vector<Symbol> prefix, std::vector<Symbol> period);
    static Config bi_periodic(std::vector<Symbol> left_period, std::vector<Symbol> core,
                              Index core_start, std::vector<Symbol> right_period);
    static Config generator(std::string name, MonoidKind kind, std::function<Symbol(Index)> fn);
    static Config constant(MonoidKind kind, Symbol s);

    MonoidKind kind() const { return kind_; }
    bool is_generator() const;
    const EventuallyPeriodic* as_eventually_periodic() const;
    const BiPeriodic* as_bi_periodic() const;

    Symbol get(Index i) const;
    Pattern restrict_to(const IndexSet& d) const;

    // y with y_i = x_{g+i}; periodic descriptions stay closed-form.
    Config shifted(Index g) const;

    // Minimal period then minimal prefix for eventually periodic configs;
    // bi-periodic configs are compared semantically instead.
    Config canonical() const;

    // Distinct symbols of the finite description (throws for generators).
    std::vector<Symbol> symbol_support() const;

    // "2,0,5;0" over N, "L=7 C@-1=1,2 R=9" over Z; inverse of parse.
    std::string to_literal() const;
    static Config parse(const std::string& literal);

    friend bool operator==(const Config& a, const Config& b);

private:
    MonoidKind kind_ = MonoidKind::Naturals;
    std::variant<EventuallyPeriodic, BiPeriodic, Generator> repr_;
};

} // namespace gsbc
