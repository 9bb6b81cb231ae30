#include "gsbc/config.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace gsbc {

// ---------------------------------------------------------------------------
// Pattern

Pattern Pattern::from_pairs(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (std::size_t k = 1; k < entries.size(); ++k) {
        if (entries[k - 1].first == entries[k].first)
            throw Error("pattern has duplicate index " + std::to_string(entries[k].first));
    }
    for (const Entry& e : entries) {
        if (e.second < 0)
            throw Error("pattern symbol must be nonnegative");
    }
    Pattern p;
    p.entries_ = std::move(entries);
    return p;
}

IndexSet Pattern::domain() const {
    IndexSet d;
    d.reserve(entries_.size());
    for (const Entry& e : entries_)
        d.push_back(e.first);
    return d;
}

std::optional<Symbol> Pattern::find(Index i) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, Index v) { return e.first < v; });
    if (it != entries_.end() && it->first == i)
        return it->second;
    return std::nullopt;
}

Symbol Pattern::at(Index i) const {
    if (auto s = find(i))
        return *s;
    throw Error("pattern has no assignment at index " + std::to_string(i));
}

Pattern Pattern::translated(Index g) const {
    std::vector<Entry> out;
    out.reserve(entries_.size());
    for (const Entry& e : entries_) {
        Index shifted = 0;
        if (__builtin_add_overflow(e.first, g, &shifted))
            throw ArithmeticRangeError("pattern translation overflow");
        out.emplace_back(shifted, e.second);
    }
    Pattern p;
    p.entries_ = std::move(out);
    return p;
}

Pattern Pattern::with(Index i, Symbol s) const {
    std::vector<Entry> out = entries_;
    auto it = std::lower_bound(out.begin(), out.end(), i,
                               [](const Entry& e, Index v) { return e.first < v; });
    if (it != out.end() && it->first == i)
        it->second = s;
    else
        out.insert(it, {i, s});
    Pattern p;
    p.entries_ = std::move(out);
    return p;
}

std::vector<Symbol> Pattern::symbols() const {
    std::vector<Symbol> out;
    out.reserve(entries_.size());
    for (const Entry& e : entries_)
        out.push_back(e.second);
    return out;
}

std::string Pattern::to_string() const {
    std::string out;
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        if (k)
            out += ',';
        out += std::to_string(entries_[k].second);
        out += '@';
        out += std::to_string(entries_[k].first);
    }
    return out;
}

namespace {

std::int64_t parse_int(std::string_view text) {
    std::int64_t value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw ParseError("bad integer: '" + std::string(text) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(text.substr(start));
            return out;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

std::vector<Symbol> parse_symbol_list(std::string_view text) {
    std::vector<Symbol> out;
    if (text.empty())
        return out;
    for (std::string_view tok : split(text, ',')) {
        Symbol s = parse_int(tok);
        if (s < 0)
            throw ParseError("symbol must be nonnegative: '" + std::string(tok) + "'");
        out.push_back(s);
    }
    return out;
}

std::string format_symbol_list(const std::vector<Symbol>& xs) {
    std::string out;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (k)
            out += ',';
        out += std::to_string(xs[k]);
    }
    return out;
}

} // namespace

Pattern Pattern::parse(const std::string& literal) {
    std::vector<Entry> entries;
    if (literal.empty())
        return Pattern();
    for (std::string_view tok : split(literal, ',')) {
        std::size_t at = tok.find('@');
        if (at == std::string_view::npos)
            throw ParseError("pattern entry must be symbol@index: '" + std::string(tok) + "'");
        Symbol s = parse_int(tok.substr(0, at));
        Index i = parse_int(tok.substr(at + 1));
        if (s < 0)
            throw ParseError("pattern symbol must be nonnegative");
        entries.emplace_back(i, s);
    }
    return from_pairs(std::move(entries));
}

bool pattern_extends(const Pattern& x, const Pattern& sub) {
    for (const Pattern::Entry& e : sub.entries()) {
        auto s = x.find(e.first);
        if (!s || *s != e.second)
            return false;
    }
    return true;
}

std::optional<Pattern> merge_patterns(const Pattern& a, const Pattern& b) {
    std::vector<Pattern::Entry> merged = a.entries();
    for (const Pattern::Entry& e : b.entries()) {
        auto s = a.find(e.first);
        if (s) {
            if (*s != e.second)
                return std::nullopt;
        } else {
            merged.push_back(e);
        }
    }
    return Pattern::from_pairs(std::move(merged));
}

std::optional<Index> patterns_translation_equivalent(const Pattern& p, const Pattern& q) {
    if (p.size() != q.size())
        return std::nullopt;
    if (p.empty())
        return 0;
    // Entries are sorted, so the only candidate maps min to min.
    Index g = q.entries().front().first - p.entries().front().first;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const auto& pe = p.entries()[k];
        const auto& qe = q.entries()[k];
        if (qe.first != pe.first + g || qe.second != pe.second)
            return std::nullopt;
    }
    return g;
}

// ---------------------------------------------------------------------------
// Config

namespace {

Symbol check_symbol(Symbol s) {
    if (s < 0)
        throw Error("config symbol must be nonnegative");
    return s;
}

void check_symbols(const std::vector<Symbol>& xs) {
    for (Symbol s : xs)
        check_symbol(s);
}

// Smallest p such that repeating period[0..p) reproduces the full list.
// For infinite repetitions the minimal period always divides the length.
std::size_t minimal_period(const std::vector<Symbol>& period) {
    for (std::size_t p = 1; p <= period.size(); ++p) {
        if (period.size() % p != 0)
            continue;
        bool ok = true;
        for (std::size_t k = p; k < period.size() && ok; ++k)
            ok = period[k] == period[k % p];
        if (ok)
            return p;
    }
    return period.size();
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    return std::lcm(a, b);
}

} // namespace

Config Config::eventually_periodic(std::vector<Symbol> prefix, std::vector<Symbol> period) {
    if (period.empty())
        throw Error("eventually periodic config needs a nonempty period");
    check_symbols(prefix);
    check_symbols(period);
    Config c;
    c.kind_ = MonoidKind::Naturals;
    c.repr_ = EventuallyPeriodic{std::move(prefix), std::move(period)};
    return c;
}

Config Config::bi_periodic(std::vector<Symbol> left_period, std::vector<Symbol> core,
                           Index core_start, std::vector<Symbol> right_period) {
    if (left_period.empty() || right_period.empty())
        throw Error("bi-periodic config needs nonempty periods");
    check_symbols(left_period);
    check_symbols(core);
    check_symbols(right_period);
    Config c;
    c.kind_ = MonoidKind::Integers;
    c.repr_ = BiPeriodic{std::move(left_period), std::move(core), core_start, std::move(right_period)};
    return c;
}

Config Config::generator(std::string name, MonoidKind kind, std::function<Symbol(Index)> fn) {
    Config c;
    c.kind_ = kind;
    c.repr_ = Generator{std::move(name), std::move(fn)};
    return c;
}

Config Config::constant(MonoidKind kind, Symbol s) {
    check_symbol(s);
    if (kind == MonoidKind::Naturals)
        return eventually_periodic({}, {s});
    return bi_periodic({s}, {}, 0, {s});
}

bool Config::is_generator() const {
    return std::holds_alternative<Generator>(repr_);
}

const Config::EventuallyPeriodic* Config::as_eventually_periodic() const {
    return std::get_if<EventuallyPeriodic>(&repr_);
}

const Config::BiPeriodic* Config::as_bi_periodic() const {
    return std::get_if<BiPeriodic>(&repr_);
}

Symbol Config::get(Index i) const {
    if (const auto* ep = std::get_if<EventuallyPeriodic>(&repr_)) {
        if (i < 0)
            throw ArithmeticRangeError("negative index into a one-sided config");
        auto n = static_cast<std::int64_t>(ep->prefix.size());
        if (i < n)
            return ep->prefix[static_cast<std::size_t>(i)];
        return ep->period[static_cast<std::size_t>((i - n) % static_cast<std::int64_t>(ep->period.size()))];
    }
    if (const auto* bp = std::get_if<BiPeriodic>(&repr_)) {
        auto core_len = static_cast<std::int64_t>(bp->core.size());
        if (i >= bp->core_start && i < bp->core_start + core_len)
            return bp->core[static_cast<std::size_t>(i - bp->core_start)];
        if (i < bp->core_start) {
            auto l = static_cast<std::int64_t>(bp->left_period.size());
            std::int64_t o = bp->core_start - 1 - i; // 0 at the cell touching the core
            return bp->left_period[static_cast<std::size_t>(l - 1 - (o % l))];
        }
        auto r = static_cast<std::int64_t>(bp->right_period.size());
        std::int64_t o = i - (bp->core_start + core_len);
        return bp->right_period[static_cast<std::size_t>(o % r)];
    }
    const auto& gen = std::get<Generator>(repr_);
    Symbol s = gen.fn(i);
    return check_symbol(s);
}

Pattern Config::restrict_to(const IndexSet& d) const {
    std::vector<Pattern::Entry> entries;
    entries.reserve(d.size());
    for (Index i : d)
        entries.emplace_back(i, get(i));
    return Pattern::from_pairs(std::move(entries));
}

Config Config::shifted(Index g) const {
    if (const auto* ep = std::get_if<EventuallyPeriodic>(&repr_)) {
        if (g < 0)
            throw ArithmeticRangeError("one-sided configs only shift by nonnegative g");
        auto n = static_cast<std::int64_t>(ep->prefix.size());
        if (g <= n) {
            std::vector<Symbol> prefix(ep->prefix.begin() + static_cast<std::ptrdiff_t>(g), ep->prefix.end());
            return eventually_periodic(std::move(prefix), ep->period);
        }
        auto l = static_cast<std::int64_t>(ep->period.size());
        std::int64_t rot = (g - n) % l;
        std::vector<Symbol> period;
        period.reserve(ep->period.size());
        for (std::int64_t k = 0; k < l; ++k)
            period.push_back(ep->period[static_cast<std::size_t>((rot + k) % l)]);
        return eventually_periodic({}, std::move(period));
    }
    if (const auto* bp = std::get_if<BiPeriodic>(&repr_)) {
        Index start = 0;
        if (__builtin_sub_overflow(bp->core_start, g, &start))
            throw ArithmeticRangeError("shift overflow");
        return bi_periodic(bp->left_period, bp->core, start, bp->right_period);
    }
    const auto& gen = std::get<Generator>(repr_);
    if (kind_ == MonoidKind::Naturals && g < 0)
        throw ArithmeticRangeError("one-sided configs only shift by nonnegative g");
    auto fn = gen.fn;
    return generator(gen.name + "<<" + std::to_string(g), kind_,
                     [fn, g](Index i) { return fn(g + i); });
}

Config Config::canonical() const {
    const auto* ep = std::get_if<EventuallyPeriodic>(&repr_);
    if (!ep)
        return *this;
    std::size_t p = minimal_period(ep->period);
    std::vector<Symbol> period(ep->period.begin(), ep->period.begin() + static_cast<std::ptrdiff_t>(p));
    std::vector<Symbol> prefix = ep->prefix;
    // Absorb prefix cells into the period while they already agree with it.
    while (!prefix.empty() && prefix.back() == period.back()) {
        prefix.pop_back();
        std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
    }
    return eventually_periodic(std::move(prefix), std::move(period));
}

std::vector<Symbol> Config::symbol_support() const {
    std::vector<Symbol> out;
    if (const auto* ep = std::get_if<EventuallyPeriodic>(&repr_)) {
        out = ep->prefix;
        out.insert(out.end(), ep->period.begin(), ep->period.end());
    } else if (const auto* bp = std::get_if<BiPeriodic>(&repr_)) {
        out = bp->left_period;
        out.insert(out.end(), bp->core.begin(), bp->core.end());
        out.insert(out.end(), bp->right_period.begin(), bp->right_period.end());
    } else {
        throw NotDecidableError("generator-backed config has no finite symbol support");
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string Config::to_literal() const {
    if (const auto* ep = std::get_if<EventuallyPeriodic>(&repr_))
        return format_symbol_list(ep->prefix) + ";" + format_symbol_list(ep->period);
    if (const auto* bp = std::get_if<BiPeriodic>(&repr_)) {
        return "L=" + format_symbol_list(bp->left_period) +
               " C@" + std::to_string(bp->core_start) + "=" + format_symbol_list(bp->core) +
               " R=" + format_symbol_list(bp->right_period);
    }
    return "generator:" + std::get<Generator>(repr_).name;
}

Config Config::parse(const std::string& literal) {
    if (literal.rfind("L=", 0) == 0) {
        std::vector<std::string_view> parts;
        for (std::string_view tok : split(literal, ' ')) {
            if (!tok.empty())
                parts.push_back(tok);
        }
        if (parts.size() != 3 || parts[0].rfind("L=", 0) != 0 ||
            parts[1].rfind("C@", 0) != 0 || parts[2].rfind("R=", 0) != 0)
            throw ParseError("bi-periodic literal must be 'L=... C@k=... R=...'");
        std::vector<Symbol> left = parse_symbol_list(parts[0].substr(2));
        std::string_view core_part = parts[1].substr(2);
        std::size_t eq = core_part.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("core must be 'C@start=symbols'");
        Index start = parse_int(core_part.substr(0, eq));
        std::vector<Symbol> core = parse_symbol_list(core_part.substr(eq + 1));
        std::vector<Symbol> right = parse_symbol_list(parts[2].substr(2));
        if (left.empty() || right.empty())
            throw ParseError("bi-periodic periods must be nonempty");
        return bi_periodic(std::move(left), std::move(core), start, std::move(right));
    }
    std::size_t sep = literal.find(';');
    if (sep == std::string::npos)
        throw ParseError("config literal must be 'prefix;period' or 'L=... C@k=... R=...'");
    std::vector<Symbol> prefix = parse_symbol_list(std::string_view(literal).substr(0, sep));
    std::vector<Symbol> period = parse_symbol_list(std::string_view(literal).substr(sep + 1));
    if (period.empty())
        throw ParseError("period must be nonempty");
    return eventually_periodic(std::move(prefix), std::move(period));
}

bool operator==(const Config& a, const Config& b) {
    if (a.kind_ != b.kind_)
        return false;
    if (a.is_generator() || b.is_generator()) {
        const auto* ga = std::get_if<Config::Generator>(&a.repr_);
        const auto* gb = std::get_if<Config::Generator>(&b.repr_);
        return ga && gb && ga->name == gb->name;
    }
    if (const auto* ea = a.as_eventually_periodic()) {
        const auto* eb = b.as_eventually_periodic();
        if (!eb)
            return false;
        Config ca = a.canonical();
        Config cb = b.canonical();
        const auto* xa = ca.as_eventually_periodic();
        const auto* xb = cb.as_eventually_periodic();
        return xa->prefix == xb->prefix && xa->period == xb->period;
    }
    // Both bi-periodic: compare semantically on a window wide enough to pin
    // both periodic tails and both cores.
    const auto* ba = a.as_bi_periodic();
    const auto* bb = b.as_bi_periodic();
    Index lo = std::min(ba->core_start, bb->core_start) -
               lcm64(static_cast<std::int64_t>(ba->left_period.size()),
                     static_cast<std::int64_t>(bb->left_period.size()));
    Index hi = std::max(ba->core_start + static_cast<std::int64_t>(ba->core.size()),
                        bb->core_start + static_cast<std::int64_t>(bb->core.size())) +
               lcm64(static_cast<std::int64_t>(ba->right_period.size()),
                     static_cast<std::int64_t>(bb->right_period.size()));
    for (Index i = lo; i <= hi; ++i) {
        if (a.get(i) != b.get(i))
            return false;
    }
    return true;
}

} // namespace gsbc
