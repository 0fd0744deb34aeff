#include "minprod/spectrum.hpp"

#include <algorithm>
#include <map>

namespace minprod {

Rational parse_rational(const std::string& text) {
    auto bad = [&] { throw SchemaError("not a rational: '" + text + "'"); };
    std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(text));
        Integer num(text.substr(0, slash));
        Integer den(text.substr(slash + 1));
        if (den <= 0) bad();
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        bad();
    }
    return Rational();  // unreachable
}

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r))
        throw Error("multiplicity overflow in aggregation");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r))
        throw Error("multiplicity overflow in pair enumeration");
    return r;
}

}  // namespace

Spectrum make_spectrum(std::vector<SpectrumEntry> entries, Bound bound) {
    std::map<Rational, std::int64_t> aggregated;
    for (const auto& e : entries) {
        if (e.multiplicity <= 0)
            throw NonPositiveMultiplicity("multiplicity " + std::to_string(e.multiplicity) +
                                          " at value " + to_string(e.value));
        if (!leq(e.value, bound))
            throw EntryAboveBound("entry " + to_string(e.value) + " above bound " +
                                  to_string(bound));
        auto [it, inserted] = aggregated.emplace(e.value, e.multiplicity);
        if (!inserted) it->second = checked_add(it->second, e.multiplicity);
    }
    Spectrum s;
    s.bound_ = std::move(bound);
    s.entries_.reserve(aggregated.size());
    for (auto& [v, m] : aggregated) s.entries_.push_back({v, m});
    return s;
}

Spectrum scale(const Spectrum& s, const Rational& c) {
    if (c <= 0) throw NonPositiveScale("scale factor " + to_string(c));
    Spectrum r;
    r.bound_ = s.bound_ * c;
    r.entries_.reserve(s.entries_.size());
    for (const auto& e : s.entries_) r.entries_.push_back({e.value * c, e.multiplicity});
    return r;
}

Spectrum shift(const Spectrum& s, const Rational& c) {
    Spectrum r;
    r.bound_ = s.bound_ + c;
    r.entries_.reserve(s.entries_.size());
    for (const auto& e : s.entries_) r.entries_.push_back({e.value + c, e.multiplicity});
    return r;
}

Spectrum merge(const Spectrum& s1, const Spectrum& s2) {
    Bound b = min(s1.bound_, s2.bound_);
    std::map<Rational, std::int64_t> aggregated;
    for (const Spectrum* s : {&s1, &s2})
        for (const auto& e : s->entries_) {
            if (!leq(e.value, b)) break;  // entries sorted
            auto [it, inserted] = aggregated.emplace(e.value, e.multiplicity);
            if (!inserted) it->second = checked_add(it->second, e.multiplicity);
        }
    Spectrum r;
    r.bound_ = std::move(b);
    for (auto& [v, m] : aggregated) r.entries_.push_back({v, m});
    return r;
}

Spectrum minkowski_sum(const Spectrum& s1, const Spectrum& s2) {
    if (!s1.has_entries() && s1.bound_.infinite()) return Spectrum();
    if (!s2.has_entries() && s2.bound_.infinite()) return Spectrum();

    Bound b = min(s1.bound_ + s2.certified_min(), s2.bound_ + s1.certified_min());
    std::map<Rational, std::int64_t> aggregated;
    for (const auto& e1 : s1.entries_) {
        for (const auto& e2 : s2.entries_) {
            Rational v = e1.value + e2.value;
            if (!leq(v, b)) break;  // e2 sorted: later sums only grow
            std::int64_t m = checked_mul(e1.multiplicity, e2.multiplicity);
            auto [it, inserted] = aggregated.emplace(std::move(v), m);
            if (!inserted) it->second = checked_add(it->second, m);
        }
    }
    Spectrum r;
    r.bound_ = std::move(b);
    for (auto& [v, m] : aggregated) r.entries_.push_back({v, m});
    return r;
}

Spectrum truncate(const Spectrum& s, const Bound& b) {
    if (!(b <= s.bound_))
        throw BoundExceeded("cannot extend certification from " + to_string(s.bound_) +
                            " to " + to_string(b));
    Spectrum r;
    r.bound_ = b;
    for (const auto& e : s.entries_) {
        if (!leq(e.value, b)) break;
        r.entries_.push_back(e);
    }
    return r;
}

std::int64_t count_below(const Spectrum& s, const Rational& t, bool strict) {
    if (!leq(t, s.bound()))
        throw BoundExceeded("count below " + to_string(t) + " not certified: bound is " +
                            to_string(s.bound()));
    std::int64_t total = 0;
    for (const auto& e : s.entries()) {
        if (strict ? !(e.value < t) : !(e.value <= t)) break;
        total = checked_add(total, e.multiplicity);
    }
    return total;
}

std::int64_t multiplicity_at(const Spectrum& s, const Rational& t) {
    if (!leq(t, s.bound()))
        throw BoundExceeded("multiplicity at " + to_string(t) + " not certified: bound is " +
                            to_string(s.bound()));
    auto it = std::lower_bound(s.entries().begin(), s.entries().end(), t,
                               [](const SpectrumEntry& e, const Rational& v) { return e.value < v; });
    if (it != s.entries().end() && it->value == t) return it->multiplicity;
    return 0;
}

}  // namespace minprod
