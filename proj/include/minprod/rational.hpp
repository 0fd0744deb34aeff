#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <sstream>
#include <string>

#include "minprod/errors.hpp"

namespace minprod {

// Exact arithmetic everywhere: eigenvalue counting compares sums of ratios
// against 0 and 2 exactly, so no floating point appears in the engine.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& q) {
    std::ostringstream out;
    out << q;  // canonical "a" or "a/b", lowest terms, positive denominator
    return out.str();
}

// Accepts "a" or "a/b" with optional leading '-'. Throws SchemaError on junk.
Rational parse_rational(const std::string& text);

// A completeness bound: a finite rational or +infinity. The infinite case
// marks spectra that are certified everywhere (e.g. the rank-0 bundle).
class Bound {
public:
    Bound(Rational v) : value_(std::move(v)) {}  // implicit: a rational is a finite bound
    static Bound infinity() { return Bound(); }

    bool infinite() const { return !value_.has_value(); }
    const Rational& value() const { return *value_; }

    friend bool operator==(const Bound& a, const Bound& b) {
        if (a.infinite() || b.infinite()) return a.infinite() == b.infinite();
        return *a.value_ == *b.value_;
    }
    friend bool operator!=(const Bound& a, const Bound& b) { return !(a == b); }
    friend bool operator<(const Bound& a, const Bound& b) {
        if (a.infinite()) return false;
        if (b.infinite()) return true;
        return *a.value_ < *b.value_;
    }
    friend bool operator<=(const Bound& a, const Bound& b) { return !(b < a); }
    friend bool operator>=(const Bound& a, const Bound& b) { return b <= a; }
    friend bool operator>(const Bound& a, const Bound& b) { return b < a; }

    friend Bound operator+(const Bound& a, const Bound& b) {
        if (a.infinite() || b.infinite()) return infinity();
        return Bound(*a.value_ + *b.value_);
    }
    friend Bound operator+(const Bound& a, const Rational& c) {
        if (a.infinite()) return infinity();
        return Bound(*a.value_ + c);
    }
    // Scaling by a positive rational only; infinity is absorbing.
    friend Bound operator*(const Bound& a, const Rational& c) {
        if (a.infinite()) return infinity();
        return Bound(*a.value_ * c);
    }

private:
    Bound() = default;
    std::optional<Rational> value_;
};

inline Bound min(const Bound& a, const Bound& b) { return a < b ? a : b; }
inline Bound max(const Bound& a, const Bound& b) { return a < b ? b : a; }

inline bool leq(const Rational& t, const Bound& b) {
    return b.infinite() || t <= b.value();
}

inline std::string to_string(const Bound& b) {
    return b.infinite() ? "inf" : to_string(b.value());
}

}  // namespace minprod
