#pragma once

#include <cstdint>
#include <vector>

#include "minprod/rational.hpp"

namespace minprod {

struct SpectrumEntry {
    Rational value;
    std::int64_t multiplicity = 0;  // always > 0 inside a Spectrum

    friend bool operator==(const SpectrumEntry& a, const SpectrumEntry& b) {
        return a.value == b.value && a.multiplicity == b.multiplicity;
    }
};

// A truncated, multiplicity-aggregated eigenvalue multiset with a completeness
// bound. Semantic contract: the represented operator has EXACTLY these
// eigenvalues (with these multiplicities) in (-inf, bound]; nothing is
// asserted above the bound. A default-constructed Spectrum (no entries, bound
// +inf) is the empty spectrum of the rank-0 bundle.
class Spectrum {
public:
    Spectrum() : bound_(Bound::infinity()) {}

    const std::vector<SpectrumEntry>& entries() const { return entries_; }
    const Bound& bound() const { return bound_; }

    bool has_entries() const { return !entries_.empty(); }
    // Least certified eigenvalue = first entry; a spectrum with entries lists
    // every eigenvalue below its bound, so this is the operator's true minimum.
    const Rational& min_value() const { return entries_.front().value; }

    // Certified lower bound for the operator's least eigenvalue: the first
    // entry when present, otherwise the bound itself (nothing exists at or
    // below it), +inf for the empty spectrum.
    Bound certified_min() const {
        return has_entries() ? Bound(min_value()) : bound_;
    }

    friend bool operator==(const Spectrum& a, const Spectrum& b) {
        return a.bound_ == b.bound_ && a.entries_ == b.entries_;
    }

private:
    friend Spectrum make_spectrum(std::vector<SpectrumEntry>, Bound);
    friend Spectrum scale(const Spectrum&, const Rational&);
    friend Spectrum shift(const Spectrum&, const Rational&);
    friend Spectrum merge(const Spectrum&, const Spectrum&);
    friend Spectrum minkowski_sum(const Spectrum&, const Spectrum&);
    friend Spectrum truncate(const Spectrum&, const Bound&);

    std::vector<SpectrumEntry> entries_;  // strictly increasing values
    Bound bound_ = Bound::infinity();
};

// Sorts, merges duplicate values by summing multiplicities.
// Throws EntryAboveBound if any value > bound, NonPositiveMultiplicity.
Spectrum make_spectrum(std::vector<SpectrumEntry> entries, Bound bound);

// Values and bound multiplied by c > 0; multiplicities unchanged.
Spectrum scale(const Spectrum& s, const Rational& c);

// Values and bound shifted by c.
Spectrum shift(const Spectrum& s, const Rational& c);

// Multiset union (block-diagonal operators), truncated to min(bound1, bound2).
Spectrum merge(const Spectrum& s1, const Spectrum& s2);

// Pairwise sums with multiplied multiplicities (tensor-product eigenspaces).
// Result bound = min(bound1 + min2, bound2 + min1): any sum at or below that
// value forces both addends into their certified ranges. An empty operand
// yields the empty spectrum.
Spectrum minkowski_sum(const Spectrum& s1, const Spectrum& s2);

// Restricts the certified range to b <= s.bound(); throws BoundExceeded.
Spectrum truncate(const Spectrum& s, const Bound& b);

// Multiplicity-weighted count of entries with value < t (strict) or <= t.
// Throws BoundExceeded when t > bound: the truncation cannot certify it.
std::int64_t count_below(const Spectrum& s, const Rational& t, bool strict);

// Multiplicity of the exact value t (0 if absent); throws BoundExceeded
// when t > bound.
std::int64_t multiplicity_at(const Spectrum& s, const Rational& t);

}  // namespace minprod
