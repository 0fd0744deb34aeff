#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "minprod/rational.hpp"

// Independent brute-force reference implementations. Deliberately naive
// (double loops, exact row reduction) and sharing no code with the engine:
// they certify the engine's combinatorics and the catalog's adopted facts.
namespace minprod::oracle {

// Plain truncated data with a stated cap; no completeness semantics.
using TruncatedEntry = std::pair<Rational, std::int64_t>;
using TruncatedList = std::vector<TruncatedEntry>;

// Every pair sum <= cap with multiplicity products, aggregated and sorted.
// Caller guarantees the input caps cover every sum that can land below cap.
TruncatedList brute_force_pairs(const TruncatedList& l1, const TruncatedList& l2,
                                const Rational& cap);

// Dimension of degree-k homogeneous harmonic polynomials in m+1 variables:
// dim(homogeneous degree k) - rank(Laplacian map to degree k-2), the rank
// computed by exact row reduction over rationals. Desk scale: m <= 6, k <= 8.
std::int64_t harmonic_multiplicity(int m, int k);

enum class CountMode { index, nullity };

// Carries the five spectral bookkeeping facts of the sphere-product induction
// (least Jacobi value -2n, the values -n and 0, Laplace values n and 2n, each
// with its multiplicity) through the factor-by-factor recursion, without any
// of the general Minkowski machinery.
std::int64_t clifford_direct_count(const std::vector<int>& dims, CountMode mode);

}  // namespace minprod::oracle
