#include <doctest.h>

#include "minprod/catalog.hpp"
#include "minprod/oracle.hpp"

using namespace minprod;
using oracle::CountMode;
using oracle::TruncatedList;

TEST_CASE("brute_force_pairs on the hand-checkable 3x3 table") {
    TruncatedList l = {{Rational(0), 1}, {Rational(1), 2}};
    TruncatedList sum = oracle::brute_force_pairs(l, l, Rational(2));
    CHECK(sum == TruncatedList{{Rational(0), 1}, {Rational(1), 4}, {Rational(2), 4}});

    TruncatedList unit = {{Rational(0), 1}};
    CHECK(oracle::brute_force_pairs(l, unit, Rational(1)) == l);
    CHECK(oracle::brute_force_pairs(TruncatedList{}, l, Rational(10)).empty());

    // the cap filters
    CHECK(oracle::brute_force_pairs(l, l, Rational(1)) ==
          TruncatedList{{Rational(0), 1}, {Rational(1), 4}});
}

TEST_CASE("harmonic_multiplicity by exact row reduction") {
    CHECK(oracle::harmonic_multiplicity(2, 0) == 1);
    CHECK(oracle::harmonic_multiplicity(2, 1) == 3);  // first eigenvalue of the 2-sphere
    CHECK(oracle::harmonic_multiplicity(3, 2) == 9);
    CHECK(oracle::harmonic_multiplicity(5, 0) == 1);

    // certifies the binomial formula the catalog adopts
    for (int m = 1; m <= 6; ++m)
        for (int k = 0; k <= 8; ++k)
            CHECK(oracle::harmonic_multiplicity(m, k) == sphere_harmonic_multiplicity(m, k));
}

TEST_CASE("clifford_direct_count carries the induction bookkeeping") {
    CHECK(oracle::clifford_direct_count({1, 1}, CountMode::index) == 5);
    CHECK(oracle::clifford_direct_count({1, 1}, CountMode::nullity) == 4);
    CHECK(oracle::clifford_direct_count({1, 1, 1}, CountMode::index) == 14);
    CHECK(oracle::clifford_direct_count({1, 1, 1}, CountMode::nullity) == 24);
    CHECK(oracle::clifford_direct_count({2, 2}, CountMode::nullity) == 9);
    CHECK(oracle::clifford_direct_count({2, 3}, CountMode::index) == 8);
    CHECK(oracle::clifford_direct_count({2, 3}, CountMode::nullity) == 12);
}
