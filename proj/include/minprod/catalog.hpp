#pragma once

#include "minprod/descriptor.hpp"

namespace minprod {

// Spherical-harmonic multiplicity C(m+k, k) - C(m+k-2, k-2); the oracle
// certifies it independently by exact row reduction.
std::int64_t sphere_harmonic_multiplicity(int m, int k);

// Totally geodesic S^m in S^(m+p). Laplace values k(k+m-1); Jacobi values
// k(k+m-1) - m with p-fold multiplicities (empty spectrum when p = 0).
// Both spectra certified up to `bound`.
ManifoldDescriptor sphere(int m, int p, const Rational& bound);

// The embedded flat minimal torus in S^5 cut out by the parameter k >= 2.
// The induced metric is (2k^2/(4k^2-1)) (du^2 + dv^2), so the Laplace values
// are [a^2 (4k^2-1) + (2b-a)^2] / (2k^2) over integer pairs (a, b).
ManifoldDescriptor flat_torus(int k, const Rational& bound);

// The Veronese two-sphere in S^4: curvature-1/3 metric, even-degree
// harmonics only, so Laplace values k(k+1)/3 with multiplicity 2k+1 for even
// k. S = 4/3; the Jacobi spectrum is left unknown.
ManifoldDescriptor veronese(const Rational& bound);

// Minimal isoparametric hypersurface with g distinct principal curvatures:
// Facts-only, S = (g-1) n, lambda1 = n. Throws InvalidG unless g in
// {1,2,3,4,6}.
ManifoldDescriptor isoparametric_hypersurface(int n, int g);

// Focal submanifold M2 of OT-FKM type with (m1, m2) = (1, k): Facts-only,
// dim k+2, codim k+1, lambda1 = min(4, 2+k).
ManifoldDescriptor otfkm_focal(int k);

// Lawson surface xi_{m,k}: genus-mk minimal surface in S^3 immersed by its
// first eigenfunctions.
ManifoldDescriptor lawson_surface(int m, int k);

// Bipolar surface of Lawson's tau_{3,1}: minimal Klein bottle in S^4
// immersed by its first eigenfunctions.
ManifoldDescriptor bipolar_tau31();

// Parses + validates the JSON descriptor document (schema in the README):
// rationals are [numerator, denominator] pairs, spectra are
// [[value-num, value-den, multiplicity], ...] with a bound.
ManifoldDescriptor load_descriptor(const std::string& json_text);

// Canonical JSON form accepted back by load_descriptor.
std::string save_descriptor(const ManifoldDescriptor& d);

}  // namespace minprod
