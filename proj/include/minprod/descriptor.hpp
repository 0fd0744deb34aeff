#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "minprod/spectrum.hpp"

namespace minprod {

// Geometric predicates the catalog cannot always decide (e.g. orientability
// of the OT-FKM focal descriptors) stay unknown rather than guessed.
enum class TriState { yes, no, unknown };

// Kleene conjunction: products inherit flags as conjunctions of factor flags.
inline TriState tri_and(TriState a, TriState b) {
    if (a == TriState::no || b == TriState::no) return TriState::no;
    if (a == TriState::yes && b == TriState::yes) return TriState::yes;
    return TriState::unknown;
}

inline const char* to_string(TriState t) {
    switch (t) {
        case TriState::yes: return "true";
        case TriState::no: return "false";
        default: return "unknown";
    }
}

// Which rule produced a numeric fact. `detail` names the formula or source,
// e.g. "closed-form: S = n(k-1 + sum S_j/n_j)" or "lattice enumeration".
struct FactProvenance {
    enum class Source { closed_form, spectral_composition, builtin, user_file };
    Source source = Source::builtin;
    std::string detail;
};

inline const char* to_string(FactProvenance::Source s) {
    switch (s) {
        case FactProvenance::Source::closed_form: return "closed-form";
        case FactProvenance::Source::spectral_composition: return "spectral-composition";
        case FactProvenance::Source::builtin: return "catalog built-in";
        default: return "user file";
    }
}

struct Flags {
    bool minimal = true;  // every descriptor in this engine is a minimal immersion
    bool totally_geodesic = false;
    bool full = false;
    TriState orientable = TriState::unknown;
    TriState flat_normal_bundle = TriState::unknown;
    // Minimal immersions have vanishing (hence parallel) mean curvature.
    TriState parallel_mean_curvature = TriState::yes;
    TriState by_first_eigenfunctions = TriState::unknown;
};

// Squared length of the second fundamental form: a pointwise constant, an
// average over the manifold, or unknown.
struct SecondFundamental {
    enum class Kind { constant, average, unknown };
    Kind kind = Kind::unknown;
    Rational value;  // meaningful unless kind == unknown

    static SecondFundamental constant(Rational v) {
        return {Kind::constant, std::move(v)};
    }
    static SecondFundamental average(Rational v) { return {Kind::average, std::move(v)}; }
    static SecondFundamental unknown() { return {}; }

    bool known() const { return kind != Kind::unknown; }
    bool is_constant() const { return kind == Kind::constant; }
};

// Spectral descriptor of one minimal submanifold of a sphere: an n-manifold
// immersed in S^(n+p). Spectra are optional ("Facts-only" descriptors carry
// just lambda1 / S / flags); a present-but-entryless Spectrum with infinite
// bound is the genuinely empty Jacobi spectrum of a rank-0 normal bundle.
struct ManifoldDescriptor {
    std::string name;
    int dim = 1;    // n
    int codim = 0;  // p, ambient sphere S^(n+p)
    Flags flags;
    std::optional<Spectrum> laplace;
    std::optional<Spectrum> jacobi;
    SecondFundamental s_norm;  // S = |A|^2
    std::optional<std::int64_t> known_index;
    std::optional<std::int64_t> known_nullity;
    std::optional<Rational> lambda1;
    std::map<std::string, FactProvenance> provenance;

    bool jacobi_known_empty() const {
        return jacobi && !jacobi->has_entries() && jacobi->bound().infinite();
    }
};

// Checks every descriptor invariant; throws InvariantViolation with the
// offending fact named. Used on user files and (in tests) on built-ins.
void validate_descriptor(const ManifoldDescriptor& d);

}  // namespace minprod
