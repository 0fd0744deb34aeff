#include "minprod/catalog.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "minprod/serialize.hpp"

namespace minprod {

namespace {

Integer binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer result = 1;
    for (int i = 0; i < k; ++i) {
        result *= n - i;
        result /= i + 1;
    }
    return result;
}

std::int64_t to_int64(const Integer& v, const char* what) {
    if (v < std::numeric_limits<std::int64_t>::min() ||
        v > std::numeric_limits<std::int64_t>::max())
        throw Error(std::string(what) + " does not fit a 64-bit count");
    return v.convert_to<std::int64_t>();
}

FactProvenance builtin(std::string detail) {
    return {FactProvenance::Source::builtin, std::move(detail)};
}

// floor(sqrt(x)) for x >= 0
Integer isqrt(const Integer& x) { return boost::multiprecision::sqrt(x); }

Integer floor_half(const Integer& x) { return x >= 0 ? Integer(x / 2) : Integer((x - 1) / 2); }
Integer ceil_half(const Integer& x) { return floor_half(x + 1); }

}  // namespace

std::int64_t sphere_harmonic_multiplicity(int m, int k) {
    return to_int64(binomial(m + k, k) - binomial(m + k - 2, k - 2),
                    "spherical-harmonic multiplicity");
}

ManifoldDescriptor sphere(int m, int p, const Rational& bound) {
    if (m < 1) throw Error("sphere: dimension must be >= 1");
    if (p < 0) throw Error("sphere: codimension must be >= 0");

    std::vector<SpectrumEntry> laplace_entries;
    for (int k = 0;; ++k) {
        Rational value(Integer(k) * (k + m - 1));
        if (value > bound) break;
        laplace_entries.push_back({std::move(value), sphere_harmonic_multiplicity(m, k)});
    }
    std::vector<SpectrumEntry> jacobi_entries;
    if (p > 0)
        for (int k = 0;; ++k) {
            Rational value(Integer(k) * (k + m - 1) - m);
            if (value > bound) break;
            jacobi_entries.push_back({std::move(value), p * sphere_harmonic_multiplicity(m, k)});
        }

    ManifoldDescriptor d;
    d.name = p == 0 ? "sphere(" + std::to_string(m) + ")"
                    : "sphere(" + std::to_string(m) + ", codim=" + std::to_string(p) + ")";
    d.dim = m;
    d.codim = p;
    d.flags.totally_geodesic = true;
    d.flags.full = (p == 0);
    d.flags.orientable = TriState::yes;
    d.flags.flat_normal_bundle = TriState::yes;
    d.flags.by_first_eigenfunctions = TriState::yes;
    d.laplace = make_spectrum(std::move(laplace_entries), bound);
    d.jacobi = p == 0 ? Spectrum() : make_spectrum(std::move(jacobi_entries), bound);
    d.s_norm = SecondFundamental::constant(0);
    d.known_index = p;
    d.known_nullity = static_cast<std::int64_t>(m + 1) * p;
    d.lambda1 = Rational(m);
    d.provenance["laplace"] = builtin("closed-form: sphere values k(k+m-1)");
    d.provenance["jacobi"] = builtin("closed-form: sphere values k(k+m-1) - m, p-fold");
    d.provenance["S"] = builtin("totally geodesic: S = 0");
    d.provenance["lambda1"] = builtin("closed-form: lambda1 = m");
    d.provenance["index"] = builtin("closed-form: Ind = p for the geodesic sphere");
    d.provenance["nullity"] = builtin("closed-form: Null = (m+1) p for the geodesic sphere");
    return d;
}

ManifoldDescriptor flat_torus(int k, const Rational& bound) {
    if (k < 2) throw Error("flat_torus: need k >= 2");

    const Integer d_form = Integer(4) * k * k - 1;  // 4k^2 - 1
    const Integer two_k_sq = Integer(2) * k * k;

    // Dual-lattice values [a^2 (4k^2-1) + (2b-a)^2] / (2k^2) aggregated up to
    // the cap; enumerate deep enough to also certify lambda1 = 2/k^2 (< 1).
    auto enumerate = [&](const Rational& cap) {
        std::map<Rational, std::int64_t> values;
        // a^2 (4k^2-1) + (2b-a)^2 <= 2 k^2 cap =: r, exact integer comparisons
        Rational r = Rational(two_k_sq) * cap;
        if (r >= 0) {
            Integer r_floor = numerator(r) / denominator(r);
            Integer a_max = isqrt(r_floor / d_form);
            for (Integer a = -a_max; a <= a_max; ++a) {
                Integer rest = r_floor - a * a * d_form;
                if (rest < 0) continue;
                Integer c_max = isqrt(rest);
                // c = 2b - a ranges over [-c_max, c_max]; one eigenfunction per (a, b)
                for (Integer b = ceil_half(a - c_max); b <= floor_half(a + c_max); ++b) {
                    Integer c = 2 * b - a;
                    Rational value(a * a * d_form + c * c, two_k_sq);
                    if (value <= cap) values[value] += 1;
                }
            }
        }
        return values;
    };

    Rational deep_cap = bound < 1 ? Rational(1) : bound;
    auto values = enumerate(deep_cap);
    auto first_nonzero = values.upper_bound(Rational(0));
    if (first_nonzero == values.end()) throw Error("flat_torus: enumeration window too small");
    Rational lambda1 = first_nonzero->first;

    std::vector<SpectrumEntry> entries;
    for (auto& [v, mult] : values)
        if (v <= bound) entries.push_back({v, mult});

    ManifoldDescriptor d;
    d.name = "torus(k=" + std::to_string(k) + ")";
    d.dim = 2;
    d.codim = 3;
    d.flags.full = true;
    d.flags.orientable = TriState::yes;
    d.flags.by_first_eigenfunctions = TriState::no;  // lambda1 = 2/k^2 < 2 = dim
    d.laplace = make_spectrum(std::move(entries), bound);
    d.lambda1 = std::move(lambda1);
    d.provenance["laplace"] = builtin("dual-lattice enumeration of the induced flat metric");
    d.provenance["lambda1"] = builtin("dual-lattice enumeration: lambda1 = 2/k^2");
    return d;
}

ManifoldDescriptor veronese(const Rational& bound) {
    std::vector<SpectrumEntry> entries;
    for (int k = 0;; k += 2) {
        Rational value(Integer(k) * (k + 1), 3);
        if (value > bound) break;
        entries.push_back({std::move(value), 2 * k + 1});
    }
    ManifoldDescriptor d;
    d.name = "veronese()";
    d.dim = 2;
    d.codim = 2;
    d.flags.full = true;
    d.flags.orientable = TriState::no;  // real projective plane
    d.flags.by_first_eigenfunctions = TriState::yes;
    d.laplace = make_spectrum(std::move(entries), bound);
    d.s_norm = SecondFundamental::constant(Rational(4, 3));
    d.lambda1 = Rational(2);
    d.provenance["laplace"] =
        builtin("closed-form: even harmonics of the curvature-1/3 sphere, k(k+1)/3");
    d.provenance["S"] = builtin("closed-form: S = 4/3");
    d.provenance["lambda1"] = builtin("closed-form: lambda1 = 2");
    return d;
}

ManifoldDescriptor isoparametric_hypersurface(int n, int g) {
    if (n < 1) throw Error("isoparametric_hypersurface: dimension must be >= 1");
    static const std::set<int> valid_g = {1, 2, 3, 4, 6};
    if (!valid_g.count(g))
        throw InvalidG("isoparametric hypersurfaces need g in {1,2,3,4,6}, got " +
                       std::to_string(g));
    ManifoldDescriptor d;
    d.name = "isoparametric(" + std::to_string(n) + ", g=" + std::to_string(g) + ")";
    d.dim = n;
    d.codim = 1;
    d.flags.totally_geodesic = (g == 1);
    d.flags.full = (g != 1);
    d.flags.orientable = TriState::yes;
    d.flags.flat_normal_bundle = TriState::yes;  // hypersurface
    d.flags.by_first_eigenfunctions = TriState::yes;
    d.s_norm = SecondFundamental::constant(Rational(Integer(g - 1) * n));
    d.lambda1 = Rational(n);
    d.provenance["S"] = builtin("closed-form: S = (g-1) n");
    d.provenance["lambda1"] = builtin("closed-form: lambda1 = n (isoparametric minimal)");
    return d;
}

ManifoldDescriptor otfkm_focal(int k) {
    if (k < 1) throw Error("otfkm_focal: need k >= 1");
    ManifoldDescriptor d;
    d.name = "otfkm(k=" + std::to_string(k) + ")";
    d.dim = k + 2;
    d.codim = k + 1;
    d.flags.full = true;
    d.flags.by_first_eigenfunctions = (k <= 2) ? TriState::yes : TriState::no;
    d.lambda1 = Rational(std::min(4, 2 + k));
    d.provenance["lambda1"] = builtin("closed-form: lambda1 = min(4, 2+k) for the focal M2");
    return d;
}

ManifoldDescriptor lawson_surface(int m, int k) {
    if (m < 1 || k < 1) throw Error("lawson_surface: need m, k >= 1");
    ManifoldDescriptor d;
    d.name = "lawson(" + std::to_string(m) + ", " + std::to_string(k) + ")";
    d.dim = 2;
    d.codim = 1;
    d.flags.full = true;
    d.flags.orientable = TriState::yes;  // genus mk surface
    d.flags.flat_normal_bundle = TriState::yes;
    d.flags.by_first_eigenfunctions = TriState::yes;
    d.lambda1 = Rational(2);
    d.provenance["lambda1"] = builtin("lambda1 = 2 for the Lawson surface");
    return d;
}

ManifoldDescriptor bipolar_tau31() {
    ManifoldDescriptor d;
    d.name = "bipolar_tau31()";
    d.dim = 2;
    d.codim = 2;
    d.flags.full = true;
    d.flags.orientable = TriState::no;  // Klein bottle
    d.flags.by_first_eigenfunctions = TriState::yes;
    d.lambda1 = Rational(2);
    d.provenance["lambda1"] = builtin("lambda1 = 2 for the bipolar tau_{3,1}");
    return d;
}

void validate_descriptor(const ManifoldDescriptor& d) {
    const Rational n(d.dim);
    if (d.dim < 1) throw InvariantViolation(d.name + ": dimension must be >= 1");
    if (d.codim < 0) throw InvariantViolation(d.name + ": codimension must be >= 0");

    if (d.lambda1) {
        if (*d.lambda1 <= 0) throw InvariantViolation(d.name + ": lambda1 must be positive");
        // lambda1 <= n for any minimal submanifold of the sphere
        if (*d.lambda1 > n)
            throw InvariantViolation(d.name + ": lambda1 = " + to_string(*d.lambda1) +
                                     " exceeds the dimension " + to_string(n) +
                                     " of a minimal submanifold");
    }
    if (d.flags.by_first_eigenfunctions == TriState::yes) {
        if (!d.lambda1 || *d.lambda1 != n)
            throw InvariantViolation(d.name +
                                     ": by_first_eigenfunctions requires lambda1 = dim");
    }
    if (d.laplace) {
        if (leq(Rational(0), d.laplace->bound()) && multiplicity_at(*d.laplace, 0) != 1)
            throw InvariantViolation(d.name +
                                     ": Laplace spectrum of a closed connected manifold "
                                     "must contain 0 with multiplicity 1");
        if (d.flags.full && leq(n, d.laplace->bound())) {
            // Takahashi: coordinate functions are independent eigenfunctions at n
            std::int64_t at_n = multiplicity_at(*d.laplace, n);
            if (at_n < d.dim + d.codim + 1)
                throw InvariantViolation(
                    d.name + ": full minimal immersion needs multiplicity >= n+p+1 at n, got " +
                    std::to_string(at_n));
        }
        if (d.lambda1 && leq(*d.lambda1, d.laplace->bound())) {
            if (multiplicity_at(*d.laplace, *d.lambda1) == 0)
                throw InvariantViolation(d.name + ": lambda1 missing from the Laplace spectrum");
            for (const auto& e : d.laplace->entries())
                if (e.value > 0 && e.value < *d.lambda1)
                    throw InvariantViolation(d.name + ": Laplace value " + to_string(e.value) +
                                             " below the declared lambda1");
        }
    }
    if (d.flags.totally_geodesic && d.codim == 0) {
        if (!d.jacobi || d.jacobi->has_entries() || !d.jacobi->bound().infinite())
            throw InvariantViolation(d.name +
                                     ": codimension-0 geodesic sphere must carry the empty "
                                     "Jacobi spectrum");
    }
    if (d.jacobi && leq(Rational(0), d.jacobi->bound())) {
        if (d.known_index && count_below(*d.jacobi, 0, true) != *d.known_index)
            throw InvariantViolation(d.name + ": declared index disagrees with the Jacobi spectrum");
        if (d.known_nullity && multiplicity_at(*d.jacobi, 0) != *d.known_nullity)
            throw InvariantViolation(d.name +
                                     ": declared nullity disagrees with the Jacobi spectrum");
    }
}

namespace {

const char* const descriptor_keys[] = {"name", "n",      "p",      "flags",  "lambda1",
                                       "S",    "index",  "nullity", "laplace", "jacobi"};
const char* const flag_keys[] = {"minimal",
                                 "totally_geodesic",
                                 "full",
                                 "orientable",
                                 "flat_normal_bundle",
                                 "parallel_mean_curvature",
                                 "by_first_eigenfunctions"};

bool known_key(const std::string& key, const char* const* names, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i)
        if (key == names[i]) return true;
    return false;
}

}  // namespace

ManifoldDescriptor load_descriptor(const std::string& json_text) {
    Json j = Json::parse(json_text, nullptr, false);
    if (j.is_discarded()) throw SchemaError("descriptor file is not valid JSON");
    if (!j.is_object()) throw SchemaError("descriptor must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (!known_key(key, descriptor_keys, std::size(descriptor_keys)))
            throw SchemaError("unknown descriptor key '" + key + "'");

    auto require = [&](const char* key) -> const Json& {
        if (!j.contains(key)) throw SchemaError(std::string("descriptor missing '") + key + "'");
        return j[key];
    };
    ManifoldDescriptor d;
    if (!require("name").is_string()) throw SchemaError("'name' must be a string");
    d.name = j["name"].get<std::string>();
    if (!require("n").is_number_integer() || j["n"].get<int>() < 1)
        throw SchemaError("'n' must be a positive integer");
    d.dim = j["n"].get<int>();
    if (!require("p").is_number_integer() || j["p"].get<int>() < 0)
        throw SchemaError("'p' must be a non-negative integer");
    d.codim = j["p"].get<int>();

    if (j.contains("flags")) {
        const Json& f = j["flags"];
        if (!f.is_object()) throw SchemaError("'flags' must be an object");
        for (const auto& [key, _] : f.items())
            if (!known_key(key, flag_keys, std::size(flag_keys)))
                throw SchemaError("unknown flag '" + key + "'");
        if (f.contains("minimal") && !(f["minimal"].is_boolean() && f["minimal"].get<bool>()))
            throw SchemaError("only minimal submanifolds are supported (minimal must be true)");
        auto plain = [&](const char* key, bool fallback) {
            if (!f.contains(key)) return fallback;
            if (!f[key].is_boolean()) throw SchemaError(std::string(key) + " must be a boolean");
            return f[key].get<bool>();
        };
        d.flags.totally_geodesic = plain("totally_geodesic", false);
        d.flags.full = plain("full", false);
        if (f.contains("orientable")) d.flags.orientable = tristate_from_json(f["orientable"]);
        if (f.contains("flat_normal_bundle"))
            d.flags.flat_normal_bundle = tristate_from_json(f["flat_normal_bundle"]);
        if (f.contains("parallel_mean_curvature"))
            d.flags.parallel_mean_curvature = tristate_from_json(f["parallel_mean_curvature"]);
        if (f.contains("by_first_eigenfunctions"))
            d.flags.by_first_eigenfunctions = tristate_from_json(f["by_first_eigenfunctions"]);
    }

    if (j.contains("lambda1")) d.lambda1 = rational_from_json(j["lambda1"]);
    if (j.contains("S")) {
        const Json& s = j["S"];
        if (!s.is_object() || s.size() != 1 || !(s.contains("constant") || s.contains("average")))
            throw SchemaError("'S' must be {\"constant\": [a,b]} or {\"average\": [a,b]}");
        if (s.contains("constant"))
            d.s_norm = SecondFundamental::constant(rational_from_json(s["constant"]));
        else
            d.s_norm = SecondFundamental::average(rational_from_json(s["average"]));
        if (d.s_norm.value < 0) throw SchemaError("'S' must be non-negative");
    }
    auto load_count = [&](const char* key) -> std::optional<std::int64_t> {
        if (!j.contains(key)) return std::nullopt;
        if (!j[key].is_number_integer() || j[key].get<std::int64_t>() < 0)
            throw SchemaError(std::string("'") + key + "' must be a non-negative integer");
        return j[key].get<std::int64_t>();
    };
    d.known_index = load_count("index");
    d.known_nullity = load_count("nullity");
    if (j.contains("laplace")) d.laplace = spectrum_from_json(j["laplace"]);
    if (j.contains("jacobi")) d.jacobi = spectrum_from_json(j["jacobi"]);

    // Facts implied by the flags
    if (d.flags.by_first_eigenfunctions == TriState::yes && !d.lambda1) d.lambda1 = Rational(d.dim);
    if (d.flags.totally_geodesic && d.codim == 0 && !d.jacobi) d.jacobi = Spectrum();
    if (!d.lambda1 && d.laplace)
        for (const auto& e : d.laplace->entries())
            if (e.value > 0) {
                d.lambda1 = e.value;
                break;
            }

    for (const char* field : {"laplace", "jacobi", "S", "lambda1", "index", "nullity"})
        d.provenance[field] = {FactProvenance::Source::user_file, "user descriptor file"};

    validate_descriptor(d);
    return d;
}

std::string save_descriptor(const ManifoldDescriptor& d) {
    Json j;
    j["name"] = d.name;
    j["n"] = d.dim;
    j["p"] = d.codim;
    Json flags;
    flags["minimal"] = true;
    flags["totally_geodesic"] = d.flags.totally_geodesic;
    flags["full"] = d.flags.full;
    flags["orientable"] = to_json(d.flags.orientable);
    flags["flat_normal_bundle"] = to_json(d.flags.flat_normal_bundle);
    flags["parallel_mean_curvature"] = to_json(d.flags.parallel_mean_curvature);
    flags["by_first_eigenfunctions"] = to_json(d.flags.by_first_eigenfunctions);
    j["flags"] = std::move(flags);
    if (d.lambda1) j["lambda1"] = to_json(*d.lambda1);
    if (d.s_norm.known()) {
        Json s;
        s[d.s_norm.is_constant() ? "constant" : "average"] = to_json(d.s_norm.value);
        j["S"] = std::move(s);
    }
    if (d.known_index) j["index"] = *d.known_index;
    if (d.known_nullity) j["nullity"] = *d.known_nullity;
    if (d.laplace) j["laplace"] = to_json(*d.laplace);
    if (d.jacobi) j["jacobi"] = to_json(*d.jacobi);
    return j.dump(2);
}

}  // namespace minprod
