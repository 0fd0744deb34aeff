#include "minprod/serialize.hpp"

#include <limits>

#include "minprod/errors.hpp"

namespace minprod {

namespace {

Json integer_to_json(const Integer& v) {
    // nlohmann stores integers as int64; fall back to a decimal string for
    // anything wider so no value is ever rounded.
    if (v >= std::numeric_limits<std::int64_t>::min() &&
        v <= std::numeric_limits<std::int64_t>::max())
        return Json(v.convert_to<std::int64_t>());
    return Json(v.str());
}

Integer integer_from_json(const Json& j) {
    if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return Integer(j.get<std::string>());
        } catch (const std::runtime_error&) {
            throw SchemaError("not an integer: " + j.dump());
        }
    }
    throw SchemaError("expected an integer, got " + j.dump());
}

}  // namespace

Json to_json(const Rational& q) {
    return Json::array({integer_to_json(numerator(q)), integer_to_json(denominator(q))});
}

Rational rational_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2)
        throw SchemaError("rational must be a [numerator, denominator] pair, got " + j.dump());
    Integer num = integer_from_json(j[0]);
    Integer den = integer_from_json(j[1]);
    if (den <= 0) throw SchemaError("rational denominator must be positive in " + j.dump());
    return Rational(num, den);
}

Json to_json(const Bound& b) {
    if (b.infinite()) return Json("inf");
    return to_json(b.value());
}

Bound bound_from_json(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return Bound::infinity();
    return Bound(rational_from_json(j));
}

Json to_json(const Spectrum& s) {
    Json entries = Json::array();
    for (const auto& e : s.entries()) {
        const Rational& v = e.value;
        entries.push_back(Json::array({integer_to_json(numerator(v)),
                                       integer_to_json(denominator(v)), Json(e.multiplicity)}));
    }
    Json out;
    out["entries"] = std::move(entries);
    out["bound"] = to_json(s.bound());
    return out;
}

Spectrum spectrum_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("entries") || !j.contains("bound"))
        throw SchemaError("spectrum must be {\"entries\": [...], \"bound\": ...}");
    if (!j["entries"].is_array()) throw SchemaError("spectrum entries must be an array");
    std::vector<SpectrumEntry> entries;
    for (const Json& e : j["entries"]) {
        if (!e.is_array() || e.size() != 3)
            throw SchemaError("spectrum entry must be [value-num, value-den, multiplicity], got " +
                              e.dump());
        Integer num = integer_from_json(e[0]);
        Integer den = integer_from_json(e[1]);
        if (den <= 0) throw SchemaError("value denominator must be positive in " + e.dump());
        if (!e[2].is_number_integer())
            throw SchemaError("multiplicity must be an integer in " + e.dump());
        entries.push_back({Rational(num, den), e[2].get<std::int64_t>()});
    }
    return make_spectrum(std::move(entries), bound_from_json(j["bound"]));
}

Json to_json(TriState t) {
    switch (t) {
        case TriState::yes: return Json(true);
        case TriState::no: return Json(false);
        default: return Json("unknown");
    }
}

TriState tristate_from_json(const Json& j) {
    if (j.is_boolean()) return j.get<bool>() ? TriState::yes : TriState::no;
    if (j.is_string() && j.get<std::string>() == "unknown") return TriState::unknown;
    throw SchemaError("flag must be true, false or \"unknown\", got " + j.dump());
}

}  // namespace minprod
