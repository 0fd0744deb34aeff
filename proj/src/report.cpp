#include "minprod/report.hpp"

#include <random>
#include <sstream>

#include "minprod/catalog.hpp"
#include "minprod/oracle.hpp"

namespace minprod {

namespace {

Json value_with_provenance(const ReportValue& v) {
    Json out;
    out["value"] = v.value ? to_json(*v.value) : Json(nullptr);
    out["provenance"] = v.provenance;
    return out;
}

Json count_with_provenance(const ReportCount& v) {
    Json out;
    out["value"] = v.value ? Json(*v.value) : Json(nullptr);
    out["provenance"] = v.provenance;
    return out;
}

Json second_fundamental_json(const SecondFundamental& s, const std::string& provenance) {
    if (!s.known()) return Json(nullptr);
    Json out;
    out["kind"] = s.is_constant() ? "constant" : "average";
    out["value"] = to_json(s.value);
    if (!provenance.empty()) out["provenance"] = provenance;
    return out;
}

const char* status_name(BoundCheck::Status s) {
    switch (s) {
        case BoundCheck::Status::satisfied: return "satisfied";
        case BoundCheck::Status::violated: return "violated";
        default: return "skipped";
    }
}

std::string rational_text(const Rational& q) { return to_string(q); }

std::string second_fundamental_text(const SecondFundamental& s) {
    if (!s.known()) return "unknown";
    return rational_text(s.value) + (s.is_constant() ? " (constant)" : " (average)");
}

std::string optional_count_text(const ReportCount& c) {
    return c.value ? std::to_string(*c.value) : "unknown";
}

std::string flag_list(const Flags& f) {
    std::string out = "minimal";
    auto add = [&](const char* name, TriState t) {
        if (t == TriState::yes)
            out += std::string(", ") + name;
        else if (t == TriState::unknown)
            out += std::string(", ") + name + "?";
    };
    if (f.totally_geodesic) out += ", totally geodesic";
    if (f.full) out += ", full";
    add("orientable", f.orientable);
    add("flat normal bundle", f.flat_normal_bundle);
    add("parallel mean curvature", f.parallel_mean_curvature);
    add("by first eigenfunctions", f.by_first_eigenfunctions);
    return out;
}

}  // namespace

Json report_to_json(const AnalysisReport& report) {
    Json out;
    out["expression"] = report.expression;
    out["n"] = report.n;
    out["p"] = report.p;
    Json weights = Json::array();
    for (const auto& w : report.weights) weights.push_back(to_json(w));
    out["weights"] = std::move(weights);
    Json flags;
    flags["minimal"] = true;
    flags["totally_geodesic"] = report.flags.totally_geodesic;
    flags["full"] = report.flags.full;
    flags["orientable"] = to_json(report.flags.orientable);
    flags["flat_normal_bundle"] = to_json(report.flags.flat_normal_bundle);
    flags["parallel_mean_curvature"] = to_json(report.flags.parallel_mean_curvature);
    flags["by_first_eigenfunctions"] = to_json(report.flags.by_first_eigenfunctions);
    out["flags"] = std::move(flags);
    out["lambda1"] = value_with_provenance(report.lambda1);
    out["mu1"] = value_with_provenance(report.mu1);
    out["index"] = count_with_provenance(report.index);
    out["nullity"] = count_with_provenance(report.nullity);
    if (report.breakdown) {
        const BreakdownCounts& b = *report.breakdown;
        Json breakdown;
        breakdown["factor_index"] = Json::array({b.factor1_index, b.factor2_index});
        breakdown["factor_nullity"] = Json::array({b.factor1_nullity, b.factor2_nullity});
        breakdown["I0"] = b.I0;
        breakdown["I1"] = b.I1;
        breakdown["Ihat1"] = b.Ihat1;
        breakdown["N0"] = b.N0;
        breakdown["N1"] = b.N1;
        breakdown["Nhat1"] = b.Nhat1;
        out["breakdown"] = std::move(breakdown);
    } else {
        out["breakdown"] = nullptr;
    }
    out["S"] = second_fundamental_json(report.s_norm, report.s_provenance);
    out["R"] = second_fundamental_json(report.curvature,
                                       report.curvature.known()
                                           ? std::string("closed-form: R = n(n-1) - S")
                                           : std::string());
    if (report.average_s && report.average_s->value.known()) {
        Json avg;
        avg["value"] = to_json(report.average_s->value.value);
        avg["lower_bound"] = to_json(report.average_s->lower_bound);
        avg["satisfied"] = to_json(report.average_s->satisfied);
        avg["equality"] = to_json(report.average_s->equality);
        avg["provenance"] = "closed-form: avg S = n(k-1 + sum avg S_j/n_j) >= (k-1) n";
        out["average_S"] = std::move(avg);
    } else {
        out["average_S"] = nullptr;
    }
    if (report.classification) {
        Json c;
        c["label"] = to_string(report.classification->label);
        c["S"] = to_json(report.classification->s);
        out["classification"] = std::move(c);
    } else {
        out["classification"] = nullptr;
    }
    out["killing_dim"] =
        report.killing_dim ? Json(*report.killing_dim) : Json(nullptr);
    out["degenerate"] = to_json(report.degenerate);
    Json bounds = Json::array();
    for (const auto& check : report.bounds) {
        Json b;
        b["name"] = check.name;
        b["status"] = status_name(check.status);
        b["statement"] = check.statement;
        b["reason"] = check.reason;
        bounds.push_back(std::move(b));
    }
    out["bounds"] = std::move(bounds);
    return out;
}

std::string render_report_table(const AnalysisReport& report) {
    std::ostringstream out;
    out << "expression: " << report.expression << "\n";
    out << "n: " << report.n << "   p: " << report.p << "   ambient: S^"
        << report.n + report.p << "\n";
    if (!report.weights.empty()) {
        out << "weights (squared): ";
        for (std::size_t i = 0; i < report.weights.size(); ++i)
            out << (i ? ", " : "") << rational_text(report.weights[i]);
        out << "\n";
    }
    out << "flags: " << flag_list(report.flags) << "\n";
    auto value_line = [&](const char* name, const ReportValue& v) {
        out << name << ": " << (v.value ? rational_text(*v.value) : "unknown");
        if (!v.provenance.empty()) out << "   [" << v.provenance << "]";
        out << "\n";
    };
    auto count_line = [&](const char* name, const ReportCount& v) {
        out << name << ": " << optional_count_text(v);
        if (!v.provenance.empty()) out << "   [" << v.provenance << "]";
        out << "\n";
    };
    value_line("lambda1", report.lambda1);
    value_line("mu1", report.mu1);
    count_line("index", report.index);
    count_line("nullity", report.nullity);
    if (report.breakdown) {
        const BreakdownCounts& b = *report.breakdown;
        out << "breakdown: Ind_1=" << b.factor1_index << " Ind_2=" << b.factor2_index
            << " I0=" << b.I0 << " I1=" << b.I1 << " Ihat1=" << b.Ihat1
            << " | Null_1=" << b.factor1_nullity << " Null_2=" << b.factor2_nullity
            << " N0=" << b.N0 << " N1=" << b.N1 << " Nhat1=" << b.Nhat1 << "\n";
    }
    out << "S: " << second_fundamental_text(report.s_norm);
    if (!report.s_provenance.empty()) out << "   [" << report.s_provenance << "]";
    out << "\n";
    out << "R: " << second_fundamental_text(report.curvature) << "\n";
    if (report.average_s && report.average_s->value.known()) {
        out << "average S: " << rational_text(report.average_s->value.value)
            << " >= " << rational_text(report.average_s->lower_bound)
            << (report.average_s->equality == TriState::yes ? " (equality: Clifford case)" : "")
            << "\n";
    }
    if (report.classification)
        out << "constant-S class: " << to_string(report.classification->label) << "\n";
    if (report.killing_dim) out << "killing fields: " << *report.killing_dim << "\n";
    out << "degenerate: " << to_string(report.degenerate) << "\n";
    out << "bounds:\n";
    for (const auto& check : report.bounds) {
        const char* mark = check.status == BoundCheck::Status::satisfied ? "  [ok]   "
                           : check.status == BoundCheck::Status::violated ? "  [FAIL] "
                                                                          : "  [skip] ";
        out << mark << check.name;
        if (!check.statement.empty()) out << ": " << check.statement;
        if (!check.reason.empty()) out << " (" << check.reason << ")";
        out << "\n";
    }
    return out.str();
}

namespace {

Json truncated_spectrum_json(const std::optional<Spectrum>& s, const Rational& bound) {
    if (!s) return Json(nullptr);
    Bound display = min(Bound(bound), s->bound());
    return to_json(truncate(*s, display));
}

void spectrum_lines(std::ostringstream& out, const char* name,
                    const std::optional<Spectrum>& s, const Rational& bound) {
    if (!s) {
        out << name << ": unavailable\n";
        return;
    }
    Spectrum shown = truncate(*s, min(Bound(bound), s->bound()));
    out << name << " (certified through " << to_string(shown.bound()) << "):\n";
    for (const auto& e : shown.entries())
        out << "  " << rational_text(e.value) << "  x" << e.multiplicity << "\n";
    if (shown.entries().empty()) out << "  (no eigenvalues in range)\n";
}

}  // namespace

Json spectrum_to_report_json(const AnalysisReport& report, const Rational& bound) {
    Json out;
    out["expression"] = report.expression;
    out["bound"] = to_json(bound);
    out["laplace"] = truncated_spectrum_json(report.laplace, bound);
    out["jacobi"] = truncated_spectrum_json(report.jacobi, bound);
    return out;
}

std::string render_spectrum_table(const AnalysisReport& report, const Rational& bound) {
    std::ostringstream out;
    out << "expression: " << report.expression << "\n";
    spectrum_lines(out, "laplace", report.laplace, bound);
    spectrum_lines(out, "jacobi", report.jacobi, bound);
    return out.str();
}

namespace {

// R/n - R_1/n_1 - R_2/n_2, exactly zero for every minimal product.
std::optional<Rational> ratio_defect(const AnalysisReport& report) {
    if (!report.final_factors || !report.curvature.known()) return std::nullopt;
    const auto& [f1, f2] = *report.final_factors;
    if (!f1.curvature.known() || !f2.curvature.known()) return std::nullopt;
    return report.curvature.value / report.n - f1.curvature.value / f1.dim -
           f2.curvature.value / f2.dim;
}

}  // namespace

Json curvature_to_json(const AnalysisReport& report) {
    Json out;
    out["expression"] = report.expression;
    out["S"] = second_fundamental_json(report.s_norm, report.s_provenance);
    out["R"] = second_fundamental_json(report.curvature, "closed-form: R = n(n-1) - S");
    if (auto defect = ratio_defect(report)) {
        Json ratio;
        ratio["defect"] = to_json(*defect);
        ratio["holds"] = (*defect == 0);
        out["ratio_identity"] = std::move(ratio);
    } else {
        out["ratio_identity"] = nullptr;
    }
    return out;
}

std::string render_curvature_table(const AnalysisReport& report) {
    std::ostringstream out;
    out << "expression: " << report.expression << "\n";
    out << "S: " << second_fundamental_text(report.s_norm) << "\n";
    out << "R: " << second_fundamental_text(report.curvature) << "\n";
    if (auto defect = ratio_defect(report))
        out << "ratio identity R/n = R_1/n_1 + R_2/n_2: "
            << (*defect == 0 ? "holds exactly" : "VIOLATED, defect " + rational_text(*defect))
            << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------

namespace {

oracle::TruncatedList entries_as_list(const Spectrum& s) {
    oracle::TruncatedList list;
    for (const auto& e : s.entries()) list.emplace_back(e.value, e.multiplicity);
    return list;
}

VerifyCheck check_minkowski_against_oracle() {
    std::mt19937 rng(20250809);
    std::uniform_int_distribution<int> entry_count(0, 30);
    std::uniform_int_distribution<int> numerator(-20, 20);
    std::uniform_int_distribution<int> denominator(1, 6);
    std::uniform_int_distribution<int> multiplicity(1, 5);

    auto random_spectrum = [&]() {
        std::vector<SpectrumEntry> entries;
        int count = entry_count(rng);
        Rational high(-1000);
        for (int i = 0; i < count; ++i) {
            Rational v(numerator(rng), denominator(rng));
            high = std::max(high, v);
            entries.push_back({std::move(v), multiplicity(rng)});
        }
        Rational bound = count == 0 ? Rational(0) : high + Rational(numerator(rng) % 5 + 5, 3);
        return make_spectrum(std::move(entries), bound);
    };

    const int trials = 100;
    for (int t = 0; t < trials; ++t) {
        Spectrum s1 = random_spectrum();
        Spectrum s2 = random_spectrum();
        Spectrum sum = minkowski_sum(s1, s2);
        if (sum.bound().infinite()) {
            if (s1.has_entries() && s2.has_entries())
                return {"minkowski-sum vs brute-force pairs", false,
                        "unexpected infinite bound in trial " + std::to_string(t)};
            continue;  // an empty operand: nothing to cross-check
        }
        oracle::TruncatedList expected = oracle::brute_force_pairs(
            entries_as_list(s1), entries_as_list(s2), sum.bound().value());
        oracle::TruncatedList actual = entries_as_list(sum);
        if (expected != actual)
            return {"minkowski-sum vs brute-force pairs", false,
                    "multiset mismatch in trial " + std::to_string(t)};
    }
    return {"minkowski-sum vs brute-force pairs", true,
            std::to_string(trials) + " randomized truncated spectra"};
}

VerifyCheck check_harmonic_multiplicities() {
    for (int m = 1; m <= 6; ++m)
        for (int k = 0; k <= 8; ++k)
            if (oracle::harmonic_multiplicity(m, k) != sphere_harmonic_multiplicity(m, k))
                return {"harmonic multiplicities vs exact row reduction", false,
                        "mismatch at m=" + std::to_string(m) + ", k=" + std::to_string(k)};
    return {"harmonic multiplicities vs exact row reduction", true, "m <= 6, k <= 8"};
}

VerifyCheck check_clifford_direct_counts() {
    std::vector<std::vector<int>> dim_lists;
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= 4; ++b) {
            dim_lists.push_back({a, b});
            for (int c = 1; c <= 4; ++c) {
                dim_lists.push_back({a, b, c});
                for (int d = 1; d <= 4; ++d) dim_lists.push_back({a, b, c, d});
            }
        }
    for (const auto& dims : dim_lists) {
        CliffordClosedForm closed = clifford_closed_form(dims);
        if (oracle::clifford_direct_count(dims, oracle::CountMode::index) != closed.index ||
            oracle::clifford_direct_count(dims, oracle::CountMode::nullity) != closed.nullity) {
            std::string text;
            for (int d : dims) text += std::to_string(d) + " ";
            return {"clifford direct counts vs closed forms", false, "mismatch at dims " + text};
        }
    }
    return {"clifford direct counts vs closed forms", true,
            std::to_string(dim_lists.size()) + " dimension lists"};
}

}  // namespace

std::vector<VerifyCheck> run_verification() {
    return {check_minkowski_against_oracle(), check_harmonic_multiplicities(),
            check_clifford_direct_counts()};
}

Json verification_to_json(const std::vector<VerifyCheck>& checks) {
    Json out;
    Json list = Json::array();
    int failed = 0;
    for (const auto& check : checks) {
        Json c;
        c["name"] = check.name;
        c["passed"] = check.passed;
        c["detail"] = check.detail;
        list.push_back(std::move(c));
        if (!check.passed) ++failed;
    }
    out["checks"] = std::move(list);
    out["failed"] = failed;
    return out;
}

std::string render_verification_table(const std::vector<VerifyCheck>& checks) {
    std::ostringstream out;
    bool all = true;
    for (const auto& check : checks) {
        out << (check.passed ? "[ok]   " : "[FAIL] ") << check.name;
        if (!check.detail.empty()) out << " (" << check.detail << ")";
        out << "\n";
        all = all && check.passed;
    }
    out << (all ? "verification passed\n" : "verification FAILED\n");
    return out.str();
}

// ---------------------------------------------------------------------------

namespace {

struct FamilyRow {
    const char* constructor;
    const char* n;
    const char* p;
    const char* lambda1;
    const char* s;
    const char* spectra;
};

constexpr FamilyRow family_rows[] = {
    {"sphere(m)", "m", "0", "m", "0", "laplace + jacobi (empty)"},
    {"sphere(m, codim=p)", "m", "p", "m", "0", "laplace + jacobi"},
    {"torus(k=k), k >= 2", "2", "3", "2/k^2", "unknown", "laplace"},
    {"veronese()", "2", "2", "2", "4/3", "laplace"},
    {"isoparametric(n, g=g)", "n", "1", "n", "(g-1)n", "facts only"},
    {"otfkm(k=k)", "k+2", "k+1", "min(4, 2+k)", "unknown", "facts only"},
    {"lawson(m, k)", "2", "1", "2", "unknown", "facts only"},
    {"bipolar_tau31()", "2", "2", "2", "unknown", "facts only"},
};

}  // namespace

Json catalog_to_json(const std::vector<ManifoldDescriptor>& user_entries) {
    Json out;
    Json families = Json::array();
    for (const auto& row : family_rows) {
        Json f;
        f["constructor"] = row.constructor;
        f["n"] = row.n;
        f["p"] = row.p;
        f["lambda1"] = row.lambda1;
        f["S"] = row.s;
        f["spectra"] = row.spectra;
        families.push_back(std::move(f));
    }
    out["families"] = std::move(families);
    Json users = Json::array();
    for (const auto& d : user_entries) {
        Json u;
        u["name"] = d.name;
        u["n"] = d.dim;
        u["p"] = d.codim;
        u["lambda1"] = d.lambda1 ? to_json(*d.lambda1) : Json(nullptr);
        u["S"] = second_fundamental_json(d.s_norm, "");
        u["laplace"] = d.laplace.has_value();
        u["jacobi"] = d.jacobi.has_value();
        users.push_back(std::move(u));
    }
    out["user_descriptors"] = std::move(users);
    return out;
}

std::string render_catalog_table(const std::vector<ManifoldDescriptor>& user_entries) {
    std::ostringstream out;
    out << "built-in families:\n";
    for (const auto& row : family_rows) {
        out << "  " << row.constructor << "\n"
            << "      n = " << row.n << ", p = " << row.p << ", lambda1 = " << row.lambda1
            << ", S = " << row.s << ", " << row.spectra << "\n";
    }
    if (!user_entries.empty()) {
        out << "user descriptors:\n";
        for (const auto& d : user_entries) {
            out << "  " << d.name << ": n = " << d.dim << ", p = " << d.codim;
            if (d.lambda1) out << ", lambda1 = " << rational_text(*d.lambda1);
            out << ", S = " << second_fundamental_text(d.s_norm);
            out << (d.laplace ? ", laplace" : "") << (d.jacobi ? ", jacobi" : "") << "\n";
        }
    }
    return out.str();
}

}  // namespace minprod
