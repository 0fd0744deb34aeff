#include "minprod/analyzer.hpp"

#include <algorithm>

namespace minprod {

namespace {

const Spectrum& require_jacobi(const ManifoldDescriptor& d) {
    if (!d.jacobi) throw InsufficientData("Jacobi spectrum of " + d.name + " unavailable");
    if (!leq(Rational(0), d.jacobi->bound()))
        throw BoundExceeded("Jacobi spectrum of " + d.name + " certified to " +
                            to_string(d.jacobi->bound()) + ", need 0");
    return *d.jacobi;
}

std::optional<std::int64_t> effective_index(const ManifoldDescriptor& d) {
    if (d.jacobi && leq(Rational(0), d.jacobi->bound()))
        return count_below(*d.jacobi, 0, true);
    return d.known_index;
}

std::optional<std::int64_t> effective_nullity(const ManifoldDescriptor& d) {
    if (d.jacobi && leq(Rational(0), d.jacobi->bound()))
        return multiplicity_at(*d.jacobi, 0);
    return d.known_nullity;
}

}  // namespace

std::int64_t index_of(const ManifoldDescriptor& d) {
    return count_below(require_jacobi(d), 0, true);
}

std::int64_t nullity_of(const ManifoldDescriptor& d) {
    return multiplicity_at(require_jacobi(d), 0);
}

BreakdownCounts counting_breakdown(const ManifoldDescriptor& d1, const ManifoldDescriptor& d2) {
    JacobiBlocks blocks = product_jacobi_blocks(d1, d2, Rational(0));
    BreakdownCounts counts;
    counts.factor1_index = index_of(d1);
    counts.factor2_index = index_of(d2);
    counts.factor1_nullity = nullity_of(d1);
    counts.factor2_nullity = nullity_of(d2);
    // The full eta block includes the (0,0) pair at -2n, which the two-factor
    // index formula carries as the standalone "+1".
    counts.I0 = count_below(blocks.eta, 0, true) - 1;
    counts.I1 = count_below(blocks.first, 0, true) - counts.factor1_index;
    counts.Ihat1 = count_below(blocks.second, 0, true) - counts.factor2_index;
    counts.N0 = multiplicity_at(blocks.eta, 0);
    counts.N1 = multiplicity_at(blocks.first, 0) - counts.factor1_nullity;
    counts.Nhat1 = multiplicity_at(blocks.second, 0) - counts.factor2_nullity;
    return counts;
}

Rational mu1_rule(const ManifoldDescriptor& d1, const ManifoldDescriptor& d2) {
    const int n = d1.dim + d2.dim;
    Rational result(-2 * n);
    for (const ManifoldDescriptor* d : {&d1, &d2}) {
        if (!d->jacobi)
            throw InsufficientData("least Jacobi eigenvalue of " + d->name + " unknown");
        if (d->jacobi_known_empty()) continue;  // no term from a rank-0 bundle
        Rational factor(n, d->dim);
        if (d->jacobi->has_entries()) {
            result = std::min(result, Rational(factor * d->jacobi->min_value()));
        } else {
            // No entries up to a finite bound: mu1 > bound, so the term only
            // matters if the scaled bound still reaches below -2n.
            if (factor * d->jacobi->bound().value() < result)
                throw InsufficientData("least Jacobi eigenvalue of " + d->name +
                                       " not certified deep enough");
        }
    }
    return result;
}

Rational lambda1_rule(const ManifoldDescriptor& d1, const ManifoldDescriptor& d2) {
    for (const ManifoldDescriptor* d : {&d1, &d2})
        if (!d->lambda1)
            throw InsufficientData("first Laplace eigenvalue of " + d->name + " unknown");
    const int n = d1.dim + d2.dim;
    return std::min(Rational(n, d1.dim) * *d1.lambda1, Rational(n, d2.dim) * *d2.lambda1);
}

CliffordClosedForm clifford_closed_form(const std::vector<int>& dims) {
    if (dims.size() < 2) throw Error("clifford_closed_form: need at least 2 factors");
    const std::int64_t k = static_cast<std::int64_t>(dims.size());
    std::int64_t n = 0;
    for (int d : dims) {
        if (d < 1) throw Error("clifford_closed_form: factor dimensions must be >= 1");
        n += d;
    }
    std::int64_t cross = 0;
    for (std::size_t i = 0; i < dims.size(); ++i)
        for (std::size_t j = i + 1; j < dims.size(); ++j)
            cross += static_cast<std::int64_t>(dims[i] + 1) * (dims[j] + 1);
    std::int64_t triangular = 0;
    for (int d : dims) triangular += static_cast<std::int64_t>(d) * (d + 1) / 2;

    CliffordClosedForm out;
    out.index = (k - 1) * (n + k + 1);
    out.nullity = (k - 1) * cross;
    out.killing_dim = (n + k) * (n + k - 1) / 2 - triangular;
    return out;
}

namespace {

BoundCheck evaluated_check(std::string name, std::int64_t actual, std::int64_t required) {
    BoundCheck check;
    check.name = std::move(name);
    check.statement = std::to_string(actual) + " >= " + std::to_string(required);
    check.status =
        actual >= required ? BoundCheck::Status::satisfied : BoundCheck::Status::violated;
    return check;
}

BoundCheck skipped_check(std::string name, std::string reason) {
    BoundCheck check;
    check.name = std::move(name);
    check.status = BoundCheck::Status::skipped;
    check.reason = std::move(reason);
    return check;
}

}  // namespace

std::vector<BoundCheck> lower_bounds(const ManifoldDescriptor& d,
                                     const ManifoldDescriptor* factor1,
                                     const ManifoldDescriptor* factor2) {
    std::vector<BoundCheck> checks;
    const std::int64_t simons = static_cast<std::int64_t>(d.dim) + d.codim + 1;

    if (d.flags.totally_geodesic) {
        checks.push_back(skipped_check("index-lower-bound", "totally geodesic"));
        checks.push_back(skipped_check("minus-n-eigenspace-lower-bound", "totally geodesic"));
    } else {
        if (auto index = effective_index(d))
            checks.push_back(evaluated_check("index-lower-bound (Ind >= n+p+1)", *index, simons));
        else
            checks.push_back(skipped_check("index-lower-bound", "index unknown"));
        if (d.jacobi && leq(Rational(-d.dim), d.jacobi->bound()))
            checks.push_back(evaluated_check("minus-n-eigenspace-lower-bound (dim >= n+p+1)",
                                             multiplicity_at(*d.jacobi, Rational(-d.dim)),
                                             simons));
        else
            checks.push_back(
                skipped_check("minus-n-eigenspace-lower-bound", "Jacobi spectrum unavailable"));
    }

    auto product_skip = [&](const std::string& reason) {
        checks.push_back(skipped_check("product-index-lower-bound", reason));
        checks.push_back(skipped_check("product-nullity-lower-bound", reason));
    };
    if (!factor1 || !factor2) {
        product_skip("not a product");
        return checks;
    }
    for (const ManifoldDescriptor* f : {factor1, factor2}) {
        if (f->flags.totally_geodesic) {
            product_skip("factor " + f->name + " is totally geodesic");
            return checks;
        }
        if (!f->flags.full) {
            product_skip("factor " + f->name + " is not full");
            return checks;
        }
    }
    auto i1 = effective_index(*factor1), i2 = effective_index(*factor2);
    auto self = effective_index(d);
    if (i1 && i2 && self)
        checks.push_back(evaluated_check(
            "product-index-lower-bound (Ind >= Ind_1 + Ind_2 + n + p + 2)", *self,
            *i1 + *i2 + d.dim + d.codim + 2));
    else
        checks.push_back(skipped_check("product-index-lower-bound", "factor index unknown"));
    auto n1 = effective_nullity(*factor1), n2 = effective_nullity(*factor2);
    auto self_n = effective_nullity(d);
    if (n1 && n2 && self_n) {
        std::int64_t tied = 3 * static_cast<std::int64_t>(factor1->dim + factor1->codim + 1) *
                            (factor2->dim + factor2->codim + 1);
        checks.push_back(evaluated_check(
            "product-nullity-lower-bound (Null >= Null_1 + Null_2 + 3(n_1+p_1+1)(n_2+p_2+1))",
            *self_n, *n1 + *n2 + tied));
    } else {
        checks.push_back(skipped_check("product-nullity-lower-bound", "factor nullity unknown"));
    }
    return checks;
}

TriState degenerate_state(const std::optional<std::int64_t>& nullity,
                          const std::optional<std::int64_t>& killing_dim) {
    if (!nullity || !killing_dim) return TriState::unknown;
    return *nullity > *killing_dim ? TriState::yes : TriState::no;
}

AverageSCheck average_s_identity(const ProductExpression& e, const EvalContext& ctx) {
    std::vector<int> dims = leaf_dimensions(e, ctx);
    int n = 0;
    for (int d : dims) n += d;
    AverageSCheck check;
    check.value = second_fundamental(e, ctx);
    check.lower_bound = Rational(static_cast<std::int64_t>(dims.size() - 1) * n);
    if (check.value.known()) {
        check.satisfied = check.value.value >= check.lower_bound ? TriState::yes : TriState::no;
        check.equality = check.value.value == check.lower_bound ? TriState::yes : TriState::no;
    }
    return check;
}

const char* to_string(ConstantSClass c) {
    switch (c) {
        case ConstantSClass::clifford: return "clifford";
        case ConstantSClass::veronese_gap: return "veronese-gap";
        default: return "other";
    }
}

SClassification constant_s_classify(const ProductExpression& e, const EvalContext& ctx) {
    if (e.is_leaf() || e.children().size() != 2)
        throw Error("constant-S classification applies to binary products");
    for (const auto& child : e.children()) {
        SecondFundamental s = second_fundamental(child, ctx);
        if (!s.known())
            throw InsufficientData("S of factor " + to_string(child) + " unknown");
        if (!s.is_constant())
            throw NotConstant("S of factor " + to_string(child) + " is an average only");
    }
    SecondFundamental s = second_fundamental(e, ctx);
    std::vector<int> dims = leaf_dimensions(e, ctx);
    int n = 0;
    for (int d : dims) n += d;
    SClassification out{ConstantSClass::other, s.value};
    if (s.value == n)
        out.label = ConstantSClass::clifford;
    else if (s.value < Rational(5 * n, 3) || s.value == Rational(5 * n, 3))
        out.label = ConstantSClass::veronese_gap;
    return out;
}

FamilyS constant_s_family_spheres_veronese(int veronese_count,
                                           const std::vector<int>& sphere_dims) {
    if (veronese_count < 0) throw Error("negative Veronese count");
    const int k = static_cast<int>(sphere_dims.size());
    if (veronese_count + k < 2) throw Error("a product needs at least 2 factors");
    int n = 2 * veronese_count;
    for (int d : sphere_dims) {
        if (d < 1) throw Error("sphere dimensions must be >= 1");
        n += d;
    }
    FamilyS out;
    out.n = n;
    out.p = 3 * veronese_count + k - 1;
    out.s = Rational(n) * (Rational(5 * veronese_count, 3) + (k - 1));
    return out;
}

FamilyS constant_s_family_isoparametric(const std::vector<std::pair<int, int>>& dims_and_g) {
    if (dims_and_g.size() < 2) throw Error("a product needs at least 2 factors");
    int n = 0;
    int g_total = 0;
    for (auto [dim, g] : dims_and_g) {
        if (dim < 1) throw Error("factor dimensions must be >= 1");
        if (g != 1 && g != 2 && g != 3 && g != 4 && g != 6)
            throw InvalidG("isoparametric hypersurfaces need g in {1,2,3,4,6}, got " +
                           std::to_string(g));
        n += dim;
        g_total += g;
    }
    FamilyS out;
    out.n = n;
    out.p = 2 * static_cast<int>(dims_and_g.size()) - 1;
    out.s = Rational(static_cast<std::int64_t>(g_total - 1) * n);
    return out;
}

std::optional<std::int64_t> gap_index_formula(const ManifoldDescriptor& d1,
                                              const ManifoldDescriptor& d2) {
    auto hypotheses_hold = [](const ManifoldDescriptor& d) {
        const Rational n(d.dim);
        if (!d.lambda1 || *d.lambda1 != n) return false;  // immersed by first eigenfunctions
        if (!d.laplace || !leq(Rational(2 * d.dim), d.laplace->bound())) return false;
        for (const auto& entry : d.laplace->entries())
            if (entry.value > n && entry.value < 2 * n) return false;
        if (!d.jacobi || !leq(Rational(0), d.jacobi->bound())) return false;
        if (d.jacobi->has_entries()) {
            if (count_below(*d.jacobi, Rational(-2 * d.dim), true) != 0) return false;
            if (multiplicity_at(*d.jacobi, -n) == 0) return false;
        }
        return true;
    };
    if (!hypotheses_hold(d1) || !hypotheses_hold(d2)) return std::nullopt;

    std::int64_t alpha1 = count_below(*d1.jacobi, Rational(-d1.dim), true);
    std::int64_t beta1 = count_below(*d2.jacobi, Rational(-d2.dim), true);
    std::int64_t dim1 = multiplicity_at(*d1.laplace, Rational(d1.dim));
    std::int64_t dim2 = multiplicity_at(*d2.laplace, Rational(d2.dim));
    return index_of(d1) + index_of(d2) + 1 + (1 + beta1) * dim1 + (1 + alpha1) * dim2;
}

AnalysisReport analyze(const ProductExpression& e, const AnalysisOptions& options,
                       const EvalContext& ctx) {
    EvalTargets targets;
    targets.jacobi = Rational(0);
    if (options.spectra_bound) {
        targets.jacobi = std::max(*options.spectra_bound, Rational(0));
        targets.laplace = std::max(*options.spectra_bound, Rational(0));
    }
    Evaluated evaluated = evaluate_full(e, targets, ctx);
    const ManifoldDescriptor& root = evaluated.root;

    AnalysisReport report;
    report.expression = to_string(e);
    report.n = root.dim;
    report.p = root.codim;
    report.flags = root.flags;
    report.laplace = root.laplace;
    report.jacobi = root.jacobi;
    report.laplace_failure = evaluated.laplace_failure;
    report.jacobi_failure = evaluated.jacobi_failure;

    if (!e.is_leaf()) {
        std::vector<int> factor_dims;
        const auto& stages = evaluated.stages;
        factor_dims.push_back(stages.front().dim);
        for (std::size_t i = 1; i < stages.size(); ++i)
            factor_dims.push_back(stages[i].dim - stages[i - 1].dim);
        report.weights = minimal_weights(factor_dims);
    }

    auto provenance_of = [&](const char* field, const char* fallback) {
        auto it = root.provenance.find(field);
        return it != root.provenance.end() ? it->second.detail : std::string(fallback);
    };
    if (root.lambda1) report.lambda1 = {*root.lambda1, provenance_of("lambda1", "")};
    if (auto index = effective_index(root))
        report.index = {*index, provenance_of("index", "spectral-composition")};
    if (auto nullity = effective_nullity(root))
        report.nullity = {*nullity, provenance_of("nullity", "spectral-composition")};

    if (root.jacobi && root.jacobi->has_entries())
        report.mu1 = {root.jacobi->min_value(), "spectral-composition"};
    else if (root.jacobi_known_empty())
        report.mu1 = {std::nullopt, "empty normal bundle: no Jacobi eigenvalues"};
    if (evaluated.final_factors) {
        const auto& [left, right] = *evaluated.final_factors;
        if (!report.mu1.value) {
            try {
                report.mu1 = {mu1_rule(left, right),
                              "closed-form: mu1 = min(-2n, (n/n1) mu1_1, (n/n2) mu1_2)"};
            } catch (const InsufficientData&) {
            }
        }
        try {
            report.breakdown = counting_breakdown(left, right);
        } catch (const Error&) {
            // factor spectra unavailable; the headline counts stay unknown too
        }
        report.bounds = lower_bounds(root, &left, &right);
        auto summarize = [](const ManifoldDescriptor& d) {
            return FactorSummary{d.name, d.dim, d.codim, d.s_norm, scalar_curvature(d)};
        };
        report.final_factors = std::make_pair(summarize(left), summarize(right));
    } else {
        report.bounds = lower_bounds(root);
    }

    report.s_norm = root.s_norm;
    report.s_provenance = provenance_of("S", "");
    report.curvature = scalar_curvature(root);
    if (!e.is_leaf()) {
        report.average_s = average_s_identity(e, ctx);
        if (!e.is_leaf() && e.children().size() == 2) {
            try {
                report.classification = constant_s_classify(e, ctx);
            } catch (const Error&) {
                // not a constant-S binary product; no classification
            }
        }
        if (all_leaves_geodesic_spheres(e)) {
            report.killing_dim = clifford_closed_form(leaf_dimensions(e, ctx)).killing_dim;
        }
    }
    report.degenerate = degenerate_state(report.nullity.value, report.killing_dim);
    return report;
}

}  // namespace minprod
