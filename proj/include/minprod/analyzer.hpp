#pragma once

#include "minprod/composer.hpp"

namespace minprod {

// Multiplicity-weighted count of negative Jacobi eigenvalues. Requires a
// Jacobi spectrum certified through 0; throws InsufficientData otherwise.
std::int64_t index_of(const ManifoldDescriptor& d);

// Multiplicity of the Jacobi eigenvalue 0.
std::int64_t nullity_of(const ManifoldDescriptor& d);

// The six multiplicity-weighted counts of the two-factor index/nullity
// formulas. The nonzero-eigenvalue restrictions are applied by subtracting
// the zero-eigenvalue contributions from full-block counts, so the block
// spectra stay the single source of truth:
//   index   = Ind_1 + Ind_2 + 1 + I0 + I1 + Ihat1
//   nullity = Null_1 + Null_2 + N0 + N1 + Nhat1
struct BreakdownCounts {
    std::int64_t factor1_index = 0, factor2_index = 0;
    std::int64_t factor1_nullity = 0, factor2_nullity = 0;
    std::int64_t I0 = 0, I1 = 0, Ihat1 = 0;
    std::int64_t N0 = 0, N1 = 0, Nhat1 = 0;

    std::int64_t index() const { return factor1_index + factor2_index + 1 + I0 + I1 + Ihat1; }
    std::int64_t nullity() const {
        return factor1_nullity + factor2_nullity + N0 + N1 + Nhat1;
    }
};
BreakdownCounts counting_breakdown(const ManifoldDescriptor& d1, const ManifoldDescriptor& d2);

// Least Jacobi eigenvalue of the binary product:
// min(-2n, (n/n_1) mu1_1, (n/n_2) mu1_2), always <= -2n. Factors with a
// genuinely empty Jacobi spectrum drop out of the minimum.
Rational mu1_rule(const ManifoldDescriptor& d1, const ManifoldDescriptor& d2);

// First Laplace eigenvalue of the binary product:
// min((n/n_1) lambda1_1, (n/n_2) lambda1_2); equals n exactly when both
// factors are immersed by their first eigenfunctions.
Rational lambda1_rule(const ManifoldDescriptor& d1, const ManifoldDescriptor& d2);

// Closed forms for the product of k totally geodesic spheres S^(n_1) x ... x
// S^(n_k) in S^(n+k-1):
//   index       = (k-1)(n+k+1)
//   nullity     = (k-1) sum_{i<j} (n_i+1)(n_j+1)
//   killing_dim = (n+k)(n+k-1)/2 - sum_j n_j(n_j+1)/2
struct CliffordClosedForm {
    std::int64_t index = 0;
    std::int64_t nullity = 0;
    std::int64_t killing_dim = 0;
};
CliffordClosedForm clifford_closed_form(const std::vector<int>& dims);

struct BoundCheck {
    enum class Status { satisfied, violated, skipped };
    std::string name;
    std::string statement;  // evaluated comparison, e.g. "5 >= 4"
    Status status = Status::skipped;
    std::string reason;  // why a check was skipped
};

// Evaluates every applicable lower bound: the index and (-n)-eigenspace
// bounds for non-geodesic submanifolds, and the two-factor product bounds
// when both factors are full and not totally geodesic. Inapplicable bounds
// are reported as skipped with the reason.
std::vector<BoundCheck> lower_bounds(const ManifoldDescriptor& d,
                                     const ManifoldDescriptor* factor1 = nullptr,
                                     const ManifoldDescriptor* factor2 = nullptr);

// True when Jacobi fields outnumber Killing fields. The Killing dimension is
// closed-form only for products of geodesic spheres; otherwise unknown.
TriState degenerate_state(const std::optional<std::int64_t>& nullity,
                          const std::optional<std::int64_t>& killing_dim);

// Average-S identity over the flattened leaves:
// avg S = n (k - 1 + sum_j avg S_j / n_j) >= (k-1) n, equality exactly when
// every leaf S vanishes (the Clifford case).
struct AverageSCheck {
    SecondFundamental value;
    Rational lower_bound;
    TriState satisfied = TriState::unknown;
    TriState equality = TriState::unknown;
};
AverageSCheck average_s_identity(const ProductExpression& e, const EvalContext& ctx = {});

// Constant-S classification of a binary minimal product: S = n exactly for
// the Clifford hypersurface; n < S <= 5n/3 happens only at S = 5n/3 (great
// sphere x Veronese); everything else lies above 5n/3.
enum class ConstantSClass { clifford, veronese_gap, other };
struct SClassification {
    ConstantSClass label;
    Rational s;
};
SClassification constant_s_classify(const ProductExpression& e, const EvalContext& ctx = {});

const char* to_string(ConstantSClass c);

// Constant-S families: r Veronese factors and k geodesic spheres give
// S = n (5r/3 + k - 1) with p = 3r + k - 1; minimal isoparametric factors
// with curvature counts g_j give S = (sum g_j - 1) n with p = 2k - 1.
struct FamilyS {
    Rational s;
    int n = 0;
    int p = 0;
};
FamilyS constant_s_family_spheres_veronese(int veronese_count,
                                           const std::vector<int>& sphere_dims);
FamilyS constant_s_family_isoparametric(const std::vector<std::pair<int, int>>& dims_and_g);

// Closed-form index of a binary product whose factors are immersed by first
// eigenfunctions, have no Laplace values in (n_j, 2n_j), no Jacobi values
// below -2n_j, and (when the Jacobi spectrum is nonempty) contain -n_j:
//   Ind = Ind_1 + Ind_2 + 1 + (1+beta1) dim E^(1)_(n_1) + (1+alpha1) dim E^(2)_(n_2)
// with alpha1/beta1 the counts of factor Jacobi values below -n_j. Returns
// nullopt when the hypotheses fail on the certified truncations.
std::optional<std::int64_t> gap_index_formula(const ManifoldDescriptor& d1,
                                              const ManifoldDescriptor& d2);

// ---------------------------------------------------------------------------

struct ReportValue {
    std::optional<Rational> value;
    std::string provenance;
};
struct ReportCount {
    std::optional<std::int64_t> value;
    std::string provenance;
};

// Scalar summary of one factor of the final binary stage.
struct FactorSummary {
    std::string name;
    int dim = 0;
    int codim = 0;
    SecondFundamental s_norm;
    SecondFundamental curvature;
};

struct AnalysisReport {
    std::string expression;
    int n = 0;
    int p = 0;
    std::vector<Rational> weights;  // squared weights of the top-level factors
    Flags flags;
    ReportValue lambda1;
    ReportValue mu1;
    ReportCount index;
    ReportCount nullity;
    std::optional<BreakdownCounts> breakdown;
    SecondFundamental s_norm;
    std::string s_provenance;
    SecondFundamental curvature;  // scalar curvature R = n(n-1) - S
    std::optional<AverageSCheck> average_s;
    std::optional<SClassification> classification;
    std::optional<std::int64_t> killing_dim;
    TriState degenerate = TriState::unknown;
    std::vector<BoundCheck> bounds;
    std::optional<std::pair<FactorSummary, FactorSummary>> final_factors;
    std::optional<Spectrum> laplace;
    std::optional<Spectrum> jacobi;
    std::optional<EvalFailure> laplace_failure;
    std::optional<EvalFailure> jacobi_failure;
};

struct AnalysisOptions {
    std::optional<Rational> spectra_bound;  // extra certification depth for listings
};

// Full analysis of an expression: evaluates the spectra deep enough for
// index/nullity, assembles the counting breakdown of the final stage, runs
// the bound checks and the curvature identities.
AnalysisReport analyze(const ProductExpression& e, const AnalysisOptions& options = {},
                       const EvalContext& ctx = {});

}  // namespace minprod
