#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "minprod/descriptor.hpp"
#include "minprod/expression.hpp"

namespace minprod {

// Squared weights c_j^2 = n_j / n of the minimal product; stored squared so
// every downstream computation stays rational.
std::vector<Rational> minimal_weights(const std::vector<int>& dims);

// Resolves file(...) leaves; replaceable for tests.
struct EvalContext {
    std::function<std::string(const std::string& path)> read_file;  // default: filesystem
};

// Laplace spectrum of the minimal product, certified exactly up to `bound`:
// the Minkowski sum of the factor spectra scaled by n/n_1 and n/n_2.
// Throws InsufficientData on Facts-only factors and BoundExceeded (naming the
// required factor bounds) when the factor spectra are too shallow.
Spectrum product_laplace(const ManifoldDescriptor& d1, const ManifoldDescriptor& d2,
                         const Rational& bound);

// The three invariant blocks of the product's Jacobi operator:
//   eta:    scalar block on the distinguished normal direction, the product
//           Laplace spectrum shifted by -2n;
//   first:  factor-1 normal sections, (n/n_1) Jacobi_1 (+) (n/n_2) Laplace_2;
//   second: the symmetric factor-2 block.
// Laplace factors include the 0 eigenvalue; the nonzero-only bookkeeping
// lives in the analyzer's counting breakdown, not in the spectra.
struct JacobiBlocks {
    Spectrum eta;
    Spectrum first;
    Spectrum second;
};
JacobiBlocks product_jacobi_blocks(const ManifoldDescriptor& d1, const ManifoldDescriptor& d2,
                                   const Rational& bound);

// Merge of the three blocks, certified exactly up to `bound`.
Spectrum product_jacobi(const ManifoldDescriptor& d1, const ManifoldDescriptor& d2,
                        const Rational& bound);

// S of the product from the leaf values: S = n (k - 1 + sum_j S_j / n_j),
// applied recursively; the identity combines averages the same way. Unknown
// leaves make the result unknown.
SecondFundamental second_fundamental(const ProductExpression& e, const EvalContext& ctx = {});

// R = n(n-1) - S; kind (constant/average/unknown) follows S.
SecondFundamental scalar_curvature(const ManifoldDescriptor& d);

// How deep the spectra of an evaluation result must be certified. Absent
// targets are not computed (beyond what other demands force).
struct EvalTargets {
    std::optional<Rational> laplace;
    std::optional<Rational> jacobi;
};

// Evaluates the expression to a descriptor. k-ary products fold left over
// binary products. Factor spectra are generated (built-ins) or checked
// (file descriptors) to the exact depths the targets force, solving the
// Minkowski bound identities backwards through the tree. Spectral fields
// degrade gracefully: a Facts-only leaf leaves the corresponding product
// spectra unset instead of failing.
ManifoldDescriptor evaluate(const ProductExpression& e, const EvalTargets& targets,
                            const EvalContext& ctx = {});

// Same, but a target that cannot be met raises InsufficientData (naming the
// leaf that lacks data) or BoundExceeded (naming the required bound).
ManifoldDescriptor evaluate_strict(const ProductExpression& e, const EvalTargets& targets,
                                   const EvalContext& ctx = {});

// Spec-facing convenience: descriptor with both spectra attempted up to
// `bound`, degrading to Facts-only where factor data is insufficient.
ManifoldDescriptor product_descriptor(const ProductExpression& e, const Rational& bound,
                                      const EvalContext& ctx = {});

// Evaluated left-fold stages of the top-level product (stage[0] = first
// factor, stage[i] = product of the first i+1 factors), each certified deep
// enough for the root targets; used for breakdowns and stagewise invariants.
std::vector<ManifoldDescriptor> evaluate_stages(const ProductExpression& e,
                                                const EvalTargets& targets,
                                                const EvalContext& ctx = {});

struct EvalFailure {
    std::string message;
    bool bound_exceeded = false;  // else: data fundamentally unavailable
};

// Everything one evaluation produces: the root descriptor, the left-spine
// fold stages (stages.back() == root), the two factors of the final binary
// stage, and the first reason a demanded spectrum could not be certified.
struct Evaluated {
    ManifoldDescriptor root;
    std::vector<ManifoldDescriptor> stages;
    std::optional<std::pair<ManifoldDescriptor, ManifoldDescriptor>> final_factors;
    std::optional<EvalFailure> laplace_failure;
    std::optional<EvalFailure> jacobi_failure;
};
Evaluated evaluate_full(const ProductExpression& e, const EvalTargets& targets,
                        const EvalContext& ctx = {});

// Dimensions of the flattened leaves, left to right (file leaves are loaded
// to learn theirs).
std::vector<int> leaf_dimensions(const ProductExpression& e, const EvalContext& ctx = {});

// True when every leaf is a codimension-0 sphere, i.e. the expression is a
// product of totally geodesic spheres with the closed-form Killing count.
bool all_leaves_geodesic_spheres(const ProductExpression& e);

}  // namespace minprod
