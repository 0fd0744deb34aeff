#include "minprod/composer.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <sstream>

#include "minprod/catalog.hpp"

namespace minprod {

std::vector<Rational> minimal_weights(const std::vector<int>& dims) {
    if (dims.size() < 2) throw Error("minimal_weights: need at least 2 factors");
    Integer n = 0;
    for (int d : dims) {
        if (d < 1) throw Error("minimal_weights: factor dimensions must be >= 1");
        n += d;
    }
    std::vector<Rational> weights;
    weights.reserve(dims.size());
    for (int d : dims) weights.emplace_back(Integer(d), n);
    return weights;
}

namespace {

std::string read_file_default(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot read descriptor file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Rational scale_factor(int total, int part) { return Rational(total, part); }

// Certified lower bound for the least eigenvalue of a factor spectrum.
Rational min_lower(const Spectrum& s) {
    if (s.has_entries()) return s.min_value();
    if (s.bound().infinite()) throw Error("min_lower: empty operator has no least eigenvalue");
    return s.bound().value();
}

struct DepthRequirement {
    std::string what;  // e.g. "Laplace spectrum of sphere(2)"
    Rational required;
    Bound certified;
    bool satisfied() const { return leq(required, certified); }
};

void check_depths(const std::vector<DepthRequirement>& requirements, const std::string& goal) {
    std::string trouble;
    for (const auto& r : requirements) {
        if (r.satisfied()) continue;
        if (!trouble.empty()) trouble += "; ";
        trouble += r.what + " certified to " + to_string(r.certified) + ", need " +
                   to_string(r.required);
    }
    if (!trouble.empty()) throw BoundExceeded(goal + " not certifiable: " + trouble);
}

}  // namespace

Spectrum product_laplace(const ManifoldDescriptor& d1, const ManifoldDescriptor& d2,
                         const Rational& bound) {
    for (const ManifoldDescriptor* d : {&d1, &d2})
        if (!d->laplace)
            throw InsufficientData("Laplace spectrum of " + d->name + " unavailable");
    const int n = d1.dim + d2.dim;
    const Rational f1 = scale_factor(n, d1.dim);
    const Rational f2 = scale_factor(n, d2.dim);
    check_depths({{"Laplace spectrum of " + d1.name,
                   (bound - f2 * min_lower(*d2.laplace)) / f1, d1.laplace->bound()},
                  {"Laplace spectrum of " + d2.name,
                   (bound - f1 * min_lower(*d1.laplace)) / f2, d2.laplace->bound()}},
                 "product Laplace spectrum to " + to_string(bound));
    return truncate(minkowski_sum(scale(*d1.laplace, f1), scale(*d2.laplace, f2)), bound);
}

JacobiBlocks product_jacobi_blocks(const ManifoldDescriptor& d1, const ManifoldDescriptor& d2,
                                   const Rational& bound) {
    for (const ManifoldDescriptor* d : {&d1, &d2}) {
        if (!d->laplace)
            throw InsufficientData("Laplace spectrum of " + d->name + " unavailable");
        if (!d->jacobi)
            throw InsufficientData("Jacobi spectrum of " + d->name + " unavailable");
    }
    const int n = d1.dim + d2.dim;
    const Rational two_n(2 * n);
    const Rational f1 = scale_factor(n, d1.dim);  // n / n_1
    const Rational f2 = scale_factor(n, d2.dim);  // n / n_2

    // Solve the Minkowski bound identities backwards: the eta block needs the
    // factor Laplace spectra up to n_j (bound + 2n) / n; a factor block needs
    // that factor's Jacobi spectrum up to n_j bound / n and the other factor's
    // Laplace spectrum up to n_j (bound - (n/n_i) mu1_i) / n.
    const Rational l1_min = min_lower(*d1.laplace);
    const Rational l2_min = min_lower(*d2.laplace);
    std::vector<DepthRequirement> requirements;
    Rational need_l1 = (bound + two_n - f2 * l2_min) / f1;
    Rational need_l2 = (bound + two_n - f1 * l1_min) / f2;
    if (!d1.jacobi_known_empty()) {
        requirements.push_back({"Jacobi spectrum of " + d1.name, (bound - f2 * l2_min) / f1,
                                d1.jacobi->bound()});
        need_l2 = std::max(need_l2, (bound - f1 * min_lower(*d1.jacobi)) / f2);
    }
    if (!d2.jacobi_known_empty()) {
        requirements.push_back({"Jacobi spectrum of " + d2.name, (bound - f1 * l1_min) / f2,
                                d2.jacobi->bound()});
        need_l1 = std::max(need_l1, (bound - f2 * min_lower(*d2.jacobi)) / f1);
    }
    requirements.push_back({"Laplace spectrum of " + d1.name, need_l1, d1.laplace->bound()});
    requirements.push_back({"Laplace spectrum of " + d2.name, need_l2, d2.laplace->bound()});
    check_depths(requirements, "product Jacobi spectrum to " + to_string(bound));

    Spectrum laplace1 = scale(*d1.laplace, f1);
    Spectrum laplace2 = scale(*d2.laplace, f2);
    JacobiBlocks blocks;
    blocks.eta = truncate(shift(minkowski_sum(laplace1, laplace2), -two_n), bound);
    blocks.first = truncate(minkowski_sum(scale(*d1.jacobi, f1), laplace2), bound);
    blocks.second = truncate(minkowski_sum(scale(*d2.jacobi, f2), laplace1), bound);
    return blocks;
}

Spectrum product_jacobi(const ManifoldDescriptor& d1, const ManifoldDescriptor& d2,
                        const Rational& bound) {
    JacobiBlocks blocks = product_jacobi_blocks(d1, d2, bound);
    return merge(merge(blocks.eta, blocks.first), blocks.second);
}

SecondFundamental scalar_curvature(const ManifoldDescriptor& d) {
    if (!d.s_norm.known()) return SecondFundamental::unknown();
    Rational r = Rational(Integer(d.dim) * (d.dim - 1)) - d.s_norm.value;
    return d.s_norm.is_constant() ? SecondFundamental::constant(std::move(r))
                                  : SecondFundamental::average(std::move(r));
}

namespace {

// ---------------------------------------------------------------------------
// Demand-driven evaluation over the binary left-fold of the expression.

struct EvalNode {
    const LeafSpec* leaf = nullptr;  // null for internal nodes
    std::unique_ptr<EvalNode> left, right;
    std::string display;

    // facts available before any spectra are generated
    int dim = 0;
    int codim = 0;
    bool laplace_available = false;
    bool jacobi_available = false;
    bool jacobi_none = false;          // the factor's Jacobi spectrum is genuinely empty
    Bound mu1_lower = Bound::infinity();  // certified lower bound for the least Jacobi value
    std::optional<ManifoldDescriptor> fixed;  // file leaves: the loaded descriptor

    // accumulated certification demands
    std::optional<Rational> need_laplace;
    std::optional<Rational> need_jacobi;

    std::optional<ManifoldDescriptor> result;
};

struct Failure {
    std::string message;
    bool bound_exceeded = false;
};

struct Evaluation {
    std::optional<Failure> laplace_failure;
    std::optional<Failure> jacobi_failure;

    void record_laplace(std::string message, bool bound_exceeded) {
        if (!laplace_failure) laplace_failure = {std::move(message), bound_exceeded};
    }
    void record_jacobi(std::string message, bool bound_exceeded) {
        if (!jacobi_failure) jacobi_failure = {std::move(message), bound_exceeded};
    }
};

std::unique_ptr<EvalNode> build_leaf(const LeafSpec& spec, const EvalContext& ctx) {
    auto node = std::make_unique<EvalNode>();
    node->leaf = &spec;
    node->display = to_string(spec);
    if (const auto* file = std::get_if<FileLeaf>(&spec)) {
        auto read = ctx.read_file ? ctx.read_file : read_file_default;
        ManifoldDescriptor d = load_descriptor(read(file->path));
        d.name = node->display;
        node->dim = d.dim;
        node->codim = d.codim;
        node->laplace_available = d.laplace.has_value();
        node->jacobi_available = d.jacobi.has_value();
        node->jacobi_none = d.jacobi_known_empty();
        if (d.jacobi && !node->jacobi_none) node->mu1_lower = d.jacobi->certified_min();
        node->fixed = std::move(d);
        return node;
    }
    struct Facts {
        int dim, codim;
        bool laplace, jacobi, jacobi_none;
        Bound mu1 = Bound::infinity();
    };
    Facts facts = std::visit(
        [](const auto& leaf) -> Facts {
            using T = std::decay_t<decltype(leaf)>;
            if constexpr (std::is_same_v<T, SphereLeaf>) {
                Facts f{leaf.dim, leaf.codim, true, true, leaf.codim == 0};
                if (leaf.codim > 0) f.mu1 = Bound(Rational(-leaf.dim));
                return f;
            } else if constexpr (std::is_same_v<T, TorusLeaf>) {
                return {2, 3, true, false, false};
            } else if constexpr (std::is_same_v<T, VeroneseLeaf>) {
                return {2, 2, true, false, false};
            } else if constexpr (std::is_same_v<T, IsoparametricLeaf>) {
                return {leaf.dim, 1, false, false, false};
            } else if constexpr (std::is_same_v<T, OtfkmLeaf>) {
                return {leaf.k + 2, leaf.k + 1, false, false, false};
            } else if constexpr (std::is_same_v<T, LawsonLeaf>) {
                return {2, 1, false, false, false};
            } else if constexpr (std::is_same_v<T, BipolarLeaf>) {
                return {2, 2, false, false, false};
            } else {
                static_assert(std::is_same_v<T, FileLeaf>);
                return {1, 0, false, false, false};  // handled above
            }
        },
        spec);
    node->dim = facts.dim;
    node->codim = facts.codim;
    node->laplace_available = facts.laplace;
    node->jacobi_available = facts.jacobi;
    node->jacobi_none = facts.jacobi_none;
    node->mu1_lower = facts.mu1;
    return node;
}

std::unique_ptr<EvalNode> build_tree(const ProductExpression& e, const EvalContext& ctx) {
    if (e.is_leaf()) return build_leaf(e.leaf_spec(), ctx);
    std::unique_ptr<EvalNode> acc;
    for (const auto& child : e.children()) {
        auto node = build_tree(child, ctx);
        if (!acc) {
            acc = std::move(node);
            continue;
        }
        auto parent = std::make_unique<EvalNode>();
        parent->dim = acc->dim + node->dim;
        parent->codim = acc->codim + node->codim + 1;
        parent->display = "(" + acc->display + " x " + node->display + ")";
        parent->laplace_available = acc->laplace_available && node->laplace_available;
        parent->jacobi_available = parent->laplace_available && acc->jacobi_available &&
                                   node->jacobi_available;
        parent->jacobi_none = false;
        if (parent->jacobi_available) {
            Bound mu1 = Bound(Rational(-2 * parent->dim));
            if (!acc->jacobi_none)
                mu1 = min(mu1, acc->mu1_lower * scale_factor(parent->dim, acc->dim));
            if (!node->jacobi_none)
                mu1 = min(mu1, node->mu1_lower * scale_factor(parent->dim, node->dim));
            parent->mu1_lower = mu1;
        }
        parent->left = std::move(acc);
        parent->right = std::move(node);
        acc = std::move(parent);
    }
    return acc;
}

void demand_laplace(EvalNode& node, const Rational& bound) {
    if (node.need_laplace && *node.need_laplace >= bound) return;
    node.need_laplace = node.need_laplace ? std::max(*node.need_laplace, bound) : bound;
    if (!node.left || !node.laplace_available) return;
    demand_laplace(*node.left, bound * Rational(node.left->dim, node.dim));
    demand_laplace(*node.right, bound * Rational(node.right->dim, node.dim));
}

void demand_jacobi(EvalNode& node, const Rational& bound) {
    if (node.need_jacobi && *node.need_jacobi >= bound) return;
    node.need_jacobi = node.need_jacobi ? std::max(*node.need_jacobi, bound) : bound;
    if (!node.left || !node.jacobi_available) return;
    EvalNode& l = *node.left;
    EvalNode& r = *node.right;
    const int n = node.dim;
    const Rational two_n(2 * n);
    Rational need_l_laplace = (bound + two_n) * Rational(l.dim, n);
    Rational need_r_laplace = (bound + two_n) * Rational(r.dim, n);
    if (!l.jacobi_none) {
        demand_jacobi(l, bound * Rational(l.dim, n));
        need_r_laplace = std::max(
            need_r_laplace,
            (bound - scale_factor(n, l.dim) * l.mu1_lower.value()) * Rational(r.dim, n));
    }
    if (!r.jacobi_none) {
        demand_jacobi(r, bound * Rational(r.dim, n));
        need_l_laplace = std::max(
            need_l_laplace,
            (bound - scale_factor(n, r.dim) * r.mu1_lower.value()) * Rational(l.dim, n));
    }
    demand_laplace(l, need_l_laplace);
    demand_laplace(r, need_r_laplace);
}

FactProvenance spectral() {
    return {FactProvenance::Source::spectral_composition, "spectral-composition"};
}
FactProvenance closed_form(std::string detail) {
    return {FactProvenance::Source::closed_form, std::move(detail)};
}

ManifoldDescriptor materialize_builtin(const LeafSpec& spec, const Rational& bound) {
    struct Builder {
        const Rational& bound;
        ManifoldDescriptor operator()(const SphereLeaf& s) const {
            return sphere(s.dim, s.codim, bound);
        }
        ManifoldDescriptor operator()(const TorusLeaf& t) const { return flat_torus(t.k, bound); }
        ManifoldDescriptor operator()(const VeroneseLeaf&) const { return veronese(bound); }
        ManifoldDescriptor operator()(const IsoparametricLeaf& i) const {
            return isoparametric_hypersurface(i.dim, i.g);
        }
        ManifoldDescriptor operator()(const OtfkmLeaf& o) const { return otfkm_focal(o.k); }
        ManifoldDescriptor operator()(const LawsonLeaf& l) const {
            return lawson_surface(l.m, l.k);
        }
        ManifoldDescriptor operator()(const BipolarLeaf&) const { return bipolar_tau31(); }
        ManifoldDescriptor operator()(const FileLeaf&) const {
            throw Error("file leaves are materialized from their documents");
        }
    };
    return std::visit(Builder{bound}, spec);
}

void eval_leaf(EvalNode& node, Evaluation& ev) {
    ManifoldDescriptor d;
    if (node.fixed) {
        d = *node.fixed;
        if (node.need_laplace) {
            if (!d.laplace)
                ev.record_laplace("Laplace spectrum of " + node.display + " unavailable", false);
            else if (!leq(*node.need_laplace, d.laplace->bound()))
                ev.record_laplace("Laplace spectrum of " + node.display + " certified to " +
                                      to_string(d.laplace->bound()) + ", need " +
                                      to_string(*node.need_laplace),
                                  true);
        }
        if (node.need_jacobi) {
            if (!d.jacobi)
                ev.record_jacobi("Jacobi spectrum of " + node.display + " unavailable", false);
            else if (!leq(*node.need_jacobi, d.jacobi->bound()))
                ev.record_jacobi("Jacobi spectrum of " + node.display + " certified to " +
                                     to_string(d.jacobi->bound()) + ", need " +
                                     to_string(*node.need_jacobi),
                                 true);
        }
    } else {
        Rational generation_bound(0);
        if (node.need_laplace) generation_bound = std::max(generation_bound, *node.need_laplace);
        if (node.need_jacobi) generation_bound = std::max(generation_bound, *node.need_jacobi);
        d = materialize_builtin(*node.leaf, generation_bound);
        if (node.need_laplace && !d.laplace)
            ev.record_laplace("Laplace spectrum of " + node.display + " unavailable", false);
        if (node.need_jacobi && !d.jacobi)
            ev.record_jacobi("Jacobi spectrum of " + node.display + " unavailable", false);
    }
    node.result = std::move(d);
}

// First leaf (left to right) whose missing spectrum blocks the computation.
std::string laplace_blocker(const EvalNode& node) {
    if (node.leaf)
        return node.laplace_available
                   ? ""
                   : "Laplace spectrum of " + node.display + " unavailable";
    std::string blocker = laplace_blocker(*node.left);
    return blocker.empty() ? laplace_blocker(*node.right) : blocker;
}

std::string jacobi_blocker(const EvalNode& node) {
    if (node.leaf) {
        if (!node.jacobi_available)
            return "Jacobi spectrum of " + node.display + " unavailable";
        if (!node.laplace_available)
            return "Laplace spectrum of " + node.display + " unavailable";
        return "";
    }
    std::string blocker = jacobi_blocker(*node.left);
    return blocker.empty() ? jacobi_blocker(*node.right) : blocker;
}

void eval_node(EvalNode& node, Evaluation& ev) {
    if (node.leaf) {
        eval_leaf(node, ev);
        return;
    }
    eval_node(*node.left, ev);
    eval_node(*node.right, ev);
    const ManifoldDescriptor& l = *node.left->result;
    const ManifoldDescriptor& r = *node.right->result;

    ManifoldDescriptor d;
    d.name = node.display;
    d.dim = node.dim;
    d.codim = node.codim;
    d.flags.totally_geodesic = false;
    d.flags.full = l.flags.full && r.flags.full;
    d.flags.orientable = tri_and(l.flags.orientable, r.flags.orientable);
    d.flags.flat_normal_bundle =
        tri_and(l.flags.flat_normal_bundle, r.flags.flat_normal_bundle);
    d.flags.parallel_mean_curvature =
        tri_and(l.flags.parallel_mean_curvature, r.flags.parallel_mean_curvature);
    d.flags.by_first_eigenfunctions =
        tri_and(l.flags.by_first_eigenfunctions, r.flags.by_first_eigenfunctions);

    if (l.lambda1 && r.lambda1) {
        d.lambda1 = std::min(scale_factor(node.dim, l.dim) * *l.lambda1,
                             scale_factor(node.dim, r.dim) * *r.lambda1);
        d.provenance["lambda1"] =
            closed_form("closed-form: lambda1 = min((n/n1) lambda1_1, (n/n2) lambda1_2)");
    }
    if (l.s_norm.known() && r.s_norm.known()) {
        Rational value = Rational(node.dim) * (Rational(1) + l.s_norm.value / l.dim +
                                               r.s_norm.value / r.dim);
        d.s_norm = (l.s_norm.is_constant() && r.s_norm.is_constant())
                       ? SecondFundamental::constant(std::move(value))
                       : SecondFundamental::average(std::move(value));
        d.provenance["S"] = closed_form("closed-form: S = n(k-1 + sum S_j/n_j)");
    }

    if (node.need_laplace) {
        if (!l.laplace || !r.laplace) {
            std::string blocker = laplace_blocker(node);
            ev.record_laplace(blocker.empty() ? "Laplace spectrum of " + node.display +
                                                    " unavailable"
                                              : blocker,
                              false);
        } else {
            try {
                d.laplace = product_laplace(l, r, *node.need_laplace);
                d.provenance["laplace"] = spectral();
            } catch (const BoundExceeded& e) {
                ev.record_laplace(e.what(), true);
            } catch (const InsufficientData& e) {
                ev.record_laplace(e.what(), false);
            }
        }
    }
    if (node.need_jacobi) {
        if (!l.laplace || !r.laplace || !l.jacobi || !r.jacobi) {
            std::string blocker = jacobi_blocker(node);
            ev.record_jacobi(blocker.empty() ? "Jacobi spectrum of " + node.display +
                                                   " unavailable"
                                             : blocker,
                             false);
        } else {
            try {
                d.jacobi = product_jacobi(l, r, *node.need_jacobi);
                d.provenance["jacobi"] = spectral();
                if (leq(Rational(0), d.jacobi->bound())) {
                    d.known_index = count_below(*d.jacobi, 0, true);
                    d.known_nullity = multiplicity_at(*d.jacobi, 0);
                    d.provenance["index"] = spectral();
                    d.provenance["nullity"] = spectral();
                }
            } catch (const BoundExceeded& e) {
                ev.record_jacobi(e.what(), true);
            } catch (const InsufficientData& e) {
                ev.record_jacobi(e.what(), false);
            }
        }
    }
    node.result = std::move(d);
}

std::unique_ptr<EvalNode> evaluate_tree(const ProductExpression& e, const EvalTargets& targets,
                                        const EvalContext& ctx, Evaluation& ev) {
    auto root = build_tree(e, ctx);
    if (targets.laplace) demand_laplace(*root, *targets.laplace);
    if (targets.jacobi) demand_jacobi(*root, *targets.jacobi);
    eval_node(*root, ev);
    root->result->name = to_string(e);
    return root;
}

[[noreturn]] void raise(const Failure& f) {
    if (f.bound_exceeded) throw BoundExceeded(f.message);
    throw InsufficientData(f.message);
}

void enforce_targets(const EvalNode& root, const EvalTargets& targets, const Evaluation& ev) {
    if (targets.laplace && !root.result->laplace) {
        if (ev.laplace_failure) raise(*ev.laplace_failure);
        throw InsufficientData("Laplace spectrum of " + root.display + " unavailable");
    }
    if (targets.jacobi && !root.result->jacobi) {
        if (ev.jacobi_failure) raise(*ev.jacobi_failure);
        throw InsufficientData("Jacobi spectrum of " + root.display + " unavailable");
    }
}

}  // namespace

ManifoldDescriptor evaluate(const ProductExpression& e, const EvalTargets& targets,
                            const EvalContext& ctx) {
    Evaluation ev;
    auto root = evaluate_tree(e, targets, ctx, ev);
    return std::move(*root->result);
}

ManifoldDescriptor evaluate_strict(const ProductExpression& e, const EvalTargets& targets,
                                   const EvalContext& ctx) {
    Evaluation ev;
    auto root = evaluate_tree(e, targets, ctx, ev);
    enforce_targets(*root, targets, ev);
    return std::move(*root->result);
}

ManifoldDescriptor product_descriptor(const ProductExpression& e, const Rational& bound,
                                      const EvalContext& ctx) {
    return evaluate(e, EvalTargets{bound, bound}, ctx);
}

Evaluated evaluate_full(const ProductExpression& e, const EvalTargets& targets,
                        const EvalContext& ctx) {
    Evaluation ev;
    auto root = evaluate_tree(e, targets, ctx, ev);
    Evaluated out;
    // The top-level fold over k children creates exactly k-1 internal nodes
    // along the left spine; the walk stops there so a nested product in the
    // first-factor position stays one stage.
    std::size_t stage_count = e.is_leaf() ? 1 : e.children().size();
    EvalNode* node = root.get();
    for (std::size_t i = 0; i < stage_count; ++i, node = node->left.get())
        out.stages.push_back(*node->result);
    std::reverse(out.stages.begin(), out.stages.end());
    if (root->left)
        out.final_factors = std::make_pair(*root->left->result, *root->right->result);
    if (ev.laplace_failure)
        out.laplace_failure = EvalFailure{ev.laplace_failure->message,
                                          ev.laplace_failure->bound_exceeded};
    if (ev.jacobi_failure)
        out.jacobi_failure = EvalFailure{ev.jacobi_failure->message,
                                         ev.jacobi_failure->bound_exceeded};
    out.root = std::move(*root->result);
    return out;
}

std::vector<ManifoldDescriptor> evaluate_stages(const ProductExpression& e,
                                                const EvalTargets& targets,
                                                const EvalContext& ctx) {
    return evaluate_full(e, targets, ctx).stages;
}

std::vector<int> leaf_dimensions(const ProductExpression& e, const EvalContext& ctx) {
    std::vector<int> dims;
    if (e.is_leaf()) {
        dims.push_back(build_leaf(e.leaf_spec(), ctx)->dim);
        return dims;
    }
    for (const auto& child : e.children())
        for (int d : leaf_dimensions(child, ctx)) dims.push_back(d);
    return dims;
}

bool all_leaves_geodesic_spheres(const ProductExpression& e) {
    if (e.is_leaf()) {
        const auto* s = std::get_if<SphereLeaf>(&e.leaf_spec());
        return s && s->codim == 0;
    }
    for (const auto& child : e.children())
        if (!all_leaves_geodesic_spheres(child)) return false;
    return true;
}

SecondFundamental second_fundamental(const ProductExpression& e, const EvalContext& ctx) {
    // The evaluator folds S = n(1 + S_1/n_1 + S_2/n_2) over the binary
    // stages, which telescopes to the k-ary identity S = n(k-1 + sum S_j/n_j)
    // over the leaves. No spectra are demanded.
    return evaluate(e, EvalTargets{}, ctx).s_norm;
}

}  // namespace minprod
