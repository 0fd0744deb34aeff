#include <doctest.h>

#include "minprod/analyzer.hpp"
#include "minprod/catalog.hpp"
#include "minprod/parser.hpp"

using namespace minprod;

namespace {

std::vector<std::pair<Rational, std::int64_t>> flat(const Spectrum& s) {
    std::vector<std::pair<Rational, std::int64_t>> out;
    for (const auto& e : s.entries()) out.emplace_back(e.value, e.multiplicity);
    return out;
}

ProductExpression expr(const std::string& text) { return parse_expression(text); }

}  // namespace

TEST_CASE("minimal weights are n_j / n") {
    CHECK(minimal_weights({1, 1}) == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    CHECK(minimal_weights({2, 3}) == std::vector<Rational>{Rational(2, 5), Rational(3, 5)});
    CHECK(minimal_weights({1, 1, 1}) ==
          std::vector<Rational>{Rational(1, 3), Rational(1, 3), Rational(1, 3)});
    Rational total = 0;
    for (const Rational& w : minimal_weights({3, 1, 4, 1, 5})) total += w;
    CHECK(total == 1);
    CHECK_THROWS_AS(minimal_weights({5}), Error);
}

TEST_CASE("product Laplace spectrum of two circles") {
    ManifoldDescriptor circle = sphere(1, 0, 2);
    Spectrum laplace = product_laplace(circle, circle, 4);
    CHECK(flat(laplace) ==
          std::vector<std::pair<Rational, std::int64_t>>{{0, 1}, {2, 4}, {4, 4}});
    CHECK(laplace.bound() == Bound(Rational(4)));

    // constants survive: multiplicity 1 at 0
    CHECK(multiplicity_at(laplace, 0) == 1);
}

TEST_CASE("product Laplace needs factor spectra deep enough") {
    ManifoldDescriptor shallow = sphere(1, 0, 1);
    CHECK_THROWS_AS(product_laplace(shallow, shallow, 4), BoundExceeded);
    try {
        product_laplace(shallow, shallow, 4);
    } catch (const BoundExceeded& e) {
        std::string message = e.what();
        CHECK(message.find("sphere(1)") != std::string::npos);
        CHECK(message.find("need 2") != std::string::npos);
    }

    ManifoldDescriptor facts_only = otfkm_focal(1);
    CHECK_THROWS_AS(product_laplace(facts_only, shallow, 1), InsufficientData);
}

TEST_CASE("product Laplace first eigenvalue hits the dimension for spheres") {
    ManifoldDescriptor s1 = sphere(1, 0, 3);
    ManifoldDescriptor s2 = sphere(2, 0, 3);
    Spectrum laplace = product_laplace(s1, s2, 3);
    // lambda1 = n = 3: immersed by first eigenfunctions
    CHECK(count_below(laplace, 3, true) == 1);
    CHECK(multiplicity_at(laplace, 3) >= 2 + 3);
}

TEST_CASE("coordinate eigenfunctions of full factors show up at the dimension") {
    // both factors full and by first eigenfunctions: the product's Laplace
    // multiplicity at n dominates (n_1+p_1+1) + (n_2+p_2+1)
    ManifoldDescriptor v = veronese(4);
    ManifoldDescriptor s = sphere(2, 0, 4);
    Spectrum laplace = product_laplace(v, s, 4);
    CHECK(multiplicity_at(laplace, 4) >= (2 + 2 + 1) + (2 + 0 + 1));
    CHECK(multiplicity_at(laplace, 4) == 8);

    ManifoldDescriptor torus = flat_torus(2, 4);
    Spectrum torus_product = product_laplace(torus, s, 4);
    CHECK(multiplicity_at(torus_product, 4) >= (2 + 3 + 1) + (2 + 0 + 1));
}

TEST_CASE("Clifford torus Jacobi spectrum via the three blocks") {
    ManifoldDescriptor circle = sphere(1, 0, 4);
    JacobiBlocks blocks = product_jacobi_blocks(circle, circle, 0);
    // both factor blocks act on rank-0 bundles
    CHECK(!blocks.first.has_entries());
    CHECK(!blocks.second.has_entries());
    CHECK(flat(blocks.eta) ==
          std::vector<std::pair<Rational, std::int64_t>>{{-4, 1}, {-2, 4}, {0, 4}});

    Spectrum jacobi = product_jacobi(circle, circle, 0);
    CHECK(flat(jacobi) ==
          std::vector<std::pair<Rational, std::int64_t>>{{-4, 1}, {-2, 4}, {0, 4}});
    CHECK(jacobi.bound() == Bound(Rational(0)));
}

TEST_CASE("the minimum Jacobi value -2n comes from the constant pair") {
    for (auto [m1, m2] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 3}, {3, 3}}) {
        ManifoldDescriptor a = sphere(m1, 0, 2 * (m1 + m2));
        ManifoldDescriptor b = sphere(m2, 0, 2 * (m1 + m2));
        Spectrum jacobi = product_jacobi(a, b, 0);
        CHECK(jacobi.min_value() == Rational(-2 * (m1 + m2)));
        CHECK(multiplicity_at(jacobi, Rational(-2 * (m1 + m2))) >= 1);
    }
}

TEST_CASE("geodesic S^2 in S^4 times a circle: full three-block enumeration") {
    // factor 1 not full and totally geodesic: the negative count is
    // Ind(f_1) + n + p_1 + 1 = 2 + 3 + 2 + 1 = 8
    ManifoldDescriptor a = sphere(2, 2, 8);
    ManifoldDescriptor b = sphere(1, 0, 4);
    Spectrum jacobi = product_jacobi(a, b, 0);
    CHECK(count_below(jacobi, 0, true) == 8);
    CHECK(multiplicity_at(jacobi, 0) == 16);
    CHECK(jacobi.min_value() == -6);

    JacobiBlocks blocks = product_jacobi_blocks(a, b, 0);
    CHECK(count_below(blocks.eta, 0, true) == 6);
    CHECK(count_below(blocks.first, 0, true) == 2);
    CHECK(!blocks.second.has_entries());
}

TEST_CASE("product Jacobi error names the required component bounds") {
    ManifoldDescriptor a = sphere(2, 0, 1);  // far too shallow
    ManifoldDescriptor b = sphere(1, 0, 6);
    try {
        product_jacobi(a, b, 0);
        CHECK(false);
    } catch (const BoundExceeded& e) {
        std::string message = e.what();
        CHECK(message.find("Laplace spectrum of sphere(2)") != std::string::npos);
        CHECK(message.find("need 4") != std::string::npos);  // n_1 (0 + 2n) / n = 4
    }
    ManifoldDescriptor torus = flat_torus(2, 4);
    CHECK_THROWS_AS(product_jacobi(torus, b, 0), InsufficientData);
}

TEST_CASE("evaluate derives the component depths it needs") {
    // index/nullity of a 5-factor product only needs the root Jacobi at 0;
    // every leaf bound is derived by backward propagation
    ManifoldDescriptor d =
        evaluate_strict(expr("product(sphere(4), sphere(4), sphere(4), sphere(4), sphere(4))"),
                        EvalTargets{std::nullopt, Rational(0)});
    REQUIRE(d.jacobi);
    CHECK(count_below(*d.jacobi, 0, true) == clifford_closed_form({4, 4, 4, 4, 4}).index);
    CHECK(multiplicity_at(*d.jacobi, 0) == clifford_closed_form({4, 4, 4, 4, 4}).nullity);
}

TEST_CASE("evaluate degrades to facts-only and records the blocker") {
    Evaluated evaluated = evaluate_full(expr("product(veronese(), sphere(3))"),
                                        EvalTargets{std::nullopt, Rational(0)});
    CHECK_FALSE(evaluated.root.jacobi.has_value());
    CHECK(*evaluated.root.lambda1 == 5);  // min(5/2 * 2, 5/3 * 3) = 5 = n
    CHECK(evaluated.root.s_norm.value == Rational(5 * 5, 3));  // 5n/3 with n = 5
    REQUIRE(evaluated.jacobi_failure);
    CHECK(evaluated.jacobi_failure->message ==
          "Jacobi spectrum of veronese() unavailable");
    CHECK_FALSE(evaluated.jacobi_failure->bound_exceeded);

    CHECK_THROWS_AS(evaluate_strict(expr("product(veronese(), sphere(3))"),
                                    EvalTargets{std::nullopt, Rational(0)}),
                    InsufficientData);
}

TEST_CASE("product descriptor scalar facts") {
    ManifoldDescriptor d = product_descriptor(expr("product(sphere(1), sphere(1), sphere(1))"),
                                              Rational(0));
    CHECK(d.dim == 3);
    CHECK(d.codim == 2);
    CHECK(*d.lambda1 == 3);
    CHECK(d.flags.full);
    CHECK_FALSE(d.flags.totally_geodesic);
    CHECK(d.flags.by_first_eigenfunctions == TriState::yes);
    CHECK(d.flags.flat_normal_bundle == TriState::yes);
    CHECK(d.s_norm.is_constant());
    CHECK(d.s_norm.value == 6);

    // focal factor drags lambda1 below the dimension
    ManifoldDescriptor focal = product_descriptor(expr("product(otfkm(k=3), sphere(2))"),
                                                  Rational(0));
    CHECK(focal.dim == 7);
    CHECK(*focal.lambda1 == Rational(28, 5));  // 7 * 4/5
    CHECK(focal.flags.by_first_eigenfunctions == TriState::no);

    // hypersurface factors keep the flat normal bundle
    ManifoldDescriptor lawson = product_descriptor(expr("product(lawson(2, 3), sphere(3))"),
                                                   Rational(0));
    CHECK(lawson.codim == 2);
    CHECK(lawson.flags.by_first_eigenfunctions == TriState::yes);
    CHECK(lawson.flags.flat_normal_bundle == TriState::yes);
    CHECK_FALSE(lawson.s_norm.known());
}

TEST_CASE("second fundamental form composes over the leaves") {
    CHECK(second_fundamental(expr("product(sphere(1), sphere(1), sphere(1))")).value == 6);

    SecondFundamental veronese_s = second_fundamental(expr("product(sphere(2), veronese())"));
    CHECK(veronese_s.is_constant());
    CHECK(veronese_s.value == Rational(20, 3));  // 5n/3 at n = 4

    SecondFundamental iso = second_fundamental(
        expr("product(isoparametric(4, g=4), isoparametric(3, g=3))"));
    CHECK(iso.value == Rational((4 + 3 - 1) * 7));  // (g~ - 1) n

    CHECK_FALSE(second_fundamental(expr("product(torus(k=2), sphere(2))")).known());
}

TEST_CASE("scalar curvature identity") {
    ManifoldDescriptor clifford = product_descriptor(expr("product(sphere(1), sphere(1))"),
                                                     Rational(0));
    SecondFundamental r = scalar_curvature(clifford);
    CHECK(r.value == 0);  // n = 2, S = 2

    ManifoldDescriptor s = sphere(4, 2, 2);
    CHECK(scalar_curvature(s).value == 12);  // m (m-1)

    CHECK_FALSE(scalar_curvature(flat_torus(2, 2)).known());
}

TEST_CASE("fold order does not change the descriptor facts") {
    ManifoldDescriptor flat =
        evaluate_strict(expr("product(sphere(1), sphere(1), sphere(1), sphere(1))"),
                        EvalTargets{std::nullopt, Rational(0)});
    ManifoldDescriptor nested =
        evaluate_strict(expr("product(product(sphere(1), sphere(1)), product(sphere(1), sphere(1)))"),
                        EvalTargets{std::nullopt, Rational(0)});
    CHECK(flat.dim == nested.dim);
    CHECK(flat.codim == nested.codim);
    CHECK(*flat.lambda1 == *nested.lambda1);
    CHECK(flat.s_norm.value == nested.s_norm.value);
    CHECK(*flat.known_index == *nested.known_index);
    CHECK(*flat.known_nullity == *nested.known_nullity);

    // spectra agree on the common certified range
    Bound common = min(flat.jacobi->bound(), nested.jacobi->bound());
    CHECK(truncate(*flat.jacobi, common) == truncate(*nested.jacobi, common));
}

TEST_CASE("file leaves join products through the evaluation context") {
    std::string document = save_descriptor(sphere(1, 0, 12));
    EvalContext ctx;
    ctx.read_file = [&](const std::string& path) -> std::string {
        if (path == "circle.json") return document;
        throw SchemaError("cannot read descriptor file '" + path + "'");
    };
    ManifoldDescriptor d = evaluate_strict(expr("product(file(circle.json), sphere(1))"),
                                           EvalTargets{std::nullopt, Rational(0)}, ctx);
    REQUIRE(d.jacobi);
    CHECK(count_below(*d.jacobi, 0, true) == 5);
    CHECK(multiplicity_at(*d.jacobi, 0) == 4);

    // a fixed descriptor that is too shallow reports the required bound
    std::string shallow = save_descriptor(sphere(1, 0, 1));
    EvalContext shallow_ctx;
    shallow_ctx.read_file = [&](const std::string&) { return shallow; };
    try {
        evaluate_strict(expr("product(file(s.json), sphere(1))"),
                        EvalTargets{std::nullopt, Rational(0)}, shallow_ctx);
        CHECK(false);
    } catch (const BoundExceeded& e) {
        std::string message = e.what();
        CHECK(message.find("file(s.json)") != std::string::npos);
        CHECK(message.find("need 2") != std::string::npos);
    }
}

TEST_CASE("evaluate_stages exposes the left-fold intermediates") {
    std::vector<ManifoldDescriptor> stages =
        evaluate_stages(expr("product(sphere(1), sphere(2), sphere(3))"),
                        EvalTargets{std::nullopt, Rational(0)});
    REQUIRE(stages.size() == 3);
    CHECK(stages[0].dim == 1);
    CHECK(stages[1].dim == 3);
    CHECK(stages[2].dim == 6);
    CHECK(stages[1].codim == 1);
    CHECK(stages[2].codim == 2);
    CHECK(*stages[1].known_index == clifford_closed_form({1, 2}).index);
    CHECK(*stages[2].known_index == clifford_closed_form({1, 2, 3}).index);

    // a nested product in the first-factor slot is one stage, not several
    std::vector<ManifoldDescriptor> nested =
        evaluate_stages(expr("product(product(sphere(1), sphere(2)), torus(k=2), veronese())"),
                        EvalTargets{});
    REQUIRE(nested.size() == 3);
    CHECK(nested[0].dim == 3);
    CHECK(nested[1].dim == 5);
    CHECK(nested[2].dim == 7);
    AnalysisReport report =
        analyze(expr("product(product(sphere(1), sphere(2)), torus(k=2), veronese())"));
    CHECK(report.weights ==
          std::vector<Rational>{Rational(3, 7), Rational(2, 7), Rational(2, 7)});

    std::vector<ManifoldDescriptor> single = evaluate_stages(expr("sphere(2)"), EvalTargets{});
    CHECK(single.size() == 1);
}
