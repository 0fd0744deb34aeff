#include <doctest.h>

#include "minprod/analyzer.hpp"
#include "minprod/catalog.hpp"
#include "minprod/oracle.hpp"
#include "minprod/parser.hpp"

using namespace minprod;

namespace {

ProductExpression expr(const std::string& text) { return parse_expression(text); }

ManifoldDescriptor counted(const std::string& text) {
    return evaluate_strict(expr(text), EvalTargets{std::nullopt, Rational(0)});
}

}  // namespace

TEST_CASE("index and nullity from composed spectra") {
    ManifoldDescriptor clifford = counted("product(sphere(1), sphere(1))");
    CHECK(index_of(clifford) == 5);    // n + 3
    CHECK(nullity_of(clifford) == 4);  // (n_1+1)(n_2+1)

    ManifoldDescriptor triple = counted("product(sphere(1), sphere(1), sphere(1))");
    CHECK(index_of(triple) == 14);    // (k-1)(n+k+1)
    CHECK(nullity_of(triple) == 24);  // (k-1) sum (n_i+1)(n_j+1)

    ManifoldDescriptor geodesic = sphere(4, 2, 4);
    CHECK(index_of(geodesic) == 2);     // p
    CHECK(nullity_of(geodesic) == 10);  // (m+1) p

    CHECK_THROWS_AS(index_of(veronese(4)), InsufficientData);
}

TEST_CASE("counting breakdown for the Clifford torus") {
    ManifoldDescriptor circle = sphere(1, 0, 4);
    BreakdownCounts counts = counting_breakdown(circle, circle);
    CHECK(counts.I0 == 4);  // n + 2
    CHECK(counts.I1 == 0);
    CHECK(counts.Ihat1 == 0);
    CHECK(counts.N0 == 4);
    CHECK(counts.N1 == 0);
    CHECK(counts.Nhat1 == 0);
    CHECK(counts.index() == 5);
    CHECK(counts.nullity() == 4);
}

TEST_CASE("breakdown assembly equals the direct spectral count at every stage") {
    std::vector<std::string> cases = {
        "product(sphere(1), sphere(1), sphere(1))",
        "product(sphere(2), sphere(3))",
        "product(sphere(1), sphere(2), sphere(2))",
        "product(sphere(2, codim=2), sphere(1))",
        "product(sphere(1), sphere(1), sphere(1), sphere(2))",
    };
    for (const std::string& text : cases) {
        Evaluated evaluated =
            evaluate_full(expr(text), EvalTargets{std::nullopt, Rational(0)});
        REQUIRE(evaluated.final_factors);
        BreakdownCounts counts = counting_breakdown(evaluated.final_factors->first,
                                                    evaluated.final_factors->second);
        CHECK(counts.index() == index_of(evaluated.root));
        CHECK(counts.nullity() == nullity_of(evaluated.root));
    }
}

TEST_CASE("totally geodesic factors have empty factor blocks") {
    BreakdownCounts counts = counting_breakdown(sphere(2, 0, 10), sphere(3, 0, 10));
    CHECK(counts.I1 == 0);
    CHECK(counts.Ihat1 == 0);
    CHECK(counts.N1 == 0);
    CHECK(counts.Nhat1 == 0);
}

TEST_CASE("stage-2 Clifford torus with circle: breakdown matches the closed form") {
    Evaluated evaluated = evaluate_full(expr("product(sphere(1), sphere(1), sphere(1))"),
                                        EvalTargets{std::nullopt, Rational(0)});
    BreakdownCounts counts = counting_breakdown(evaluated.final_factors->first,
                                                evaluated.final_factors->second);
    CHECK(counts.factor1_index == 5);
    CHECK(counts.index() == 14);
    CHECK(counts.nullity() == 24);
}

TEST_CASE("mu1 rule") {
    ManifoldDescriptor circle = sphere(1, 0, 4);
    CHECK(mu1_rule(circle, circle) == -4);  // both terms absent: -2n

    ManifoldDescriptor torus = counted("product(sphere(1), sphere(1))");
    CHECK(mu1_rule(torus, circle) == -6);  // min(-6, (3/2)(-4)) = -6

    // factor mu1 below -2n of the product drags the minimum down
    ManifoldDescriptor deep = sphere(5, 1, 12);  // mu1 = -5
    ManifoldDescriptor dot = sphere(1, 0, 12);
    CHECK(mu1_rule(deep, dot) == -12);  // min(-12, (6/5)(-5), -) = -12

    CHECK_THROWS_AS(mu1_rule(veronese(4), circle), InsufficientData);

    // every minimal product satisfies mu1 <= -2n
    for (const char* text : {"product(sphere(1), sphere(2))", "product(sphere(3), sphere(3))",
                             "product(sphere(2, codim=1), sphere(2))"}) {
        Evaluated evaluated =
            evaluate_full(expr(text), EvalTargets{std::nullopt, Rational(0)});
        Rational mu1 = mu1_rule(evaluated.final_factors->first,
                                evaluated.final_factors->second);
        CHECK(mu1 <= Rational(-2 * evaluated.root.dim));
        CHECK(mu1 == evaluated.root.jacobi->min_value());
    }
}

TEST_CASE("lambda1 rule") {
    CHECK(lambda1_rule(sphere(2, 0, 2), sphere(3, 0, 3)) == 5);

    // flat torus factor: lambda1 = (m+2) min((1/2)/2, 1) = (m+2)/4
    for (int m = 1; m <= 4; ++m) {
        ManifoldDescriptor torus = flat_torus(2, 1);
        ManifoldDescriptor s = sphere(m, 0, 1);
        Rational lambda1 = lambda1_rule(torus, s);
        CHECK(lambda1 == Rational(m + 2, 4));
        CHECK(lambda1 < m + 2);  // not immersed by first eigenfunctions
    }

    CHECK(lambda1_rule(otfkm_focal(3), sphere(4, 0, 1)) == Rational(36, 5));

    ManifoldDescriptor no_lambda1 = sphere(2, 0, 2);
    no_lambda1.lambda1.reset();
    CHECK_THROWS_AS(lambda1_rule(no_lambda1, sphere(1, 0, 1)), InsufficientData);
}

TEST_CASE("Clifford closed forms") {
    CliffordClosedForm two = clifford_closed_form({1, 1});
    CHECK(two.index == 5);
    CHECK(two.nullity == 4);
    CHECK(two.killing_dim == 4);

    CliffordClosedForm three = clifford_closed_form({1, 1, 1});
    CHECK(three.index == 14);
    CHECK(three.nullity == 24);
    CHECK(three.killing_dim == 12);

    CliffordClosedForm mixed = clifford_closed_form({2, 3});
    CHECK(mixed.index == 8);
    CHECK(mixed.nullity == 12);
    CHECK(mixed.killing_dim == 12);
}

TEST_CASE("Killing identity: closed-form dimension equals the pair sum") {
    for (int k = 2; k <= 6; ++k) {
        std::vector<int> dims(k, 1);
        // iterate over all n_j in [1,5]^k via odometer
        while (true) {
            CliffordClosedForm closed = clifford_closed_form(dims);
            std::int64_t pair_sum = 0;
            for (std::size_t i = 0; i < dims.size(); ++i)
                for (std::size_t j = i + 1; j < dims.size(); ++j)
                    pair_sum += static_cast<std::int64_t>(dims[i] + 1) * (dims[j] + 1);
            CHECK(closed.killing_dim == pair_sum);
            int position = 0;
            while (position < k && dims[position] == 5) dims[position++] = 1;
            if (position == k) break;
            ++dims[position];
        }
    }
}

TEST_CASE("degeneracy of Clifford products") {
    auto degeneracy = [](const std::string& text) {
        AnalysisReport report = analyze(expr(text));
        return report.degenerate;
    };
    CHECK(degeneracy("product(sphere(1), sphere(1))") == TriState::no);
    CHECK(degeneracy("product(sphere(2), sphere(3))") == TriState::no);
    CHECK(degeneracy("product(sphere(1), sphere(1), sphere(1))") == TriState::yes);
    CHECK(degeneracy("product(sphere(2), sphere(2), sphere(1))") == TriState::yes);
    // no closed-form Killing count away from products of geodesic spheres
    CHECK(degeneracy("product(sphere(2, codim=1), sphere(1))") == TriState::unknown);
    CHECK(degenerate_state(std::nullopt, 4) == TriState::unknown);
}

TEST_CASE("lower bounds") {
    AnalysisReport clifford = analyze(expr("product(sphere(1), sphere(1))"));
    bool found_index_bound = false, found_eigenspace_bound = false;
    for (const BoundCheck& check : clifford.bounds) {
        if (check.name.find("index-lower-bound") == 0) {
            found_index_bound = true;
            CHECK(check.status == BoundCheck::Status::satisfied);
            CHECK(check.statement == "5 >= 4");
        }
        if (check.name.find("minus-n-eigenspace") == 0) {
            found_eigenspace_bound = true;
            CHECK(check.status == BoundCheck::Status::satisfied);
            CHECK(check.statement == "4 >= 4");  // equality for geodesic factors
        }
        if (check.name.find("product-") == 0) {
            CHECK(check.status == BoundCheck::Status::skipped);
            CHECK(check.reason.find("totally geodesic") != std::string::npos);
        }
    }
    CHECK(found_index_bound);
    CHECK(found_eigenspace_bound);

    // nested product: factors are full, non-geodesic Clifford tori
    AnalysisReport nested = analyze(
        expr("product(product(sphere(1), sphere(1)), product(sphere(1), sphere(1)))"));
    CHECK(*nested.index.value == clifford_closed_form({1, 1, 1, 1}).index);
    for (const BoundCheck& check : nested.bounds) {
        CHECK(check.status != BoundCheck::Status::violated);
        if (check.name.find("product-index") == 0) {
            CHECK(check.status == BoundCheck::Status::satisfied);
            CHECK(check.statement == "27 >= 19");  // 5 + 5 + n + p + 2
        }
        if (check.name.find("product-nullity") == 0) {
            CHECK(check.status == BoundCheck::Status::satisfied);
            CHECK(check.statement == "72 >= 56");  // 4 + 4 + 3 * 4 * 4
        }
    }

    // geodesic leaf: both intrinsic bounds are skipped
    AnalysisReport geodesic = analyze(expr("sphere(3)"));
    for (const BoundCheck& check : geodesic.bounds)
        CHECK(check.status == BoundCheck::Status::skipped);
}

TEST_CASE("average S identity") {
    AverageSCheck clifford = average_s_identity(expr("product(sphere(1), sphere(1))"));
    CHECK(clifford.value.value == 2);  // = n
    CHECK(clifford.lower_bound == 2);
    CHECK(clifford.satisfied == TriState::yes);
    CHECK(clifford.equality == TriState::yes);

    AverageSCheck veronese_case = average_s_identity(expr("product(veronese(), sphere(2))"));
    CHECK(veronese_case.value.value == Rational(20, 3));
    CHECK(veronese_case.lower_bound == 4);
    CHECK(veronese_case.satisfied == TriState::yes);
    CHECK(veronese_case.equality == TriState::no);

    AverageSCheck four = average_s_identity(
        expr("product(sphere(1), sphere(2), sphere(1), sphere(2))"));
    CHECK(four.value.value == 18);  // (k-1) n = 3 * 6
    CHECK(four.equality == TriState::yes);

    AverageSCheck unknown = average_s_identity(expr("product(torus(k=2), sphere(1))"));
    CHECK_FALSE(unknown.value.known());
    CHECK(unknown.satisfied == TriState::unknown);
}

TEST_CASE("constant S classification") {
    SClassification clifford = constant_s_classify(expr("product(sphere(2), sphere(3))"));
    CHECK(clifford.label == ConstantSClass::clifford);
    CHECK(clifford.s == 5);

    SClassification veronese_gap = constant_s_classify(expr("product(sphere(2), veronese())"));
    CHECK(veronese_gap.label == ConstantSClass::veronese_gap);
    CHECK(veronese_gap.s == Rational(20, 3));  // exactly 5n/3

    SClassification other = constant_s_classify(
        expr("product(isoparametric(4, g=4), sphere(4))"));
    CHECK(other.label == ConstantSClass::other);
    CHECK(other.s == 32);  // n(1 + 12/4) = 4n > 5n/3

    CHECK_THROWS_AS(constant_s_classify(expr("product(torus(k=2), sphere(1))")),
                    InsufficientData);
    CHECK_THROWS_AS(constant_s_classify(expr("product(sphere(1), sphere(1), sphere(1))")),
                    Error);

    // an average-only factor cannot be classified
    ManifoldDescriptor averaged = sphere(2, 1, 4);
    averaged.s_norm = SecondFundamental::average(Rational(1, 2));
    averaged.name = "averaged";
    std::string document = save_descriptor(averaged);
    EvalContext ctx;
    ctx.read_file = [&](const std::string&) { return document; };
    CHECK_THROWS_AS(constant_s_classify(expr("product(file(a.json), sphere(1))"), ctx),
                    NotConstant);

    // but the average still combines through the identity
    SecondFundamental mixed = second_fundamental(expr("product(file(a.json), sphere(1))"), ctx);
    CHECK(mixed.kind == SecondFundamental::Kind::average);
    CHECK(mixed.value == Rational(3) * (Rational(1) + Rational(1, 4)));
}

TEST_CASE("constant S families") {
    FamilyS one_veronese = constant_s_family_spheres_veronese(1, {2});
    CHECK(one_veronese.n == 4);
    CHECK(one_veronese.p == 3);
    CHECK(one_veronese.s == Rational(20, 3));  // 5n/3

    FamilyS clifford = constant_s_family_spheres_veronese(0, {1, 2, 3});
    CHECK(clifford.s == Rational(2 * 6));  // (k-1) n
    CHECK(clifford.p == 2);

    FamilyS r2 = constant_s_family_spheres_veronese(2, {1, 1});
    CHECK(r2.n == 6);
    CHECK(r2.p == 7);  // 3r + k - 1
    CHECK(r2.s == Rational(6) * (Rational(10, 3) + 1));

    FamilyS iso = constant_s_family_isoparametric({{4, 4}, {3, 3}});
    CHECK(iso.n == 7);
    CHECK(iso.p == 3);
    CHECK(iso.s == Rational((4 + 3 - 1) * 7));  // 42 at n = 7

    // curvature counts (g_1, g_2) = (2, 3): total 5, so S = 4n = 28
    FamilyS low = constant_s_family_isoparametric({{4, 2}, {3, 3}});
    CHECK(low.s == 28);
    CHECK(low.s == second_fundamental(
                       expr("product(isoparametric(4, g=2), isoparametric(3, g=3))"))
                       .value);

    CHECK_THROWS_AS(constant_s_family_isoparametric({{4, 5}, {3, 3}}), InvalidG);
}

TEST_CASE("gap index formula agrees with the spectral count") {
    // pairs of geodesic spheres with codimension satisfy the gap hypotheses
    std::vector<std::pair<std::string, std::string>> pairs = {
        {"sphere(2, codim=1)", "sphere(3, codim=2)"},
        {"sphere(1)", "sphere(1)"},
        {"sphere(2)", "sphere(4, codim=1)"},
    };
    for (const auto& [a_text, b_text] : pairs) {
        std::string product_text = "product(" + a_text + ", " + b_text + ")";
        Evaluated evaluated =
            evaluate_full(expr(product_text), EvalTargets{std::nullopt, Rational(0)});
        auto predicted = gap_index_formula(evaluated.final_factors->first,
                                           evaluated.final_factors->second);
        REQUIRE(predicted);
        CHECK(*predicted == index_of(evaluated.root));
    }

    // the Clifford torus itself as a factor (its -n eigenvalue and gaps hold)
    Evaluated staged = evaluate_full(expr("product(sphere(1), sphere(1), sphere(1))"),
                                     EvalTargets{std::nullopt, Rational(0)});
    auto predicted = gap_index_formula(staged.final_factors->first,
                                       staged.final_factors->second);
    REQUIRE(predicted);
    CHECK(*predicted == 14);

    // flat torus factor: lambda1 < n breaks the hypotheses
    ManifoldDescriptor torus = flat_torus(2, 8);
    CHECK_FALSE(gap_index_formula(torus, sphere(1, 0, 8)).has_value());
}

TEST_CASE("first-eigenfunction biconditional on a mixed catalog grid") {
    std::vector<std::string> leaves = {
        "sphere(1)",    "sphere(2)",           "sphere(3, codim=1)", "torus(k=2)",
        "torus(k=3)",   "veronese()",          "isoparametric(3, g=3)",
        "otfkm(k=1)",   "otfkm(k=2)",          "otfkm(k=3)",         "otfkm(k=4)",
        "lawson(1, 1)", "lawson(2, 3)",        "bipolar_tau31()",    "isoparametric(4, g=2)",
    };
    int cases = 0;
    for (std::size_t i = 0; i < leaves.size(); ++i)
        for (std::size_t j = i; j < leaves.size(); ++j) {
            ManifoldDescriptor d =
                evaluate(expr("product(" + leaves[i] + ", " + leaves[j] + ")"), EvalTargets{});
            REQUIRE(d.lambda1);
            bool by_value = (*d.lambda1 == d.dim);
            REQUIRE(d.flags.by_first_eigenfunctions != TriState::unknown);
            bool by_flags = d.flags.by_first_eigenfunctions == TriState::yes;
            CHECK(by_value == by_flags);
            ++cases;
        }
    CHECK(cases >= 20);
}

TEST_CASE("sphere-product spectral facts at every stage") {
    // the five spectral facts of the product-of-spheres induction, checked on
    // the computed intermediates at stages 2, 3 and 4
    std::vector<std::vector<int>> dim_lists = {{1, 1, 1, 1}, {2, 1, 3, 2}, {3, 3, 2, 1}};
    for (const auto& dims : dim_lists) {
        std::string text = "product(";
        for (std::size_t i = 0; i < dims.size(); ++i)
            text += (i ? ", sphere(" : "sphere(") + std::to_string(dims[i]) + ")";
        text += ")";
        EvalTargets targets;
        targets.jacobi = Rational(0);
        int total = 0;
        for (int d : dims) total += d;
        targets.laplace = Rational(2 * total);
        std::vector<ManifoldDescriptor> stages = evaluate_stages(expr(text), targets);

        for (std::size_t stage = 1; stage < stages.size(); ++stage) {
            const ManifoldDescriptor& d = stages[stage];
            const std::int64_t factors = static_cast<std::int64_t>(stage) + 1;
            const int n = d.dim;
            std::int64_t first_eigenspace = 0, pair_sum = 0;
            for (std::size_t i = 0; i <= stage; ++i) first_eigenspace += dims[i] + 1;
            for (std::size_t i = 0; i <= stage; ++i)
                for (std::size_t j = i + 1; j <= stage; ++j)
                    pair_sum += static_cast<std::int64_t>(dims[i] + 1) * (dims[j] + 1);

            REQUIRE(d.jacobi);
            CHECK(d.jacobi->min_value() == Rational(-2 * n));
            CHECK(multiplicity_at(*d.jacobi, Rational(-2 * n)) == factors - 1);
            CHECK(multiplicity_at(*d.jacobi, Rational(-n)) == (factors - 1) * first_eigenspace);
            CHECK(multiplicity_at(*d.jacobi, 0) == (factors - 1) * pair_sum);
            // nothing between -2n and -n, nothing in (-n, 0)
            CHECK(count_below(*d.jacobi, 0, true) ==
                  (factors - 1) + (factors - 1) * first_eigenspace);

            REQUIRE(d.laplace);
            CHECK(multiplicity_at(*d.laplace, Rational(n)) == first_eigenspace);
            CHECK(count_below(*d.laplace, Rational(n), true) == 1);  // lambda1 = n
            if (leq(Rational(2 * n), d.laplace->bound())) {
                CHECK(multiplicity_at(*d.laplace, Rational(2 * n)) == pair_sum);
                // no Laplace values inside (n, 2n)
                CHECK(count_below(*d.laplace, Rational(2 * n), true) == 1 + first_eigenspace);
            }
        }
    }
}

TEST_CASE("analyze fills the headline report") {
    AnalysisReport report = analyze(expr("product(sphere(1), sphere(1), sphere(1))"));
    CHECK(report.n == 3);
    CHECK(report.p == 2);
    CHECK(*report.index.value == 14);
    CHECK(*report.nullity.value == 24);
    CHECK(*report.lambda1.value == 3);
    CHECK(*report.mu1.value == -6);
    CHECK(report.s_norm.value == 6);
    CHECK(report.curvature.value == 0);
    CHECK(report.degenerate == TriState::yes);
    CHECK(*report.killing_dim == 12);
    REQUIRE(report.breakdown);
    CHECK(report.breakdown->index() == 14);
    CHECK(report.breakdown->nullity() == 24);
    CHECK(report.weights ==
          std::vector<Rational>{Rational(1, 3), Rational(1, 3), Rational(1, 3)});

    AnalysisReport facts = analyze(expr("product(veronese(), sphere(3))"));
    CHECK_FALSE(facts.index.value);
    CHECK(*facts.lambda1.value == 5);
    CHECK(facts.flags.by_first_eigenfunctions == TriState::yes);
    REQUIRE(facts.jacobi_failure);
    CHECK(facts.jacobi_failure->message == "Jacobi spectrum of veronese() unavailable");
}
