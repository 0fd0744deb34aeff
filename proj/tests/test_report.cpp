#include <doctest.h>

#include "minprod/catalog.hpp"
#include "minprod/parser.hpp"
#include "minprod/report.hpp"

using namespace minprod;

TEST_CASE("report JSON round-trips byte-identically") {
    for (const char* text : {"product(sphere(1), sphere(1), sphere(1))",
                             "product(veronese(), sphere(3))", "torus(k=2)", "sphere(2, codim=2)"}) {
        AnalysisReport report = analyze(parse_expression(text));
        std::string emitted = report_to_json(report).dump(2);
        Json parsed = Json::parse(emitted);
        CHECK(parsed.dump(2) == emitted);
    }
}

TEST_CASE("report JSON carries provenance for every known numeric field") {
    AnalysisReport report = analyze(parse_expression("product(sphere(1), sphere(1))"));
    Json j = report_to_json(report);
    for (const char* field : {"lambda1", "mu1", "index", "nullity"}) {
        INFO(field);
        REQUIRE(!j[field]["value"].is_null());
        CHECK(!j[field]["provenance"].get<std::string>().empty());
    }
    CHECK(!j["S"]["provenance"].get<std::string>().empty());
    CHECK(!j["R"]["provenance"].get<std::string>().empty());
    CHECK(j["index"]["provenance"] == "spectral-composition");

    // canonical top-level order
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"expression", "n", "p", "weights", "flags",
                                           "lambda1", "mu1", "index", "nullity", "breakdown",
                                           "S", "R", "average_S", "classification",
                                           "killing_dim", "degenerate", "bounds"});
}

TEST_CASE("rationals are integer pairs in machine output") {
    AnalysisReport report = analyze(parse_expression("product(veronese(), sphere(2))"));
    Json j = report_to_json(report);
    CHECK(j["S"]["value"] == Json::array({20, 3}));
    CHECK(j["lambda1"]["value"] == Json::array({4, 1}));
    std::string dumped = j.dump();
    CHECK(dumped.find('.') == std::string::npos);  // no decimals anywhere
}

TEST_CASE("spectrum and curvature documents") {
    AnalysisReport report =
        analyze(parse_expression("product(sphere(1), sphere(1))"), AnalysisOptions{Rational(4)});
    Json spectrum = spectrum_to_report_json(report, Rational(4));
    CHECK(spectrum["laplace"]["entries"] ==
          Json::array({Json::array({0, 1, 1}), Json::array({2, 1, 4}), Json::array({4, 1, 4})}));
    CHECK(spectrum["jacobi"]["entries"][0] == Json::array({-4, 1, 1}));

    Json curvature = curvature_to_json(report);
    CHECK(curvature["S"]["value"] == Json::array({2, 1}));
    CHECK(curvature["R"]["value"] == Json::array({0, 1}));
    CHECK(curvature["ratio_identity"]["holds"] == true);
    CHECK(curvature["ratio_identity"]["defect"] == Json::array({0, 1}));

    std::string table = render_spectrum_table(report, Rational(4));
    CHECK(table.find("-4  x1") != std::string::npos);
}

TEST_CASE("verification suite passes and serializes") {
    std::vector<VerifyCheck> checks = run_verification();
    REQUIRE(checks.size() == 3);
    for (const auto& check : checks) {
        INFO(check.name << ": " << check.detail);
        CHECK(check.passed);
    }
    Json j = verification_to_json(checks);
    CHECK(j["failed"] == 0);
    std::string table = render_verification_table(checks);
    CHECK(table.find("verification passed") != std::string::npos);
}

TEST_CASE("catalog listing includes user descriptors") {
    std::vector<ManifoldDescriptor> users = {
        load_descriptor(save_descriptor(sphere(2, 0, 6)))};
    Json j = catalog_to_json(users);
    CHECK(j["families"].size() == 8);
    CHECK(j["user_descriptors"].size() == 1);
    CHECK(j["user_descriptors"][0]["name"] == "sphere(2)");
    std::string table = render_catalog_table(users);
    CHECK(table.find("torus(k=k)") != std::string::npos);
    CHECK(table.find("user descriptors:") != std::string::npos);
}

TEST_CASE("report table renders the headline quantities") {
    AnalysisReport report = analyze(parse_expression("product(sphere(1), sphere(1), sphere(1))"));
    std::string table = render_report_table(report);
    CHECK(table.find("index: 14") != std::string::npos);
    CHECK(table.find("nullity: 24") != std::string::npos);
    CHECK(table.find("lambda1: 3") != std::string::npos);
    CHECK(table.find("S: 6 (constant)") != std::string::npos);
    CHECK(table.find("degenerate: true") != std::string::npos);
}
