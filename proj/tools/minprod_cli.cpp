#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "minprod/catalog.hpp"
#include "minprod/parser.hpp"
#include "minprod/report.hpp"

namespace {

using namespace minprod;

struct Options {
    std::string expression;
    std::string bound_text;
    std::string format = "table";
    std::string catalog_path;
};

std::optional<Rational> parse_bound(const Options& options) {
    if (options.bound_text.empty()) return std::nullopt;
    return parse_rational(options.bound_text);
}

std::string read_whole_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot read descriptor file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<ManifoldDescriptor> load_user_catalog(const Options& options) {
    std::vector<ManifoldDescriptor> entries;
    if (!options.catalog_path.empty())
        entries.push_back(load_descriptor(read_whole_file(options.catalog_path)));
    return entries;
}

void emit(const Options& options, const Json& json, const std::string& table) {
    if (options.format == "json")
        std::cout << json.dump(2) << "\n";
    else
        std::cout << table;
}

[[noreturn]] void raise_failure(const EvalFailure& failure) {
    if (failure.bound_exceeded) throw BoundExceeded(failure.message);
    throw InsufficientData(failure.message);
}

int run_report(const Options& options) {
    load_user_catalog(options);
    ProductExpression e = parse_expression(options.expression);
    AnalysisReport report = analyze(e, AnalysisOptions{parse_bound(options)});
    emit(options, report_to_json(report), render_report_table(report));
    return 0;
}

int run_spectrum(const Options& options) {
    load_user_catalog(options);
    ProductExpression e = parse_expression(options.expression);
    std::optional<Rational> bound = parse_bound(options);
    if (!bound) bound = Rational(4 * evaluate(e, EvalTargets{}).dim);  // default depth 4n
    AnalysisReport report = analyze(e, AnalysisOptions{bound});
    if (!report.laplace) {
        if (report.laplace_failure) raise_failure(*report.laplace_failure);
        throw InsufficientData("Laplace spectrum of " + report.expression + " unavailable");
    }
    emit(options, spectrum_to_report_json(report, *bound),
         render_spectrum_table(report, *bound));
    return 0;
}

int run_count(const Options& options, bool nullity) {
    load_user_catalog(options);
    ProductExpression e = parse_expression(options.expression);
    AnalysisReport report = analyze(e, AnalysisOptions{parse_bound(options)});
    const ReportCount& count = nullity ? report.nullity : report.index;
    if (!count.value) {
        if (report.jacobi_failure) raise_failure(*report.jacobi_failure);
        throw InsufficientData(std::string(nullity ? "nullity" : "index") + " of " +
                               report.expression + " unknown");
    }
    Json json;
    json["expression"] = report.expression;
    json[nullity ? "nullity" : "index"] = *count.value;
    json["provenance"] = count.provenance;
    emit(options, json, std::to_string(*count.value) + "\n");
    return 0;
}

int run_lambda1(const Options& options) {
    load_user_catalog(options);
    ProductExpression e = parse_expression(options.expression);
    AnalysisReport report = analyze(e, AnalysisOptions{parse_bound(options)});
    if (!report.lambda1.value)
        throw InsufficientData("first Laplace eigenvalue of " + report.expression + " unknown");
    Json json;
    json["expression"] = report.expression;
    json["lambda1"] = to_json(*report.lambda1.value);
    json["provenance"] = report.lambda1.provenance;
    emit(options, json, to_string(*report.lambda1.value) + "\n");
    return 0;
}

int run_curvature(const Options& options) {
    load_user_catalog(options);
    ProductExpression e = parse_expression(options.expression);
    AnalysisReport report = analyze(e, AnalysisOptions{parse_bound(options)});
    if (!report.s_norm.known())
        throw InsufficientData("S of " + report.expression + " unknown");
    emit(options, curvature_to_json(report), render_curvature_table(report));
    return 0;
}

int run_verify(const Options& options) {
    std::vector<VerifyCheck> checks = run_verification();
    emit(options, verification_to_json(checks), render_verification_table(checks));
    for (const auto& check : checks)
        if (!check.passed) return 1;
    return 0;
}

int run_catalog(const Options& options) {
    std::vector<ManifoldDescriptor> user_entries = load_user_catalog(options);
    emit(options, catalog_to_json(user_entries), render_catalog_table(user_entries));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact spectra, Morse index and curvature of minimal products in spheres"};
    app.require_subcommand(1);

    Options options;
    auto add_common = [&](CLI::App* cmd, bool with_expression) {
        if (with_expression)
            cmd->add_option("expression", options.expression, "product expression")->required();
        cmd->add_option("--bound", options.bound_text,
                        "certification depth as a rational a/b");
        cmd->add_option("--format", options.format, "table or json")
            ->check(CLI::IsMember({"table", "json"}));
        cmd->add_option("--catalog", options.catalog_path, "user descriptor file to load");
    };

    CLI::App* report = app.add_subcommand("report", "full analysis report");
    CLI::App* spectrum =
        app.add_subcommand("spectrum", "Laplace/Jacobi eigenvalue listing (default bound 4n)");
    CLI::App* index = app.add_subcommand("index", "Morse index");
    CLI::App* nullity = app.add_subcommand("nullity", "nullity");
    CLI::App* lambda1 = app.add_subcommand("lambda1", "first Laplace eigenvalue");
    CLI::App* curvature = app.add_subcommand("curvature", "S, scalar curvature and identities");
    CLI::App* verify = app.add_subcommand("verify", "run the oracle cross-check suite");
    CLI::App* catalog = app.add_subcommand("catalog", "list built-in and user descriptors");
    for (CLI::App* cmd : {report, spectrum, index, nullity, lambda1, curvature})
        add_common(cmd, true);
    add_common(verify, false);
    add_common(catalog, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (report->parsed()) return run_report(options);
        if (spectrum->parsed()) return run_spectrum(options);
        if (index->parsed()) return run_count(options, false);
        if (nullity->parsed()) return run_count(options, true);
        if (lambda1->parsed()) return run_lambda1(options);
        if (curvature->parsed()) return run_curvature(options);
        if (verify->parsed()) return run_verify(options);
        if (catalog->parsed()) return run_catalog(options);
    } catch (const ParseError& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 3;
    } catch (const BoundExceeded& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 4;
    } catch (const InsufficientData& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 2;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    }
    return 0;
}
