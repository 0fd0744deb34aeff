#pragma once

#include "minprod/analyzer.hpp"
#include "minprod/serialize.hpp"

namespace minprod {

// Machine-readable report with canonical field order; parsing the emitted
// document and re-serializing it is byte-identical.
Json report_to_json(const AnalysisReport& report);
std::string render_report_table(const AnalysisReport& report);

// Spectrum listing for one expression, truncated to the displayed bound.
Json spectrum_to_report_json(const AnalysisReport& report, const Rational& bound);
std::string render_spectrum_table(const AnalysisReport& report, const Rational& bound);

// Curvature quantities plus the binary product ratio identity
// R/n = R_1/n_1 + R_2/n_2 when the factor curvatures are known.
Json curvature_to_json(const AnalysisReport& report);
std::string render_curvature_table(const AnalysisReport& report);

// One check of the self-verification suite backed by the oracle module.
struct VerifyCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};
std::vector<VerifyCheck> run_verification();
Json verification_to_json(const std::vector<VerifyCheck>& checks);
std::string render_verification_table(const std::vector<VerifyCheck>& checks);

// Catalog listing: the built-in families plus loaded user descriptors.
Json catalog_to_json(const std::vector<ManifoldDescriptor>& user_entries);
std::string render_catalog_table(const std::vector<ManifoldDescriptor>& user_entries);

}  // namespace minprod
