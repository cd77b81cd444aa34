#pragma once

#include <optional>
#include <string>
#include <vector>

#include "convval/convex_function.hpp"
#include "convval/growth.hpp"
#include "convval/law_report.hpp"

namespace convval {

inline constexpr const char* kSchema = "convval/1";
inline constexpr const char* kVersion = "0.1.0";

struct FunctionDocument {
  ClosedPwa function;
  std::optional<std::string> provenance;
};

/// Throws ParseError naming the line for malformed JSON and the field path
/// for bad content; library errors (EmptyDomain and friends) pass through.
FunctionDocument parse_function_document(const std::string& text);
/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string serialize_function_document(const FunctionDocument& doc);
std::string serialize_function_document(const ClosedPwa& f, std::optional<std::string> provenance = std::nullopt);

/// Throws ParseError as above and InvalidGrowthFunction for a
/// discontinuity or a failed sign certificate.
GrowthFunction parse_growth_document(const std::string& text);
std::string serialize_growth_document(const GrowthFunction& g);

/// Same document without the continuity and sign checks, for tabulating
/// step functions.
PiecewisePoly parse_piecewise_document(const std::string& text);

/// Exact values as canonical rational strings, floats with 17 significant
/// digits, both as JSON strings.
std::string number_text(const Number& x);

/// One JSON object per report, keys sorted.
std::string serialize_law_reports(const std::vector<LawReport>& reports);

}  // namespace convval
