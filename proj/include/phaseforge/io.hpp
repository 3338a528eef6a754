#pragma once

#include <string>

#include "phaseforge/xform.hpp"

namespace phaseforge {

/// Raw contents of a realization document, shape-checked but not yet
/// validated against the positivity structure. Lets callers report which
/// hypothesis fails instead of rejecting the document outright.
struct RealizationDocument {
    SystemKind kind = SystemKind::discrete;
    Matrix A;
    Vector B;
    Vector C;
};

/// Realization document:
/// {"kind": "continuous"|"discrete", "A": [[..row..],..], "B": [..], "C": [..]}
/// Throws ParseError with the offending field named.
RealizationDocument parse_realization_document(const std::string& json_text);
Realization parse_realization(const std::string& json_text);
std::string realization_to_json(const Realization& r);

/// Transform document:
/// {"psi": .., "alpha_raw": [..], "alpha_star": [..], "T": [[..]], "t": [..],
///  "similarity": {"U"|"M": [..diagonal..], "nu"|"z": [..]},
///  "checks": {"metzler"|"nonneg": bool, "excitable": bool, "stable": bool,
///             "exit_identity_residual": number}}
/// The kind is carried by which similarity keys are present. Numbers are
/// emitted so they round-trip exactly.
std::string transform_to_json(const TransformResult& tr);
TransformResult parse_transform(const std::string& json_text);

/// Flat "key,value" CSV rendering of a transform document.
std::string transform_to_csv(const TransformResult& tr);

/// Formats one number for CSV output: 10 significant digits, '.' decimal
/// separator, no locale dependence.
std::string csv_number(double v);

}  // namespace phaseforge
