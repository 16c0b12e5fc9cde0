#pragma once

#include "josc/model.hpp"

#include <string>

namespace josc {

/// Builds a model from a JSON config document:
///   {"family": "kneser"|"loglog"|"variable_a"|"table", "params": {...}, "n0": int}
/// Family parameters: kneser {"c"}; loglog {"k", "c"}; variable_a and table
/// carry arrays "a" and "b" indexed from n0-1 (b's first entry is a
/// placeholder), table optionally adds "b0" and "u0" arrays of equal length.
/// The optional top-level "n0" moves the domain start; for the analytic
/// families it may only move it right of the family default.
/// Unknown families and missing or mistyped fields raise
/// std::invalid_argument naming the offending field.
CoefficientModel model_from_config_text(const std::string& text);

/// model_from_config_text on the contents of `path`.
CoefficientModel model_from_config_file(const std::string& path);

}  // namespace josc
