#pragma once

#include <string>
#include <string_view>

#include "quantrep/outcome_model.hpp"

namespace quantrep {

/// Model file (JSON):
///
///   {"M": 1, "d": 2, "strict": false,
///    "outcomes": [{"pattern": "11", "value": "-3"}, ...]}
///
/// or, instead of "outcomes",
///
///   "haar": {"coeffs": [[0, 0, "2"], [1, 0, "1/2*sqrt(2)"], ...]}
///
/// where omitted Haar coefficients are zero. "d" defaults to 1 and
/// "strict" to false. Errors are DomainError with a byte offset for
/// syntax problems or a JSON pointer for schema problems.
OutcomeModel parse_model(std::string_view json_text);
OutcomeModel load_model(const std::string& path);

/// Serializes in the "outcomes" form (plus "haar" when present).
std::string model_to_json(const OutcomeModel& model, int indent = 2);

}  // namespace quantrep
