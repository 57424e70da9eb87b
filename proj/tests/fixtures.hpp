#pragma once

#include <string>

#include "quantrep/index_machinery.hpp"
#include "quantrep/model_io.hpp"
#include "quantrep/outcome_model.hpp"

namespace fixtures {

using namespace quantrep;

inline ExactScalar q(long num, long den = 1) { return ExactScalar(Rational(num, den)); }

// M = 0, outcomes -1 (pattern 1) and +1 (pattern 0).
inline OutcomeModel model_a() {
  return build_manual(0, {{pattern_from_string("1"), q(-1)}, {pattern_from_string("0"), q(1)}}, true);
}

// M = 1, outcomes -3, -1, 1, 3 on patterns 11, 10, 01, 00.
inline OutcomeModel model_b() {
  return build_manual(1,
                      {{pattern_from_string("11"), q(-3)},
                       {pattern_from_string("10"), q(-1)},
                       {pattern_from_string("01"), q(1)},
                       {pattern_from_string("00"), q(3)}},
                      false);
}

inline std::string model_path(const std::string& name) {
  return std::string(QUANTREP_MODELS_DIR) + "/" + name;
}

}  // namespace fixtures
