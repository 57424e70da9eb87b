#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quantrep/multinomial.hpp"

namespace quantrep {

struct CheckResult {
  std::string name;
  int n = 0;
  std::uint64_t checked = 0;  // number of instances examined
  bool ok = true;
  std::string detail;
};

struct SelfTestReport {
  std::vector<CheckResult> checks;
  bool ok() const;
  std::string to_text() const;
};

/// Identities of one value table: class masses, SMC prefix sums, value
/// order, multinomial total and tau1 uniqueness.
std::vector<CheckResult> check_table(const OutcomeModel& model, const ValueTable& table);

/// Runs every invariant suite for n = 1..n_max. Cardinality checks are
/// exhaustive over all (t, xi) while n(M+1) <= 16 and sampled beyond.
SelfTestReport selftest(const OutcomeModel& model, int n_max, std::uint64_t seed = 1);

}  // namespace quantrep
