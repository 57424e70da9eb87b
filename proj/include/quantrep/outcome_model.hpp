#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quantrep/exact_scalar.hpp"

namespace quantrep {

/// A bit pattern (eps_1, ..., eps_{M+1}) packed with eps_1 as the most
/// significant of the M+1 low bits.
using PatternCode = std::uint32_t;

/// "101" -> 0b101. Throws DomainError on characters other than 0/1.
PatternCode pattern_from_string(std::string_view bits);
std::string pattern_to_string(PatternCode code, int width);

/// Truncated Haar expansion sum_{k<=M} 2^{k/2} c_{k,j} (-1)^{eps_{k+1}}.
struct HaarSpec {
  int M = 0;
  long d = 2;
  /// coeffs[k][j] for 0 <= k <= M, 0 <= j < 2^k.
  std::vector<std::vector<ExactScalar>> coeffs;

  /// All coefficients zero, ready to be filled in.
  static HaarSpec zeros(int M, long d = 2);
};

/// The base random variable: m = 2^{M+1} equally likely outcomes
/// o_1 < ... < o_m, each attained on one leading bit pattern.
///
/// Outcome indices are 1-based throughout the library, matching o_1..o_m.
class OutcomeModel {
 public:
  int M() const { return M_; }
  int m() const { return 1 << (M_ + 1); }
  int pattern_width() const { return M_ + 1; }
  long radicand() const { return d_; }
  bool strict() const { return strict_; }

  const std::vector<ExactScalar>& outcomes() const { return outcomes_; }
  const ExactScalar& outcome(int s) const;

  /// s with O = o_s on the given pattern.
  int outcome_index(PatternCode pattern) const;
  /// The pattern varsigma_s for 1 <= s <= m.
  PatternCode pattern_of(int s) const;

  /// (1/m) sum o_s and (1/m) sum o_s^2.
  const ExactScalar& mean() const { return mean_; }
  const ExactScalar& variance() const { return variance_; }

  /// Present when the model came from build_haar.
  const std::optional<HaarSpec>& haar() const { return haar_; }

  std::string summary() const;

 private:
  friend OutcomeModel build_manual(int, std::vector<std::pair<PatternCode, ExactScalar>>, bool);
  friend OutcomeModel build_haar(const HaarSpec&, bool);

  int M_ = 0;
  long d_ = 1;
  bool strict_ = false;
  std::vector<ExactScalar> outcomes_;
  std::vector<PatternCode> pattern_of_;  // index s-1
  std::vector<int> index_of_pattern_;    // index pattern code, value s
  ExactScalar mean_;
  ExactScalar variance_;
  std::optional<HaarSpec> haar_;
};

/// Builds a model from (pattern, outcome) pairs. All values must share one
/// radicand. Throws DomainError on a wrong count, duplicate patterns or
/// outcomes, or (when strict) a mean other than 0 or variance other than 1.
OutcomeModel build_manual(int M, std::vector<std::pair<PatternCode, ExactScalar>> pairs, bool strict);

OutcomeModel build_haar(const HaarSpec& spec, bool strict);

/// sum_{k,j} c_{k,j}^2, the variance of the Haar-built outcome.
ExactScalar theta_squared(const HaarSpec& spec);

/// The outcome of the Haar expansion on one pattern.
ExactScalar haar_outcome(const HaarSpec& spec, PatternCode pattern);

}  // namespace quantrep
