#include "quantrep/outcome_model.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace quantrep {

PatternCode pattern_from_string(std::string_view bits) {
  if (bits.empty() || bits.size() > 30) throw DomainError("pattern must have 1..30 bits");
  PatternCode code = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw DomainError("pattern '" + std::string(bits) + "' is not binary");
    code = (code << 1) | static_cast<PatternCode>(c - '0');
  }
  return code;
}

std::string pattern_to_string(PatternCode code, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i)
    if ((code >> (width - 1 - i)) & 1u) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

HaarSpec HaarSpec::zeros(int M, long d) {
  if (M < 0 || M > 20) throw DomainError("Haar depth M must be in 0..20");
  HaarSpec spec;
  spec.M = M;
  spec.d = d;
  for (int k = 0; k <= M; ++k) spec.coeffs.emplace_back(std::size_t{1} << k, ExactScalar::zero(d));
  return spec;
}

const ExactScalar& OutcomeModel::outcome(int s) const {
  if (s < 1 || s > m()) throw std::out_of_range("outcome index " + std::to_string(s));
  return outcomes_[static_cast<std::size_t>(s - 1)];
}

int OutcomeModel::outcome_index(PatternCode pattern) const {
  if (pattern >= static_cast<PatternCode>(m()))
    throw std::out_of_range("pattern code " + std::to_string(pattern));
  return index_of_pattern_[pattern];
}

PatternCode OutcomeModel::pattern_of(int s) const {
  if (s < 1 || s > m()) throw std::out_of_range("outcome index " + std::to_string(s));
  return pattern_of_[static_cast<std::size_t>(s - 1)];
}

std::string OutcomeModel::summary() const {
  std::ostringstream out;
  out << "M=" << M_ << " m=" << m() << " d=" << d_ << " strict=" << (strict_ ? "true" : "false")
      << " mean=" << mean_.to_string() << " variance=" << variance_.to_string();
  return out.str();
}

OutcomeModel build_manual(int M, std::vector<std::pair<PatternCode, ExactScalar>> pairs, bool strict) {
  if (M < 0 || M > 20) throw DomainError("M must be in 0..20");
  const std::size_t m = std::size_t{1} << (M + 1);
  if (pairs.size() != m)
    throw DomainError("expected " + std::to_string(m) + " outcomes, got " + std::to_string(pairs.size()));
  const long d = pairs.front().second.radicand();
  for (const auto& [pattern, value] : pairs) {
    if (pattern >= m) throw DomainError("pattern wider than M+1 bits");
    if (value.radicand() != d) throw DomainError("outcomes use different radicands");
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& x, const auto& y) { return cmp(x.second, y.second) < 0; });

  OutcomeModel model;
  model.M_ = M;
  model.d_ = d;
  model.strict_ = strict;
  model.index_of_pattern_.assign(m, 0);
  for (std::size_t s = 0; s < m; ++s) {
    const auto& [pattern, value] = pairs[s];
    if (s > 0 && cmp(pairs[s - 1].second, value) == 0)
      throw DomainError("duplicate outcome " + value.to_string());
    if (model.index_of_pattern_[pattern] != 0)
      throw DomainError("duplicate pattern " + pattern_to_string(pattern, M + 1));
    model.index_of_pattern_[pattern] = static_cast<int>(s + 1);
    model.pattern_of_.push_back(pattern);
    model.outcomes_.push_back(value);
  }

  ExactScalar sum = ExactScalar::zero(d);
  ExactScalar squares = ExactScalar::zero(d);
  for (const auto& o : model.outcomes_) {
    sum += o;
    squares += o * o;
  }
  const Rational inv_m(1, static_cast<unsigned long>(m));
  model.mean_ = sum * inv_m;
  model.variance_ = squares * inv_m;
  if (strict) {
    if (sum.sign() != 0) throw DomainError("strict model: outcomes must sum to 0");
    if (cmp(model.variance_, ExactScalar(Rational(1), d)) != 0)
      throw DomainError("strict model: variance must be 1, got " + model.variance_.to_string());
  }
  return model;
}

ExactScalar haar_outcome(const HaarSpec& spec, PatternCode pattern) {
  const int width = spec.M + 1;
  ExactScalar sqrt2 =
      spec.d == 2 ? ExactScalar(Rational(0), Rational(1), 2) : ExactScalar(Rational(0), spec.d);
  ExactScalar total = ExactScalar::zero(spec.d);
  for (int k = 0; k <= spec.M; ++k) {
    // j(eps, k) reads eps_1..eps_k as a binary number; eps_{k+1} picks the sign.
    const PatternCode j = pattern >> (width - k);
    const bool negative = (pattern >> (width - 1 - k)) & 1u;
    const ExactScalar& c = spec.coeffs[static_cast<std::size_t>(k)][j];
    if (c.sign() == 0) continue;
    ExactScalar scale(Rational(BigInt(1) << (k / 2)), spec.d);
    if (k % 2 == 1) {
      if (spec.d != 2) throw DomainError("odd Haar levels need radicand d = 2");
      scale *= sqrt2;
    }
    ExactScalar term = scale * c;
    if (negative) term = -term;
    total += term;
  }
  return total;
}

OutcomeModel build_haar(const HaarSpec& spec, bool strict) {
  if (spec.coeffs.size() != static_cast<std::size_t>(spec.M + 1))
    throw DomainError("Haar spec needs M+1 coefficient levels");
  for (int k = 0; k <= spec.M; ++k) {
    if (spec.coeffs[static_cast<std::size_t>(k)].size() != (std::size_t{1} << k))
      throw DomainError("Haar level " + std::to_string(k) + " needs 2^k coefficients");
    for (const auto& c : spec.coeffs[static_cast<std::size_t>(k)])
      if (c.radicand() != spec.d) throw DomainError("Haar coefficient radicand mismatch");
  }
  const PatternCode m = PatternCode{1} << (spec.M + 1);
  std::vector<std::pair<PatternCode, ExactScalar>> pairs;
  pairs.reserve(m);
  for (PatternCode p = 0; p < m; ++p) pairs.emplace_back(p, haar_outcome(spec, p));
  OutcomeModel model = build_manual(spec.M, std::move(pairs), strict);
  model.haar_ = spec;
  return model;
}

ExactScalar theta_squared(const HaarSpec& spec) {
  ExactScalar total = ExactScalar::zero(spec.d);
  for (const auto& level : spec.coeffs)
    for (const auto& c : level) total += c * c;
  return total;
}

}  // namespace quantrep
