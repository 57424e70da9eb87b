#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "quantrep/exact_scalar.hpp"
#include "quantrep/outcome_model.hpp"

namespace quantrep {

/// Frequencies (k_1, ..., k_m) of the outcomes among n draws.
using MultinomialVector = std::vector<int>;

/// n! / (k_1! ... k_m!). Throws DomainError if the components do not sum to n
/// or any is negative.
BigInt multinomial_coefficient(int n, std::span<const int> k);

/// The lattice K_n of m-part compositions of n, in lexicographically
/// increasing order, with O(m) ranking.
class Compositions {
 public:
  Compositions() = default;
  Compositions(int n, int m);

  int n() const { return n_; }
  int m() const { return m_; }
  std::size_t size() const { return size_; }

  std::span<const int> operator[](std::size_t rank) const {
    return {flat_.data() + rank * static_cast<std::size_t>(m_), static_cast<std::size_t>(m_)};
  }

  /// Lexicographic rank of k. Precondition: k is in K_n.
  std::size_t rank(std::span<const int> k) const;
  bool contains(std::span<const int> k) const;

 private:
  std::uint64_t binom(int a, int b) const;

  int n_ = 0;
  int m_ = 1;
  std::size_t size_ = 0;
  std::vector<int> flat_;
  std::vector<std::uint64_t> pascal_;  // (n+m+1) x (m+1)
};

/// Lexicographically increasing enumeration of K_n; C(n+m-1, m-1) entries.
std::vector<MultinomialVector> enumerate_K(int n, int m);

/// Oracle and arithmetic tallies. Each worker owns one; merge at the end.
struct OracleStats {
  std::uint64_t tau1_queries = 0;
  std::uint64_t tau2_queries = 0;
  std::uint64_t bigint_ops = 0;

  void merge(const OracleStats& other) {
    tau1_queries += other.tau1_queries;
    tau2_queries += other.tau2_queries;
    bigint_ops += other.bigint_ops;
  }
};

/// The distinct values v^0_n < ... < v^{T_n}_n of k.o over K_n, the class
/// of every k, the class masses gamma_{n,t} and the prefix sums SMC(n, t).
///
/// Also caches the multinomial coefficients of every lower level K_j,
/// j < n, which the fast cardinality walk consumes.
class ValueTable {
 public:
  static ValueTable build(const OutcomeModel& model, int n);

  int n() const { return n_; }
  int m() const { return lattice_.m(); }
  int M() const { return M_; }
  /// n(M+1), the bit length of a level index.
  int level_bits() const { return n_ * (M_ + 1); }
  /// 2^{n(M+1)}.
  const BigInt& cell_count() const { return cell_count_; }
  int T() const { return static_cast<int>(values_.size()) - 1; }

  const std::vector<ExactScalar>& values() const { return values_; }
  const ExactScalar& value(int t) const;

  const Compositions& lattice() const { return lattice_; }
  int class_of(std::span<const int> k) const;
  int class_of_rank(std::size_t rank) const { return class_of_rank_[rank]; }

  const BigInt& gamma(int t) const;
  /// 0 <= t <= T+1.
  const BigInt& smc(int t) const;
  const std::vector<BigInt>& gammas() const { return gammas_; }
  const std::vector<BigInt>& smcs() const { return smc_; }

  const Compositions& sublattice(int level) const {
    return sub_lattices_.at(static_cast<std::size_t>(level));
  }
  const BigInt& sublevel_coefficient(int level, std::size_t rank) const {
    return sub_coeffs_[static_cast<std::size_t>(level)][rank];
  }

  /// Copy with gamma replaced but SMC kept, for fault-injection tests of
  /// the self-test report.
  ValueTable with_gamma_override(int t, BigInt gamma) const;

 private:
  int n_ = 0;
  int M_ = 0;
  BigInt cell_count_;
  Compositions lattice_;
  std::vector<ExactScalar> values_;
  std::vector<int> class_of_rank_;
  std::vector<BigInt> gammas_;
  std::vector<BigInt> smc_;
  std::vector<Compositions> sub_lattices_;
  std::vector<std::vector<BigInt>> sub_coeffs_;
};

/// 1 iff k lies in class t. Counts one tau1 query.
int tau1(const ValueTable& table, std::span<const int> k, int t, OracleStats* stats = nullptr);
/// Same query addressed by the lattice rank of k.
inline int tau1_by_rank(const ValueTable& table, std::size_t rank, int t, OracleStats* stats) {
  if (stats) ++stats->tau1_queries;
  return table.class_of_rank(rank) == t ? 1 : 0;
}

enum class CdfMode { lt, leq };

/// P(S_n < v^t_n) or P(S_n <= v^t_n) as an exact rational.
Rational cdf(const ValueTable& table, int t, CdfMode mode);

}  // namespace quantrep
