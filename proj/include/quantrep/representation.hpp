#pragma once

#include <cstdint>
#include <vector>

#include "quantrep/permutation.hpp"

namespace quantrep {

/// Row n of a strong trim triangular array, tabulated on the level
/// indices: outcome(i, l) is the outcome index of R*_{n,i} on D_{n,l}.
class Representation {
 public:
  /// rows[l] = (s_1, ..., s_n). Requires n(M+1) <= kMaxExplicitBits.
  static Representation from_rows(int n, int m, const std::vector<OutcomeVector>& rows);

  int n() const { return n_; }
  int m() const { return m_; }
  std::size_t cells() const { return packed_.size(); }

  int outcome(int i, std::uint64_t l) const;
  OutcomeVector row(std::uint64_t l) const;

 private:
  friend Representation representation_from_perm(const OutcomeModel&, const ValueTable&,
                                                 const AdmissiblePermutation&);
  int n_ = 0;
  int m_ = 0;
  // Base-m digits (s_i - 1), copy 1 most significant.
  std::vector<std::uint32_t> packed_;
};

/// R*_{n,i} on D_{n,l} is R_i on E_{n,pi(l)}. Throws if pi is inadmissible.
Representation representation_from_perm(const OutcomeModel& model, const ValueTable& table,
                                        const AdmissiblePermutation& pi);

/// pi(l) is the weight index whose decoded outcome vector is row l.
/// Throws DomainError when two rows coincide or the result is inadmissible.
AdmissiblePermutation perm_from_representation(const OutcomeModel& model, const ValueTable& table,
                                               const Representation& rep);

/// Row sums equal IS*_n, uniform marginals, and rows cover every outcome
/// vector exactly once.
Verdict check_representation(const OutcomeModel& model, const ValueTable& table, const Representation& rep);

/// Row l of the representation built from F_n, without tabulating anything.
OutcomeVector canonical_row(const OutcomeModel& model, const ValueTable& table, const LevelIndex& l,
                            OracleStats* stats = nullptr);

}  // namespace quantrep
