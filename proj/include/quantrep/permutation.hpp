#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "quantrep/index_machinery.hpp"

namespace quantrep {

/// Explicit permutation tables are only built up to this many index bits.
inline constexpr int kMaxExplicitBits = 24;

/// Per-class block permutations: blocks[t][s-1] = phi_t(s), a permutation
/// of 1..gamma_t.
using BlockSystem = std::vector<std::vector<std::uint64_t>>;

/// An admissible permutation of the level indices at one n, held as an
/// explicit table together with its block system.
struct AdmissiblePermutation {
  int n = 0;
  std::vector<std::uint64_t> mapping;
  BlockSystem blocks;
};

/// The canonical permutation F_n: the s-th index of step class t goes to
/// the s-th index of weight class t.
LevelIndex f_perm(const OutcomeModel& model, const ValueTable& table, const LevelIndex& l,
                  OracleStats* stats = nullptr);
/// F_n(l) by scanning every weight index for the s-th member of class t.
/// Costs 2^{n(M+1)} decodes; the oracle for f_perm.
LevelIndex f_perm_bruteforce(const OutcomeModel& model, const ValueTable& table, const LevelIndex& l);
LevelIndex inv_f(const OutcomeModel& model, const ValueTable& table, const LevelIndex& image,
                 OracleStats* stats = nullptr);

/// beta(t, l') * [l' in weight class t] == alpha(t, l) with t = istep(l).
/// Holds exactly for l' = f_perm(l).
bool gamma_relation(const OutcomeModel& model, const ValueTable& table, const LevelIndex& l,
                    const LevelIndex& image, OracleStats* stats = nullptr);

/// Sorted members of every weight class, by a single scan of all indices.
std::vector<std::vector<std::uint64_t>> weight_classes(const OutcomeModel& model, const ValueTable& table);

/// The unique admissible permutation whose block system is `blocks`.
/// Throws DomainError on wrong block sizes or non-permutation blocks.
AdmissiblePermutation make_admissible(const OutcomeModel& model, const ValueTable& table, BlockSystem blocks);
/// F_n as an explicit permutation (identity blocks).
AdmissiblePermutation canonical_permutation(const OutcomeModel& model, const ValueTable& table);
/// F_n tabulated by calling f_perm on every index.
std::vector<std::uint64_t> f_perm_table(const OutcomeModel& model, const ValueTable& table,
                                        OracleStats* stats = nullptr);

/// Reads back the block system of an admissible mapping.
BlockSystem blocks_of(const OutcomeModel& model, const ValueTable& table,
                      std::span<const std::uint64_t> mapping);

struct Verdict {
  bool ok = true;
  std::string diagnostic;
  explicit operator bool() const { return ok; }
};

/// Bijective, and iweight(pi(l)) == istep(l) for every l.
Verdict verify_admissible(const OutcomeModel& model, const ValueTable& table,
                          std::span<const std::uint64_t> mapping);

/// prod_t gamma_t!.
BigInt count_admissible(const ValueTable& table);

/// Uniform over admissible permutations: each block shuffled independently
/// by Fisher-Yates over a seeded mt19937_64.
AdmissiblePermutation random_admissible(const OutcomeModel& model, const ValueTable& table,
                                        std::uint64_t seed);

}  // namespace quantrep
