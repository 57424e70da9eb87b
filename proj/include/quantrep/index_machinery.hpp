#pragma once

#include <span>
#include <vector>

#include "quantrep/multinomial.hpp"
#include "quantrep/outcome_model.hpp"

namespace quantrep {

/// Level indices l in [0, 2^{n(M+1)}) are arbitrary-precision integers.
/// Bit position 1 is the most significant; chunk i (1-based) holds the
/// positions (i-1)(M+1)+1 .. i(M+1) and reads as the pattern of the i-th
/// copy on the weight side.
using LevelIndex = BigInt;

/// Outcome indices s_1..s_n (each in 1..m) of the n copies.
using OutcomeVector = std::vector<int>;

/// Pattern codes of the n chunks of l, chunk 1 first.
std::vector<PatternCode> chunk_patterns(const LevelIndex& l, int n, int width);

OutcomeVector decode_weight_index(const OutcomeModel& model, int n, const LevelIndex& l);
/// Inverse of decode_weight_index.
LevelIndex encode_weight_index(const OutcomeModel& model, std::span<const int> outcomes);
MultinomialVector frequencies(const OutcomeModel& model, std::span<const int> outcomes);

/// Class index of S_n on E_{n,l}.
int iweight(const OutcomeModel& model, const ValueTable& table, const LevelIndex& l);
/// Class index of the quantile S*_n on D_{n,l}.
int istep(const ValueTable& table, const LevelIndex& l);

const ExactScalar& is_star(const ValueTable& table, const LevelIndex& l);
const ExactScalar& is_n(const OutcomeModel& model, const ValueTable& table, const LevelIndex& l);

/// How many of chunks b+1..n of l decode to outcome s.
int tau2(const OutcomeModel& model, int n, int s, const LevelIndex& l, int b, OracleStats* stats = nullptr);

/// |{l' in [0, xi] : istep(l') = t}|, closed form over the step interval.
BigInt alpha(const ValueTable& table, int t, const LevelIndex& xi);

/// |{l' in [0, xi] : iweight(l') = t}| by direct enumeration.
BigInt beta_bruteforce(const OutcomeModel& model, const ValueTable& table, int t, const LevelIndex& xi);

/// One 1-bit of xi visited by the fast walk.
struct WalkStep {
  int zeta = 0;      // MSB-first bit position
  int chunk = 0;     // copy index i
  int position = 0;  // position p inside the chunk
  BigInt contribution;
};

struct BetaTrace {
  bool self_term = false;  // xi itself is in class t
  std::vector<WalkStep> steps;
};

/// Same count as beta_bruteforce, by walking down the 1-bits of xi and
/// counting completions of each fixed prefix with multinomial coefficients.
/// Every class-membership test goes through tau1.
BigInt beta_fast(const OutcomeModel& model, const ValueTable& table, int t, const LevelIndex& xi,
                 OracleStats* stats = nullptr, BetaTrace* trace = nullptr);

/// s-th element (1-based) of the step class t: SMC(n,t) + s - 1.
LevelIndex enum_a(const ValueTable& table, int t, const BigInt& s);
/// s-th element (1-based) of the weight class t, by binary search on beta_fast.
LevelIndex enum_b(const OutcomeModel& model, const ValueTable& table, int t, const BigInt& s,
                  OracleStats* stats = nullptr);

bool ria(const ValueTable& table, int t, const LevelIndex& l);
bool rib(const OutcomeModel& model, const ValueTable& table, int t, const LevelIndex& l);

/// Throws std::out_of_range unless 0 <= l < 2^{n(M+1)}.
void check_level_index(const ValueTable& table, const LevelIndex& l);

}  // namespace quantrep
