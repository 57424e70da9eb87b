#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "quantrep/index_machinery.hpp"
#include "quantrep/outcome_model.hpp"

namespace quantrep {

/// The triangular array of positive integers whose columns pick the bits
/// of each copy. Rows partition Z+ into consecutive runs; block b holds
/// M+1 rows of length b, so row r of block b is
///   (C(b,2)(M+1) + (r-1)b, C(b,2)(M+1) + rb].
/// Copy i reads the last column of block i, i.e. jbar(i, r) = (M+1)C(i,2) + ri.
class Layout {
 public:
  struct Coordinate {
    long block = 0;
    long row = 0;     // 1..M+1 within the block
    long column = 0;  // 1..block
  };

  explicit Layout(int M);

  int M() const { return M_; }

  /// Length of the rho-th row overall (1-based).
  long row_length(long rho) const;
  /// Block, row and column of a positive integer entry.
  Coordinate locate(long eta) const;
  /// Entry in row r, column i of block b.
  long entry(long block, long row, long column) const;

  long jbar(long i, long r) const { return entry(i, r, i); }
  /// The M+1 coordinates copy i depends on, increasing.
  std::vector<long> jbar_set(long i) const;
  /// Union of jbar_set(1..n), increasing. Its maximum is (M+1)n(n+1)/2.
  std::vector<long> jbar_union(long n) const;

 private:
  long block_start(long b) const { return b * (b - 1) / 2 * (M_ + 1); }

  int M_;
};

/// A finite prefix eps_1..eps_depth of a binary expansion.
class BitString {
 public:
  explicit BitString(std::size_t depth) : bits_(depth, 0) {}
  /// "0110..." read as eps_1 eps_2 ...
  static BitString from_string(std::string_view text);

  std::size_t depth() const { return bits_.size(); }
  int bit(long k) const;
  void set(long k, int value);

 private:
  std::vector<std::uint8_t> bits_;
};

/// Weight-side index: x's bits at the sorted coordinates of jbar_union(n),
/// first coordinate most significant.
LevelIndex weight_index_of_bits(const Layout& layout, const BitString& x, int n);

/// S_n(x) = sum_i O(P_i(x)), reading copy i's pattern off jbar_set(i).
ExactScalar eval_S_n(const OutcomeModel& model, const Layout& layout, const BitString& x, int n);

}  // namespace quantrep
