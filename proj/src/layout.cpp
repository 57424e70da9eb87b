#include "quantrep/layout.hpp"

#include <stdexcept>

namespace quantrep {

Layout::Layout(int M) : M_(M) {
  if (M < 0) throw DomainError("layout needs M >= 0");
}

long Layout::row_length(long rho) const {
  if (rho < 1) throw std::out_of_range("row index must be positive");
  return (rho + M_) / (M_ + 1);
}

Layout::Coordinate Layout::locate(long eta) const {
  if (eta < 1) throw std::out_of_range("array entries are positive");
  // Smallest b with block_start(b + 1) >= eta.
  long lo = 1;
  long hi = 2;
  while (block_start(hi + 1) < eta) hi *= 2;
  while (lo < hi) {
    const long mid = (lo + hi) / 2;
    if (block_start(mid + 1) >= eta)
      hi = mid;
    else
      lo = mid + 1;
  }
  const long b = lo;
  const long offset = eta - block_start(b) - 1;  // 0-based within the block
  return {b, offset / b + 1, offset % b + 1};
}

long Layout::entry(long block, long row, long column) const {
  if (block < 1 || row < 1 || row > M_ + 1 || column < 1 || column > block)
    throw std::out_of_range("no entry at (block, row, column)");
  return block_start(block) + (row - 1) * block + column;
}

std::vector<long> Layout::jbar_set(long i) const {
  std::vector<long> out;
  for (long r = 1; r <= M_ + 1; ++r) out.push_back(jbar(i, r));
  return out;
}

std::vector<long> Layout::jbar_union(long n) const {
  // Blocks are consecutive, so concatenating the sets keeps them sorted.
  std::vector<long> out;
  for (long i = 1; i <= n; ++i)
    for (long j : jbar_set(i)) out.push_back(j);
  return out;
}

BitString BitString::from_string(std::string_view text) {
  BitString x(text.size());
  for (std::size_t k = 0; k < text.size(); ++k) {
    if (text[k] != '0' && text[k] != '1') throw DomainError("bit string must be binary");
    x.bits_[k] = static_cast<std::uint8_t>(text[k] - '0');
  }
  return x;
}

int BitString::bit(long k) const {
  if (k < 1 || static_cast<std::size_t>(k) > bits_.size())
    throw DomainError("bit " + std::to_string(k) + " beyond depth " + std::to_string(bits_.size()));
  return bits_[static_cast<std::size_t>(k - 1)];
}

void BitString::set(long k, int value) {
  if (k < 1 || static_cast<std::size_t>(k) > bits_.size())
    throw std::out_of_range("bit position outside depth");
  bits_[static_cast<std::size_t>(k - 1)] = value ? 1 : 0;
}

LevelIndex weight_index_of_bits(const Layout& layout, const BitString& x, int n) {
  if (n < 1) throw DomainError("n must be >= 1");
  const auto coords = layout.jbar_union(n);
  if (x.depth() < static_cast<std::size_t>(coords.back()))
    throw DomainError("bit string depth " + std::to_string(x.depth()) + " < " +
                      std::to_string(coords.back()));
  LevelIndex l = 0;
  for (long j : coords) {
    l <<= 1;
    l += x.bit(j);
  }
  return l;
}

ExactScalar eval_S_n(const OutcomeModel& model, const Layout& layout, const BitString& x, int n) {
  if (layout.M() != model.M()) throw DomainError("layout and model disagree on M");
  if (n < 1) throw DomainError("n must be >= 1");
  ExactScalar sum = ExactScalar::zero(model.radicand());
  for (long i = 1; i <= n; ++i) {
    PatternCode code = 0;
    for (long j : layout.jbar_set(i)) code = (code << 1) | static_cast<PatternCode>(x.bit(j));
    sum += model.outcome(model.outcome_index(code));
  }
  return sum;
}

}  // namespace quantrep
