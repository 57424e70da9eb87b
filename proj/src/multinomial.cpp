#include "quantrep/multinomial.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace quantrep {

BigInt multinomial_coefficient(int n, std::span<const int> k) {
  long sum = 0;
  for (int x : k) {
    if (x < 0) throw DomainError("negative multinomial component");
    sum += x;
  }
  if (sum != n)
    throw DomainError("multinomial components sum to " + std::to_string(sum) + ", expected " +
                      std::to_string(n));
  // n!/(k_1!...k_m!) as a product of binomials C(k_1+...+k_j, k_j).
  BigInt result = 1;
  BigInt step;
  unsigned long running = 0;
  for (int x : k) {
    running += static_cast<unsigned long>(x);
    mpz_bin_uiui(step.get_mpz_t(), running, static_cast<unsigned long>(x));
    result *= step;
  }
  return result;
}

Compositions::Compositions(int n, int m) : n_(n), m_(m) {
  if (n < 0 || m < 1) throw DomainError("K_n needs n >= 0 and m >= 1");
  const int rows = n + m + 1;
  const int cols = m + 1;
  constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
  pascal_.assign(static_cast<std::size_t>(rows * cols), 0);
  for (int a = 0; a < rows; ++a) {
    pascal_[static_cast<std::size_t>(a * cols)] = 1;
    for (int b = 1; b < cols && b <= a; ++b) {
      const auto x = pascal_[static_cast<std::size_t>((a - 1) * cols + b - 1)];
      const auto y = pascal_[static_cast<std::size_t>((a - 1) * cols + b)];
      pascal_[static_cast<std::size_t>(a * cols + b)] = x > cap - y ? cap : x + y;
    }
  }
  const std::uint64_t count = binom(n + m - 1, m - 1);
  if (count > (std::uint64_t{1} << 28)) throw DomainError("K_n too large to materialize");
  size_ = static_cast<std::size_t>(count);
  flat_.reserve(size_ * static_cast<std::size_t>(m));

  std::vector<int> k(static_cast<std::size_t>(m), 0);
  // Depth-first over positions, smallest component first.
  auto fill = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == m - 1) {
      k[static_cast<std::size_t>(pos)] = remaining;
      flat_.insert(flat_.end(), k.begin(), k.end());
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      k[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  fill(fill, 0, n);
}

std::uint64_t Compositions::binom(int a, int b) const {
  if (b < 0 || a < b) return 0;
  return pascal_[static_cast<std::size_t>(a * (m_ + 1) + b)];
}

bool Compositions::contains(std::span<const int> k) const {
  if (static_cast<int>(k.size()) != m_) return false;
  long sum = 0;
  for (int x : k) {
    if (x < 0) return false;
    sum += x;
  }
  return sum == n_;
}

std::size_t Compositions::rank(std::span<const int> k) const {
  // Vectors before k that agree on k_0..k_{j-1} and have a smaller j-th part:
  // sum_{v < k_j} C(rem - v + q - 1, q - 1) = C(rem + q, q) - C(rem - k_j + q, q),
  // q = parts left after position j.
  std::uint64_t r = 0;
  int rem = n_;
  for (int j = 0; j + 1 < m_; ++j) {
    const int q = m_ - j - 1;
    const int kj = k[static_cast<std::size_t>(j)];
    r += binom(rem + q, q) - binom(rem - kj + q, q);
    rem -= kj;
  }
  return static_cast<std::size_t>(r);
}

std::vector<MultinomialVector> enumerate_K(int n, int m) {
  Compositions lattice(n, m);
  std::vector<MultinomialVector> out;
  out.reserve(lattice.size());
  for (std::size_t r = 0; r < lattice.size(); ++r) {
    auto k = lattice[r];
    out.emplace_back(k.begin(), k.end());
  }
  return out;
}

ValueTable ValueTable::build(const OutcomeModel& model, int n) {
  if (n < 1) throw DomainError("value tables need n >= 1");
  ValueTable table;
  table.n_ = n;
  table.M_ = model.M();
  table.cell_count_ = BigInt(1) << static_cast<mp_bitcnt_t>(table.level_bits());
  table.lattice_ = Compositions(n, model.m());
  const auto& lattice = table.lattice_;
  const std::size_t count = lattice.size();
  const int m = model.m();

  std::vector<ExactScalar> dot(count, ExactScalar::zero(model.radicand()));
  for (std::size_t r = 0; r < count; ++r) {
    auto k = lattice[r];
    for (int s = 0; s < m; ++s)
      if (k[static_cast<std::size_t>(s)] != 0)
        dot[r] += model.outcome(s + 1) * Rational(k[static_cast<std::size_t>(s)]);
  }
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return cmp(dot[x], dot[y]) < 0; });

  table.class_of_rank_.assign(count, -1);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t r = order[i];
    if (i == 0 || cmp(dot[order[i - 1]], dot[r]) != 0) {
      table.values_.push_back(dot[r]);
      table.gammas_.emplace_back(0);
    }
    table.class_of_rank_[r] = static_cast<int>(table.values_.size()) - 1;
    table.gammas_.back() += multinomial_coefficient(n, lattice[r]);
  }
  table.smc_.assign(table.gammas_.size() + 1, BigInt(0));
  for (std::size_t t = 0; t < table.gammas_.size(); ++t) table.smc_[t + 1] = table.smc_[t] + table.gammas_[t];

  for (int level = 0; level < n; ++level) {
    table.sub_lattices_.emplace_back(level, m);
    const auto& sub = table.sub_lattices_.back();
    std::vector<BigInt> coeffs;
    coeffs.reserve(sub.size());
    for (std::size_t r = 0; r < sub.size(); ++r) coeffs.push_back(multinomial_coefficient(level, sub[r]));
    table.sub_coeffs_.push_back(std::move(coeffs));
  }
  return table;
}

const ExactScalar& ValueTable::value(int t) const {
  if (t < 0 || t > T()) throw std::out_of_range("class index t=" + std::to_string(t));
  return values_[static_cast<std::size_t>(t)];
}

int ValueTable::class_of(std::span<const int> k) const {
  if (!lattice_.contains(k)) throw DomainError("vector is not in K_n");
  return class_of_rank_[lattice_.rank(k)];
}

const BigInt& ValueTable::gamma(int t) const {
  if (t < 0 || t > T()) throw std::out_of_range("class index t=" + std::to_string(t));
  return gammas_[static_cast<std::size_t>(t)];
}

const BigInt& ValueTable::smc(int t) const {
  if (t < 0 || t > T() + 1) throw std::out_of_range("SMC index t=" + std::to_string(t));
  return smc_[static_cast<std::size_t>(t)];
}

ValueTable ValueTable::with_gamma_override(int t, BigInt gamma) const {
  ValueTable copy = *this;
  copy.gammas_.at(static_cast<std::size_t>(t)) = std::move(gamma);
  return copy;
}

int tau1(const ValueTable& table, std::span<const int> k, int t, OracleStats* stats) {
  if (t < 0 || t > table.T()) throw std::out_of_range("class index t=" + std::to_string(t));
  if (stats) ++stats->tau1_queries;
  return table.class_of(k) == t ? 1 : 0;
}

Rational cdf(const ValueTable& table, int t, CdfMode mode) {
  if (t < 0 || t > table.T()) throw std::out_of_range("class index t=" + std::to_string(t));
  Rational q(mode == CdfMode::lt ? table.smc(t) : table.smc(t + 1), table.cell_count());
  q.canonicalize();
  return q;
}

}  // namespace quantrep
