#include "quantrep/index_machinery.hpp"

#include <algorithm>
#include <stdexcept>

namespace quantrep {

namespace {

void check_compatible(const OutcomeModel& model, const ValueTable& table) {
  if (model.M() != table.M()) throw DomainError("value table was built for a different model");
}

void check_class(const ValueTable& table, int t) {
  if (t < 0 || t > table.T()) throw std::out_of_range("class index t=" + std::to_string(t));
}

void check_bits(int n, int width, const LevelIndex& l) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (sgn(l) < 0 || mpz_sizeinbase(l.get_mpz_t(), 2) > static_cast<std::size_t>(n * width))
    throw std::out_of_range("level index " + l.get_str() + " outside [0, 2^" + std::to_string(n * width) +
                            ")");
}

}  // namespace

void check_level_index(const ValueTable& table, const LevelIndex& l) {
  check_bits(table.n(), table.M() + 1, l);
}

std::vector<PatternCode> chunk_patterns(const LevelIndex& l, int n, int width) {
  std::vector<PatternCode> chunks(static_cast<std::size_t>(n), 0);
  const mpz_srcptr z = l.get_mpz_t();
  const int total = n * width;
  for (int i = 0; i < n; ++i) {
    PatternCode code = 0;
    for (int p = 0; p < width; ++p) {
      const int zeta = i * width + p;  // 0-based MSB-first position
      code =
          (code << 1) | static_cast<PatternCode>(mpz_tstbit(z, static_cast<mp_bitcnt_t>(total - 1 - zeta)));
    }
    chunks[static_cast<std::size_t>(i)] = code;
  }
  return chunks;
}

OutcomeVector decode_weight_index(const OutcomeModel& model, int n, const LevelIndex& l) {
  check_bits(n, model.pattern_width(), l);
  OutcomeVector out;
  out.reserve(static_cast<std::size_t>(n));
  for (PatternCode code : chunk_patterns(l, n, model.pattern_width()))
    out.push_back(model.outcome_index(code));
  return out;
}

LevelIndex encode_weight_index(const OutcomeModel& model, std::span<const int> outcomes) {
  LevelIndex l = 0;
  for (int s : outcomes) {
    l <<= static_cast<mp_bitcnt_t>(model.pattern_width());
    l += model.pattern_of(s);
  }
  return l;
}

MultinomialVector frequencies(const OutcomeModel& model, std::span<const int> outcomes) {
  MultinomialVector k(static_cast<std::size_t>(model.m()), 0);
  for (int s : outcomes) ++k[static_cast<std::size_t>(s - 1)];
  return k;
}

int iweight(const OutcomeModel& model, const ValueTable& table, const LevelIndex& l) {
  check_compatible(model, table);
  const auto outcomes = decode_weight_index(model, table.n(), l);
  return table.class_of(frequencies(model, outcomes));
}

int istep(const ValueTable& table, const LevelIndex& l) {
  check_level_index(table, l);
  const auto& smc = table.smcs();
  const auto it = std::upper_bound(smc.begin(), smc.end(), l);
  return static_cast<int>(it - smc.begin()) - 1;
}

const ExactScalar& is_star(const ValueTable& table, const LevelIndex& l) {
  return table.value(istep(table, l));
}

const ExactScalar& is_n(const OutcomeModel& model, const ValueTable& table, const LevelIndex& l) {
  return table.value(iweight(model, table, l));
}

int tau2(const OutcomeModel& model, int n, int s, const LevelIndex& l, int b, OracleStats* stats) {
  if (s < 1 || s > model.m()) throw std::out_of_range("outcome index s=" + std::to_string(s));
  if (b < 0 || b > n) throw std::out_of_range("suffix start b=" + std::to_string(b));
  check_bits(n, model.pattern_width(), l);
  if (stats) ++stats->tau2_queries;
  const auto chunks = chunk_patterns(l, n, model.pattern_width());
  const PatternCode target = model.pattern_of(s);
  return static_cast<int>(std::count(chunks.begin() + b, chunks.end(), target));
}

BigInt alpha(const ValueTable& table, int t, const LevelIndex& xi) {
  check_class(table, t);
  check_level_index(table, xi);
  BigInt upper = xi + 1;
  if (table.smc(t + 1) < upper) upper = table.smc(t + 1);
  BigInt count = upper - table.smc(t);
  return sgn(count) > 0 ? count : BigInt(0);
}

BigInt beta_bruteforce(const OutcomeModel& model, const ValueTable& table, int t, const LevelIndex& xi) {
  check_compatible(model, table);
  check_class(table, t);
  check_level_index(table, xi);
  BigInt count = 0;
  for (LevelIndex l = 0; l <= xi; ++l)
    if (iweight(model, table, l) == t) ++count;
  return count;
}

BigInt beta_fast(const OutcomeModel& model, const ValueTable& table, int t, const LevelIndex& xi,
                 OracleStats* stats, BetaTrace* trace) {
  check_compatible(model, table);
  check_class(table, t);
  check_level_index(table, xi);
  const int n = table.n();
  const int width = model.pattern_width();
  const int m = model.m();
  const Compositions& lattice = table.lattice();

  BigInt total = 0;
  const bool self = iweight(model, table, xi) == t;
  if (self) total = 1;
  if (trace) *trace = BetaTrace{self, {}};

  const auto chunks = chunk_patterns(xi, n, width);
  std::vector<int> prefix_freq(static_cast<std::size_t>(m), 0);
  std::vector<int> base(static_cast<std::size_t>(m), 0);
  std::vector<int> rest(static_cast<std::size_t>(m), 0);

  for (int i = 1; i <= n; ++i) {
    const PatternCode code = chunks[static_cast<std::size_t>(i - 1)];
    if (code == 0) continue;
    // Frequencies among the determined chunks 1..i-1, read off tau2.
    for (int s = 1; s <= m; ++s)
      prefix_freq[static_cast<std::size_t>(s - 1)] =
          tau2(model, n, s, xi, 0, stats) - tau2(model, n, s, xi, i - 1, stats);

    const int level = n - i;
    const Compositions& sub = table.sublattice(level);
    for (int p = 1; p <= width; ++p) {
      const int free_bits = width - p;
      if (((code >> free_bits) & 1u) == 0) continue;
      // Keep xi's bits 1..p-1 of the chunk, clear bit p, free the rest.
      const PatternCode prefix = code & ~((PatternCode{1} << (free_bits + 1)) - 1);
      BigInt contribution = 0;
      for (PatternCode sigma = 0; sigma < (PatternCode{1} << free_bits); ++sigma) {
        const int s_star = model.outcome_index(prefix | sigma);
        base = prefix_freq;
        ++base[static_cast<std::size_t>(s_star - 1)];
        for (std::size_t r = 0; r < lattice.size(); ++r) {
          if (!tau1_by_rank(table, r, t, stats)) continue;
          const auto k = lattice[r];
          bool good = true;
          for (int s = 0; s < m; ++s) {
            const int x = k[static_cast<std::size_t>(s)] - base[static_cast<std::size_t>(s)];
            if (x < 0) {
              good = false;
              break;
            }
            rest[static_cast<std::size_t>(s)] = x;
          }
          if (!good) continue;
          contribution += table.sublevel_coefficient(level, sub.rank(rest));
          if (stats) ++stats->bigint_ops;
        }
      }
      total += contribution;
      if (trace) trace->steps.push_back({(i - 1) * width + p, i, p, std::move(contribution)});
    }
  }
  return total;
}

LevelIndex enum_a(const ValueTable& table, int t, const BigInt& s) {
  check_class(table, t);
  if (s < 1 || s > table.gamma(t))
    throw std::out_of_range("enumeration position s=" + s.get_str() + " outside 1..gamma");
  return table.smc(t) + s - 1;
}

LevelIndex enum_b(const OutcomeModel& model, const ValueTable& table, int t, const BigInt& s,
                  OracleStats* stats) {
  check_class(table, t);
  if (s < 1 || s > table.gamma(t))
    throw std::out_of_range("enumeration position s=" + s.get_str() + " outside 1..gamma");
  // Least l with beta(t, l) >= s; beta steps by one exactly on class members.
  LevelIndex lo = 0;
  LevelIndex hi = table.cell_count() - 1;
  while (lo < hi) {
    LevelIndex mid = (lo + hi) >> 1;
    if (beta_fast(model, table, t, mid, stats) >= s)
      hi = mid;
    else
      lo = mid + 1;
  }
  if (iweight(model, table, lo) != t) throw std::logic_error("enum_b landed outside class t");
  return lo;
}

bool ria(const ValueTable& table, int t, const LevelIndex& l) {
  check_class(table, t);
  return istep(table, l) == t;
}

bool rib(const OutcomeModel& model, const ValueTable& table, int t, const LevelIndex& l) {
  check_class(table, t);
  return iweight(model, table, l) == t;
}

}  // namespace quantrep
