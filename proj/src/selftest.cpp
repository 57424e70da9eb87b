#include "quantrep/selftest.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "quantrep/bench.hpp"
#include "quantrep/layout.hpp"
#include "quantrep/permutation.hpp"
#include "quantrep/representation.hpp"

namespace quantrep {

namespace {

constexpr int kExhaustiveBits = 16;

CheckResult make(std::string name, int n) {
  CheckResult r;
  r.name = std::move(name);
  r.n = n;
  return r;
}

void fail(CheckResult& r, const std::string& detail) {
  if (r.ok) r.detail = detail;
  r.ok = false;
}

}  // namespace

bool SelfTestReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok; });
}

std::string SelfTestReport::to_text() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.ok ? "PASS " : "FAIL ") << c.name << " n=" << c.n << " checked=" << c.checked;
    if (!c.ok) out << " : " << c.detail;
    out << '\n';
  }
  out << (ok() ? "all checks passed" : "FAILURES present") << '\n';
  return out.str();
}

std::vector<CheckResult> check_table(const OutcomeModel& model, const ValueTable& table) {
  const int n = table.n();
  std::vector<CheckResult> out;

  auto sum_gamma = make("sum_gamma_equals_cells", n);
  BigInt total = 0;
  for (const auto& g : table.gammas()) total += g;
  sum_gamma.checked = table.gammas().size();
  if (total != table.cell_count())
    fail(sum_gamma, "sum gamma = " + total.get_str() + ", expected " + table.cell_count().get_str());
  out.push_back(sum_gamma);

  auto smc = make("smc_prefix_sums", n);
  smc.checked = table.smcs().size();
  if (table.smc(0) != 0) fail(smc, "SMC(n,0) != 0");
  if (table.smc(table.T() + 1) != table.cell_count()) fail(smc, "SMC(n,T+1) != 2^{n(M+1)}");
  for (int t = 0; t <= table.T(); ++t) {
    if (table.smc(t + 1) <= table.smc(t)) fail(smc, "SMC not strictly increasing at t=" + std::to_string(t));
    if (table.smc(t + 1) - table.smc(t) != table.gamma(t))
      fail(smc, "gamma(" + std::to_string(t) + ") != SMC(t+1) - SMC(t)");
  }
  out.push_back(smc);

  auto order = make("values_strictly_increasing", n);
  order.checked = table.values().size();
  for (int t = 1; t <= table.T(); ++t)
    if (cmp(table.value(t - 1), table.value(t)) >= 0) fail(order, "at t=" + std::to_string(t));
  out.push_back(order);

  auto mass = make("multinomial_sum_equals_m_pow_n", n);
  const auto& lattice = table.lattice();
  BigInt coeff_total = 0;
  for (std::size_t r = 0; r < lattice.size(); ++r) coeff_total += multinomial_coefficient(n, lattice[r]);
  mass.checked = lattice.size();
  BigInt expected;
  mpz_ui_pow_ui(expected.get_mpz_t(), static_cast<unsigned long>(model.m()), static_cast<unsigned long>(n));
  if (coeff_total != expected) fail(mass, "sum = " + coeff_total.get_str());
  out.push_back(mass);

  auto unique = make("tau1_unique_class", n);
  for (std::size_t r = 0; r < lattice.size(); ++r) {
    int hits = 0;
    for (int t = 0; t <= table.T(); ++t) hits += tau1(table, lattice[r], t);
    ++unique.checked;
    if (hits != 1)
      fail(unique, "vector of rank " + std::to_string(r) + " in " + std::to_string(hits) + " classes");
  }
  out.push_back(unique);
  return out;
}

SelfTestReport selftest(const OutcomeModel& model, int n_max, std::uint64_t seed) {
  if (n_max < 1 || n_max * model.pattern_width() > kMaxExplicitBits)
    throw DomainError("selftest needs 1 <= n_max and n_max(M+1) <= " + std::to_string(kMaxExplicitBits));
  SelfTestReport report;
  std::mt19937_64 rng(seed);

  auto layout_check = make("layout_jbar", 0);
  const Layout layout(model.M());
  for (long i = 1; i <= 50; ++i) {
    const auto set = layout.jbar_set(i);
    for (std::size_t r = 0; r < set.size(); ++r) {
      const auto c = layout.locate(set[r]);
      ++layout_check.checked;
      if (c.block != i || c.column != i || c.row != static_cast<long>(r) + 1)
        fail(layout_check, "jbar(" + std::to_string(i) + ") not the last column of block i");
    }
    if (i > 1 && layout.jbar_set(i - 1).back() >= set.front()) fail(layout_check, "blocks overlap");
  }
  report.checks.push_back(layout_check);

  for (int n = 1; n <= n_max; ++n) {
    const ValueTable table = ValueTable::build(model, n);
    for (auto& c : check_table(model, table)) report.checks.push_back(std::move(c));
    const std::uint64_t cells = table.cell_count().get_ui();
    const int T = table.T();

    // Weight classes by direct decoding; prefix counts are the brute-force beta.
    std::vector<int> weight(cells);
    for (std::uint64_t l = 0; l < cells; ++l) weight[l] = iweight(model, table, BigInt(l));

    auto quantile = make("quantile_is_sorted_weights", n);
    {
      std::vector<BigInt> counts(static_cast<std::size_t>(T + 1), BigInt(0));
      for (int w : weight) ++counts[static_cast<std::size_t>(w)];
      for (int t = 0; t <= T; ++t)
        if (counts[static_cast<std::size_t>(t)] != table.gamma(t))
          fail(quantile, "class size mismatch at t=" + std::to_string(t));
      for (std::uint64_t l = 0; l < cells; ++l) {
        ++quantile.checked;
        if (l > 0 && istep(table, BigInt(l)) < istep(table, BigInt(l - 1))) fail(quantile, "IStep decreases");
      }
      for (int t = 0; t <= T; ++t) {
        const BigInt& first = table.smc(t);
        if (istep(table, first) != t || (first > 0 && istep(table, first - 1) == t))
          fail(quantile, "SMC(n,t) is not the least index of step class " + std::to_string(t));
      }
    }
    report.checks.push_back(quantile);

    auto beta_check = make(table.level_bits() <= kExhaustiveBits ? "beta_fast_equals_bruteforce"
                                                                 : "beta_fast_equals_bruteforce_sampled",
                           n);
    auto full_range = make("alpha_gamma_beta_full_range", n);
    auto partition = make("alpha_partition_identity", n);
    const BigInt last = table.cell_count() - 1;
    for (int t = 0; t <= T; ++t) {
      ++full_range.checked;
      if (alpha(table, t, last) != table.gamma(t) || beta_fast(model, table, t, last) != table.gamma(t))
        fail(full_range, "t=" + std::to_string(t));
      std::uint64_t running = 0;
      if (table.level_bits() <= kExhaustiveBits) {
        for (std::uint64_t xi = 0; xi < cells; ++xi) {
          if (weight[xi] == t) ++running;
          ++beta_check.checked;
          if (beta_fast(model, table, t, BigInt(xi)) != running)
            fail(beta_check, "t=" + std::to_string(t) + " xi=" + std::to_string(xi));
        }
      } else {
        std::vector<std::uint64_t> prefix(cells + 1, 0);
        for (std::uint64_t l = 0; l < cells; ++l) prefix[l + 1] = prefix[l] + (weight[l] == t);
        for (int k = 0; k < 32; ++k) {
          const std::uint64_t xi = rng() % cells;
          ++beta_check.checked;
          if (beta_fast(model, table, t, BigInt(xi)) != prefix[xi + 1])
            fail(beta_check, "t=" + std::to_string(t) + " xi=" + std::to_string(xi));
        }
      }
    }
    for (int k = 0; k < 64; ++k) {
      const std::uint64_t xi = rng() % cells;
      BigInt sum = 0;
      for (int t = 0; t <= T; ++t) sum += alpha(table, t, BigInt(xi));
      ++partition.checked;
      if (sum != xi + 1) fail(partition, "xi=" + std::to_string(xi));
    }
    report.checks.push_back(beta_check);
    report.checks.push_back(full_range);
    report.checks.push_back(partition);

    auto admissible = make("f_perm_admissible", n);
    auto inverse = make("inv_f_roundtrip", n);
    const auto canonical = canonical_permutation(model, table);
    std::vector<std::uint64_t> f_table;
    if (table.level_bits() <= kExhaustiveBits) {
      f_table = f_perm_table(model, table);
      if (f_table != canonical.mapping) fail(admissible, "f_perm disagrees with identity-block construction");
    } else {
      f_table = canonical.mapping;
      for (int k = 0; k < 32; ++k) {
        const std::uint64_t l = rng() % cells;
        if (f_perm(model, table, BigInt(l)) != f_table[l])
          fail(admissible, "f_perm disagrees at l=" + std::to_string(l));
      }
    }
    admissible.checked = cells;
    if (auto v = verify_admissible(model, table, f_table); !v) fail(admissible, v.diagnostic);
    report.checks.push_back(admissible);
    for (std::uint64_t l = 0; l < cells; l += (table.level_bits() <= kExhaustiveBits ? 1 : cells / 64 + 1)) {
      ++inverse.checked;
      if (inv_f(model, table, BigInt(f_table[l])) != l) fail(inverse, "l=" + std::to_string(l));
    }
    report.checks.push_back(inverse);

    auto relation = make("gamma_relation_unique_solution", n);
    for (int k = 0; k < 16; ++k) {
      const std::uint64_t l = rng() % cells;
      int solutions = 0;
      std::uint64_t found = 0;
      for (std::uint64_t image = 0; image < cells; ++image)
        if (gamma_relation(model, table, BigInt(l), BigInt(image))) {
          ++solutions;
          found = image;
        }
      ++relation.checked;
      if (solutions != 1 || found != f_table[l]) fail(relation, "l=" + std::to_string(l));
    }
    report.checks.push_back(relation);

    auto repr = make("representation_of_F", n);
    {
      const auto rep = representation_from_perm(model, table, canonical);
      repr.checked = cells;
      if (auto v = check_representation(model, table, rep); !v) fail(repr, v.diagnostic);
      if (perm_from_representation(model, table, rep).mapping != canonical.mapping)
        fail(repr, "perm -> representation -> perm is not the identity");
    }
    report.checks.push_back(repr);

    auto walk = make("walk_mass_identity", n);
    for (int k = 0; k < 32; ++k) {
      const BigInt xi = random_level_index(rng, table.level_bits());
      std::vector<BigInt> per_zeta(static_cast<std::size_t>(table.level_bits() + 1), BigInt(0));
      std::vector<bool> visited(per_zeta.size(), false);
      for (int t = 0; t <= T; ++t) {
        BetaTrace trace;
        beta_fast(model, table, t, xi, nullptr, &trace);
        for (const auto& step : trace.steps) {
          per_zeta[static_cast<std::size_t>(step.zeta)] += step.contribution;
          visited[static_cast<std::size_t>(step.zeta)] = true;
        }
      }
      for (int zeta = 1; zeta <= table.level_bits(); ++zeta) {
        if (!visited[static_cast<std::size_t>(zeta)]) continue;
        ++walk.checked;
        if (per_zeta[static_cast<std::size_t>(zeta)] !=
            BigInt(1) << static_cast<mp_bitcnt_t>(table.level_bits() - zeta))
          fail(walk, "xi=" + xi.get_str() + " zeta=" + std::to_string(zeta));
      }
    }
    report.checks.push_back(walk);
  }
  return report;
}

}  // namespace quantrep
