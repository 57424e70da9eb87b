#include <random>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"

using namespace quantrep;
using fixtures::q;

namespace {

struct Fixture {
  OutcomeModel a = fixtures::model_a();
  OutcomeModel b = fixtures::model_b();
  ValueTable a1 = ValueTable::build(a, 1);
  ValueTable a2 = ValueTable::build(a, 2);
  ValueTable a3 = ValueTable::build(a, 3);
  ValueTable b2 = ValueTable::build(b, 2);
};

BigInt B(unsigned long x) { return BigInt(x); }

}  // namespace

TEST_SUITE("index-machinery") {
  TEST_CASE_FIXTURE(Fixture, "decode examples") {
    CHECK(decode_weight_index(b, 2, B(0)) == OutcomeVector{4, 4});
    const auto six = decode_weight_index(b, 2, B(6));
    CHECK(b.outcome(six[0]) == q(1));
    CHECK(b.outcome(six[1]) == q(-1));
    CHECK(decode_weight_index(a, 1, B(1)) == OutcomeVector{1});
    CHECK_THROWS_AS(decode_weight_index(b, 2, B(16)), std::out_of_range);
    CHECK_THROWS_AS(decode_weight_index(b, 2, B(-1)), std::out_of_range);
  }

  TEST_CASE_FIXTURE(Fixture, "encode inverts decode") {
    for (unsigned long l = 0; l < 16; ++l) {
      const auto v = decode_weight_index(b, 2, B(l));
      CHECK(encode_weight_index(b, v) == l);
    }
    const auto table = ValueTable::build(b, 5);
    std::mt19937_64 rng(2);
    for (int k = 0; k < 200; ++k) {
      const BigInt l(rng() % 1024);
      CHECK(encode_weight_index(b, decode_weight_index(b, 5, l)) == l);
    }
  }

  TEST_CASE_FIXTURE(Fixture, "iweight examples") {
    CHECK(iweight(b, b2, B(15)) == 0);
    CHECK(iweight(b, b2, B(6)) == 3);
    CHECK(iweight(a, a2, B(1)) == 1);
  }

  TEST_CASE_FIXTURE(Fixture, "istep examples") {
    CHECK(istep(b2, B(0)) == 0);
    CHECK(istep(b2, B(5)) == 2);
    CHECK(istep(a2, B(3)) == 2);
    CHECK_THROWS_AS(istep(b2, B(16)), std::out_of_range);
  }

  TEST_CASE_FIXTURE(Fixture, "is_star and is_n examples") {
    CHECK(is_star(b2, B(5)) == q(-2));
    CHECK(is_n(b, b2, B(15)) == q(-6));
  }

  TEST_CASE_FIXTURE(Fixture, "tau2 examples") {
    CHECK(tau2(b, 2, 4, B(0), 0) == 2);
    CHECK(tau2(b, 2, 4, B(0), 1) == 1);
    CHECK(tau2(b, 2, 1, B(0), 0) == 0);
  }

  TEST_CASE_FIXTURE(Fixture, "alpha examples") {
    CHECK(alpha(a2, 1, B(2)) == 2);
    CHECK(alpha(b2, 0, B(0)) == 1);
    CHECK(alpha(b2, 6, B(14)) == 0);
  }

  TEST_CASE_FIXTURE(Fixture, "beta_bruteforce examples") {
    CHECK(beta_bruteforce(b, b2, 1, B(11)) == 1);
    CHECK(beta_bruteforce(b, b2, 1, B(14)) == 2);
    CHECK(beta_bruteforce(a, a1, 0, B(1)) == 1);
  }

  TEST_CASE_FIXTURE(Fixture, "beta_fast examples") {
    BetaTrace trace;
    CHECK(beta_fast(b, b2, 1, B(11), nullptr, &trace) == 1);
    REQUIRE(trace.steps.size() == 3);
    for (const auto& step : trace.steps) CHECK(step.contribution == 0);
    CHECK(trace.self_term);
    CHECK(beta_fast(b, b2, 3, B(15)) == 4);
    CHECK(beta_fast(a, a3, 1, B(7)) == 3);
    CHECK(beta_fast(b, b2, 0, B(0)) == 0);
    CHECK(beta_fast(b, b2, 0, B(14)) == 0);
    CHECK_THROWS_AS(beta_fast(b, b2, 9, B(5)), std::out_of_range);
  }

  TEST_CASE_FIXTURE(Fixture, "enum_a and enum_b examples") {
    CHECK(enum_a(b2, 1, B(1)) == 1);
    CHECK(enum_a(b2, 3, B(4)) == 9);
    CHECK(enum_a(a2, 0, B(1)) == 0);
    CHECK(enum_a(b2, 0, B(1)) == 0);
    CHECK(enum_b(b, b2, 1, B(1)) == 11);
    CHECK(enum_b(b, b2, 1, B(2)) == 14);
    CHECK(enum_b(a, a1, 0, B(1)) == 1);
    CHECK_THROWS_AS(enum_b(b, b2, 1, B(3)), std::out_of_range);
    CHECK_THROWS_AS(enum_a(b2, 1, B(0)), std::out_of_range);
  }

  TEST_CASE_FIXTURE(Fixture, "ria and rib examples") {
    CHECK(ria(b2, 1, B(2)));
    CHECK(rib(b, b2, 1, B(14)));
    CHECK_FALSE(rib(b, b2, 0, B(0)));
  }

  TEST_CASE("beta_fast equals brute force exhaustively on small levels") {
    for (const auto& model : {fixtures::model_a(), fixtures::model_b()}) {
      const int max_n = model.M() == 0 ? 10 : 5;
      for (int n = 1; n <= max_n; ++n) {
        const auto table = ValueTable::build(model, n);
        const unsigned long cells = table.cell_count().get_ui();
        std::vector<int> weight(cells);
        for (unsigned long l = 0; l < cells; ++l) weight[l] = iweight(model, table, B(l));
        for (int t = 0; t <= table.T(); ++t) {
          unsigned long running = 0;
          BigInt previous = 0;
          for (unsigned long xi = 0; xi < cells; ++xi) {
            running += weight[xi] == t;
            const BigInt fast = beta_fast(model, table, t, B(xi));
            CHECK(fast == running);
            CHECK(fast >= previous);
            previous = fast;
          }
          CHECK(beta_bruteforce(model, table, t, B(cells - 1)) == table.gamma(t));
          CHECK(alpha(table, t, B(cells - 1)) == table.gamma(t));
          for (BigInt s = 1; s <= table.gamma(t); ++s) {
            CHECK(beta_fast(model, table, t, enum_b(model, table, t, s)) == s);
            CHECK(istep(table, enum_a(table, t, s)) == t);
          }
          CHECK(istep(table, table.smc(t)) == t);
          if (table.smc(t) > 0) CHECK(istep(table, table.smc(t) - 1) < t);
        }
        for (unsigned long xi = 0; xi < cells; ++xi) {
          BigInt sa = 0, sb = 0;
          for (int t = 0; t <= table.T(); ++t) {
            sa += alpha(table, t, B(xi));
            sb += beta_fast(model, table, t, B(xi));
          }
          CHECK(sa == xi + 1);
          CHECK(sb == xi + 1);
        }
      }
    }
  }

  TEST_CASE("walk mass: completions over all classes fill the subtree") {
    const auto model = fixtures::model_b();
    const auto table = ValueTable::build(model, 6);
    const int bits = table.level_bits();
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
      const BigInt xi(rng() % table.cell_count().get_ui());
      std::vector<BigInt> per_zeta(static_cast<std::size_t>(bits + 1), 0);
      std::vector<bool> visited(static_cast<std::size_t>(bits + 1), false);
      for (int t = 0; t <= table.T(); ++t) {
        BetaTrace trace;
        beta_fast(model, table, t, xi, nullptr, &trace);
        for (const auto& step : trace.steps) {
          per_zeta[static_cast<std::size_t>(step.zeta)] += step.contribution;
          visited[static_cast<std::size_t>(step.zeta)] = true;
        }
      }
      for (int zeta = 1; zeta <= bits; ++zeta) {
        if (!visited[static_cast<std::size_t>(zeta)]) continue;
        BigInt expected;
        mpz_ui_pow_ui(expected.get_mpz_t(), 2, static_cast<unsigned long>(bits - zeta));
        CHECK(per_zeta[static_cast<std::size_t>(zeta)] == expected);
      }
    }
  }

  TEST_CASE("oracle counting is deterministic") {
    const auto model = fixtures::model_b();
    const auto table = ValueTable::build(model, 12);
    OracleStats first, second;
    beta_fast(model, table, 17, BigInt(123456), &first);
    beta_fast(model, table, 17, BigInt(123456), &second);
    CHECK(first.tau1_queries > 0);
    CHECK(first.tau1_queries == second.tau1_queries);
    CHECK(first.tau2_queries == second.tau2_queries);
  }

}  // TEST_SUITE
