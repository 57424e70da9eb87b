#include <map>
#include <random>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "quantrep/permutation.hpp"

using namespace quantrep;
using fixtures::q;

namespace {

struct Fixture {
  OutcomeModel a = fixtures::model_a();
  OutcomeModel b = fixtures::model_b();
  ValueTable a1 = ValueTable::build(a, 1);
  ValueTable a2 = ValueTable::build(a, 2);
  ValueTable b2 = ValueTable::build(b, 2);
};

BigInt B(unsigned long x) { return BigInt(x); }

BlockSystem identity_blocks(const ValueTable& table) {
  BlockSystem blocks;
  for (const auto& g : table.gammas()) {
    std::vector<std::uint64_t> block;
    for (std::uint64_t s = 1; s <= g.get_ui(); ++s) block.push_back(s);
    blocks.push_back(block);
  }
  return blocks;
}

}  // namespace

TEST_SUITE("permutation-engine") {
  TEST_CASE_FIXTURE(Fixture, "f_perm examples") {
    CHECK(f_perm_table(a, a2) == std::vector<std::uint64_t>{3, 1, 2, 0});
    CHECK(f_perm(b, b2, B(0)) == 15);
    CHECK(f_perm(b, b2, B(1)) == 11);
    CHECK(f_perm_bruteforce(b, b2, B(1)) == 11);
    CHECK_THROWS_AS(f_perm(b, b2, B(16)), std::out_of_range);
  }

  TEST_CASE_FIXTURE(Fixture, "inv_f examples") {
    CHECK(inv_f(a, a2, B(3)) == 0);
    CHECK(inv_f(b, b2, B(15)) == 0);
    CHECK(inv_f(b, b2, B(11)) == 1);
  }

  TEST_CASE_FIXTURE(Fixture, "gamma_relation examples") {
    CHECK(gamma_relation(a, a2, B(0), B(3)));
    CHECK_FALSE(gamma_relation(a, a2, B(0), B(1)));
    CHECK_FALSE(gamma_relation(b, b2, B(1), B(14)));
    CHECK(gamma_relation(b, b2, B(1), B(11)));
  }

  TEST_CASE_FIXTURE(Fixture, "make_admissible examples") {
    const auto f = f_perm_table(b, b2);
    CHECK(make_admissible(b, b2, identity_blocks(b2)).mapping == f);

    auto swapped = identity_blocks(b2);
    std::swap(swapped[1][0], swapped[1][1]);
    const auto pi = make_admissible(b, b2, swapped);
    CHECK(pi.mapping[1] == 14);
    CHECK(pi.mapping[2] == 11);
    for (std::size_t l = 0; l < 16; ++l)
      if (l != 1 && l != 2) CHECK(pi.mapping[l] == f[l]);

    auto short_block = identity_blocks(b2);
    short_block[3].pop_back();
    CHECK_THROWS_AS(make_admissible(b, b2, short_block), DomainError);
    auto repeated = identity_blocks(b2);
    repeated[3][0] = 2;
    CHECK_THROWS_AS(make_admissible(b, b2, repeated), DomainError);
  }

  TEST_CASE_FIXTURE(Fixture, "verify_admissible examples") {
    CHECK(verify_admissible(a, a2, f_perm_table(a, a2)).ok);
    const std::vector<std::uint64_t> identity{0, 1};
    CHECK_FALSE(verify_admissible(a, a1, identity).ok);

    const auto f = f_perm_table(b, b2);
    for (std::size_t x = 0; x < f.size(); ++x)
      for (std::size_t y = x + 1; y < f.size(); ++y) {
        if (istep(b2, B(x)) == istep(b2, B(y))) continue;
        auto broken = f;
        std::swap(broken[x], broken[y]);
        CHECK_FALSE(verify_admissible(b, b2, broken).ok);
      }
    auto not_bijective = f;
    not_bijective[0] = not_bijective[1];
    const auto verdict = verify_admissible(b, b2, not_bijective);
    CHECK_FALSE(verdict.ok);
    CHECK(verdict.diagnostic.find("bijection") != std::string::npos);
  }

  TEST_CASE_FIXTURE(Fixture, "count_admissible examples") {
    CHECK(count_admissible(a2) == 2);
    CHECK(count_admissible(b2) == 3456);
    CHECK(count_admissible(a1) == 1);
    CHECK(count_admissible(ValueTable::build(b, 1)) == 1);
  }

  TEST_CASE_FIXTURE(Fixture, "random_admissible examples") {
    for (std::uint64_t seed = 0; seed < 20; ++seed)
      CHECK(random_admissible(a, a1, seed).mapping == std::vector<std::uint64_t>{1, 0});

    std::map<std::vector<std::uint64_t>, int> seen;
    const int trials = 10000;
    for (std::uint64_t seed = 0; seed < trials; ++seed) ++seen[random_admissible(a, a2, seed).mapping];
    REQUIRE(seen.size() == 2);
    for (const auto& [mapping, hits] : seen) {
      CHECK(verify_admissible(a, a2, mapping).ok);
      CHECK(std::abs(hits / double(trials) - 0.5) <= 0.05);
    }
    CHECK(random_admissible(b, b2, 42).mapping == random_admissible(b, b2, 42).mapping);
  }

  TEST_CASE("F is admissible and inverted by inv_f on the full range") {
    for (const auto& model : {fixtures::model_a(), fixtures::model_b()}) {
      const int max_n = model.M() == 0 ? 12 : 6;
      for (int n = 1; n <= max_n; ++n) {
        const auto table = ValueTable::build(model, n);
        const auto f = f_perm_table(model, table);
        CHECK(verify_admissible(model, table, f).ok);
        for (std::uint64_t l = 0; l < f.size(); ++l) {
          CHECK(inv_f(model, table, B(f[l])) == l);
          CHECK(f_perm(model, table, inv_f(model, table, B(l))) == l);
          CHECK(is_star(table, B(l)) == is_n(model, table, B(f[l])));
        }
      }
    }
  }

  TEST_CASE("f_perm agrees with its brute-force definition") {
    const auto model = fixtures::model_b();
    const auto table = ValueTable::build(model, 4);
    for (unsigned long l = 0; l < 256; ++l)
      CHECK(f_perm(model, table, B(l)) == f_perm_bruteforce(model, table, B(l)));
  }

  TEST_CASE("block systems round-trip through make_admissible") {
    const auto model = fixtures::model_b();
    const auto table = ValueTable::build(model, 3);
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 30; ++trial) {
      auto blocks = identity_blocks(table);
      for (auto& block : blocks) std::shuffle(block.begin(), block.end(), rng);
      const auto pi = make_admissible(model, table, blocks);
      CHECK(verify_admissible(model, table, pi.mapping).ok);
      CHECK(blocks_of(model, table, pi.mapping) == blocks);
    }
  }

  TEST_CASE("gamma relation singles out F") {
    const auto model = fixtures::model_b();
    const auto table = ValueTable::build(model, 3);
    for (unsigned long l = 0; l < 64; ++l) {
      int solutions = 0;
      for (unsigned long image = 0; image < 64; ++image) {
        if (gamma_relation(model, table, B(l), B(image))) {
          ++solutions;
          CHECK(f_perm(model, table, B(l)) == image);
        }
      }
      CHECK(solutions == 1);
    }
  }

  TEST_CASE("explicit tables refuse oversized levels") {
    const auto model = fixtures::model_b();
    const auto table = ValueTable::build(model, 13);
    CHECK_THROWS_AS(f_perm_table(model, table), DomainError);
    CHECK_THROWS_AS(random_admissible(model, table, 1), DomainError);
    CHECK_FALSE(verify_admissible(model, table, std::vector<std::uint64_t>{}).ok);
  }

}  // TEST_SUITE
