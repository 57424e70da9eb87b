#include <cmath>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "quantrep/bench.hpp"
#include "quantrep/selftest.hpp"

using namespace quantrep;

TEST_SUITE("cli-bench") {
  TEST_CASE("fit_loglog_slope recovers a power law") {
    std::vector<double> x, y;
    for (double n : {4.0, 8.0, 16.0, 32.0}) {
      x.push_back(n);
      y.push_back(7 * std::pow(n, 2.5));
    }
    CHECK(fit_loglog_slope(x, y) == doctest::Approx(2.5));
  }

  TEST_CASE("bench_scaling: query slopes and brute-force contrast") {
    BenchOptions options;
    options.n_list = {4, 6, 8, 12, 16, 24, 32, 48, 64};
    options.samples_per_n = 2;
    const auto a = bench_scaling(fixtures::model_a(), "A", options);
    CHECK(a.query_slope <= 3.5);

    options.n_list = {4, 6, 8, 10};
    options.jobs = 2;
    const auto b = bench_scaling(fixtures::model_b(), "B", options);
    bool saw_ten = false;
    for (const auto& r : b.records) {
      if (r.n == 10 && r.operation == "f_perm") {
        saw_ten = true;
        CHECK(r.brute_force_cost == "1048576");
        CHECK(r.brute_force_executed);
      }
    }
    CHECK(saw_ten);
  }

  TEST_CASE("bench query counts are reproducible") {
    BenchOptions options;
    options.n_list = {5, 9};
    options.samples_per_n = 3;
    options.seed = 77;
    const auto first = bench_scaling(fixtures::model_b(), "B", options);
    options.jobs = 2;
    const auto second = bench_scaling(fixtures::model_b(), "B", options);
    REQUIRE(first.records.size() == second.records.size());
    for (std::size_t i = 0; i < first.records.size(); ++i) {
      CHECK(first.records[i].tau1_queries == second.records[i].tau1_queries);
      CHECK(first.records[i].tau2_queries == second.records[i].tau2_queries);
    }
    CHECK(first.query_slope == second.query_slope);
  }

  TEST_CASE("brute-force cost is recorded without running it") {
    BenchOptions options;
    options.n_list = {32};
    const auto b = bench_scaling(fixtures::model_b(), "B", options);
    for (const auto& r : b.records) {
      CHECK(r.brute_force_cost == "18446744073709551616");
      CHECK_FALSE(r.brute_force_executed);
    }
  }

  TEST_CASE("selftest passes on both models") {
    const auto a = selftest(fixtures::model_a(), 8);
    CHECK(a.ok());
    for (const auto& c : a.checks)
      if (c.name == "f_perm_admissible") CHECK(c.checked == (1u << c.n));
    CHECK(selftest(fixtures::model_b(), 5).ok());
    CHECK_THROWS_AS(selftest(fixtures::model_b(), 13), DomainError);
  }

  TEST_CASE("a perturbed gamma is caught by the mass identity") {
    const auto model = fixtures::model_b();
    const auto table = ValueTable::build(model, 3);
    const auto bad = table.with_gamma_override(4, table.gamma(4) + 1);
    const auto checks = check_table(model, bad);
    std::vector<std::string> failed;
    for (const auto& c : checks)
      if (!c.ok) failed.push_back(c.name);
    REQUIRE_FALSE(failed.empty());
    CHECK(failed.front() == "sum_gamma_equals_cells");
    for (const auto& c : check_table(model, table)) CHECK(c.ok);
  }

}  // TEST_SUITE
