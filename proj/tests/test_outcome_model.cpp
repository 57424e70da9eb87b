#include <random>

#include "doctest.h"
#include "fixtures.hpp"

using namespace quantrep;
using fixtures::q;

namespace {

ExactScalar root2(long num, long den) { return ExactScalar(Rational(0), Rational(num, den), 2); }

HaarSpec model_b_spec() {
  auto spec = HaarSpec::zeros(1);
  spec.coeffs[0][0] = ExactScalar(Rational(2), 2);
  spec.coeffs[1][0] = root2(1, 2);
  spec.coeffs[1][1] = root2(1, 2);
  return spec;
}

}  // namespace

TEST_SUITE("outcome-model") {
  TEST_CASE("build_manual: model A") {
    const auto a = fixtures::model_a();
    CHECK(a.m() == 2);
    CHECK(a.outcome(1) == q(-1));
    CHECK(a.outcome(2) == q(1));
    CHECK(a.mean() == q(0));
    CHECK(a.variance() == q(1));
    CHECK(a.outcome_index(pattern_from_string("1")) == 1);
  }

  TEST_CASE("build_manual: model B") {
    const auto b = fixtures::model_b();
    CHECK(b.m() == 4);
    CHECK(b.variance() == q(5));
    CHECK(b.outcome_index(pattern_from_string("00")) == 4);
    CHECK(b.outcome(4) == q(3));
    CHECK(pattern_to_string(b.pattern_of(1), 2) == "11");
  }

  TEST_CASE("build_manual rejects bad input") {
    CHECK_THROWS_AS(build_manual(0, {{0, q(1)}, {1, q(1)}}, false), DomainError);
    CHECK_THROWS_AS(build_manual(0, {{0, q(1)}, {0, q(-1)}}, false), DomainError);
    CHECK_THROWS_AS(build_manual(0, {{0, q(1)}}, false), DomainError);
    CHECK_THROWS_AS(build_manual(0, {{0, q(2)}, {1, q(-2)}}, true), DomainError);
    CHECK_THROWS_AS(build_manual(0, {{0, q(1)}, {1, q(0)}}, true), DomainError);
    CHECK_THROWS_AS(build_manual(0, {{0, q(1)}, {1, ExactScalar(Rational(0), Rational(1), 2)}}, false),
                    DomainError);
    CHECK_NOTHROW(build_manual(0, {{0, q(2)}, {1, q(-2)}}, false));
  }

  TEST_CASE("build_haar examples") {
    auto one = HaarSpec::zeros(0, 1);
    one.coeffs[0][0] = q(1);
    const auto a = build_haar(one, true);
    CHECK(a.outcome(1) == q(-1));
    CHECK(a.outcome(2) == q(1));
    CHECK(a.outcome_index(pattern_from_string("1")) == 1);

    const auto b = build_haar(model_b_spec(), false);
    const std::vector<std::string> patterns = {"11", "10", "01", "00"};
    for (int s = 1; s <= 4; ++s) {
      CHECK(b.outcome(s) == ExactScalar(Rational(2 * s - 5), 2));
      CHECK(pattern_to_string(b.pattern_of(s), 2) == patterns[static_cast<std::size_t>(s - 1)]);
    }

    CHECK_THROWS_AS(build_haar(HaarSpec::zeros(1), false), DomainError);
  }

  TEST_CASE("theta_squared examples") {
    CHECK(theta_squared(model_b_spec()) == ExactScalar(Rational(5), 2));
    auto one = HaarSpec::zeros(0, 1);
    one.coeffs[0][0] = q(1);
    CHECK(theta_squared(one) == q(1));
    CHECK(theta_squared(HaarSpec::zeros(2)) == ExactScalar::zero(2));
  }

  TEST_CASE("outcome_index and pattern_of are inverse") {
    for (const auto& model : {fixtures::model_a(), fixtures::model_b(), build_haar(model_b_spec(), false)}) {
      for (int s = 1; s <= model.m(); ++s) CHECK(model.outcome_index(model.pattern_of(s)) == s);
      for (PatternCode p = 0; p < static_cast<PatternCode>(model.m()); ++p)
        CHECK(model.pattern_of(model.outcome_index(p)) == p);
      for (int s = 1; s < model.m(); ++s) CHECK(model.outcome(s) < model.outcome(s + 1));
    }
  }

  TEST_CASE("random Haar specs: mean 0 and variance theta^2") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> num(-9, 9), den(1, 6);
    int built = 0;
    for (int trial = 0; trial < 60; ++trial) {
      auto spec = HaarSpec::zeros(static_cast<int>(rng() % 3));
      for (std::size_t k = 0; k < spec.coeffs.size(); ++k)
        for (auto& c : spec.coeffs[k]) {
          const Rational r(num(rng), den(rng));
          c = k % 2 ? ExactScalar(Rational(0), r, 2) : ExactScalar(r, 2);
        }
      try {
        const auto model = build_haar(spec, false);
        CHECK(model.mean() == ExactScalar::zero(2));
        CHECK(model.variance() == theta_squared(spec));
        ++built;
      } catch (const DomainError&) {
        // Coefficient choices that collapse two outcomes are not models.
      }
    }
    CHECK(built > 30);
  }

  TEST_CASE("model files") {
    const auto a = load_model(fixtures::model_path("A.json"));
    CHECK(a.M() == 0);
    CHECK(a.strict());
    CHECK(a.outcome(1) == q(-1));
    const auto b = load_model(fixtures::model_path("B.json"));
    CHECK(b.variance() == q(5));
    const auto h = load_model(fixtures::model_path("B_haar.json"));
    CHECK(h.radicand() == 2);
    CHECK(h.outcome(1) == ExactScalar(Rational(-3), 2));
    REQUIRE(h.haar().has_value());

    for (const auto& model : {a, b, h}) {
      const auto again = parse_model(model_to_json(model));
      CHECK(again.M() == model.M());
      CHECK(again.outcomes() == model.outcomes());
      for (int s = 1; s <= model.m(); ++s) CHECK(again.pattern_of(s) == model.pattern_of(s));
    }
  }

  TEST_CASE("model file diagnostics") {
    auto message = [](const std::string& text) {
      try {
        parse_model(text);
      } catch (const DomainError& e) {
        return std::string(e.what());
      }
      return std::string("no error");
    };
    CHECK(message(R"({"M": 0, "outcomes": [)").find("at byte") != std::string::npos);
    CHECK(message(R"({"M": 0})").find("exactly one") != std::string::npos);
    CHECK(message(R"({"M": 0, "outcomes": [{"pattern": "10", "value": "1"}]})").find("/outcomes/0/pattern") !=
          std::string::npos);
    CHECK(message(R"({"M": 0, "outcomes": [{"pattern": "1", "value": "x"}]})").find("/outcomes/0/value") !=
          std::string::npos);
    CHECK(message(R"({"M": 0, "d": 4, "outcomes": []})").find("/d") != std::string::npos);
    CHECK(message(R"({"M": 1, "d": 2, "haar": {"coeffs": [[2, 0, "1"]]}})").find("/haar/coeffs/0/0") !=
          std::string::npos);
    CHECK_THROWS_AS(load_model("/nonexistent/model.json"), DomainError);
  }

}  // TEST_SUITE
