#include "doctest.h"
#include "helpers.hpp"
#include "rsat/bounds.hpp"
#include "rsat/constructions.hpp"
#include "rsat/covering.hpp"

using namespace rsat;

TEST_SUITE("bounds") {
  TEST_CASE("Gaussian binomials") {
    CHECK(gaussian_binomial(5, 0, 3) == 1);
    CHECK(gaussian_binomial(2, 1, 2) == 3);
    CHECK(gaussian_binomial(3, 4, 2) == 0);
    for (unsigned a = 1; a <= 5; ++a)
      for (unsigned b = 0; b <= a; ++b) {
        CAPTURE(a);
        CAPTURE(b);
        CHECK(gaussian_binomial(a, b, 2) == (b == 0 ? 1 : oracle::count_subspaces_f2(a, b)));
        CHECK(gaussian_binomial(a, b, 5) == gaussian_binomial(a, a - b, 5));
      }
    CHECK(gaussian_binomial(4, 2, 2) == 35);
    // Far beyond 64 bits.
    CHECK(gaussian_binomial(40, 20, 7) > BigInt(1) << 300);
  }

  TEST_CASE("lower bounds") {
    CHECK(lower_bound(3, 4, 3, 2).value == 4);
    for (unsigned m = 1; m <= 6; ++m)
      for (unsigned k = 1; k <= 6; ++k) {
        CHECK(lower_bound(2, m, k, 1).value == m * (k - 1) + 1);
        if (k <= m) CHECK(lower_bound(2, m, k, k).value == k);
      }
    CHECK_THROWS_AS(lower_bound(2, 2, 3, 3), std::invalid_argument);
    CHECK_THROWS_AS(lower_bound(2, 2, 3, 0), std::invalid_argument);
    CHECK_FALSE(lower_bound(5, 3, 4, 2).provenance.empty());
  }

  TEST_CASE("upper bounds") {
    for (unsigned m = 1; m <= 5; ++m)
      for (unsigned k = 1; k <= 5; ++k) CHECK(upper_bound(3, m, k, 1).value == m * (k - 1) + 1);
    for (unsigned r = 2; r <= 5; ++r) CHECK(upper_bound(2, 2 * r, 2 * r, 2 * r - 1).value == 2 * r + 1);
    CHECK(upper_bound(2, 4, 4, 3).value == 5);
    // Cutting chain, m = r(k - 1).
    CHECK(closed_form_upper(2, 6, 3, 2).value <= 2 * 3 + 3 - 2);
    for (unsigned k = 1; k <= 4; ++k) CHECK(upper_bound(2, 4, k, k).value == k);
  }

  TEST_CASE("exact values") {
    const auto a = exact_value(3, 10, 3, 2);
    REQUIRE(a);
    CHECK(a->value == 7);
    const auto b = exact_value(2, 10, 3, 2);
    REQUIRE(b);
    CHECK(b->value == 7);
    CHECK(b->rule.find("(b)") != std::string::npos);
    CHECK(exact_value(4, 5, 3, 1)->value == 11);
    CHECK(exact_value(4, 5, 3, 3)->value == 3);
    CHECK(exact_value(2, 6, 6, 5)->value == 7);
    CHECK_FALSE(exact_value(2, 4, 3, 2));
    CHECK(s32_condition(2, 4) == std::optional<std::string>("a"));
    CHECK_FALSE(s32_condition(2, 3));
    CHECK(s32_condition(3, 5));
    CHECK(s32_condition(2, 5) == std::optional<std::string>("b"));
    CHECK(s32_condition(7, 5) == std::optional<std::string>("e"));
    CHECK(exact_rules().size() >= 4);
  }

  TEST_CASE("table sandwich and exact rows") {
    const BoundsTable t(2, 4, 8);
    for (const auto& e : t.entries()) {
      CHECK(e.lower.value <= e.upper.value);
      if (e.exact) {
        CHECK(*e.exact >= e.lower.value);
        CHECK(*e.exact <= e.upper.value);
      }
      CHECK(e.rho <= std::min(e.k, 4u));
    }
    CHECK(t.at(3, 1).exact == std::optional<std::uint64_t>(9));
    CHECK_THROWS(t.at(3, 4));
    const auto audit = audit_table({2, 3}, 6, 6);
    CHECK(audit.ok());
    CHECK(audit.cells > 0);
  }

  TEST_CASE("closure is idempotent and respects lower bounds") {
    for (auto [q, m] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 4}, {3, 6}}) {
      unsigned passes = 0;
      const auto once = close_upper_bounds(q, m, 14, {}, &passes);
      CHECK(passes >= 1);
      unsigned again_passes = 0;
      const auto twice = close_upper_bounds(q, m, 14, once, &again_passes);
      for (const auto& [key, b] : once) {
        CHECK(twice.at(key).value == b.value);
        CHECK(b.value >= lower_bound(q, m, key.first, key.second).value);
      }
    }
  }

  TEST_CASE("repeated sums: s(t k, t rho) <= t s(k, rho)") {
    const BoundsTable table(2, 4, 12);
    for (unsigned k = 1; k <= 6; ++k)
      for (unsigned rho = 1; rho <= std::min(k, 4u); ++rho)
        for (unsigned t = 2; t * k <= 12 && t * rho <= 4; ++t)
          CHECK(table.at(t * k, t * rho).upper.value <= t * table.at(k, rho).upper.value);
  }

  TEST_CASE("brute force agrees with the bounds at tiny parameters") {
    const auto r1 = brute_force_s(2, 2, 2, 1);
    CHECK(r1.n == 3);
    REQUIRE(r1.witness);
    CHECK(saturation_radius(*r1.witness).rho <= 1);
    const auto r2 = brute_force_s(2, 2, 2, 2);
    CHECK(r2.n == 2);
    for (const auto& r : {r1, r2}) {
      const unsigned rho = r.n == 3 ? 1 : 2;
      CHECK(r.n >= lower_bound(2, 2, 2, rho).value);
      CHECK(r.n <= upper_bound(2, 2, 2, rho).value);
    }
    try {
      brute_force_s(2, 3, 3, 1, 1000);
      FAIL("expected a refusal");
    } catch (const BudgetExceeded& e) {
      CHECK(e.completed_level() >= 2);
    }
  }

  TEST_CASE("measured radii respect the lower bound") {
    const auto f = FieldTower::make(2, 2);
    for (std::size_t k = 1; k <= 3; ++k)
      for (std::size_t rho = 1; rho <= std::min<std::size_t>(k, 2); ++rho) {
        const auto sys = construct_identity_block(f, k, rho);
        const auto measured = saturation_radius(sys).rho;
        CHECK(sys.n() >= lower_bound(2, 2, static_cast<unsigned>(k), static_cast<unsigned>(measured)).value);
      }
  }

  TEST_CASE("subspace enumeration counts") {
    std::uint64_t count = 0;
    for_each_subspace(2, 4, 2, [&](const auto&) {
      ++count;
      return true;
    });
    CHECK(count == 35);
    count = 0;
    CHECK_FALSE(for_each_subspace(3, 3, 1, [&](const auto&) { return ++count < 5; }));
    CHECK(count == 5);
  }
}
