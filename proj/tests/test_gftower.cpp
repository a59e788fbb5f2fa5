#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "rsat/gftower.hpp"

using namespace rsat;

TEST_SUITE("gftower") {
  TEST_CASE("default moduli are the lexicographically first irreducibles") {
    CHECK(FieldTower::make(2, 4)->modulus() == std::vector<Elem>{1, 1, 0, 0, 1});
    CHECK(FieldTower::make(2, 2)->modulus() == std::vector<Elem>{1, 1, 1});
    CHECK(FieldTower::make(3, 3)->modulus() == std::vector<Elem>{1, 2, 0, 1});
  }

  TEST_CASE("field axioms against schoolbook arithmetic") {
    for (auto [q, m] : std::vector<std::pair<unsigned, unsigned>>{{2, 4}, {3, 2}, {5, 2}, {2, 6}}) {
      const auto f = FieldTower::make(q, m);
      const auto o = testutil::oracle_field(*f);
      CAPTURE(q);
      CAPTURE(m);
      for (Elem a = 0; a < f->order(); ++a)
        for (Elem b = 0; b < f->order(); ++b) {
          REQUIRE(f->add(a, b) == o.add(a, b));
          REQUIRE(f->mul(a, b) == o.mul(a, b));
        }
      for (Elem a = 1; a < f->order(); ++a) CHECK(f->mul(a, f->inv(a)) == 1);
    }
  }

  TEST_CASE("table and table-free multiplication agree") {
    const auto f = FieldTower::make(3, 4);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 2000; ++i) {
      const Elem a = random_element(*f, rng), b = random_element(*f, rng);
      CHECK(f->mul(a, b) == f->mul_reference(a, b));
    }
  }

  TEST_CASE("F_4 base field: coefficients are F_4 codes") {
    const auto f = FieldTower::make(4, 2);
    CHECK(f->characteristic() == 2);
    CHECK(f->order() == 16);
    for (Elem a = 1; a < 16; ++a) CHECK(f->mul(a, f->inv(a)) == 1);
    for (Elem a = 0; a < 4; ++a) CHECK(f->in_base_field(a));
    // Frobenius x -> x^4 fixes exactly F_4.
    int fixed = 0;
    for (Elem a = 0; a < 16; ++a) fixed += f->frobenius(a) == a;
    CHECK(fixed == 4);
  }

  TEST_CASE("coordinates in the polynomial basis") {
    const auto f = FieldTower::make(2, 4);
    const Elem x = f->basis_element(1);
    CHECK(f->coords(f->pow(x, 4)) == std::vector<Elem>{1, 1, 0, 0});
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
      const Elem a = random_element(*f, rng);
      CHECK(f->from_coords(f->coords(a)) == a);
    }
  }

  TEST_CASE("log and exp are inverse bijections") {
    const auto f = FieldTower::make(5, 2);
    for (Elem a = 1; a < f->order(); ++a) CHECK(f->exp(f->log(a)) == a);
    CHECK(f->pow(f->primitive(), f->order() - 1) == 1);
  }

  TEST_CASE("subfields") {
    const auto f = FieldTower::make(2, 6);
    for (unsigned t : {1u, 2u, 3u, 6u}) {
      const auto elems = f->subfield_elements(t);
      CHECK(elems.size() == (std::size_t{1} << t));
      for (Elem a : elems) CHECK(f->pow(a, std::uint64_t{1} << t) == a);
      CHECK(f->subfield_basis(t).size() == t);
    }
    CHECK_FALSE(f->has_subfield(4));
    const Elem z = f->subfield_generator(3);
    CHECK(f->in_subfield(z, 3));
    CHECK_FALSE(f->in_subfield(z, 1));
  }

  TEST_CASE("complement basis projections reconstruct the element") {
    const auto f = FieldTower::make(3, 4);
    const auto cb = ComplementBasis::greedy(f, 2);
    CHECK(cb.betas().size() == 2);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
      const Elem w = random_element(*f, rng);
      Elem back = cb.project_subfield(w);
      CHECK(f->in_subfield(back, 2));
      for (std::size_t j = 0; j < cb.betas().size(); ++j) {
        const Elem c = cb.project_beta(w, j);
        CHECK(f->in_base_field(c));
        back = f->add(back, f->mul(c, cb.betas()[j]));
      }
      CHECK(back == w);
    }
    CHECK_THROWS_AS(ComplementBasis::from_betas(f, 2, {1, 2}), FieldError);
  }

  TEST_CASE("embedding is a field homomorphism") {
    const auto small = FieldTower::make(2, 4);
    const auto large = FieldTower::make(2, 8);
    const FieldEmbedding emb(small, large);
    for (Elem a = 0; a < 16; ++a)
      for (Elem b = 0; b < 16; ++b) {
        CHECK(emb(small->add(a, b)) == large->add(emb(a), emb(b)));
        CHECK(emb(small->mul(a, b)) == large->mul(emb(a), emb(b)));
      }
    CHECK_THROWS(FieldEmbedding(FieldTower::make(2, 3), large));
  }

  TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(FieldTower::make(6, 2), FieldError);
    CHECK_THROWS_AS(FieldTower::make(2, 4, std::vector<Elem>{1, 0, 1, 0, 1}), FieldError);  // (x^2+x+1)^2
    CHECK_THROWS_AS(FieldTower::make(2, 2, std::vector<Elem>{1, 1}), FieldError);
    CHECK(prime_power(27) == std::optional<std::pair<unsigned, unsigned>>({3, 3}));
    CHECK_FALSE(prime_power(12));
  }
}
