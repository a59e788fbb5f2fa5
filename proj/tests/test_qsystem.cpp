#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "rsat/constructions.hpp"

using namespace rsat;

TEST_SUITE("qsystem") {
  TEST_CASE("construction checks both independence conditions") {
    const auto f = FieldTower::make(2, 2);
    CHECK_NOTHROW(QSystem(Matrix::identity(f, 2)));
    // Columns 1 and 1 are F_q-dependent.
    CHECK_THROWS_WITH_AS(QSystem(Matrix::from_rows(f, {{1, 1}}, 2)),
                         doctest::Contains("F_q-independent"), SystemError);
    // One row cannot span F^2.
    CHECK_THROWS_WITH_AS(QSystem(Matrix::from_rows(f, {{1, 2}, {0, 0}}, 2)),
                         doctest::Contains("dimension 1 < k = 2"), SystemError);
    const QSystem empty(Matrix(f, 0, 0));
    CHECK(empty.k() == 0);
    CHECK(empty.n() == 0);
  }

  TEST_CASE("membership") {
    const auto f = FieldTower::make(2, 4);
    const auto sys = example_8_4(f);
    // (x, y) = (1, 0) maps to (1, 0, 1, 1).
    CHECK(sys.contains(Vec{1, 0, 1, 1}));
    CHECK_FALSE(sys.contains(Vec{1, 0, 0, 0}));
    std::mt19937_64 rng(1);
    for (int i = 0; i < 50; ++i) {
      Vec lam(sys.n());
      for (auto& x : lam) x = static_cast<Elem>(rng() % 2);
      CHECK(sys.contains(sys.apply(lam)));
    }
  }

  TEST_CASE("linear set against the oracle") {
    std::mt19937_64 rng(3);
    for (auto [q, m, k, n] : std::vector<std::tuple<unsigned, unsigned, std::size_t, std::size_t>>{
             {2, 2, 2, 3}, {2, 3, 2, 4}, {3, 2, 3, 4}, {2, 4, 3, 6}}) {
      const auto f = FieldTower::make(q, m);
      const auto o = testutil::oracle_field(*f);
      const QSystem sys(testutil::random_system_generator(f, k, n, rng));
      const auto ls = linear_set(sys);
      const auto expect = oracle::linear_set(o, testutil::rows_of(sys.generator()), n);
      CHECK(std::set<Vec>(ls.points.begin(), ls.points.end()) == expect);
      // Point weights account for every nonzero vector of U exactly once.
      CHECK(ls.vector_count(q) == sat_pow(q, n) - 1);
      CHECK(std::is_sorted(ls.points.begin(), ls.points.end()));
    }
  }

  TEST_CASE("scattered systems") {
    const auto e = example_cutting_6_3();
    CHECK(is_scattered(e));
    CHECK(linear_set(e).size() == 63);
    const auto f = FieldTower::make(2, 2);
    CHECK(is_scattered(QSystem(Matrix::identity(f, 2))));
    // <1, x> = F_4 inside F_4^1: one point of weight 2.
    const QSystem line(Matrix::from_rows(f, {{1, 2}}, 2));
    CHECK_FALSE(is_scattered(line));
    CHECK(linear_set(line).weights == std::vector<unsigned>{2});
  }

  TEST_CASE("associated code round trip and degeneracy") {
    const auto f = FieldTower::make(2, 3);
    std::mt19937_64 rng(5);
    const QSystem sys(testutil::random_system_generator(f, 2, 4, rng));
    const RankCode c = associated_code(sys);
    CHECK(is_nondegenerate(c));
    CHECK(associated_system(c).generator() == sys.generator());
    const RankCode degenerate(Matrix::from_rows(f, {{1, 1, 0}, {0, 0, 1}}, 3));
    CHECK_FALSE(is_nondegenerate(degenerate));
    CHECK_THROWS_AS(associated_system(degenerate), SystemError);
  }

  TEST_CASE("GL_k action preserves the linear set size") {
    const auto f = FieldTower::make(3, 2);
    std::mt19937_64 rng(7);
    const QSystem sys(testutil::random_system_generator(f, 2, 3, rng));
    Matrix phi;
    do phi = random_matrix(f, 2, 2, rng);
    while (rank(phi) != 2);
    const auto moved = sys.transformed(phi);
    CHECK(linear_set(moved).size() == linear_set(sys).size());
  }

  TEST_CASE("projective Hamming code lists each point once") {
    const auto sys = construct_identity_block(FieldTower::make(2, 2), 3, 2);
    const Matrix h = projective_hamming_code(sys);
    CHECK(h.rows() == 3);
    CHECK(h.cols() == linear_set(sys).size());
  }
}
