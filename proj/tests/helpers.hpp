#pragma once

#include <random>

#include "oracle.hpp"
#include "rsat/linalg.hpp"

namespace testutil {

inline oracle::Field oracle_field(const rsat::FieldTower& f) {
  return oracle::Field(static_cast<std::uint32_t>(f.q()), f.modulus());
}

inline std::vector<oracle::V> rows_of(const rsat::Matrix& g) {
  std::vector<oracle::V> rows;
  for (std::size_t i = 0; i < g.rows(); ++i) rows.emplace_back(g.row(i).begin(), g.row(i).end());
  return rows;
}

/// Random k x n generator whose columns are F_q-independent and whose rows
/// have full F_{q^m}-rank.
template <class Rng>
rsat::Matrix random_system_generator(const rsat::TowerPtr& f, std::size_t k, std::size_t n, Rng& rng) {
  for (;;) {
    rsat::Matrix g = rsat::random_matrix(f, k, n, rng);
    if (rsat::rank(rsat::expand_columns(g)) == n && rsat::rank(g) == k) return g;
  }
}

}  // namespace testutil
