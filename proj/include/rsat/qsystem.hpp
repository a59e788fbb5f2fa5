#pragma once

// q-systems U <= F_{q^m}^k, their linear sets, and associated codes.

#include <cstdint>
#include <map>
#include <vector>

#include "rsat/linalg.hpp"

namespace rsat {

class SystemError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An n-dimensional F_q-subspace U of F_{q^m}^k spanning F_{q^m}^k, given by a
/// k x n generator whose columns are an F_q-basis of U. The empty system
/// (k = n = 0) is allowed as a neutral summand.
class QSystem {
 public:
  explicit QSystem(Matrix generator);

  std::size_t k() const { return generator_.rows(); }
  std::size_t n() const { return generator_.cols(); }
  const Matrix& generator() const { return generator_; }
  const FieldTower& field() const { return generator_.field(); }
  const TowerPtr& field_ptr() const { return generator_.field_ptr(); }

  /// G_U * lambda for lambda over F_{q^m}.
  Vec apply(std::span<const Elem> lambda) const { return mat_vec(generator_, lambda); }
  /// phi(U) for phi in GL_k(q^m).
  QSystem transformed(const Matrix& phi) const { return QSystem(phi * generator_); }
  /// u in U, decided by solving over F_q against the expanded generator.
  bool contains(std::span<const Elem> u) const;

 private:
  Matrix generator_;
};

/// Scales v so its first nonzero coordinate is 1. Zero stays zero.
Vec canonical_point(std::span<const Elem> v, const FieldTower& f);

/// Number of points of PG(k-1, Q).
std::uint64_t projective_point_count(std::uint64_t Q, std::size_t k);

struct LinearSet {
  /// Canonical representatives in lexicographic order.
  std::vector<Vec> points;
  /// wt_U(P), aligned with points.
  std::vector<unsigned> weights;

  std::size_t size() const { return points.size(); }
  /// Sum of (q^wt - 1) over the points.
  std::uint64_t vector_count(std::uint64_t q) const;
};

/// Enumerates the nonzero vectors of U and groups them by projective point.
LinearSet linear_set(const QSystem& sys, std::uint64_t budget = kDefaultBudget);

bool is_scattered(const LinearSet& ls);
/// A system of dimension n is scattered iff |L_U| = (q^n - 1)/(q - 1).
bool is_scattered(const QSystem& sys, std::uint64_t budget = kDefaultBudget);

/// F_q-rank of the columns of the generator equals the length.
bool is_nondegenerate(const RankCode& code);
std::size_t column_fq_rank(const Matrix& g);

QSystem associated_system(const RankCode& code);
RankCode associated_code(const QSystem& sys);

/// k x |L_U| generator with one canonical column per point of L_U, in point
/// order.
Matrix projective_hamming_code(const QSystem& sys, std::uint64_t budget = kDefaultBudget);

}  // namespace rsat
