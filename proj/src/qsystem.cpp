#include "rsat/qsystem.hpp"

#include <omp.h>

namespace rsat {

std::size_t column_fq_rank(const Matrix& g) { return rank(expand_columns(g)); }

QSystem::QSystem(Matrix generator) : generator_(std::move(generator)) {
  if (!generator_.field_ptr()) throw SystemError("system generator has no field");
  const std::size_t k = generator_.rows();
  const std::size_t n = generator_.cols();
  if (k == 0) {
    if (n != 0) throw SystemError("a system in F^0 must be empty");
    return;
  }
  const std::size_t fq_rank = column_fq_rank(generator_);
  if (fq_rank != n)
    throw SystemError("columns are not F_q-independent: they span an F_q-space of dimension " +
                      std::to_string(fq_rank) + " < n = " + std::to_string(n));
  const std::size_t ext_rank = rank(generator_);
  if (ext_rank != k)
    throw SystemError("U does not span F_{q^m}^k: its F_{q^m}-span has dimension " +
                      std::to_string(ext_rank) + " < k = " + std::to_string(k));
}

bool QSystem::contains(std::span<const Elem> u) const {
  if (u.size() != k()) throw std::invalid_argument("vector length must equal k");
  const FieldTower& f = field();
  const Matrix ex = expand_columns(generator_);
  Vec rhs;
  rhs.reserve(k() * f.m());
  for (Elem x : u)
    for (Elem c : f.coords(x)) rhs.push_back(c);
  return solve(ex, rhs).has_value();
}

Vec canonical_point(std::span<const Elem> v, const FieldTower& f) {
  Vec out(v.begin(), v.end());
  std::size_t i = 0;
  while (i < out.size() && out[i] == 0) ++i;
  if (i == out.size() || out[i] == 1) return out;
  const Elem s = f.inv(out[i]);
  for (std::size_t j = i; j < out.size(); ++j) out[j] = f.mul(out[j], s);
  return out;
}

std::uint64_t projective_point_count(std::uint64_t Q, std::size_t k) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < k; ++i) total = sat_add(sat_mul(total, Q), 1);
  return total;
}

std::uint64_t LinearSet::vector_count(std::uint64_t q) const {
  std::uint64_t total = 0;
  for (unsigned w : weights) total = sat_add(total, sat_pow(q, w) - 1);
  return total;
}

LinearSet linear_set(const QSystem& sys, std::uint64_t budget) {
  const FieldTower& f = sys.field();
  const std::uint64_t q = f.q();
  const std::size_t n = sys.n();
  const std::uint64_t total = sat_pow(q, n);
  require_budget(total, budget, "linear set enumeration");

  // Projective classes of U-vectors: lambda in F_q^n with first nonzero = 1.
  // The digit of lambda_0 is the most significant.
  std::map<Vec, std::uint64_t> counts;
  const auto N = static_cast<std::int64_t>(total);
#pragma omp parallel
  {
    std::map<Vec, std::uint64_t> local;
    Vec lambda(n);
#pragma omp for schedule(static)
    for (std::int64_t code = 1; code < N; ++code) {
      auto c = static_cast<std::uint64_t>(code);
      for (std::size_t j = n; j-- > 0;) {
        lambda[j] = static_cast<Elem>(c % q);
        c /= q;
      }
      std::size_t lead = 0;
      while (lambda[lead] == 0) ++lead;
      if (lambda[lead] != 1) continue;
      ++local[canonical_point(sys.apply(lambda), f)];
    }
#pragma omp critical
    for (auto& [p, cnt] : local) counts[p] += cnt;
  }

  LinearSet ls;
  for (auto& [p, cnt] : counts) {
    // cnt = (q^w - 1)/(q - 1)
    const std::uint64_t qw = cnt * (q - 1) + 1;
    unsigned w = 0;
    std::uint64_t x = 1;
    while (x < qw) {
      x *= q;
      ++w;
    }
    if (x != qw) throw std::logic_error("point multiplicity is not (q^w - 1)/(q - 1)");
    ls.points.push_back(p);
    ls.weights.push_back(w);
  }
  return ls;
}

bool is_scattered(const LinearSet& ls) {
  for (unsigned w : ls.weights)
    if (w != 1) return false;
  return true;
}

bool is_scattered(const QSystem& sys, std::uint64_t budget) {
  const auto ls = linear_set(sys, budget);
  const std::uint64_t q = sys.field().q();
  return ls.size() == (sat_pow(q, sys.n()) - 1) / (q - 1);
}

bool is_nondegenerate(const RankCode& code) {
  return column_fq_rank(code.generator()) == code.length();
}

QSystem associated_system(const RankCode& code) {
  if (code.dimension() == 0) throw SystemError("the zero code has no associated system");
  const std::size_t r = column_fq_rank(code.generator());
  if (r != code.length())
    throw SystemError("code is degenerate: its columns span an F_q-space of dimension " +
                      std::to_string(r) + " < n = " + std::to_string(code.length()));
  return QSystem(code.generator());
}

RankCode associated_code(const QSystem& sys) { return RankCode(sys.generator()); }

Matrix projective_hamming_code(const QSystem& sys, std::uint64_t budget) {
  const auto ls = linear_set(sys, budget);
  Matrix h(sys.field_ptr(), sys.k(), ls.size());
  for (std::size_t j = 0; j < ls.size(); ++j)
    for (std::size_t i = 0; i < sys.k(); ++i) h(i, j) = ls.points[j][i];
  return h;
}

}  // namespace rsat
