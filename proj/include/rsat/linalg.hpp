#pragma once

// Dense matrices over F_{q^m}, F_q-subspaces in canonical form, and
// F_{q^m}-linear rank-metric codes.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "rsat/budget.hpp"
#include "rsat/gftower.hpp"

namespace rsat {

using Vec = std::vector<Elem>;

/// Row-major matrix over the extension field of a tower. Matrices over F_q
/// use the same type with every entry a code below q.
class Matrix {
 public:
  Matrix() = default;
  Matrix(TowerPtr field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(TowerPtr field, std::size_t n);
  static Matrix from_rows(TowerPtr field, const std::vector<Vec>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldTower& field() const { return *field_; }
  const TowerPtr& field_ptr() const { return field_; }

  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const Elem> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<Elem> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  Vec column(std::size_t j) const;
  const std::vector<Elem>& data() const { return data_; }

  Matrix transpose() const;
  Matrix select_columns(std::span<const std::size_t> idx) const;
  Matrix select_rows(std::span<const std::size_t> idx) const;
  void append_row(std::span<const Elem> r);
  bool all_in_base_field() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_ &&
           (a.field_ == b.field_ || (a.field_ && b.field_ && a.field_->same_field(*b.field_)));
  }

 private:
  TowerPtr field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vec mat_vec(const Matrix& a, std::span<const Elem> x);
Vec vec_mat(std::span<const Elem> x, const Matrix& a);

/// Reduced row-echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref_in_place(Matrix& a);
/// RREF with zero rows removed.
Matrix rref(Matrix a);
std::size_t rank(Matrix a);
/// Basis (as rows) of the right kernel {x : a x = 0}.
Matrix nullspace(const Matrix& a);
/// Some x with a x = b, if one exists.
std::optional<Vec> solve(const Matrix& a, std::span<const Elem> b);

// ---- F_q expansions -------------------------------------------------------

/// n x m matrix over F_q whose row i holds the Gamma-coordinates of c_i.
Matrix expand(std::span<const Elem> c, const TowerPtr& field);
/// Inverse of expand.
Vec collapse(const Matrix& expanded);
/// (k m) x n matrix over F_q: column j stacks the coordinates of column j of g.
Matrix expand_columns(const Matrix& g);

/// F_q-dimension of the span of the given elements of F_{q^m}.
std::size_t fq_rank_of_elements(std::span<const Elem> v, const FieldTower& f);
/// Rank weight: F_q-dimension of <v_1, ..., v_n>.
inline std::size_t rank_weight(std::span<const Elem> v, const FieldTower& f) {
  return fq_rank_of_elements(v, f);
}
std::size_t hamming_weight(std::span<const Elem> v);

/// Incremental F_q-echelon basis of elements of F_{q^m}.
class FqSpan {
 public:
  explicit FqSpan(const FieldTower& f) : f_(&f), rows_(f.m(), 0), present_(f.m(), false) {}
  /// Inserts a; returns true when it was independent of the current span.
  bool insert(Elem a);
  bool contains(Elem a) const { return reduce(a) == 0; }
  Elem reduce(Elem a) const;
  std::size_t dim() const { return dim_; }

 private:
  const FieldTower* f_;
  std::vector<Elem> rows_;
  std::vector<bool> present_;
  std::size_t dim_ = 0;
};

// ---- subspaces of F_q^N ----------------------------------------------------

/// F_q-subspace of F_q^N stored as the RREF of a basis; equal subspaces have
/// equal representations.
class SubspaceFq {
 public:
  SubspaceFq() = default;
  /// Span of the rows of `generators` (entries in F_q).
  explicit SubspaceFq(const Matrix& generators);
  static SubspaceFq zero(TowerPtr field, std::size_t ambient);

  std::size_t ambient() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  bool contains(std::span<const Elem> v) const;
  bool contains(const SubspaceFq& other) const;

  friend bool operator==(const SubspaceFq& a, const SubspaceFq& b) { return a.basis_ == b.basis_; }

 private:
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Rank support: the column space of Gamma(c), a subspace of F_q^n.
SubspaceFq rank_support(std::span<const Elem> c, const TowerPtr& field);

// ---- codes -----------------------------------------------------------------

class CodeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// F_{q^m}-linear [n,k] code given by a full-rank generator matrix.
class RankCode {
 public:
  explicit RankCode(Matrix generator);
  /// The zero code of length n.
  static RankCode zero(TowerPtr field, std::size_t n);

  std::size_t length() const { return generator_.cols(); }
  std::size_t dimension() const { return generator_.rows(); }
  const Matrix& generator() const { return generator_; }
  const Matrix& parity_check() const { return parity_check_; }
  const FieldTower& field() const { return generator_.field(); }
  const TowerPtr& field_ptr() const { return generator_.field_ptr(); }

  bool contains(std::span<const Elem> v) const;
  /// Same F_{q^m}-subspace.
  bool same_code(const RankCode& other) const;

 private:
  RankCode(Matrix generator, bool);
  Matrix generator_;
  Matrix parity_check_;
};

/// Dual code under the standard bilinear form.
RankCode dual(const RankCode& code);

using CodewordVisitor = std::function<void(std::span<const Elem>, std::span<const Elem>)>;

/// Number of independent slices the projective codeword sweep is split into.
std::size_t projective_sweep_tasks(const Matrix& generator);
/// Visits the projective classes of slice `task`: visit(codeword, coefficients)
/// with coefficient vectors whose first nonzero entry is 1. Inside a slice the
/// coefficients advance like an odometer, one digit per step, and the
/// codeword is updated incrementally.
void sweep_projective_slice(const Matrix& generator, std::size_t task, const CodewordVisitor& visit);
/// All slices in order.
void for_each_projective_codeword(const Matrix& generator, const CodewordVisitor& visit);

struct WeightSpectrum {
  /// rank weight -> number of nonzero codewords of that weight
  std::map<std::size_t, std::uint64_t> counts;
  std::size_t external_distance() const { return counts.size(); }
  std::size_t min_weight() const { return counts.empty() ? 0 : counts.begin()->first; }
};

/// Rank-weight distribution by exhaustive sweep (q^{mk} <= budget).
WeightSpectrum weight_spectrum(const RankCode& code, std::uint64_t budget = kDefaultBudget);
/// Minimum rank distance; throws CodeError for the zero code.
std::size_t min_rank_distance(const RankCode& code, std::uint64_t budget = kDefaultBudget);
/// Minimum Hamming distance by exhaustive sweep.
std::size_t min_hamming_distance(const RankCode& code, std::uint64_t budget = kDefaultBudget);

template <class Rng>
Elem random_element(const FieldTower& f, Rng& rng) {
  return static_cast<Elem>(rng() % f.order());
}

template <class Rng>
Matrix random_matrix(const TowerPtr& f, std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix a(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = random_element(*f, rng);
  return a;
}

}  // namespace rsat
