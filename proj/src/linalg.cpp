#include "rsat/linalg.hpp"

#include <algorithm>
#include <bit>

#include <omp.h>

namespace rsat {

Matrix Matrix::identity(TowerPtr field, std::size_t n) {
  Matrix a(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = 1;
  return a;
}

Matrix Matrix::from_rows(TowerPtr field, const std::vector<Vec>& rows, std::size_t cols) {
  Matrix a(std::move(field), rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) {
      if (rows[i][j] >= a.field().order()) throw FieldError("matrix entry outside the field");
      a(i, j) = rows[i][j];
    }
  }
  return a;
}

Vec Matrix::column(std::size_t j) const {
  Vec c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::select_columns(std::span<const std::size_t> idx) const {
  Matrix s(field_, rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) s(i, j) = (*this)(i, idx[j]);
  return s;
}

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
  Matrix s(field_, idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(idx[i] * cols_), cols_,
                s.data_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
  return s;
}

void Matrix::append_row(std::span<const Elem> r) {
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_) throw std::invalid_argument("row length mismatch");
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

bool Matrix::all_in_base_field() const {
  return std::all_of(data_.begin(), data_.end(), [&](Elem a) { return field_->in_base_field(a); });
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  const FieldTower& f = a.field();
  Matrix c(a.field_ptr(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Elem x = a(i, l);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = f.add(c(i, j), f.mul(x, b(l, j)));
    }
  return c;
}

Vec mat_vec(const Matrix& a, std::span<const Elem> x) {
  if (a.cols() != x.size()) throw std::invalid_argument("mat_vec shape mismatch");
  const FieldTower& f = a.field();
  Vec y(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] = f.add(y[i], f.mul(a(i, j), x[j]));
  return y;
}

Vec vec_mat(std::span<const Elem> x, const Matrix& a) {
  if (a.rows() != x.size()) throw std::invalid_argument("vec_mat shape mismatch");
  const FieldTower& f = a.field();
  Vec y(a.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] = f.add(y[j], f.mul(x[i], a(i, j)));
  }
  return y;
}

std::vector<std::size_t> rref_in_place(Matrix& a) {
  const FieldTower& f = a.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    const Elem s = f.inv(a(r, c));
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = f.mul(a(r, j), s);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Elem k = f.neg(a(i, c));
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) = f.add(a(i, j), f.mul(k, a(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

Matrix rref(Matrix a) {
  const auto piv = rref_in_place(a);
  std::vector<std::size_t> keep(piv.size());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
  return a.select_rows(keep);
}

std::size_t rank(Matrix a) { return rref_in_place(a).size(); }

Matrix nullspace(const Matrix& a) {
  Matrix r = a;
  const auto piv = rref_in_place(r);
  const FieldTower& f = a.field();
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : piv) is_pivot[c] = true;
  Matrix out(a.field_ptr(), 0, a.cols());
  for (std::size_t fc = 0; fc < a.cols(); ++fc) {
    if (is_pivot[fc]) continue;
    Vec x(a.cols(), 0);
    x[fc] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = f.neg(r(i, fc));
    out.append_row(x);
  }
  return out;
}

std::optional<Vec> solve(const Matrix& a, std::span<const Elem> b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve shape mismatch");
  Matrix aug(a.field_ptr(), a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const auto piv = rref_in_place(aug);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  Vec x(a.cols(), 0);
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, a.cols());
  return x;
}

// ---------------------------------------------------------------------------

Matrix expand(std::span<const Elem> c, const TowerPtr& field) {
  const unsigned m = field->m();
  Matrix g(field, c.size(), m);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto co = field->coords(c[i]);
    for (unsigned j = 0; j < m; ++j) g(i, j) = co[j];
  }
  return g;
}

Vec collapse(const Matrix& expanded) {
  const FieldTower& f = expanded.field();
  if (expanded.cols() != f.m()) throw std::invalid_argument("collapse expects m columns");
  Vec v(expanded.rows());
  for (std::size_t i = 0; i < expanded.rows(); ++i) v[i] = f.from_coords(expanded.row(i));
  return v;
}

Matrix expand_columns(const Matrix& g) {
  const FieldTower& f = g.field();
  const unsigned m = f.m();
  Matrix out(g.field_ptr(), g.rows() * m, g.cols());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      const auto co = f.coords(g(i, j));
      for (unsigned l = 0; l < m; ++l) out(i * m + l, j) = co[l];
    }
  return out;
}

Elem FqSpan::reduce(Elem a) const {
  const FieldTower& f = *f_;
  if (f.q() == 2) {
    while (a != 0) {
      const unsigned j = static_cast<unsigned>(std::bit_width(a) - 1);
      if (!present_[j]) return a;
      a ^= rows_[j];
    }
    return 0;
  }
  for (unsigned j = f.m(); j-- > 0;) {
    if (!present_[j]) continue;
    const Elem c = f.coord(a, j);
    if (c != 0) a = f.add(a, f.mul(f.fq_neg(c), rows_[j]));
  }
  return a;
}

bool FqSpan::insert(Elem a) {
  a = reduce(a);
  if (a == 0) return false;
  const FieldTower& f = *f_;
  unsigned j = f.m() - 1;
  while (f.coord(a, j) == 0) --j;
  rows_[j] = f.mul(a, f.fq_inv(f.coord(a, j)));
  present_[j] = true;
  ++dim_;
  return true;
}

std::size_t fq_rank_of_elements(std::span<const Elem> v, const FieldTower& f) {
  if (f.q() == 2) {
    std::uint32_t basis[32] = {};
    std::size_t r = 0;
    for (Elem a : v) {
      while (a != 0) {
        const int j = std::bit_width(a) - 1;
        if (basis[j] == 0) {
          basis[j] = a;
          ++r;
          break;
        }
        a ^= basis[j];
      }
    }
    return r;
  }
  FqSpan s(f);
  for (Elem a : v)
    if (s.insert(a) && s.dim() == f.m()) break;
  return s.dim();
}

std::size_t hamming_weight(std::span<const Elem> v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](Elem a) { return a != 0; }));
}

// ---------------------------------------------------------------------------

SubspaceFq::SubspaceFq(const Matrix& generators) {
  if (!generators.all_in_base_field()) throw FieldError("subspace generators must lie in F_q");
  basis_ = generators;
  pivots_ = rref_in_place(basis_);
  std::vector<std::size_t> keep(pivots_.size());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
  basis_ = basis_.select_rows(keep);
}

SubspaceFq SubspaceFq::zero(TowerPtr field, std::size_t ambient) {
  return SubspaceFq(Matrix(std::move(field), 0, ambient));
}

bool SubspaceFq::contains(std::span<const Elem> v) const {
  if (v.size() != ambient()) throw std::invalid_argument("ambient dimension mismatch");
  const FieldTower& f = basis_.field();
  Vec w(v.begin(), v.end());
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const Elem c = w[pivots_[i]];
    if (c == 0) continue;
    const Elem k = f.neg(c);
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = f.add(w[j], f.mul(k, basis_(i, j)));
  }
  return std::all_of(w.begin(), w.end(), [](Elem a) { return a == 0; });
}

bool SubspaceFq::contains(const SubspaceFq& other) const {
  if (other.dim() > dim()) return false;
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.basis().row(i))) return false;
  return true;
}

SubspaceFq rank_support(std::span<const Elem> c, const TowerPtr& field) {
  return SubspaceFq(expand(c, field).transpose());
}

// ---------------------------------------------------------------------------

RankCode::RankCode(Matrix generator) : generator_(std::move(generator)) {
  if (!generator_.field_ptr()) throw CodeError("generator matrix has no field");
  if (rank(generator_) != generator_.rows())
    throw CodeError("generator matrix does not have full row rank");
  parity_check_ = nullspace(generator_);
}

RankCode::RankCode(Matrix generator, bool) : generator_(std::move(generator)) {
  parity_check_ = Matrix::identity(generator_.field_ptr(), generator_.cols());
}

RankCode RankCode::zero(TowerPtr field, std::size_t n) {
  return RankCode(Matrix(std::move(field), 0, n), true);
}

bool RankCode::contains(std::span<const Elem> v) const {
  const Vec s = mat_vec(parity_check_, v);
  return std::all_of(s.begin(), s.end(), [](Elem a) { return a == 0; });
}

bool RankCode::same_code(const RankCode& other) const {
  if (!field().same_field(other.field()) || length() != other.length() ||
      dimension() != other.dimension())
    return false;
  for (std::size_t i = 0; i < other.dimension(); ++i)
    if (!contains(other.generator().row(i))) return false;
  return true;
}

RankCode dual(const RankCode& code) {
  if (code.parity_check().rows() == 0) return RankCode::zero(code.field_ptr(), code.length());
  return RankCode(code.parity_check());
}

// ---------------------------------------------------------------------------

namespace {

// Slice layout: for each leading position l (coefficient 1), the next
// coefficient (if any) is fixed per slice, so position l contributes
// Q slices when l < k-1 and a single slice when l = k-1.
struct SliceId {
  std::size_t lead;
  std::optional<Elem> second;
};

SliceId decode_slice(std::size_t k, std::uint64_t Q, std::size_t task) {
  for (std::size_t l = 0; l < k; ++l) {
    const std::size_t span = l + 1 < k ? static_cast<std::size_t>(Q) : 1;
    if (task < span) return {l, l + 1 < k ? std::optional<Elem>(static_cast<Elem>(task)) : std::nullopt};
    task -= span;
  }
  throw std::out_of_range("codeword slice index out of range");
}

}  // namespace

std::size_t projective_sweep_tasks(const Matrix& generator) {
  const std::size_t k = generator.rows();
  if (k == 0) return 0;
  return (k - 1) * static_cast<std::size_t>(generator.field().order()) + 1;
}

void sweep_projective_slice(const Matrix& g, std::size_t task, const CodewordVisitor& visit) {
  const FieldTower& f = g.field();
  const std::size_t k = g.rows();
  const std::size_t n = g.cols();
  const std::uint64_t Q = f.order();
  const SliceId id = decode_slice(k, Q, task);

  Vec u(k, 0);
  Vec c(n, 0);
  auto add_scaled_row = [&](std::size_t i, Elem s) {
    if (s == 0) return;
    for (std::size_t j = 0; j < n; ++j) c[j] = f.add(c[j], f.mul(s, g(i, j)));
  };
  u[id.lead] = 1;
  add_scaled_row(id.lead, 1);
  std::size_t first_free = id.lead + 1;
  if (id.second) {
    u[id.lead + 1] = *id.second;
    add_scaled_row(id.lead + 1, *id.second);
    first_free = id.lead + 2;
  }
  // Odometer over positions [first_free, k); the last position moves fastest.
  while (true) {
    visit(c, u);
    std::size_t pos = k;
    while (pos > first_free) {
      --pos;
      const Elem old = u[pos];
      const Elem nxt = static_cast<Elem>((std::uint64_t{old} + 1) % Q);
      u[pos] = nxt;
      add_scaled_row(pos, f.sub(nxt, old));
      if (nxt != 0) break;
      if (pos == first_free) return;
    }
    if (pos == k) return;
  }
}

void for_each_projective_codeword(const Matrix& g, const CodewordVisitor& visit) {
  const std::size_t tasks = projective_sweep_tasks(g);
  for (std::size_t t = 0; t < tasks; ++t) sweep_projective_slice(g, t, visit);
}

namespace {

void check_sweep_budget(const RankCode& code, std::uint64_t budget, const char* what) {
  require_budget(sat_pow(code.field().order(), code.dimension()), budget, what);
}

template <class WeightFn>
std::map<std::size_t, std::uint64_t> parallel_weight_counts(const RankCode& code, WeightFn weight) {
  const Matrix& g = code.generator();
  const auto tasks = static_cast<std::int64_t>(projective_sweep_tasks(g));
  std::map<std::size_t, std::uint64_t> total;
#pragma omp parallel
  {
    std::map<std::size_t, std::uint64_t> local;
#pragma omp for schedule(dynamic)
    for (std::int64_t t = 0; t < tasks; ++t)
      sweep_projective_slice(g, static_cast<std::size_t>(t),
                             [&](std::span<const Elem> c, std::span<const Elem>) { ++local[weight(c)]; });
#pragma omp critical
    for (const auto& [w, cnt] : local) total[w] += cnt;
  }
  return total;
}

}  // namespace

WeightSpectrum weight_spectrum(const RankCode& code, std::uint64_t budget) {
  check_sweep_budget(code, budget, "weight spectrum");
  const FieldTower& f = code.field();
  WeightSpectrum ws;
  ws.counts = parallel_weight_counts(code, [&](std::span<const Elem> c) { return rank_weight(c, f); });
  for (auto& [w, cnt] : ws.counts) cnt *= f.order() - 1;
  return ws;
}

std::size_t min_rank_distance(const RankCode& code, std::uint64_t budget) {
  if (code.dimension() == 0) throw CodeError("minimum distance of the zero code is undefined");
  return weight_spectrum(code, budget).min_weight();
}

std::size_t min_hamming_distance(const RankCode& code, std::uint64_t budget) {
  if (code.dimension() == 0) throw CodeError("minimum distance of the zero code is undefined");
  check_sweep_budget(code, budget, "Hamming distance sweep");
  const auto counts = parallel_weight_counts(code, [](std::span<const Elem> c) { return hamming_weight(c); });
  return counts.begin()->first;
}

}  // namespace rsat
