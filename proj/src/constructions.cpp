#include "rsat/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace rsat {

namespace {

Matrix columns_to_matrix(const TowerPtr& f, std::size_t k, const std::vector<Vec>& cols) {
  Matrix g(f, k, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < k; ++i) g(i, j) = cols[j][i];
  return g;
}

Elem dot(const FieldTower& f, std::span<const Elem> a, std::span<const Elem> b) {
  Elem acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc = f.add(acc, f.mul(a[i], b[i]));
  return acc;
}

}  // namespace

QSystem construct_rho1(const TowerPtr& f, std::span<const Elem> v, std::span<const Elem> v_prime) {
  const std::size_t k = v.size();
  if (k == 0 || v_prime.size() != k) throw std::invalid_argument("v and v' must be nonzero-length vectors of equal length");
  if (std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; })) throw std::invalid_argument("v must be nonzero");
  if (dot(*f, v, v_prime) == 0) throw std::invalid_argument("v' lies in the orthogonal complement of v");
  Matrix row(f, 1, k);
  for (std::size_t i = 0; i < k; ++i) row(0, i) = v[i];
  const Matrix perp = nullspace(row);
  std::vector<Vec> cols;
  for (std::size_t b = 0; b < perp.rows(); ++b)
    for (unsigned j = 0; j < f->m(); ++j) {
      const Elem g = f->basis_element(j);
      Vec c(k);
      for (std::size_t i = 0; i < k; ++i) c[i] = f->mul(g, perp(b, i));
      cols.push_back(std::move(c));
    }
  cols.emplace_back(v_prime.begin(), v_prime.end());
  return QSystem(columns_to_matrix(f, k, cols));
}

QSystem construct_identity_block(const TowerPtr& f, std::size_t k, std::size_t rho) {
  const unsigned m = f->m();
  if (rho < 1 || rho > std::min<std::size_t>(k, m))
    throw std::invalid_argument("identity-block construction needs 1 <= rho <= min(k, m)");
  const std::size_t tail = k - rho;
  Matrix g(f, k, rho + m * tail);
  for (std::size_t i = 0; i < rho; ++i) g(i, i) = 1;
  for (unsigned j = 0; j < m; ++j) {
    const Elem a = f->basis_element(j);
    for (std::size_t i = 0; i < tail; ++i) g(rho + i, rho + j * tail + i) = a;
  }
  return QSystem(std::move(g));
}

QSystem construct_subgeometry(const TowerPtr& f, const SubgeometryShape& s) {
  if (s.r < 2 || s.t < 2) throw std::invalid_argument("subgeometry construction needs r, t >= 2");
  if (f->m() != s.r * s.t) throw std::invalid_argument("subgeometry construction needs m = r t");
  const std::size_t K = s.head();
  const Elem z = f->subfield_generator(s.t);
  Matrix g(f, s.k(), s.n());
  for (std::size_t i = 0; i < K; ++i) g(i, i) = 1;
  Elem zp = 1;
  for (unsigned j = 0; j < s.t; ++j) {
    for (std::size_t i = 0; i < s.h; ++i) g(K + i, K + j * s.h + i) = zp;
    zp = f->mul(zp, z);
  }
  return QSystem(std::move(g));
}

// ---------------------------------------------------------------------------

namespace {

struct Terms {
  std::vector<Elem> lambdas;
  std::vector<Vec> us;
  void add(Elem l, Vec u) {
    lambdas.push_back(l);
    us.push_back(std::move(u));
  }
};

// Projection-and-eliminate recursion. Returns false when the residual left
// after the beta stages is not a single U-multiple.
bool eliminate(const FieldTower& f, const SubgeometryShape& shape, const ComplementBasis& basis, Vec w,
               Terms& terms, std::vector<std::string>& trace) {
  const std::size_t k = w.size();
  const std::size_t K = shape.head();
  const std::size_t B = basis.betas().size();
  std::vector<bool> used(k, false);

  for (std::size_t ell = 0; ell < B; ++ell) {
    Vec proj(k);
    for (std::size_t x = 0; x < k; ++x) proj[x] = used[x] ? 0 : basis.project_beta(w[x], ell);
    std::optional<std::size_t> pivot;
    if (!used[ell] && proj[ell] != 0) {
      pivot = ell;
      trace.emplace_back("pivot");
    } else {
      for (std::size_t x = 0; x < k && !pivot; ++x)
        if (!used[x] && proj[x] != 0) pivot = x;
      if (pivot) trace.push_back("pivot-shift:" + std::to_string(*pivot));
    }
    if (!pivot) {
      // No coordinate carries beta_ell: take coordinate ell as it stands.
      if (!used[ell] && w[ell] != 0) {
        Vec u(k, 0);
        u[ell] = 1;
        terms.add(w[ell], std::move(u));
        w[ell] = 0;
        used[ell] = true;
        trace.push_back("consume:" + std::to_string(ell));
      } else {
        trace.emplace_back("skip");
      }
      continue;
    }
    const std::size_t p = *pivot;
    const Elem lambda = f.div(w[p], proj[p]);
    for (std::size_t x = 0; x < k; ++x)
      if (proj[x] != 0) w[x] = f.sub(w[x], f.mul(lambda, proj[x]));
    used[p] = true;
    terms.add(lambda, std::move(proj));
  }

  // Residual now lies in F_{q^t}^k.
  std::optional<std::size_t> lead;
  for (std::size_t x = 0; x < K && !lead; ++x)
    if (w[x] != 0) lead = x;
  if (!lead) {
    if (std::any_of(w.begin(), w.end(), [](Elem a) { return a != 0; })) {
      terms.add(1, w);
      trace.emplace_back("final-tail");
    } else {
      trace.emplace_back("final-empty");
    }
    return true;
  }
  const Elem lambda = w[*lead];
  Vec u(k);
  bool proportional = true;
  for (std::size_t x = 0; x < k; ++x) {
    u[x] = f.div(w[x], lambda);
    if (x < K && !f.in_base_field(u[x])) proportional = false;
  }
  if (proportional) {
    terms.add(lambda, std::move(u));
    trace.emplace_back("final");
    return true;
  }
  // One term per remaining head coordinate, one for the whole tail.
  for (std::size_t x = 0; x < K; ++x)
    if (w[x] != 0) {
      Vec e(k, 0);
      e[x] = 1;
      terms.add(w[x], std::move(e));
      w[x] = 0;
    }
  if (std::any_of(w.begin(), w.end(), [](Elem a) { return a != 0; })) terms.add(1, w);
  trace.emplace_back("final-split");
  return terms.lambdas.size() <= K;
}

// Coordinates over F_q of `target` in terms of the elements `gens`, or nullopt.
std::optional<Vec> fq_combination(const TowerPtr& f, const std::vector<Elem>& gens, Elem target) {
  const unsigned m = f->m();
  Matrix a(f, m, gens.size());
  for (std::size_t c = 0; c < gens.size(); ++c)
    for (unsigned l = 0; l < m; ++l) a(l, c) = f->coord(gens[c], l);
  return solve(a, f->coords(target));
}

// Picks an F_q-space S containing the head entries with every tail entry in
// F_{q^t} S, then reads the coefficient vector lambda (all entries in S) as
// sum_l s_l M_l and returns the terms (s_l, G M_l).
Terms span_completion(const QSystem& sys, const SubgeometryShape& shape, std::span<const Elem> v) {
  const TowerPtr& fp = sys.field_ptr();
  const FieldTower& f = *fp;
  const std::size_t K = shape.head();
  const std::size_t h = shape.h;
  const unsigned t = shape.t;
  const Elem z = f.subfield_generator(t);
  std::vector<Elem> zpow(t);
  zpow[0] = 1;
  for (unsigned j = 1; j < t; ++j) zpow[j] = f.mul(zpow[j - 1], z);

  std::vector<Elem> s;
  FqSpan head_span(f);
  FqSpan ext_span(f);
  auto add_to_s = [&](Elem a) {
    s.push_back(a);
    for (Elem zp : zpow) ext_span.insert(f.mul(zp, a));
  };
  for (std::size_t x = 0; x < K; ++x)
    if (head_span.insert(v[x])) add_to_s(v[x]);
  for (std::size_t i = 0; i < h; ++i)
    if (!ext_span.contains(v[K + i])) add_to_s(v[K + i]);
  if (s.size() > K) throw std::logic_error("span completion exceeded (r-1)t+1 generators");

  const std::size_t d = s.size();
  const std::size_t n = sys.n();
  std::vector<Vec> M(d, Vec(n, 0));
  for (std::size_t x = 0; x < K; ++x) {
    const auto c = fq_combination(fp, s, v[x]);
    if (!c) throw std::logic_error("head entry outside its own span");
    for (std::size_t l = 0; l < d; ++l) M[l][x] = (*c)[l];
  }
  std::vector<Elem> ext_gens;
  for (unsigned j = 0; j < t; ++j)
    for (std::size_t l = 0; l < d; ++l) ext_gens.push_back(f.mul(zpow[j], s[l]));
  for (std::size_t i = 0; i < h; ++i) {
    const auto c = fq_combination(fp, ext_gens, v[K + i]);
    if (!c) throw std::logic_error("tail entry outside F_{q^t} S");
    for (unsigned j = 0; j < t; ++j)
      for (std::size_t l = 0; l < d; ++l) M[l][K + j * h + i] = (*c)[j * d + l];
  }
  Terms terms;
  for (std::size_t l = 0; l < d; ++l) terms.add(s[l], sys.apply(M[l]));
  return terms;
}

}  // namespace

Decomposition decompose(const QSystem& sys, const SubgeometryShape& shape, std::span<const Elem> v,
                        const ComplementBasis& basis) {
  const FieldTower& f = sys.field();
  if (!basis.tower().same_field(f)) throw std::invalid_argument("complement basis lives in another field");
  if (basis.t() != shape.t) throw std::invalid_argument("complement basis has the wrong subfield degree");
  if (!(sys.generator() == construct_subgeometry(sys.field_ptr(), shape).generator()))
    throw std::invalid_argument("system is not the subgeometry system of the given shape");
  if (v.size() != shape.k()) throw std::invalid_argument("target length must equal k");

  Decomposition d;
  d.target.assign(v.begin(), v.end());
  if (std::all_of(v.begin(), v.end(), [](Elem a) { return a == 0; })) {
    d.trace.emplace_back("zero");
    return d;
  }
  if (sys.contains(v)) {
    d.lambdas.push_back(1);
    d.us.push_back(d.target);
    d.trace.emplace_back("member");
    return d;
  }
  Terms terms;
  const bool ok = eliminate(f, shape, basis, d.target, terms, d.trace);
  if (ok) {
    d.lambdas = std::move(terms.lambdas);
    d.us = std::move(terms.us);
    return d;
  }
  d.used_span_completion = true;
  d.trace.emplace_back("span-completion");
  Terms sc = span_completion(sys, shape, v);
  d.lambdas = std::move(sc.lambdas);
  d.us = std::move(sc.us);
  return d;
}

bool verify_decomposition(const QSystem& sys, const Decomposition& d) {
  const FieldTower& f = sys.field();
  if (d.lambdas.size() != d.us.size()) return false;
  Vec acc(sys.k(), 0);
  for (std::size_t i = 0; i < d.lambdas.size(); ++i) {
    if (d.us[i].size() != sys.k() || !sys.contains(d.us[i])) return false;
    for (std::size_t x = 0; x < sys.k(); ++x) acc[x] = f.add(acc[x], f.mul(d.lambdas[i], d.us[i][x]));
  }
  return acc == d.target;
}

// ---------------------------------------------------------------------------

QSystem f_sum(const QSystem& s1, const QSystem& s2, const Matrix& f_map) {
  if (s1.k() > 0 && s2.k() > 0 && !s1.field().same_field(s2.field()))
    throw std::invalid_argument("f-sum summands live in different fields");
  const TowerPtr& fp = s1.k() > 0 ? s1.field_ptr() : s2.field_ptr();
  const std::size_t k1 = s1.k(), k2 = s2.k(), n1 = s1.n(), n2 = s2.n();
  if (f_map.rows() != n1 || f_map.cols() != n2) throw std::invalid_argument("f must be an n1 x n2 matrix");
  Matrix g(fp, k1 + k2, n1 + n2);
  const Matrix top_right = (k1 > 0 && n2 > 0) ? s1.generator() * f_map : Matrix(fp, k1, n2);
  for (std::size_t i = 0; i < k1; ++i) {
    for (std::size_t j = 0; j < n1; ++j) g(i, j) = s1.generator()(i, j);
    for (std::size_t j = 0; j < n2; ++j) g(i, n1 + j) = top_right(i, j);
  }
  for (std::size_t i = 0; i < k2; ++i)
    for (std::size_t j = 0; j < n2; ++j) g(k1 + i, n1 + j) = s2.generator()(i, j);
  return QSystem(std::move(g));
}

QSystem direct_sum(const QSystem& s1, const QSystem& s2) {
  const TowerPtr& fp = s1.k() > 0 ? s1.field_ptr() : s2.field_ptr();
  return f_sum(s1, s2, Matrix(fp, s1.n(), s2.n()));
}

QSystem plotkin_sum(const QSystem& s1, const QSystem& s2) {
  if (s1.n() != s2.n()) throw std::invalid_argument("Plotkin sum needs summands of equal length");
  return f_sum(s1, s2, Matrix::identity(s1.field_ptr(), s1.n()));
}

// ---------------------------------------------------------------------------

RankCode gabidulin(const TowerPtr& f, std::size_t k, unsigned i, std::span<const Elem> alpha) {
  const std::size_t n = alpha.size();
  const unsigned m = f->m();
  if (k < 1 || k > n || n > m) throw CodeError("Gabidulin code needs 1 <= k <= n <= m");
  if (std::gcd(i, m) != 1) throw CodeError("Gabidulin code needs gcd(i, m) = 1");
  if (rank_weight(alpha, *f) != n) throw CodeError("Gabidulin evaluation points must be F_q-independent");
  Matrix g(f, k, n);
  for (std::size_t j = 0; j < n; ++j) {
    Elem a = alpha[j];
    for (std::size_t s = 0; s < k; ++s) {
      g(s, j) = a;
      for (unsigned rep = 0; rep < i; ++rep) a = f->frobenius(a);
    }
  }
  return RankCode(std::move(g));
}

RankCode gabidulin(const TowerPtr& f, std::size_t n, std::size_t k, unsigned i) {
  if (n > f->m()) throw CodeError("Gabidulin code needs n <= m");
  Vec alpha(n);
  for (std::size_t j = 0; j < n; ++j) alpha[j] = f->basis_element(static_cast<unsigned>(j));
  return gabidulin(f, k, i, alpha);
}

TowerPtr example_cutting_field() { return FieldTower::make(2, 4, std::vector<Elem>{1, 1, 0, 0, 1}); }

QSystem example_cutting_6_3(const TowerPtr& field) {
  TowerPtr f = field ? field : example_cutting_field();
  if (f->q() != 2 || f->m() != 4 || f->modulus() != std::vector<Elem>{1, 1, 0, 0, 1})
    throw FieldError("the [6,3] cutting blocking set is defined over F_2[x]/(x^4 + x + 1)");
  // Exponents of the root x; -1 marks a zero entry.
  const int e[3][6] = {{4, 10, 8, 3, 9, 7}, {14, 8, 1, 8, -1, 8}, {10, -1, 6, 5, 11, 3}};
  const Elem x = f->basis_element(1);
  Matrix g(f, 3, 6);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 6; ++j) g(i, j) = e[i][j] < 0 ? 0 : f->pow(x, static_cast<std::uint64_t>(e[i][j]));
  return QSystem(std::move(g));
}

QSystem example_8_4(const TowerPtr& f) {
  if (f->m() != 4) throw FieldError("the [8,4] system lives over F_{q^4}");
  auto fr = [&](Elem a, int times) {
    for (int i = 0; i < times; ++i) a = f->frobenius(a);
    return a;
  };
  std::vector<Vec> cols;
  for (unsigned i = 0; i < 4; ++i) {
    const Elem b = f->basis_element(i);
    cols.push_back({b, 0, fr(b, 1), fr(b, 2)});
  }
  for (unsigned i = 0; i < 4; ++i) {
    const Elem b = f->basis_element(i);
    cols.push_back({0, b, fr(b, 2), f->add(fr(b, 1), fr(b, 2))});
  }
  return QSystem(columns_to_matrix(f, 4, cols));
}

QSystem extend_scalars(const QSystem& sys, const TowerPtr& large) {
  const FieldEmbedding emb(sys.field_ptr(), large);
  Matrix g(large, sys.k(), sys.n());
  for (std::size_t i = 0; i < sys.k(); ++i)
    for (std::size_t j = 0; j < sys.n(); ++j) g(i, j) = emb(sys.generator()(i, j));
  return QSystem(std::move(g));
}

}  // namespace rsat
