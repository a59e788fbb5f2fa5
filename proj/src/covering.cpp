#include "rsat/covering.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <random>
#include <unordered_map>

#include <omp.h>

namespace rsat {

namespace {

// ---- target indexing ---------------------------------------------------------
//
// A target s in F^r has index sum_i s_i Q^(r-1-i), so index order is
// lexicographic order with s_1 most significant. Canonical (first nonzero
// coordinate 1) targets with leading position l fill [Q^(r-1-l), 2 Q^(r-1-l)).

constexpr std::uint64_t kNone = ~std::uint64_t{0};

std::uint64_t canonical_index(std::span<const Elem> s, const FieldTower& f) {
  const std::uint64_t Q = f.order();
  std::size_t i0 = 0;
  while (i0 < s.size() && s[i0] == 0) ++i0;
  if (i0 == s.size()) return kNone;
  std::uint64_t idx = 1;
  if (s[i0] == 1) {
    for (std::size_t i = i0 + 1; i < s.size(); ++i) idx = idx * Q + s[i];
  } else {
    const Elem inv = f.inv(s[i0]);
    for (std::size_t i = i0 + 1; i < s.size(); ++i) idx = idx * Q + f.mul(s[i], inv);
  }
  return idx;
}

Vec index_to_vector(std::uint64_t idx, std::size_t r, std::uint64_t Q) {
  Vec v(r, 0);
  for (std::size_t i = r; i-- > 0;) {
    v[i] = static_cast<Elem>(idx % Q);
    idx /= Q;
  }
  return v;
}

// Concurrent set of canonical targets.
class MarkSet {
 public:
  MarkSet(std::uint64_t Q, std::size_t r)
      : Q_(Q), r_(r), size_(sat_pow(Q, r)), points_(projective_point_count(Q, r)),
        words_((size_ + 63) / 64, 0) {}

  /// Returns true for the call that first marks idx. kNone (the zero
  /// vector) is ignored.
  bool mark(std::uint64_t idx) {
    if (idx == kNone) return false;
    const std::uint64_t bit = std::uint64_t{1} << (idx & 63);
    std::atomic_ref<std::uint64_t> w(words_[idx >> 6]);
    if (w.load(std::memory_order_relaxed) & bit) return false;
    if (w.fetch_or(bit, std::memory_order_relaxed) & bit) return false;
    covered_.fetch_add(1, std::memory_order_relaxed);
    return true;
  }
  bool marked(std::uint64_t idx) const { return (words_[idx >> 6] >> (idx & 63)) & 1; }
  bool complete() const { return covered_.load(std::memory_order_relaxed) == points_; }
  std::uint64_t covered_points() const { return covered_.load(); }

  /// Fraction of all Q^r vectors reached (zero counts as reached).
  double coverage() const {
    return static_cast<double>(1 + covered_points() * (Q_ - 1)) / static_cast<double>(size_);
  }

  /// Smallest unmarked canonical index, kNone when all are marked.
  std::uint64_t first_unmarked() const {
    std::uint64_t lo = 1;
    for (std::size_t l = r_; l-- > 0;) {
      const std::uint64_t hi = 2 * lo;
      for (std::uint64_t idx = lo; idx < hi;) {
        const std::uint64_t word = words_[idx >> 6];
        if (word == ~std::uint64_t{0}) {
          idx = (idx | 63) + 1;
          continue;
        }
        if (!((word >> (idx & 63)) & 1)) return idx;
        ++idx;
      }
      lo *= Q_;
    }
    return kNone;
  }

 private:
  std::uint64_t Q_;
  std::size_t r_;
  std::uint64_t size_;
  std::uint64_t points_;
  std::vector<std::uint64_t> words_;
  std::atomic<std::uint64_t> covered_{0};
};

// ---- RREF enumeration ----------------------------------------------------------

// All w x n RREF matrices over F_q with pivot columns `pivots`: the free
// entries (row i, column j) have j > pivots[i] and j not a pivot.
struct PivotBlock {
  std::vector<std::size_t> pivots;
  std::vector<std::pair<std::size_t, std::size_t>> free;
  std::uint64_t count = 0;
  std::uint64_t offset = 0;
};

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t w = c.size();
  for (std::size_t i = w; i-- > 0;) {
    if (c[i] < n - w + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < w; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<PivotBlock> pivot_blocks(std::size_t n, std::size_t w, std::uint64_t q, std::uint64_t& total) {
  std::vector<PivotBlock> blocks;
  total = 0;
  if (w > n) return blocks;
  std::vector<std::size_t> c(w);
  for (std::size_t i = 0; i < w; ++i) c[i] = i;
  do {
    PivotBlock b;
    b.pivots = c;
    std::vector<bool> is_pivot(n, false);
    for (auto p : c) is_pivot[p] = true;
    for (std::size_t i = 0; i < w; ++i)
      for (std::size_t j = c[i] + 1; j < n; ++j)
        if (!is_pivot[j]) b.free.emplace_back(i, j);
    b.count = sat_pow(q, b.free.size());
    b.offset = total;
    total = sat_add(total, b.count);
    blocks.push_back(std::move(b));
  } while (w > 0 && next_combination(c, n));
  return blocks;
}

// Fills M (w x n, row-major, F_q codes) for the RREF matrix with global index g.
void decode_rref(const std::vector<PivotBlock>& blocks, std::uint64_t g, std::size_t n, std::uint64_t q,
                 std::vector<Elem>& M) {
  auto it = std::upper_bound(blocks.begin(), blocks.end(), g,
                             [](std::uint64_t x, const PivotBlock& b) { return x < b.offset; });
  const PivotBlock& b = *(it - 1);
  std::fill(M.begin(), M.end(), 0);
  for (std::size_t i = 0; i < b.pivots.size(); ++i) M[i * n + b.pivots[i]] = 1;
  std::uint64_t local = g - b.offset;
  for (std::size_t f = b.free.size(); f-- > 0;) {
    M[b.free[f].first * n + b.free[f].second] = static_cast<Elem>(local % q);
    local /= q;
  }
}

// Columns of B = A M^T: cols[i] = sum_j M_ij A_{:,j}, each of length r.
void combine_columns(const Matrix& a, const std::vector<Elem>& M, std::size_t w, std::vector<Vec>& cols) {
  const FieldTower& f = a.field();
  const std::size_t r = a.rows();
  const std::size_t n = a.cols();
  for (std::size_t i = 0; i < w; ++i) {
    Vec& col = cols[i];
    std::fill(col.begin(), col.end(), 0);
    for (std::size_t j = 0; j < n; ++j) {
      const Elem c = M[i * n + j];
      if (c == 0) continue;
      for (std::size_t t = 0; t < r; ++t) col[t] = f.add(col[t], f.mul(c, a(t, j)));
    }
  }
}

// Calls visit(s, gamma) for s = sum_i gamma_i cols[i] over projective gamma.
template <class Visit>
void for_each_projective_combination(const FieldTower& f, const std::vector<Vec>& cols, std::size_t w,
                                     Vec& s, Vec& gamma, Visit&& visit) {
  const std::uint64_t Q = f.order();
  const std::size_t r = s.size();
  for (std::size_t l = 0; l < w; ++l) {
    std::fill(gamma.begin(), gamma.end(), 0);
    gamma[l] = 1;
    s = cols[l];
    while (true) {
      if (!visit(std::span<const Elem>(s), std::span<const Elem>(gamma.data(), w))) return;
      std::size_t pos = w;
      bool wrapped = true;
      while (pos > l + 1) {
        --pos;
        const Elem old = gamma[pos];
        const Elem nxt = static_cast<Elem>((std::uint64_t{old} + 1) % Q);
        gamma[pos] = nxt;
        const Elem d = f.sub(nxt, old);
        for (std::size_t t = 0; t < r; ++t) s[t] = f.add(s[t], f.mul(d, cols[pos][t]));
        if (nxt != 0) {
          wrapped = false;
          break;
        }
      }
      if (wrapped) break;
    }
  }
}

std::uint64_t projective_count(std::uint64_t Q, std::size_t w) { return projective_point_count(Q, w); }

void require_spanning(const Matrix& a) {
  if (rank(a) != a.rows())
    throw std::invalid_argument("covering sweep needs a matrix of full row rank: some targets are unreachable");
}

// ---- witness search ------------------------------------------------------------

// For each target finds lambda with A lambda = target and rank weight <= max_w,
// scanning levels in order and keeping the first hit per target.
std::vector<std::optional<Vec>> find_lambdas(const Matrix& a, const std::vector<Vec>& targets,
                                             std::size_t max_w, std::uint64_t budget) {
  const FieldTower& f = a.field();
  const std::uint64_t q = f.q();
  const std::uint64_t Q = f.order();
  const std::size_t r = a.rows();
  const std::size_t n = a.cols();
  std::vector<std::optional<Vec>> out(targets.size());
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> pending;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const auto idx = canonical_index(targets[t], f);
    if (idx == kNone)
      out[t] = Vec(n, 0);
    else
      pending[idx].push_back(t);
  }
  std::uint64_t work = 0;
  for (std::size_t w = 1; w <= std::min(max_w, n) && !pending.empty(); ++w) {
    std::uint64_t total = 0;
    const auto blocks = pivot_blocks(n, w, q, total);
    work = sat_add(work, sat_mul(total, projective_count(Q, w)));
    require_budget(work, budget, "witness search");
    std::vector<Elem> M(w * n);
    std::vector<Vec> cols(w, Vec(r));
    Vec s(r), gamma(w);
    for (std::uint64_t g = 0; g < total && !pending.empty(); ++g) {
      decode_rref(blocks, g, n, q, M);
      combine_columns(a, M, w, cols);
      for_each_projective_combination(f, cols, w, s, gamma, [&](std::span<const Elem> sv, std::span<const Elem> gv) {
        const auto idx = canonical_index(sv, f);
        auto it = pending.find(idx);
        if (it == pending.end()) return true;
        std::size_t i0 = 0;
        while (sv[i0] == 0) ++i0;
        for (std::size_t t : it->second) {
          // target = mu * canonical, s = c * canonical: lambda = (mu / c) gamma M.
          const Elem mu = targets[t][i0];
          const Elem scale = f.div(mu, sv[i0]);
          Vec lambda(n, 0);
          for (std::size_t i = 0; i < w; ++i) {
            const Elem gi = f.mul(scale, gv[i]);
            if (gi == 0) continue;
            for (std::size_t j = 0; j < n; ++j)
              if (M[i * n + j] != 0) lambda[j] = f.add(lambda[j], f.mul(gi, M[i * n + j]));
          }
          out[t] = std::move(lambda);
        }
        pending.erase(it);
        return !pending.empty();
      });
    }
  }
  return out;
}

}  // namespace

// ---- layered rank sweep -----------------------------------------------------------

CoverProfile rank_cover_profile(const Matrix& a, std::uint64_t budget, Execution exec) {
  const FieldTower& f = a.field();
  const std::uint64_t q = f.q();
  const std::uint64_t Q = f.order();
  const std::size_t r = a.rows();
  const std::size_t n = a.cols();
  CoverProfile prof;
  if (r == 0) {
    prof.coverage.push_back(1.0);
    return prof;
  }
  require_spanning(a);
  require_budget(sat_pow(Q, r), budget, "target space");

  MarkSet marks(Q, r);
  prof.coverage.push_back(marks.coverage());
  std::uint64_t work = 0;
  for (std::size_t w = 1; w <= n; ++w) {
    std::uint64_t total = 0;
    const auto blocks = pivot_blocks(n, w, q, total);
    const std::uint64_t level_work = sat_mul(total, projective_count(Q, w));
    if (sat_add(work, level_work) > budget)
      throw BudgetExceeded("rank covering sweep: level " + std::to_string(w) + " needs " +
                               std::to_string(level_work) + " more steps, budget " + std::to_string(budget),
                           static_cast<int>(w) - 1, prof.coverage.back());
    work += level_work;
    const std::uint64_t before = marks.first_unmarked();

    const auto N = static_cast<std::int64_t>(total);
#pragma omp parallel if (exec == Execution::Parallel)
    {
      std::vector<Elem> M(w * n);
      std::vector<Vec> cols(w, Vec(r));
      Vec s(r), gamma(w);
#pragma omp for schedule(dynamic, 16)
      for (std::int64_t g = 0; g < N; ++g) {
        if (marks.complete()) continue;
        decode_rref(blocks, static_cast<std::uint64_t>(g), n, q, M);
        combine_columns(a, M, w, cols);
        for_each_projective_combination(f, cols, w, s, gamma, [&](std::span<const Elem> sv, std::span<const Elem>) {
          marks.mark(canonical_index(sv, f));
          return true;
        });
      }
    }
    prof.coverage.push_back(marks.coverage());
    if (marks.complete()) {
      prof.radius = w;
      prof.tightness = index_to_vector(before, r, Q);
      return prof;
    }
  }
  throw std::logic_error("rank covering sweep finished without covering a spanning target space");
}

CoverProfile rank_cover_profile_reference(const Matrix& a, std::uint64_t budget) {
  const FieldTower& f = a.field();
  const std::uint64_t q = f.q();
  const std::uint64_t Q = f.order();
  const std::size_t r = a.rows();
  const std::size_t n = a.cols();
  CoverProfile prof;
  if (r == 0) {
    prof.coverage.push_back(1.0);
    return prof;
  }
  require_spanning(a);
  const std::uint64_t size = sat_pow(Q, r);
  require_budget(size, budget, "target space");

  std::vector<char> hit(size, 0);
  hit[0] = 1;
  std::uint64_t count = 1;
  prof.coverage.push_back(1.0 / static_cast<double>(size));
  std::uint64_t work = 0;

  for (std::size_t w = 1; w <= n; ++w) {
    std::uint64_t first_miss = 0;
    while (hit[first_miss]) ++first_miss;

    // Work bound: number of RREF matrices times nonzero gamma.
    std::uint64_t rref_count = 0;
    pivot_blocks(n, w, q, rref_count);
    work = sat_add(work, sat_mul(rref_count, sat_pow(Q, w) - 1));
    if (work > budget)
      throw BudgetExceeded("reference sweep over budget", static_cast<int>(w) - 1, prof.coverage.back());

    std::vector<std::size_t> piv(w);
    for (std::size_t i = 0; i < w; ++i) piv[i] = i;
    do {
      std::vector<std::vector<Elem>> M(w, std::vector<Elem>(n, 0));
      std::vector<std::pair<std::size_t, std::size_t>> free_cells;
      for (std::size_t i = 0; i < w; ++i) {
        M[i][piv[i]] = 1;
        for (std::size_t j = piv[i] + 1; j < n; ++j)
          if (std::find(piv.begin(), piv.end(), j) == piv.end()) free_cells.emplace_back(i, j);
      }
      bool more = true;
      while (more) {
        // B = A M^T, then every nonzero gamma.
        std::vector<Vec> B(w, Vec(r, 0));
        for (std::size_t i = 0; i < w; ++i)
          for (std::size_t j = 0; j < n; ++j)
            for (std::size_t t = 0; t < r; ++t) B[i][t] = f.add(B[i][t], f.mul(M[i][j], a(t, j)));
        const std::uint64_t gammas = sat_pow(Q, w);
        for (std::uint64_t gc = 1; gc < gammas; ++gc) {
          Vec s(r, 0);
          std::uint64_t c = gc;
          for (std::size_t i = 0; i < w; ++i) {
            const auto gi = static_cast<Elem>(c % Q);
            c /= Q;
            for (std::size_t t = 0; t < r; ++t) s[t] = f.add(s[t], f.mul(gi, B[i][t]));
          }
          std::uint64_t idx = 0;
          for (std::size_t t = 0; t < r; ++t) idx = idx * Q + s[t];
          if (!hit[idx]) {
            hit[idx] = 1;
            ++count;
          }
        }
        // Next assignment of the free cells.
        more = false;
        for (std::size_t p = free_cells.size(); p-- > 0;) {
          auto& cell = M[free_cells[p].first][free_cells[p].second];
          cell = static_cast<Elem>((cell + 1) % q);
          if (cell != 0) {
            more = true;
            break;
          }
        }
      }
    } while (next_combination(piv, n));

    prof.coverage.push_back(static_cast<double>(count) / static_cast<double>(size));
    if (count == size) {
      prof.radius = w;
      prof.tightness = index_to_vector(first_miss, r, Q);
      return prof;
    }
  }
  throw std::logic_error("reference sweep finished without covering a spanning target space");
}

std::size_t rank_covering_radius(const RankCode& code, std::uint64_t budget, Execution exec) {
  return rank_cover_profile(code.parity_check(), budget, exec).radius;
}

// ---- saturation -------------------------------------------------------------------

std::uint64_t system_hash(const Matrix& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](std::uint64_t x, int bytes) {
    for (int b = 0; b < bytes; ++b) {
      h ^= (x >> (8 * b)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  const FieldTower& f = g.field();
  feed(f.q(), 8);
  feed(f.m(), 4);
  for (Elem c : f.modulus()) feed(c, 4);
  feed(g.rows(), 8);
  feed(g.cols(), 8);
  for (Elem e : g.data()) feed(e, 4);
  return h;
}

std::optional<Vec> find_saturating_lambda(const QSystem& sys, std::span<const Elem> target, std::size_t max_weight,
                                          std::uint64_t budget) {
  if (target.size() != sys.k()) throw std::invalid_argument("target length must equal k");
  return find_lambdas(sys.generator(), {Vec(target.begin(), target.end())}, max_weight, budget)[0];
}

SaturationResult saturation_radius(const QSystem& sys, const SaturationOptions& opts) {
  SaturationResult res;
  res.profile = rank_cover_profile(sys.generator(), opts.budget, opts.exec);
  res.rho = res.profile.radius;

  const FieldTower& f = sys.field();
  const std::size_t k = sys.k();
  std::vector<Vec> targets;
  Vec ones(k, 1);
  for (std::size_t i = 0; i < k; ++i) {
    Vec e(k, 0);
    e[i] = 1;
    targets.push_back(std::move(e));
  }
  if (k > 1) targets.push_back(ones);
  std::mt19937_64 rng(opts.seed);
  for (std::size_t i = 0; i < opts.random_witnesses; ++i) {
    Vec v(k);
    do {
      for (auto& x : v) x = random_element(f, rng);
    } while (std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; }));
    targets.push_back(std::move(v));
  }
  const auto lambdas = find_lambdas(sys.generator(), targets, res.rho, opts.budget);

  SaturationCertificate& cert = res.certificate;
  cert.system_hash = system_hash(sys.generator());
  cert.rho = res.rho;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    if (!lambdas[t]) throw std::logic_error("covered target has no witness at level rho");
    cert.witnesses.push_back({targets[t], *lambdas[t]});
  }
  cert.tightness = res.profile.tightness;
  return res;
}

CertificateCheck verify_certificate(const QSystem& sys, const SaturationCertificate& cert, std::uint64_t budget) {
  const FieldTower& f = sys.field();
  if (cert.system_hash != system_hash(sys.generator())) return {false, "system hash mismatch"};
  for (std::size_t i = 0; i < cert.witnesses.size(); ++i) {
    const auto& w = cert.witnesses[i];
    if (w.lambda.size() != sys.n() || w.target.size() != sys.k())
      return {false, "witness " + std::to_string(i) + " has the wrong shape"};
    if (sys.apply(w.lambda) != w.target)
      return {false, "witness " + std::to_string(i) + " does not reproduce its target"};
    if (rank_weight(w.lambda, f) > cert.rho)
      return {false, "witness " + std::to_string(i) + " has rank weight above rho"};
  }
  if (cert.rho == 0) return {true, "ok"};
  if (!cert.tightness) return {false, "missing tightness vector"};
  if (cert.tightness->size() != sys.k()) return {false, "tightness vector has the wrong length"};
  if (find_saturating_lambda(sys, *cert.tightness, cert.rho - 1, budget))
    return {false, "tightness vector is reachable with rank weight rho - 1"};
  return {true, "ok"};
}

std::size_t saturation_radius_geometric(const QSystem& sys, std::uint64_t budget) {
  const FieldTower& f = sys.field();
  const std::uint64_t Q = f.order();
  const std::size_t k = sys.k();
  require_budget(sat_pow(Q, k), budget, "projective target space");
  const auto ls = linear_set(sys, budget);
  const std::size_t L = ls.size();
  MarkSet marks(Q, k);
  for (const auto& p : ls.points) marks.mark(canonical_index(p, f));
  if (marks.complete()) return 1;

  std::uint64_t work = L;
  for (std::size_t w = 2; w <= std::min(k, L); ++w) {
    // C(L, w) subsets, each with the projective combinations of w points.
    std::uint64_t subsets = 1;
    for (std::size_t i = 0; i < w; ++i) subsets = sat_mul(subsets, L - i) / (i + 1);
    work = sat_add(work, sat_mul(subsets, projective_count(Q, w)));
    if (work > budget)
      throw BudgetExceeded("geometric saturation sweep over budget", static_cast<int>(w) - 1, marks.coverage());

    const auto first_count = static_cast<std::int64_t>(L - w + 1);
#pragma omp parallel
    {
      std::vector<Vec> cols(w, Vec(k));
      Vec s(k), gamma(w);
      std::vector<std::size_t> rest(w - 1);
#pragma omp for schedule(dynamic, 1)
      for (std::int64_t i0 = 0; i0 < first_count; ++i0) {
        if (marks.complete()) continue;
        const auto first = static_cast<std::size_t>(i0);
        for (std::size_t i = 0; i + 1 < w; ++i) rest[i] = i;
        const std::size_t tail = L - first - 1;
        do {
          cols[0] = ls.points[first];
          for (std::size_t i = 0; i + 1 < w; ++i) cols[i + 1] = ls.points[first + 1 + rest[i]];
          for_each_projective_combination(f, cols, w, s, gamma, [&](std::span<const Elem> sv, std::span<const Elem>) {
            marks.mark(canonical_index(sv, f));
            return true;
          });
        } while (!marks.complete() && next_combination(rest, tail));
      }
    }
    if (marks.complete()) return w;
  }
  throw std::logic_error("geometric sweep finished without covering PG(k-1, q^m)");
}

// ---- Hamming metric ----------------------------------------------------------------

std::size_t hamming_covering_radius(const Matrix& generator, std::uint64_t budget) {
  const RankCode code(generator);
  const Matrix& h = code.parity_check();
  const FieldTower& f = h.field();
  const std::uint64_t Q = f.order();
  const std::size_t r = h.rows();
  const std::size_t N = h.cols();
  if (r == 0) return 0;
  require_budget(sat_pow(Q, r), budget, "syndrome space");
  MarkSet marks(Q, r);
  std::uint64_t work = 0;
  for (std::size_t w = 1; w <= N; ++w) {
    std::uint64_t subsets = 1;
    for (std::size_t i = 0; i < w; ++i) subsets = sat_mul(subsets, N - i) / (i + 1);
    work = sat_add(work, sat_mul(subsets, sat_pow(Q - 1, w - 1)));
    if (work > budget)
      throw BudgetExceeded("Hamming covering sweep over budget", static_cast<int>(w) - 1, marks.coverage());

    const auto first_count = static_cast<std::int64_t>(N - w + 1);
#pragma omp parallel
    {
      std::vector<std::size_t> rest(w - 1);
      std::vector<std::uint64_t> coef(w, 1);
      Vec s(r);
#pragma omp for schedule(dynamic, 1)
      for (std::int64_t i0 = 0; i0 < first_count; ++i0) {
        if (marks.complete()) continue;
        const auto first = static_cast<std::size_t>(i0);
        for (std::size_t i = 0; i + 1 < w; ++i) rest[i] = first + 1 + i;
        do {
          // Coefficient 1 on the first column, any nonzero on the others.
          std::fill(coef.begin(), coef.end(), 1);
          while (true) {
            for (std::size_t t = 0; t < r; ++t) {
              Elem acc = h(t, first);
              for (std::size_t i = 0; i + 1 < w; ++i)
                acc = f.add(acc, f.mul(static_cast<Elem>(coef[i + 1]), h(t, rest[i])));
              s[t] = acc;
            }
            const auto idx = canonical_index(s, f);
            if (idx != kNone) marks.mark(idx);
            bool more = false;
            for (std::size_t p = w; p-- > 1;) {
              if (++coef[p] < Q) {
                more = true;
                break;
              }
              coef[p] = 1;
            }
            if (!more) break;
          }
          // Advance the tail subset inside (first, N).
          std::size_t i = w - 1;
          bool advanced = false;
          while (i-- > 0) {
            if (rest[i] < N - (w - 1) + i) {
              ++rest[i];
              for (std::size_t j = i + 1; j + 1 < w; ++j) rest[j] = rest[j - 1] + 1;
              advanced = true;
              break;
            }
          }
          if (!advanced) break;
        } while (!marks.complete());
      }
    }
    if (marks.complete()) return w;
  }
  throw std::logic_error("Hamming sweep finished without covering the syndrome space");
}

// ---- code-level checks ----------------------------------------------------------

bool is_maximal(const RankCode& code, std::uint64_t budget) {
  if (code.dimension() == 0) throw CodeError("maximality needs a code with at least two codewords");
  return rank_covering_radius(code, budget) + 1 <= min_rank_distance(code, budget);
}

BoundReport check_bound_consistency(const RankCode& code, std::uint64_t budget, const RankCode* supercode) {
  BoundReport rep;
  const std::size_t n = code.length();
  const std::size_t k = code.dimension();
  const std::size_t m = code.field().m();
  rep.rho = rank_covering_radius(code, budget);
  rep.rho_dual = rank_covering_radius(dual(code), budget);
  auto fail = [](const std::string& what) { throw BoundViolation("violated: " + what); };

  if (k > 0) {
    const auto spec = weight_spectrum(code, budget);
    rep.distance = spec.min_weight();
    rep.external = spec.external_distance();
    if (rep.rho_dual > rep.external) fail("rho(C dual) <= external distance of C");
    rep.checked.push_back("rho(C dual) <= external distance of C");
    if (rep.rho_dual + rep.distance > std::min(n, m) + 1) fail("rho(C dual) <= min(n, m) - d(C) + 1");
    rep.checked.push_back("rho(C dual) <= min(n, m) - d(C) + 1");
  }
  if (k > 0 && k < n) {
    if (!(rep.distance - 1 < 2 * rep.rho)) fail("d(C) - 1 < 2 rho(C)");
    rep.checked.push_back("d(C) - 1 < 2 rho(C)");
  }
  if (supercode) {
    if (supercode->length() != n) throw CodeError("supercode has a different length");
    for (std::size_t i = 0; i < k; ++i)
      if (!supercode->contains(code.generator().row(i))) throw CodeError("supercode does not contain the code");
    const std::size_t rho_d = rank_covering_radius(*supercode, budget);
    if (rep.rho < rho_d) fail("rho(C) >= rho(D) for C in D");
    rep.checked.push_back("rho(C) >= rho(D) for C in D");
    if (supercode->dimension() > k) {
      const std::size_t d_d = min_rank_distance(*supercode, budget);
      if (rep.rho < d_d) fail("rho(C) >= d(D) for C strictly in D");
      rep.checked.push_back("rho(C) >= d(D) for C strictly in D");
    }
  }
  return rep;
}

bool is_linear_cutting_blocking_set(const QSystem& sys, std::uint64_t budget) {
  const FieldTower& f = sys.field();
  const std::uint64_t Q = f.order();
  const std::size_t k = sys.k();
  const std::size_t n = sys.n();
  const unsigned m = f.m();
  const Matrix& g = sys.generator();
  const std::uint64_t hyperplanes = projective_point_count(Q, k);
  require_budget(hyperplanes, budget, "hyperplane sweep");
  if (k == 1) return true;  // the only hyperplane is {0}

  // Canonical normals, in index order.
  std::vector<std::uint64_t> normals;
  normals.reserve(hyperplanes);
  for (std::uint64_t lo = 1, l = 0; l < k; ++l, lo *= Q)
    for (std::uint64_t idx = lo; idx < 2 * lo; ++idx) normals.push_back(idx);

  std::atomic<bool> ok{true};
  const auto N = static_cast<std::int64_t>(normals.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t h = 0; h < N; ++h) {
    if (!ok.load(std::memory_order_relaxed)) continue;
    const Vec a = index_to_vector(normals[static_cast<std::size_t>(h)], k, Q);
    const Vec c = vec_mat(a, g);  // a . (G lambda) = c . lambda
    // m F_q-equations on lambda in F_q^n.
    Matrix eq(g.field_ptr(), m, n);
    for (std::size_t j = 0; j < n; ++j)
      for (unsigned l = 0; l < m; ++l) eq(l, j) = f.coord(c[j], l);
    const Matrix ker = nullspace(eq);
    Matrix span(g.field_ptr(), ker.rows(), k);
    for (std::size_t i = 0; i < ker.rows(); ++i) {
      const Vec u = mat_vec(g, ker.row(i));
      for (std::size_t t = 0; t < k; ++t) span(i, t) = u[t];
    }
    if (rank(span) != k - 1) ok.store(false, std::memory_order_relaxed);
  }
  return ok.load();
}

namespace {

// Membership mask of a subspace of F_q^n, used when q^n is small.
std::vector<std::uint64_t> member_mask(const SubspaceFq& s, std::uint64_t q) {
  const std::size_t n = s.ambient();
  const std::uint64_t size = sat_pow(q, n);
  std::vector<std::uint64_t> mask((size + 63) / 64, 0);
  const Matrix& b = s.basis();
  const FieldTower& f = b.field();
  const std::uint64_t combos = sat_pow(q, s.dim());
  Vec v(n);
  for (std::uint64_t c = 0; c < combos; ++c) {
    std::fill(v.begin(), v.end(), 0);
    std::uint64_t x = c;
    for (std::size_t i = 0; i < s.dim(); ++i) {
      const auto ci = static_cast<Elem>(x % q);
      x /= q;
      if (ci == 0) continue;
      for (std::size_t j = 0; j < n; ++j) v[j] = f.add(v[j], f.mul(ci, b(i, j)));
    }
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < n; ++j) idx = idx * q + v[j];
    mask[idx >> 6] |= std::uint64_t{1} << (idx & 63);
  }
  return mask;
}

}  // namespace

bool is_minimal_rank_code(const RankCode& code, std::uint64_t budget) {
  const FieldTower& f = code.field();
  require_budget(sat_pow(f.order(), code.dimension()), budget, "minimality codeword sweep");
  std::vector<SubspaceFq> supports;
  for_each_projective_codeword(code.generator(), [&](std::span<const Elem> c, std::span<const Elem>) {
    supports.push_back(rank_support(c, code.field_ptr()));
  });
  // Equal supports on projectively distinct codewords.
  std::map<std::vector<Elem>, int> seen;
  for (const auto& s : supports)
    if (++seen[s.basis().data()] > 1) return false;

  std::sort(supports.begin(), supports.end(), [](const SubspaceFq& a, const SubspaceFq& b) { return a.dim() < b.dim(); });
  const std::uint64_t q = f.q();
  const bool masks = sat_pow(q, code.length()) <= 4096;
  std::vector<std::vector<std::uint64_t>> mask;
  if (masks)
    for (const auto& s : supports) mask.push_back(member_mask(s, q));

  std::atomic<bool> minimal{true};
  const auto S = static_cast<std::int64_t>(supports.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < S; ++i) {
    if (!minimal.load(std::memory_order_relaxed)) continue;
    const auto& small = supports[static_cast<std::size_t>(i)];
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < supports.size(); ++j) {
      const auto& big = supports[j];
      if (big.dim() <= small.dim()) continue;
      bool inside;
      if (masks) {
        inside = true;
        const auto& a = mask[static_cast<std::size_t>(i)];
        const auto& b = mask[j];
        for (std::size_t t = 0; t < a.size() && inside; ++t) inside = (a[t] & ~b[t]) == 0;
      } else {
        inside = big.contains(small);
      }
      if (inside) {
        minimal.store(false, std::memory_order_relaxed);
        break;
      }
    }
  }
  return minimal.load();
}

QSystem puncture_nonscattered(const QSystem& sys, std::uint64_t budget) {
  const FieldTower& f = sys.field();
  const std::uint64_t q = f.q();
  const std::size_t n = sys.n();
  const std::uint64_t total = sat_pow(q, n);
  require_budget(total, budget, "puncture search");
  // Two F_q-independent coefficient vectors a, b whose U-vectors share a point.
  std::map<Vec, Vec> first_on_point;
  Vec lambda(n);
  std::optional<std::pair<Vec, Vec>> pair;
  for (std::uint64_t code = 1; code < total && !pair; ++code) {
    std::uint64_t c = code;
    for (std::size_t j = n; j-- > 0;) {
      lambda[j] = static_cast<Elem>(c % q);
      c /= q;
    }
    std::size_t lead = 0;
    while (lambda[lead] == 0) ++lead;
    if (lambda[lead] != 1) continue;
    auto pt = canonical_point(sys.apply(lambda), f);
    auto [it, inserted] = first_on_point.emplace(std::move(pt), lambda);
    if (!inserted) pair.emplace(it->second, lambda);
  }
  if (!pair) throw SystemError("system is scattered: no point of weight at least 2");

  // Basis of F_q^n: a, completed by unit vectors, with b last; drop b.
  const auto& [av, bv] = *pair;
  Matrix basis(sys.field_ptr(), 0, n);
  basis.append_row(av);
  basis.append_row(bv);
  std::vector<Vec> kept{av};
  for (std::size_t j = 0; j < n && kept.size() + 1 < n; ++j) {
    Vec e(n, 0);
    e[j] = 1;
    Matrix trial = basis;
    trial.append_row(e);
    if (rank(trial) == trial.rows()) {
      basis = std::move(trial);
      kept.push_back(std::move(e));
    }
  }
  Matrix out(sys.field_ptr(), sys.k(), kept.size());
  for (std::size_t c = 0; c < kept.size(); ++c) {
    const Vec u = sys.apply(kept[c]);
    for (std::size_t i = 0; i < sys.k(); ++i) out(i, c) = u[i];
  }
  return QSystem(std::move(out));
}

}  // namespace rsat
