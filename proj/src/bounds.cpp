#include "rsat/bounds.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "rsat/covering.hpp"

namespace rsat {

BigInt gaussian_binomial(unsigned a, unsigned b, std::uint64_t q) {
  if (b > a) return 0;
  BigInt num = 1, den = 1;
  BigInt qa = boost::multiprecision::pow(BigInt(q), a);
  BigInt qi = 1;
  for (unsigned i = 0; i < b; ++i) {
    num *= qa - qi;                                           // q^a - q^i
    den *= boost::multiprecision::pow(BigInt(q), b) - qi;     // q^b - q^i
    qi *= q;
  }
  return num / den;
}

namespace {

void check_range(unsigned m, unsigned k, unsigned rho) {
  if (rho < 1 || rho > std::min(k, m))
    throw std::invalid_argument("need 1 <= rho <= min(k, m), got k=" + std::to_string(k) +
                                " m=" + std::to_string(m) + " rho=" + std::to_string(rho));
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

std::string cell(unsigned k, unsigned rho) {
  return "s(" + std::to_string(k) + "," + std::to_string(rho) + ")";
}

}  // namespace

Bound lower_bound(std::uint64_t q, unsigned m, unsigned k, unsigned rho) {
  check_range(m, k, rho);
  const std::int64_t M = m, K = k, R = rho;
  std::int64_t closed;
  if (q == 2 && rho == 1)
    closed = M * (K - 1) + 1;
  else if (q == 2)
    closed = ceil_div(M * K - 1, R) - M + R;
  else
    closed = ceil_div(M * K, R) - M + R;

  const BigInt target = boost::multiprecision::pow(BigInt(q), m * (k - rho));
  unsigned n = rho;
  while (gaussian_binomial(n, rho, q) < target) ++n;

  Bound b{static_cast<std::uint64_t>(closed), "closed form"};
  if (n > b.value) b = {n, "subspace count [n rho]_q >= q^(m(k-rho))"};
  if (k > b.value) b = {k, "spanning"};
  return b;
}

std::optional<std::string> s32_condition(std::uint64_t q, unsigned r) {
  const auto pe = prime_power(q);
  if (!pe) return std::nullopt;
  const auto [p, e] = *pe;
  if (r >= 4 && r % 6 != 3 && r % 6 != 5) return "a";
  if (r % 2 == 1) {
    unsigned smallest_prime = 0;
    for (unsigned d = 2; d <= r; ++d)
      if (r % d == 0) {
        smallest_prime = d;
        break;
      }
    for (unsigned s = 1; s <= r; ++s) {
      if (std::gcd(r, s) != 1) continue;
      const std::uint64_t qs = sat_pow(q, s);
      const std::uint64_t bound = sat_add(sat_mul(qs, qs) - qs, 1);
      // gcd(r, bound!) = 1 iff r has no prime factor <= bound.
      if (smallest_prime == 0 || smallest_prime > bound) return "b";
    }
  }
  if (r == 5) {
    if ((p == 2 || p == 3) && std::gcd(e % 15, 15u) == 1) return "c";
    if (p == 5 && e % 15 == 1) return "d";
    if ((p != 2 && (q % 5 == 2 || q % 5 == 3)) || (p == 2 && e % 2 == 1 && e >= 3)) return "e";
  }
  return std::nullopt;
}

Bound closed_form_upper(std::uint64_t q, unsigned m, unsigned k, unsigned rho) {
  check_range(m, k, rho);
  Bound best{static_cast<std::uint64_t>(m) * (k - rho) + rho, "identity-block m(k-rho)+rho"};
  auto offer = [&](std::uint64_t v, std::string why) {
    if (v < best.value) best = {v, std::move(why)};
  };
  for (unsigned t = 2; t <= m / 2; ++t) {
    if (m % t) continue;
    const unsigned r = m / t;
    if ((r - 1) * t + 1 != rho) continue;
    const unsigned h = k - rho;
    offer(static_cast<std::uint64_t>(t) * h + rho,
          "subgeometry r=" + std::to_string(r) + " t=" + std::to_string(t) + " h=" + std::to_string(h));
  }
  if (k >= 2 && rho == k - 1 && m % (k - 1) == 0 && m / (k - 1) >= 2) {
    const unsigned r = m / (k - 1);
    offer(2 * k + r - 2, "cutting blocking set over F_{q^" + std::to_string(r) + "}, 2k+r-2");
  }
  if (k == 3 && rho == 2 && m % 2 == 0) {
    const unsigned r = m / 2;
    if (r >= 2) offer(r + 3, "[r+3,3] cutting blocking set over F_{q^" + std::to_string(r) + "}");
    if (auto c = s32_condition(q, r))
      offer(r + 2, "[r+2,3] cutting blocking set over F_{q^" + std::to_string(r) + "}, condition (" + *c + ")");
  }
  return best;
}

std::map<std::pair<unsigned, unsigned>, Bound> close_upper_bounds(
    std::uint64_t, unsigned m, unsigned kgrid, std::map<std::pair<unsigned, unsigned>, Bound> up,
    unsigned* passes) {
  auto has = [&](unsigned k, unsigned rho) { return up.count({k, rho}) > 0; };
  unsigned pass = 0;
  for (bool changed = true; changed;) {
    changed = false;
    ++pass;
    auto offer = [&](unsigned k, unsigned rho, std::uint64_t v, const std::string& why) {
      auto it = up.find({k, rho});
      if (it == up.end() || v >= it->second.value) return;
      it->second = {v, why};
      changed = true;
    };
    for (unsigned k = 1; k <= kgrid; ++k)
      for (unsigned rho = 1; rho <= std::min(k, m); ++rho) {
        if (!has(k, rho)) continue;
        const Bound cur = up.at({k, rho});
        if (rho < std::min(k, m)) offer(k, rho + 1, cur.value, "raise rho from " + cell(k, rho) + " <- " + cur.provenance);
        if (has(k + 1, rho)) {
          const Bound& nb = up.at({k + 1, rho});
          offer(k, rho, nb.value - 1, "drop k from " + cell(k + 1, rho) + " <- " + nb.provenance);
        }
        if (rho < m && has(k + 1, rho + 1))
          offer(k + 1, rho + 1, cur.value + 1, "extend from " + cell(k, rho) + " <- " + cur.provenance);
        for (unsigned k2 = 1; k + k2 <= kgrid; ++k2)
          for (unsigned r2 = 1; r2 <= std::min(k2, m); ++r2) {
            if (rho + r2 > std::min(k + k2, m) || !has(k2, r2)) continue;
            const Bound& other = up.at({k2, r2});
            offer(k + k2, rho + r2, cur.value + other.value,
                  "sum " + cell(k, rho) + "+" + cell(k2, r2) + " <- [" + cur.provenance + "] + [" +
                      other.provenance + "]");
          }
      }
    if (pass > 4 * (kgrid + m) + 4) throw std::logic_error("upper-bound closure did not stabilise");
  }
  if (passes) *passes = pass;
  return up;
}

namespace {

unsigned closure_grid(unsigned k) { return std::max(k, 12u) + 2; }

std::map<std::pair<unsigned, unsigned>, Bound> closed_forms(std::uint64_t q, unsigned m, unsigned kgrid) {
  std::map<std::pair<unsigned, unsigned>, Bound> up;
  for (unsigned k = 1; k <= kgrid; ++k)
    for (unsigned rho = 1; rho <= std::min(k, m); ++rho) up[{k, rho}] = closed_form_upper(q, m, k, rho);
  return up;
}

}  // namespace

Bound upper_bound(std::uint64_t q, unsigned m, unsigned k, unsigned rho) {
  check_range(m, k, rho);
  const unsigned grid = closure_grid(k);
  return close_upper_bounds(q, m, grid, closed_forms(q, m, grid)).at({k, rho});
}

const std::vector<ExactRule>& exact_rules() {
  static const std::vector<ExactRule> rules = {
      {"rho=1", "all q, m, k",
       [](std::uint64_t, unsigned m, unsigned k, unsigned rho) -> std::optional<std::uint64_t> {
         if (rho != 1) return std::nullopt;
         return static_cast<std::uint64_t>(m) * (k - 1) + 1;
       }},
      {"rho=k", "k <= m",
       [](std::uint64_t, unsigned m, unsigned k, unsigned rho) -> std::optional<std::uint64_t> {
         if (rho != k || k > m) return std::nullopt;
         return k;
       }},
      {"s(3,2)=r+2", "m = 2r, conditions (a)-(e) on q and r",
       [](std::uint64_t q, unsigned m, unsigned k, unsigned rho) -> std::optional<std::uint64_t> {
         if (k != 3 || rho != 2 || m % 2 != 0 || !s32_condition(q, m / 2)) return std::nullopt;
         return m / 2 + 2;
       }},
      {"s(2r,2r-1)=2r+1", "m = k = 2r, r >= 2",
       [](std::uint64_t, unsigned m, unsigned k, unsigned rho) -> std::optional<std::uint64_t> {
         if (m % 2 != 0 || m < 4 || k != m || rho != m - 1) return std::nullopt;
         return m + 1;
       }},
  };
  return rules;
}

std::optional<ExactValue> exact_value(std::uint64_t q, unsigned m, unsigned k, unsigned rho) {
  for (const auto& rule : exact_rules())
    if (auto v = rule.value(q, m, k, rho)) {
      std::string label = rule.name;
      if (rule.name == "s(3,2)=r+2") label += " (" + *s32_condition(q, m / 2) + ")";
      return ExactValue{*v, label};
    }
  return std::nullopt;
}

BoundsTable::BoundsTable(std::uint64_t q, unsigned m, unsigned kmax, unsigned rhomax) : q_(q), m_(m) {
  if (m < 1 || kmax < 1) throw std::invalid_argument("bounds table needs m, kmax >= 1");
  if (!prime_power(q)) throw std::invalid_argument("q must be a prime power");
  const unsigned grid = closure_grid(kmax);
  const auto upper = close_upper_bounds(q, m, grid, closed_forms(q, m, grid), &passes_);

  for (unsigned k = 1; k <= kmax; ++k)
    for (unsigned rho = 1; rho <= std::min(k, m); ++rho) {
      if (rhomax && rho > rhomax) continue;
      BoundsEntry e;
      e.q = q;
      e.m = m;
      e.k = k;
      e.rho = rho;
      e.upper = upper.at({k, rho});
      index_[{k, rho}] = entries_.size();
      entries_.push_back(std::move(e));
    }
  const auto n = static_cast<std::int64_t>(entries_.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    BoundsEntry& e = entries_[static_cast<std::size_t>(i)];
    e.lower = lower_bound(q, m, e.k, e.rho);
    if (auto ex = exact_value(q, m, e.k, e.rho)) {
      e.exact = ex->value;
      e.exact_provenance = ex->rule;
    }
  }
}

const BoundsEntry& BoundsTable::at(unsigned k, unsigned rho) const {
  auto it = index_.find({k, rho});
  if (it == index_.end()) throw std::out_of_range("no bounds entry for " + cell(k, rho));
  return entries_[it->second];
}

TableAudit audit_table(const std::vector<std::uint64_t>& qs, unsigned mmax, unsigned kmax) {
  TableAudit audit;
  for (std::uint64_t q : qs)
    for (unsigned m = 1; m <= mmax; ++m) {
      const BoundsTable table(q, m, kmax);
      for (const auto& e : table.entries()) {
        ++audit.cells;
        const std::string where = "q=" + std::to_string(q) + " m=" + std::to_string(m) + " " + cell(e.k, e.rho);
        if (e.lower.value > e.upper.value)
          audit.failures.push_back(where + ": lower " + std::to_string(e.lower.value) + " > upper " +
                                   std::to_string(e.upper.value));
        if (!e.exact) continue;
        ++audit.exact_rows[e.exact_provenance.substr(0, e.exact_provenance.find(' '))];
        if (e.lower.value != *e.exact || e.upper.value != *e.exact)
          audit.failures.push_back(where + ": listed value " + std::to_string(*e.exact) + " (" +
                                   e.exact_provenance + ") but bounds give [" + std::to_string(e.lower.value) +
                                   ", " + std::to_string(e.upper.value) + "]");
      }
    }
  return audit;
}

// ---------------------------------------------------------------------------

bool for_each_subspace(std::uint64_t q, unsigned dim, unsigned n,
                       const std::function<bool(const std::vector<std::vector<Elem>>&)>& visit) {
  if (n > dim) return true;
  std::vector<unsigned> piv(n);
  std::iota(piv.begin(), piv.end(), 0u);
  std::vector<std::vector<Elem>> rows(n, std::vector<Elem>(dim, 0));
  while (true) {
    // Free positions: row i, columns after piv[i] that are not pivots.
    std::vector<std::pair<unsigned, unsigned>> free;
    for (unsigned i = 0; i < n; ++i)
      for (unsigned c = piv[i] + 1; c < dim; ++c)
        if (!std::binary_search(piv.begin(), piv.end(), c)) free.emplace_back(i, c);
    for (auto& row : rows) std::fill(row.begin(), row.end(), 0);
    for (unsigned i = 0; i < n; ++i) rows[i][piv[i]] = 1;
    bool more = true;
    while (more) {
      if (!visit(rows)) return false;
      more = false;
      for (auto [i, c] : free) {
        if (++rows[i][c] < q) {
          more = true;
          break;
        }
        rows[i][c] = 0;
      }
    }
    // Next pivot combination in lexicographic order.
    int i = static_cast<int>(n) - 1;
    while (i >= 0 && piv[static_cast<std::size_t>(i)] == dim - n + static_cast<unsigned>(i)) --i;
    if (i < 0) return true;
    ++piv[static_cast<std::size_t>(i)];
    for (auto j = static_cast<std::size_t>(i) + 1; j < n; ++j) piv[j] = piv[j - 1] + 1;
  }
}

BruteForceResult brute_force_s(std::uint64_t q, unsigned m, unsigned k, unsigned rho, std::uint64_t budget) {
  check_range(m, k, rho);
  const TowerPtr f = FieldTower::make(q, m);
  const unsigned dim = m * k;
  BruteForceResult res;
  for (unsigned n = k; n <= dim; ++n) {
    const BigInt count = gaussian_binomial(dim, n, q);
    if (count > BigInt(budget))
      throw BudgetExceeded("brute-force search: [" + std::to_string(dim) + " " + std::to_string(n) +
                               "]_q = " + count.str() + " subspaces exceed budget " + std::to_string(budget),
                           static_cast<int>(n) - 1);
    for_each_subspace(q, dim, n, [&](const std::vector<std::vector<Elem>>& rows) {
      ++res.subspaces_checked;
      Matrix g(f, k, n);
      for (unsigned j = 0; j < n; ++j)
        for (unsigned i = 0; i < k; ++i)
          g(i, j) = f->from_coords(std::span<const Elem>(rows[j]).subspan(i * m, m));
      if (rank(g) != k) return true;
      if (rank_cover_profile(g, budget, Execution::Serial).radius > rho) return true;
      res.n = n;
      res.witness.emplace(std::move(g));
      return false;
    });
    if (res.witness) return res;
  }
  throw std::logic_error("brute-force search found no saturating system, even the whole space");
}

}  // namespace rsat
