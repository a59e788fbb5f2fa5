#include "rsat/gftower.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace rsat {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Polynomial arithmetic over F_q, using only the F_q operations of a tower.
class PolyRing {
 public:
  using Poly = FieldTower::Poly;
  explicit PolyRing(const FieldTower& f) : f_(f) {}

  static void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }

  Poly sub(Poly a, const Poly& b) const {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = f_.fq_add(a[i], f_.fq_neg(b[i]));
    trim(a);
    return a;
  }

  Poly mul(const Poly& a, const Poly& b) const {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j)
        r[i + j] = f_.fq_add(r[i + j], f_.fq_mul(a[i], b[j]));
    }
    trim(r);
    return r;
  }

  Poly mod(Poly a, const Poly& m) const {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const Elem lead_inv = f_.fq_inv(m.back());
    while (a.size() > dm) {
      const Elem c = f_.fq_mul(a.back(), lead_inv);
      const std::size_t shift = a.size() - 1 - dm;
      for (std::size_t j = 0; j <= dm; ++j)
        a[shift + j] = f_.fq_add(a[shift + j], f_.fq_neg(f_.fq_mul(c, m[j])));
      trim(a);
    }
    return a;
  }

  Poly powmod(Poly base, std::uint64_t e, const Poly& m) const {
    Poly r{1};
    base = mod(base, m);
    while (e > 0) {
      if (e & 1) r = mod(mul(r, base), m);
      base = mod(mul(base, base), m);
      e >>= 1;
    }
    return r;
  }

  Poly gcd(Poly a, Poly b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      Poly r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return a;
  }

 private:
  const FieldTower& f_;
};

// Row reduction of a square F_q matrix; returns the inverse or nullopt.
std::optional<std::vector<Elem>> invert_fq(const FieldTower& f, std::vector<Elem> a, unsigned n) {
  std::vector<Elem> inv(n * n, 0);
  for (unsigned i = 0; i < n; ++i) inv[i * n + i] = 1;
  for (unsigned col = 0; col < n; ++col) {
    unsigned piv = col;
    while (piv < n && a[piv * n + col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != col) {
      for (unsigned j = 0; j < n; ++j) {
        std::swap(a[piv * n + j], a[col * n + j]);
        std::swap(inv[piv * n + j], inv[col * n + j]);
      }
    }
    const Elem s = f.fq_inv(a[col * n + col]);
    for (unsigned j = 0; j < n; ++j) {
      a[col * n + j] = f.fq_mul(a[col * n + j], s);
      inv[col * n + j] = f.fq_mul(inv[col * n + j], s);
    }
    for (unsigned i = 0; i < n; ++i) {
      if (i == col || a[i * n + col] == 0) continue;
      const Elem c = f.fq_neg(a[i * n + col]);
      for (unsigned j = 0; j < n; ++j) {
        a[i * n + j] = f.fq_add(a[i * n + j], f.fq_mul(c, a[col * n + j]));
        inv[i * n + j] = f.fq_add(inv[i * n + j], f.fq_mul(c, inv[col * n + j]));
      }
    }
  }
  return inv;
}

}  // namespace

std::optional<std::pair<unsigned, unsigned>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return std::make_pair(static_cast<unsigned>(q), 1u);
  unsigned e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(static_cast<unsigned>(p), e);
}

unsigned smallest_factor_degree(const FieldTower& fq, const FieldTower::Poly& f) {
  PolyRing ring(fq);
  const unsigned n = static_cast<unsigned>(f.size() - 1);
  const FieldTower::Poly x{0, 1};
  FieldTower::Poly h = ring.mod(x, f);
  for (unsigned i = 1; i <= n / 2; ++i) {
    h = ring.powmod(h, fq.q(), f);
    const auto g = ring.gcd(f, ring.sub(h, x));
    if (g.size() > 1) return i;
  }
  return n;
}

TowerPtr FieldTower::make(std::uint64_t q, unsigned m, std::optional<std::vector<Elem>> modulus) {
  const auto pp = prime_power(q);
  if (!pp) throw FieldError("q = " + std::to_string(q) + " is not a prime power");
  if (m < 1) throw FieldError("extension degree must be at least 1");
  std::uint64_t order = 1;
  for (unsigned i = 0; i < m; ++i) {
    order *= q;
    if (order > kMaxFieldOrder)
      throw FieldError("field order q^m exceeds 2^32");
  }

  std::shared_ptr<FieldTower> f(new FieldTower());
  f->q_ = q;
  f->m_ = m;
  f->p_ = pp->first;
  f->e_ = pp->second;
  f->order_ = order;
  if (f->e_ > 1) f->base_ = FieldTower::make(f->p_, f->e_);

  if (modulus) {
    auto& mod = *modulus;
    if (mod.size() != m + 1) throw FieldError("modulus must have degree m");
    if (mod.back() != 1) throw FieldError("modulus must be monic");
    for (Elem c : mod)
      if (c >= q) throw FieldError("modulus coefficient outside F_q");
    const unsigned d = smallest_factor_degree(*f, mod);
    if (d < m)
      throw FieldError("modulus is reducible: it has a factor of degree " + std::to_string(d));
    f->modulus_ = mod;
  } else {
    const std::uint64_t lower = order;  // q^m choices for the lower coefficients
    for (std::uint64_t code = 0; code < lower; ++code) {
      Poly cand(m + 1, 0);
      std::uint64_t c = code;
      for (unsigned j = 0; j < m; ++j) {
        cand[j] = static_cast<Elem>(c % q);
        c /= q;
      }
      cand[m] = 1;
      if (smallest_factor_degree(*f, cand) == m) {
        f->modulus_ = std::move(cand);
        break;
      }
    }
  }

  // Primitive element by order test.
  const std::uint64_t group = order - 1;
  const auto factors = prime_factors(group);
  auto pow_ref = [&](Elem a, std::uint64_t e) {
    Elem r = 1;
    while (e > 0) {
      if (e & 1) r = f->mul_reference(r, a);
      a = f->mul_reference(a, a);
      e >>= 1;
    }
    return r;
  };
  if (order == 2) {
    f->primitive_ = 1;
  } else {
    for (std::uint64_t g = 2; g < order; ++g) {
      bool ok = true;
      for (auto l : factors) {
        if (pow_ref(static_cast<Elem>(g), group / l) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        f->primitive_ = static_cast<Elem>(g);
        break;
      }
    }
  }
  if (order <= kTableLimit) f->build_tables();
  return f;
}

void FieldTower::build_tables() {
  const std::uint64_t n = order_ - 1;
  exp_.assign(2 * n, 0);
  log_.assign(order_, 0);
  Elem x = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    exp_[i] = x;
    exp_[i + n] = x;
    log_[x] = static_cast<std::uint32_t>(i);
    x = mul_reference(x, primitive_);
  }
  if (p_ != 2) {
    zech_.assign(n, -1);
    for (std::uint64_t i = 0; i < n; ++i) {
      const Elem s = add_digits(1, exp_[i]);
      zech_[i] = s == 0 ? -1 : static_cast<std::int64_t>(log_[s]);
    }
  }
}

Elem FieldTower::fq_add(Elem a, Elem b) const {
  if (p_ == 2) return a ^ b;
  if (e_ == 1) return static_cast<Elem>((a + b) % p_);
  return base_->add(a, b);
}
Elem FieldTower::fq_neg(Elem a) const {
  if (p_ == 2) return a;
  if (e_ == 1) return a == 0 ? 0 : p_ - a;
  return base_->neg(a);
}
Elem FieldTower::fq_mul(Elem a, Elem b) const {
  if (e_ == 1) return static_cast<Elem>((std::uint64_t{a} * b) % p_);
  return base_->mul(a, b);
}
Elem FieldTower::fq_inv(Elem a) const {
  if (a == 0) throw FieldError("inverse of zero");
  if (e_ == 1) {
    Elem r = 1, b = a;
    std::uint64_t e = p_ - 2;
    while (e > 0) {
      if (e & 1) r = fq_mul(r, b);
      b = fq_mul(b, b);
      e >>= 1;
    }
    return r;
  }
  return base_->inv(a);
}

Elem FieldTower::add_digits(Elem a, Elem b) const {
  if (p_ == 2) return a ^ b;
  Elem r = 0, scale = 1;
  while (a > 0 || b > 0) {
    const Elem d = (a % p_ + b % p_) % p_;
    r += d * scale;
    scale *= p_;
    a /= p_;
    b /= p_;
  }
  return r;
}

Elem FieldTower::neg_digits(Elem a) const {
  if (p_ == 2) return a;
  Elem r = 0, scale = 1;
  while (a > 0) {
    const Elem d = a % p_;
    r += (d == 0 ? 0 : p_ - d) * scale;
    scale *= p_;
    a /= p_;
  }
  return r;
}

Elem FieldTower::add(Elem a, Elem b) const {
  if (p_ == 2) return a ^ b;
  if (zech_.empty()) return add_digits(a, b);
  if (a == 0) return b;
  if (b == 0) return a;
  const std::uint64_t n = order_ - 1;
  const std::uint64_t la = log_[a];
  const std::uint64_t lb = log_[b];
  const std::uint64_t d = lb >= la ? lb - la : lb + n - la;
  const std::int64_t z = zech_[d];
  if (z < 0) return 0;
  return exp_[la + static_cast<std::uint64_t>(z)];
}

Elem FieldTower::neg(Elem a) const { return neg_digits(a); }

Elem FieldTower::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  if (!exp_.empty()) return exp_[std::uint64_t{log_[a]} + log_[b]];
  return mul_reference(a, b);
}

Elem FieldTower::mul_reference(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  std::vector<Elem> prod(2 * m_ - 1, 0);
  std::vector<Elem> ca(m_), cb(m_);
  for (unsigned j = 0; j < m_; ++j) {
    ca[j] = static_cast<Elem>(a % q_);
    a = static_cast<Elem>(a / q_);
    cb[j] = static_cast<Elem>(b % q_);
    b = static_cast<Elem>(b / q_);
  }
  for (unsigned i = 0; i < m_; ++i) {
    if (ca[i] == 0) continue;
    for (unsigned j = 0; j < m_; ++j)
      prod[i + j] = fq_add(prod[i + j], fq_mul(ca[i], cb[j]));
  }
  for (unsigned d = 2 * m_ - 2; d >= m_ && d < 2 * m_; --d) {
    const Elem c = prod[d];
    if (c == 0) continue;
    const Elem nc = fq_neg(c);
    for (unsigned j = 0; j < m_; ++j)
      prod[d - m_ + j] = fq_add(prod[d - m_ + j], fq_mul(nc, modulus_[j]));
    prod[d] = 0;
  }
  return from_coords(std::span<const Elem>(prod.data(), m_));
}

Elem FieldTower::inv(Elem a) const {
  if (a == 0) throw FieldError("inverse of zero");
  if (!exp_.empty()) {
    const std::uint64_t n = order_ - 1;
    return exp_[(n - log_[a]) % n];
  }
  return pow(a, order_ - 2);
}

Elem FieldTower::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (!exp_.empty()) {
    const std::uint64_t n = order_ - 1;
    const auto r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(log_[a]) * e) % n);
    return exp_[r];
  }
  Elem r = 1;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t FieldTower::log(Elem a) const {
  if (a == 0) throw FieldError("log of zero");
  if (exp_.empty()) throw FieldError("discrete log requires table mode");
  return log_[a];
}

Elem FieldTower::exp(std::uint64_t i) const { return pow(primitive_, i); }

Elem FieldTower::basis_element(unsigned j) const {
  if (j >= m_) throw FieldError("basis index out of range");
  return static_cast<Elem>(ipow(q_, j));
}

Elem FieldTower::coord(Elem a, unsigned j) const {
  return static_cast<Elem>((a / ipow(q_, j)) % q_);
}

std::vector<Elem> FieldTower::coords(Elem a) const {
  std::vector<Elem> c(m_);
  for (unsigned j = 0; j < m_; ++j) {
    c[j] = static_cast<Elem>(a % q_);
    a = static_cast<Elem>(a / q_);
  }
  return c;
}

Elem FieldTower::from_coords(std::span<const Elem> c) const {
  std::uint64_t r = 0;
  for (std::size_t j = c.size(); j-- > 0;) r = r * q_ + c[j];
  return static_cast<Elem>(r);
}

Elem FieldTower::subfield_generator(unsigned t) const {
  if (!has_subfield(t)) throw FieldError("F_{q^t} is not a subfield: t must divide m");
  return pow(primitive_, (order_ - 1) / (ipow(q_, t) - 1));
}

bool FieldTower::in_subfield(Elem a, unsigned t) const {
  if (!has_subfield(t)) throw FieldError("F_{q^t} is not a subfield: t must divide m");
  return pow(a, ipow(q_, t)) == a;
}

std::vector<Elem> FieldTower::subfield_elements(unsigned t) const {
  const Elem z = subfield_generator(t);
  const std::uint64_t n = ipow(q_, t) - 1;
  std::vector<Elem> out{0};
  Elem x = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    out.push_back(x);
    x = mul(x, z);
  }
  return out;
}

std::vector<Elem> FieldTower::subfield_basis(unsigned t) const {
  const Elem z = subfield_generator(t);
  std::vector<Elem> out;
  Elem x = 1;
  for (unsigned i = 0; i < t; ++i) {
    out.push_back(x);
    x = mul(x, z);
  }
  return out;
}

std::string FieldTower::describe_json() const {
  nlohmann::json j;
  j["q"] = q_;
  j["m"] = m_;
  j["modulus_coeffs"] = modulus_;
  j["gamma"] = "polynomial";
  return j.dump();
}

// ---------------------------------------------------------------------------

ComplementBasis::ComplementBasis(TowerPtr tower, unsigned t, std::vector<Elem> betas)
    : tower_(std::move(tower)), t_(t), betas_(std::move(betas)) {
  const FieldTower& f = *tower_;
  const unsigned m = f.m();
  if (!f.has_subfield(t)) throw FieldError("t must divide m");
  if (betas_.size() != m - t)
    throw FieldError("complement basis needs exactly m - t elements");
  subfield_basis_ = f.subfield_basis(t);
  std::vector<Elem> all = betas_;
  all.insert(all.end(), subfield_basis_.begin(), subfield_basis_.end());
  // Column i holds the Gamma-coordinates of basis element i.
  std::vector<Elem> mat(m * m, 0);
  for (unsigned i = 0; i < m; ++i)
    for (unsigned j = 0; j < m; ++j) mat[j * m + i] = f.coord(all[i], j);
  auto inv = invert_fq(f, mat, m);
  if (!inv) throw FieldError("betas together with F_{q^t} do not span F_{q^m}");
  inverse_ = std::move(*inv);
}

ComplementBasis ComplementBasis::greedy(TowerPtr tower, unsigned t) {
  const FieldTower& f = *tower;
  const unsigned m = f.m();
  if (!f.has_subfield(t)) throw FieldError("t must divide m");
  // Echelon form of accepted coordinate vectors, keyed by pivot coordinate.
  std::vector<std::vector<Elem>> rows(m);
  auto try_insert = [&](Elem a) {
    auto c = f.coords(a);
    for (unsigned j = m; j-- > 0;) {
      if (c[j] == 0) continue;
      if (rows[j].empty()) {
        const Elem s = f.fq_inv(c[j]);
        for (auto& x : c) x = f.fq_mul(x, s);
        rows[j] = std::move(c);
        return true;
      }
      const Elem k = f.fq_neg(c[j]);
      for (unsigned i = 0; i < m; ++i) c[i] = f.fq_add(c[i], f.fq_mul(k, rows[j][i]));
    }
    return false;
  };
  for (Elem s : f.subfield_basis(t)) try_insert(s);
  std::vector<Elem> betas;
  for (unsigned j = 0; j < m && betas.size() < m - t; ++j) {
    const Elem cand = f.basis_element(j);
    if (try_insert(cand)) betas.push_back(cand);
  }
  return ComplementBasis(std::move(tower), t, std::move(betas));
}

ComplementBasis ComplementBasis::from_betas(TowerPtr tower, unsigned t, std::vector<Elem> betas) {
  return ComplementBasis(std::move(tower), t, std::move(betas));
}

Elem ComplementBasis::project_beta(Elem w, std::size_t j) const {
  const FieldTower& f = *tower_;
  const unsigned m = f.m();
  Elem acc = 0;
  for (unsigned i = 0; i < m; ++i) {
    const Elem c = f.coord(w, i);
    if (c != 0) acc = f.fq_add(acc, f.fq_mul(inverse_[j * m + i], c));
  }
  return acc;
}

Elem ComplementBasis::project_subfield(Elem w) const {
  const FieldTower& f = *tower_;
  const std::size_t s = betas_.size();
  Elem acc = 0;
  for (unsigned l = 0; l < t_; ++l) {
    const Elem c = project_beta(w, s + l);
    if (c != 0) acc = f.add(acc, f.mul(c, subfield_basis_[l]));
  }
  return acc;
}

std::vector<Elem> ComplementBasis::beta_components(Elem w) const {
  std::vector<Elem> out;
  for (std::size_t j = 0; j < betas_.size(); ++j) out.push_back(project_beta(w, j));
  out.push_back(project_subfield(w));
  return out;
}

// ---------------------------------------------------------------------------

FieldEmbedding::FieldEmbedding(TowerPtr small, TowerPtr large)
    : small_(std::move(small)), large_(std::move(large)) {
  if (small_->q() != large_->q()) throw FieldError("embedding needs a common base field");
  if (large_->m() % small_->m() != 0)
    throw FieldError("source degree must divide target degree");
  const auto& mod = small_->modulus();
  std::optional<Elem> root;
  for (Elem a : large_->subfield_elements(small_->m())) {
    Elem acc = 0;
    for (std::size_t i = mod.size(); i-- > 0;) acc = large_->add(large_->mul(acc, a), mod[i]);
    if (acc == 0 && (!root || a < *root)) root = a;
  }
  if (!root) throw FieldError("no root of the source modulus in the target field");
  Elem x = 1;
  for (unsigned j = 0; j < small_->m(); ++j) {
    image_of_basis_.push_back(x);
    x = large_->mul(x, *root);
  }
}

Elem FieldEmbedding::operator()(Elem a) const {
  Elem acc = 0;
  for (unsigned j = 0; j < small_->m(); ++j) {
    const Elem c = small_->coord(a, j);
    if (c != 0) acc = large_->add(acc, large_->mul(c, image_of_basis_[j]));
  }
  return acc;
}

}  // namespace rsat
