#pragma once

// Finite-field tower F_q <= F_{q^t} <= F_{q^m}.
//
// Elements of F_{q^m} are stored as integer codes: the element
//   a = c_0 + c_1 x + ... + c_{m-1} x^{m-1}   (c_j in F_q)
// has code sum_j c_j q^j, where each F_q coefficient is itself the code of an
// element of F_q (for q = p^e, a base-p digit string of a polynomial over F_p).
// With this layout the polynomial basis {1, x, ..., x^{m-1}} is the ordered
// basis Gamma, F_q sits inside F_{q^m} as the codes [0, q), and addition is
// digitwise in base p (xor for p = 2).

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsat {

using Elem = std::uint32_t;

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fields up to this order use log/antilog/Zech tables; larger ones fall back
/// to schoolbook polynomial arithmetic.
inline constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 32;

class FieldTower;
using TowerPtr = std::shared_ptr<const FieldTower>;

class FieldTower {
 public:
  /// Builds F_{q^m} over F_q. When `modulus` is empty the lexicographically
  /// first monic irreducible of degree m is used. Coefficients are ascending
  /// and must have length m + 1 with a leading 1.
  static TowerPtr make(std::uint64_t q, unsigned m,
                       std::optional<std::vector<Elem>> modulus = std::nullopt);

  std::uint64_t q() const { return q_; }
  unsigned m() const { return m_; }
  unsigned characteristic() const { return p_; }
  unsigned base_exponent() const { return e_; }
  /// |F_{q^m}|
  std::uint64_t order() const { return order_; }
  const std::vector<Elem>& modulus() const { return modulus_; }
  bool has_tables() const { return !exp_.empty(); }

  // Field operations on codes.
  Elem add(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem frobenius(Elem a) const { return pow(a, q_); }

  /// Schoolbook product; independent of the tables and used to build them.
  Elem mul_reference(Elem a, Elem b) const;

  /// A fixed primitive element (smallest code that generates F_{q^m}^*).
  Elem primitive() const { return primitive_; }
  /// gamma_j = x^j, the j-th polynomial basis element.
  Elem basis_element(unsigned j) const;
  /// Discrete log base primitive(); requires a != 0.
  std::uint64_t log(Elem a) const;
  Elem exp(std::uint64_t i) const;

  // Gamma-coordinates.
  Elem coord(Elem a, unsigned j) const;
  std::vector<Elem> coords(Elem a) const;
  Elem from_coords(std::span<const Elem> c) const;
  bool in_base_field(Elem a) const { return a < q_; }

  // Subfields F_{q^t}, t | m.
  bool has_subfield(unsigned t) const { return t >= 1 && m_ % t == 0; }
  /// g^((Q-1)/(q^t-1)): a primitive element of the embedded F_{q^t}.
  Elem subfield_generator(unsigned t) const;
  bool in_subfield(Elem a, unsigned t) const;
  std::vector<Elem> subfield_elements(unsigned t) const;

  /// The F_q-basis {1, z, ..., z^{t-1}} of the embedded F_{q^t} with z the
  /// subfield generator.
  std::vector<Elem> subfield_basis(unsigned t) const;

  /// Field description: {q, m, modulus_coeffs, gamma}.
  std::string describe_json() const;

  bool same_field(const FieldTower& other) const {
    return q_ == other.q_ && m_ == other.m_ && modulus_ == other.modulus_;
  }

  // Polynomials over F_q (ascending coefficient codes). Exposed for the
  // irreducibility machinery and tests.
  using Poly = std::vector<Elem>;
  Elem fq_add(Elem a, Elem b) const;
  Elem fq_mul(Elem a, Elem b) const;
  Elem fq_inv(Elem a) const;
  Elem fq_neg(Elem a) const;

 private:
  FieldTower() = default;
  void build_tables();
  Elem add_digits(Elem a, Elem b) const;
  Elem neg_digits(Elem a) const;

  std::uint64_t q_ = 0;
  unsigned m_ = 0;
  unsigned p_ = 0;
  unsigned e_ = 0;
  std::uint64_t order_ = 0;
  std::vector<Elem> modulus_;
  TowerPtr base_;  // F_q = F_p[y]/(...) when e > 1
  Elem primitive_ = 0;
  std::vector<Elem> exp_;             // size 2(Q-1)
  std::vector<std::uint32_t> log_;    // size Q
  std::vector<std::int64_t> zech_;    // log(1 + g^i), -1 if zero; odd p only
};

/// Smallest prime factor based test; returns {p, e} with q = p^e or nullopt.
std::optional<std::pair<unsigned, unsigned>> prime_power(std::uint64_t q);

/// Degree of the smallest irreducible factor of f over F_q, or deg f when f is
/// irreducible. f must be monic of degree >= 1.
unsigned smallest_factor_degree(const FieldTower& fq, const FieldTower::Poly& f);

/// Ordered F_q-basis extension: the (r-1)t elements beta_j completing an
/// F_q-basis of the embedded F_{q^t} to one of F_{q^m}.
class ComplementBasis {
 public:
  /// Greedy default: extend the subfield basis using powers of x.
  static ComplementBasis greedy(TowerPtr tower, unsigned t);
  /// Uses the given betas; throws FieldError when they do not complement.
  static ComplementBasis from_betas(TowerPtr tower, unsigned t, std::vector<Elem> betas);

  unsigned t() const { return t_; }
  const std::vector<Elem>& betas() const { return betas_; }
  const FieldTower& tower() const { return *tower_; }
  const TowerPtr& tower_ptr() const { return tower_; }

  /// pi_{beta_j}(w) in F_q.
  Elem project_beta(Elem w, std::size_t j) const;
  /// pi_{F_{q^t}}(w).
  Elem project_subfield(Elem w) const;
  /// All beta components followed by the subfield component.
  std::vector<Elem> beta_components(Elem w) const;

 private:
  ComplementBasis(TowerPtr tower, unsigned t, std::vector<Elem> betas);

  TowerPtr tower_;
  unsigned t_ = 0;
  std::vector<Elem> betas_;
  std::vector<Elem> subfield_basis_;
  // inverse_[i][j]: coordinate i (betas, then subfield basis) of w as an
  // F_q-combination of Gamma-coordinate j.
  std::vector<Elem> inverse_;
};

/// F_q-linear field embedding F_{q^a} -> F_{q^b} sending the defining root of
/// the small modulus to a root of it in the large field.
class FieldEmbedding {
 public:
  FieldEmbedding(TowerPtr small, TowerPtr large);
  Elem operator()(Elem a) const;
  const TowerPtr& source() const { return small_; }
  const TowerPtr& target() const { return large_; }

 private:
  TowerPtr small_;
  TowerPtr large_;
  std::vector<Elem> image_of_basis_;
};

}  // namespace rsat
