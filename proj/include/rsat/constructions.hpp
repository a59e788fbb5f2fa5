#pragma once

// Explicit systems and codes, and the constructive decomposition for the
// subgeometry systems.

#include <string>
#include <vector>

#include "rsat/qsystem.hpp"

namespace rsat {

/// U = <v'>_{F_q} + <v>^perp: an [m(k-1)+1, k] system whose linear set is all
/// of PG(k-1, q^m). Requires v != 0 and v . v' != 0.
QSystem construct_rho1(const TowerPtr& f, std::span<const Elem> v, std::span<const Elem> v_prime);

/// Generator [I_rho (+) (I_{k-rho} | x I_{k-rho} | ... | x^{m-1} I_{k-rho})],
/// an [m(k-rho)+rho, k] system. Requires 1 <= rho <= min(k, m).
QSystem construct_identity_block(const TowerPtr& f, std::size_t k, std::size_t rho);

/// Shape of a subgeometry system over F_{q^{rt}}.
struct SubgeometryShape {
  unsigned r = 2;
  unsigned t = 2;
  std::size_t h = 0;
  std::size_t head() const { return static_cast<std::size_t>(r - 1) * t + 1; }
  std::size_t k() const { return head() + h; }
  std::size_t n() const { return head() + static_cast<std::size_t>(t) * h; }
};

/// Generator [I_{(r-1)t+1} (+) (I_h | z I_h | ... | z^{t-1} I_h)] with z the
/// generator of the embedded F_{q^t}. The tower must have m = r t.
QSystem construct_subgeometry(const TowerPtr& f, const SubgeometryShape& shape);

/// v = sum_i lambdas[i] * us[i] with every us[i] in U.
struct Decomposition {
  Vec target;
  std::vector<Elem> lambdas;
  std::vector<Vec> us;
  /// Branches taken, in order: "pivot", "pivot-shift:<i>", "consume:<i>",
  /// "skip", "final", "final-tail", "final-split", "final-empty",
  /// "span-completion".
  std::vector<std::string> trace;
  bool used_span_completion = false;

  std::size_t length() const { return lambdas.size(); }
};

/// Writes v as a combination of at most (r-1)t+1 vectors of the subgeometry
/// system. The projection-and-eliminate recursion runs first; when its
/// residual cannot be finished in a single term, a span completion over F_q
/// produces the terms instead.
Decomposition decompose(const QSystem& sys, const SubgeometryShape& shape, std::span<const Elem> v,
                        const ComplementBasis& basis);

/// Checks sum lambda_i u_i = target and membership of every u_i.
bool verify_decomposition(const QSystem& sys, const Decomposition& d);

/// Generator of the f-sum {(u, f(u) + w)}: [[G1, G1 F], [0, G2]] with F an
/// n1 x n2 matrix (row-vector convention u -> u F).
QSystem f_sum(const QSystem& s1, const QSystem& s2, const Matrix& f_map);
QSystem direct_sum(const QSystem& s1, const QSystem& s2);
/// F = identity; requires n1 = n2.
QSystem plotkin_sum(const QSystem& s1, const QSystem& s2);

/// Generalized Gabidulin code with rows alpha_j^{q^{i s}}, s = 0..k-1.
RankCode gabidulin(const TowerPtr& f, std::size_t k, unsigned i, std::span<const Elem> alpha);
/// alpha = (1, x, ..., x^{n-1}).
RankCode gabidulin(const TowerPtr& f, std::size_t n, std::size_t k, unsigned i = 1);

/// F_16 with modulus x^4 + x + 1, the field of the [6,3] cutting blocking set.
TowerPtr example_cutting_field();
/// The [6,3]_{16/2} linear cutting blocking set. When `field` is given it must
/// be F_16 with modulus x^4 + x + 1.
QSystem example_cutting_6_3(const TowerPtr& field = nullptr);

/// The [8,4]_{q^4/q} system {(x, y, x^q + y^{q^2}, x^{q^2} + y^q + y^{q^2})}
/// over a tower with m = 4.
QSystem example_8_4(const TowerPtr& f);

/// The same generator with entries mapped into a larger field containing the
/// original one.
QSystem extend_scalars(const QSystem& sys, const TowerPtr& large);

}  // namespace rsat
