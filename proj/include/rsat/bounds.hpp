#pragma once

// Bounds on s_{q^m/q}(k, rho), the least F_q-dimension of a rank-rho-saturating
// system in F_{q^m}^k.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rsat/budget.hpp"
#include "rsat/qsystem.hpp"

namespace rsat {

using BigInt = boost::multiprecision::cpp_int;

/// Number of b-dimensional subspaces of F_q^a; 0 when b > a.
BigInt gaussian_binomial(unsigned a, unsigned b, std::uint64_t q);

struct Bound {
  std::uint64_t value = 0;
  std::string provenance;
};

struct BoundsEntry {
  std::uint64_t q = 0;
  unsigned m = 0;
  unsigned k = 0;
  unsigned rho = 0;
  Bound lower;
  Bound upper;
  std::optional<std::uint64_t> exact;
  std::string exact_provenance;
};

/// max(closed-form bound, smallest n with [n rho]_q >= q^{m(k-rho)}, k).
/// Throws std::invalid_argument unless 1 <= rho <= min(k, m).
Bound lower_bound(std::uint64_t q, unsigned m, unsigned k, unsigned rho);

/// The best closed-form upper bound, before any closure.
Bound closed_form_upper(std::uint64_t q, unsigned m, unsigned k, unsigned rho);

/// Closed forms tightened by closure under the monotonicity and sum rules on
/// the grid k <= max(k, 12) + 2.
Bound upper_bound(std::uint64_t q, unsigned m, unsigned k, unsigned rho);

/// One row of the list of known exact values.
struct ExactRule {
  std::string name;
  std::string condition;
  std::function<std::optional<std::uint64_t>(std::uint64_t q, unsigned m, unsigned k, unsigned rho)> value;
};

const std::vector<ExactRule>& exact_rules();

struct ExactValue {
  std::uint64_t value;
  std::string rule;
};

std::optional<ExactValue> exact_value(std::uint64_t q, unsigned m, unsigned k, unsigned rho);

/// Condition of the r + 2 rows for s_{q^{2r}/q}(3, 2); returns the matching
/// row label ("a".."e") or nothing.
std::optional<std::string> s32_condition(std::uint64_t q, unsigned r);

/// All cells (k, rho) with k <= kmax, rho <= min(k, m, rhomax) for fixed q, m.
class BoundsTable {
 public:
  BoundsTable(std::uint64_t q, unsigned m, unsigned kmax, unsigned rhomax = 0);

  std::uint64_t q() const { return q_; }
  unsigned m() const { return m_; }
  const std::vector<BoundsEntry>& entries() const { return entries_; }
  const BoundsEntry& at(unsigned k, unsigned rho) const;
  /// Closure passes until the fixed point.
  unsigned closure_passes() const { return passes_; }

 private:
  std::uint64_t q_;
  unsigned m_;
  std::vector<BoundsEntry> entries_;
  std::map<std::pair<unsigned, unsigned>, std::size_t> index_;
  unsigned passes_ = 0;
};

/// Runs the upper-bound closure over the grid k <= kgrid and returns the
/// upper bounds keyed by (k, rho). Exposed for idempotence tests: feeding the
/// result back as the starting table must change nothing.
std::map<std::pair<unsigned, unsigned>, Bound> close_upper_bounds(
    std::uint64_t q, unsigned m, unsigned kgrid, std::map<std::pair<unsigned, unsigned>, Bound> start,
    unsigned* passes = nullptr);

/// Re-derivation of the known exact values from the bounds on a grid.
struct TableAudit {
  std::size_t cells = 0;
  /// Cells per exact rule name, each checked as lower = exact = upper.
  std::map<std::string, std::size_t> exact_rows;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Checks lower <= upper on every cell with q in `qs`, m <= mmax, k <= kmax,
/// and lower = exact = upper on every cell with a known exact value.
TableAudit audit_table(const std::vector<std::uint64_t>& qs, unsigned mmax, unsigned kmax);

struct BruteForceResult {
  std::size_t n = 0;
  std::optional<QSystem> witness;
  std::uint64_t subspaces_checked = 0;
};

/// Smallest n for which some spanning n-dimensional F_q-subspace of
/// F_{q^m}^k has saturation radius <= rho, by exhausting RREF bases of
/// F_q^{mk}. Throws BudgetExceeded (completed_level = last n fully ruled out)
/// when [mk n]_q exceeds the budget.
BruteForceResult brute_force_s(std::uint64_t q, unsigned m, unsigned k, unsigned rho,
                               std::uint64_t budget = kDefaultBudget);

/// Calls visit(rows) for each n-dimensional subspace of F_q^dim given by its
/// RREF basis (n rows of length dim, entries < q). Stops when visit returns
/// false; returns false in that case.
bool for_each_subspace(std::uint64_t q, unsigned dim, unsigned n,
                       const std::function<bool(const std::vector<std::vector<Elem>>&)>& visit);

}  // namespace rsat
