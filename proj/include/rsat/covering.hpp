#pragma once

// Covering radii and saturation.
//
// Every sweep here answers the same question for some r x n matrix A over
// F_{q^m}: what is the least w such that every target s in F_{q^m}^r equals
// A x for an x of rank weight (or Hamming weight) at most w? With A = G_U the
// answer is the saturation radius of U; with A = H it is the rank covering
// radius of the code with parity-check H.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsat/linalg.hpp"
#include "rsat/qsystem.hpp"

namespace rsat {

enum class Execution { Serial, Parallel };

/// Outcome of a layered covering sweep.
struct CoverProfile {
  std::size_t radius = 0;
  /// coverage[w]: fraction of F_{q^m}^r reached with weight <= w.
  std::vector<double> coverage;
  /// Lexicographically first target not reached at level radius - 1
  /// (absent when radius is 0).
  std::optional<Vec> tightness;
};

/// Rank-layered sweep: level w enumerates x = gamma M with M running over the
/// RREF bases of w-dimensional subspaces of F_q^n and gamma over projective
/// vectors of F_{q^m}^w, marking canonical targets in a shared bitset.
/// Throws BudgetExceeded (with the last completed level and its coverage)
/// when the next level would push the total work past `budget`.
CoverProfile rank_cover_profile(const Matrix& a, std::uint64_t budget = kDefaultBudget,
                                Execution exec = Execution::Parallel);

/// Straightforward single-threaded version of rank_cover_profile: nested
/// loops over every nonzero gamma with a plain byte map of all targets.
/// Kept as the reference the parallel kernel is tested and benchmarked against.
CoverProfile rank_cover_profile_reference(const Matrix& a, std::uint64_t budget = kDefaultBudget);

std::size_t rank_covering_radius(const RankCode& code, std::uint64_t budget = kDefaultBudget,
                                 Execution exec = Execution::Parallel);

// ---- saturation ------------------------------------------------------------

struct SaturationWitness {
  Vec target;
  /// lambda in F_{q^m}^n with G_U lambda = target and rank weight <= rho.
  Vec lambda;
};

struct SaturationCertificate {
  std::uint64_t system_hash = 0;
  std::size_t rho = 0;
  std::vector<SaturationWitness> witnesses;
  /// A target that no lambda of rank weight rho - 1 reaches.
  std::optional<Vec> tightness;
};

struct SaturationResult {
  std::size_t rho = 0;
  CoverProfile profile;
  SaturationCertificate certificate;
};

struct SaturationOptions {
  std::uint64_t budget = kDefaultBudget;
  Execution exec = Execution::Parallel;
  /// Random targets witnessed in addition to e_1..e_k and e_1 + ... + e_k.
  std::size_t random_witnesses = 8;
  std::uint64_t seed = 1;
};

SaturationResult saturation_radius(const QSystem& sys, const SaturationOptions& opts = {});

/// Same radius via spans of points of L_U covering PG(k-1, q^m).
std::size_t saturation_radius_geometric(const QSystem& sys, std::uint64_t budget = kDefaultBudget);

/// Searches lambda of rank weight at most max_weight with G_U lambda = target.
std::optional<Vec> find_saturating_lambda(const QSystem& sys, std::span<const Elem> target,
                                          std::size_t max_weight, std::uint64_t budget = kDefaultBudget);

struct CertificateCheck {
  bool ok = true;
  std::string message;
};

/// Re-verifies every witness and re-sweeps levels below rho for the
/// tightness vector.
CertificateCheck verify_certificate(const QSystem& sys, const SaturationCertificate& cert,
                                    std::uint64_t budget = kDefaultBudget);

/// FNV-1a over the field description and the entries.
std::uint64_t system_hash(const Matrix& g);

// ---- Hamming metric ----------------------------------------------------------

/// Hamming covering radius of the code generated by `generator`.
std::size_t hamming_covering_radius(const Matrix& generator, std::uint64_t budget = kDefaultBudget);

// ---- code-level checks -------------------------------------------------------

/// rho_rk(C) <= d_rk(C) - 1.
bool is_maximal(const RankCode& code, std::uint64_t budget = kDefaultBudget);

class BoundViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct BoundReport {
  std::size_t rho = 0;          // rho_rk(C)
  std::size_t rho_dual = 0;     // rho_rk(C dual)
  std::size_t distance = 0;     // d_rk(C), 0 for the zero code
  std::size_t external = 0;     // number of distinct nonzero rank weights
  std::vector<std::string> checked;
};

/// Evaluates the covering-radius inequalities on `code` (and on the pair
/// code < supercode when given). Throws BoundViolation naming the first
/// inequality that fails.
BoundReport check_bound_consistency(const RankCode& code, std::uint64_t budget = kDefaultBudget,
                                    const RankCode* supercode = nullptr);

/// Every F_{q^m}-hyperplane H satisfies <H cap U> = H.
bool is_linear_cutting_blocking_set(const QSystem& sys, std::uint64_t budget = kDefaultBudget);

/// Rank-support containment between codewords forces proportionality.
bool is_minimal_rank_code(const RankCode& code, std::uint64_t budget = kDefaultBudget);

/// Drops one vector from an F_q-basis of U that contains two vectors on the
/// same projective point. Throws SystemError for scattered systems.
QSystem puncture_nonscattered(const QSystem& sys, std::uint64_t budget = kDefaultBudget);

}  // namespace rsat
