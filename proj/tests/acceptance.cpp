// Acceptance suite: one PASS/FAIL line per criterion. Each criterion checks
// the library result against an independent route (the brute-force oracle in
// oracle.hpp, a second library algorithm, or a closed-form value).

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "helpers.hpp"
#include "rsat/bounds.hpp"
#include "rsat/constructions.hpp"
#include "rsat/covering.hpp"

using namespace rsat;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (pass) note << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.note << "exception: " << e.what() << "; ";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) {
    out.pass = false;
    out.note << "over the " << limit_s << " s limit; ";
  }
  if (!out.pass) ++failures;
  std::printf("%s criterion %d: %s [%.2f s] %s\n", out.pass ? "PASS" : "FAIL", id, title.c_str(), secs,
              out.note.str().c_str());
  std::fflush(stdout);
}

std::string num(std::size_t v) { return std::to_string(v); }

auto rank_metric(const oracle::Field& o) {
  return [&o](const oracle::V& v) { return oracle::rank_weight(o, v); };
}

std::size_t oracle_saturation(const QSystem& sys) {
  const auto o = testutil::oracle_field(sys.field());
  return oracle::saturation_radius(o, testutil::rows_of(sys.generator()), sys.n());
}

}  // namespace

int main() {
  criterion(1, "Gabidulin G_{4,k,1} over F_16 has rank covering radius 4 - k", 30, [](Outcome& out) {
    const auto f = FieldTower::make(2, 4);
    const auto o = testutil::oracle_field(*f);
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto code = gabidulin(f, 4, k, 1);
      const std::size_t lib = rank_covering_radius(code);
      const std::size_t ref = oracle::coset_covering_radius(o, testutil::rows_of(code.generator()), 4, rank_metric(o));
      out.note << "k=" << k << ": " << lib << "/" << ref << "; ";
      out.require(lib == 4 - k && ref == 4 - k, "radius at k=" + num(k));
    }
  });

  criterion(2, "rho = 1 construction is saturating at dimension m(k-1)+1 and minimal at (2,2,2)", 60,
            [](Outcome& out) {
              for (auto [q, m, k] : std::vector<std::tuple<unsigned, unsigned, std::size_t>>{{2, 2, 2}, {2, 2, 3}, {3, 2, 2}}) {
                const auto f = FieldTower::make(q, m);
                Vec v(k, 0);
                v[0] = 1;
                const auto sys = construct_rho1(f, v, v);
                const std::size_t rho = saturation_radius(sys).rho;
                const std::size_t ref = oracle_saturation(sys);
                out.require(sys.n() == m * (k - 1) + 1, "dimension");
                out.require(rho == 1 && ref == 1, "radius at q=" + num(q) + " k=" + num(k));
              }
              const auto bf = brute_force_s(2, 2, 2, 1);
              out.note << "brute-force s(2,1) over F_4 = " << bf.n << "; ";
              out.require(bf.n == 3, "brute force");
            });

  criterion(3, "identity-block construction has radius exactly rho on the whole sweep", 300, [](Outcome& out) {
    std::size_t cases = 0, oracle_cases = 0;
    for (unsigned q : {2u, 3u})
      for (unsigned m = 1; m <= 3; ++m) {
        const auto f = FieldTower::make(q, m);
        for (std::size_t k = 1; k <= 4; ++k) {
          if (sat_pow(q, m * k) > (std::uint64_t{1} << 24)) continue;
          for (std::size_t rho = 1; rho <= std::min<std::size_t>(k, m); ++rho) {
            const auto sys = construct_identity_block(f, k, rho);
            const std::size_t r = saturation_radius(sys).rho;
            out.require(r == rho, "q=" + num(q) + " m=" + num(m) + " k=" + num(k) + " rho=" + num(rho));
            if (sat_pow(f->order(), sys.n()) <= (std::uint64_t{1} << 16)) {
              out.require(oracle_saturation(sys) == rho, "oracle at q=" + num(q) + " m=" + num(m) + " k=" + num(k));
              ++oracle_cases;
            }
            ++cases;
          }
        }
      }
    out.note << cases << " cases, " << oracle_cases << " also by exhaustive lambda; ";
  });

  criterion(4, "direct sum over F_16 (x^4 = x + 1) has radius 2 < 1 + 2", 60, [](Outcome& out) {
    const auto f = example_cutting_field();
    const Elem a = f->basis_element(1);
    const QSystem u1(Matrix::identity(f, 2));
    const QSystem u2(Matrix::from_rows(f, {{1, a, f->pow(a, 5)}}, 3));
    const auto sum = direct_sum(u1, u2);
    const std::size_t r1 = saturation_radius(u1).rho, r2 = saturation_radius(u2).rho;
    const std::size_t lib = saturation_radius(sum).rho;
    const std::size_t ref = oracle_saturation(sum);
    out.note << "summands " << r1 << ", " << r2 << "; sum " << lib << " (oracle " << ref << "); ";
    out.require(r1 == 2 && r2 == 1, "summand radii");
    out.require(lib == 2 && ref == 2, "sum radius");
  });

  // Shared by criteria 5 and 10.
  const auto cutting = example_cutting_6_3();
  const auto f256 = FieldTower::make(2, 8);
  const auto lifted = extend_scalars(cutting, f256);

  criterion(5, "[6,3] example: cutting, scattered with 63 points, 2-saturating over F_256", 300,
            [&](Outcome& out) {
              const auto o = testutil::oracle_field(cutting.field());
              const auto rows = testutil::rows_of(cutting.generator());
              std::size_t hyperplanes = 0;
              const std::size_t pass = oracle::cutting_hyperplanes(o, rows, 6, &hyperplanes);
              out.require(is_linear_cutting_blocking_set(cutting), "library cutting check");
              out.require(pass == 273 && hyperplanes == 273, "oracle hyperplane count");
              const auto ls = linear_set(cutting);
              out.require(is_scattered(ls) && ls.size() == 63, "scattered with 63 points");
              out.require(oracle::linear_set(o, rows, 6).size() == 63, "oracle point count");
              const std::size_t geo = saturation_radius_geometric(lifted);
              const auto prof = saturation_radius(lifted).profile;
              out.note << "hyperplanes " << pass << "/" << hyperplanes << ", points " << ls.size() << ", PG(2,256) has "
                       << projective_point_count(256, 3) << " points, geometric radius " << geo
                       << ", level-1 coverage " << prof.coverage.at(1) << "; ";
              out.require(geo == 2, "geometric radius");
              out.require(prof.coverage.at(1) < 1.0, "some point needs two");
            });

  criterion(6, "four characterisations agree on 50 random systems (q=2, m=2, k<=3, n<=5)", 120, [](Outcome& out) {
    const auto f = FieldTower::make(2, 2);
    const auto o = testutil::oracle_field(*f);
    std::mt19937_64 rng(2024);
    std::size_t done = 0;
    std::map<std::size_t, std::size_t> hist;
    while (done < 50) {
      const std::size_t k = 1 + rng() % 3;
      const std::size_t n = k + rng() % (std::min<std::size_t>(2 * k, 5) - k + 1);
      const QSystem sys(testutil::random_system_generator(f, k, n, rng));
      const std::size_t a = saturation_radius(sys).rho;
      const std::size_t b = saturation_radius_geometric(sys);
      const std::size_t c = rank_covering_radius(dual(associated_code(sys)));
      const std::size_t d = hamming_covering_radius(nullspace(projective_hamming_code(sys)));
      const std::size_t e = oracle::saturation_radius(o, testutil::rows_of(sys.generator()), n);
      out.require(a == b && b == c && c == d && d == e, "system " + num(done));
      ++hist[a];
      ++done;
    }
    out.note << "radius histogram:";
    for (auto [r, c] : hist) out.note << " " << r << "x" << c;
    out.note << "; ";
  });

  criterion(7, "subgeometry decomposition: exact, at most (r-1)t+1 terms, degenerate branches, tightness", 120,
            [](Outcome& out) {
              for (auto [q, r, t, h] : std::vector<std::tuple<unsigned, unsigned, unsigned, std::size_t>>{
                       {2, 2, 2, 1}, {2, 2, 2, 2}, {3, 2, 2, 1}}) {
                const auto f = FieldTower::make(q, r * t);
                const SubgeometryShape shape{r, t, h};
                const auto sys = construct_subgeometry(f, shape);
                const auto basis = ComplementBasis::greedy(f, t);
                const auto sub = f->subfield_elements(t);
                const std::size_t K = shape.head();
                std::mt19937_64 rng(7 * q + h);
                std::set<std::string> branches;
                std::size_t completions = 0;
                auto run = [&](const Vec& v) {
                  const auto d = decompose(sys, shape, v, basis);
                  out.require(verify_decomposition(sys, d) && d.length() <= K, "decomposition");
                  completions += d.used_span_completion;
                  for (const auto& l : d.trace) branches.insert(l.substr(0, l.find(':')));
                };
                for (int i = 0; i < 1000; ++i) {
                  Vec v(shape.k());
                  for (auto& x : v) x = random_element(*f, rng);
                  run(v);
                }
                // Vanishing beta projections everywhere, then only at the expected pivot.
                for (int i = 0; i < 100; ++i) {
                  Vec v(shape.k());
                  for (auto& x : v) x = sub[rng() % sub.size()];
                  run(v);
                  Vec w(shape.k(), 0);
                  w[0] = sub[1 + rng() % (sub.size() - 1)];
                  w[1] = f->add(basis.betas()[0], sub[rng() % sub.size()]);
                  run(w);
                }
                for (const char* b : {"pivot", "pivot-shift", "consume", "skip"})
                  out.require(branches.count(b) == 1, std::string("branch ") + b);

                Vec tight(shape.k(), 0);
                for (std::size_t i = 0; i < K; ++i) tight[i] = f->basis_element(static_cast<unsigned>(i));
                const auto d = decompose(sys, shape, tight, basis);
                out.require(verify_decomposition(sys, d) && d.length() == K, "tightness decomposition length");
                out.require(!find_saturating_lambda(sys, tight, K - 1), "tightness vector reachable with K-1");
                if (sat_pow(f->order(), sys.n()) <= (std::uint64_t{1} << 20)) {
                  const auto o = testutil::oracle_field(*f);
                  out.require(oracle::min_lambda_rank(o, testutil::rows_of(sys.generator()), sys.n(), tight) == K,
                              "oracle tightness");
                }
                out.note << "(" << q << "," << r << "," << t << "," << h << "): " << branches.size() << " branch kinds, "
                         << completions << " span completions; ";
              }
            });

  criterion(8, "bounds table re-derives every exact row with lower <= upper on q<=5, m<=12, k<=12", 10,
            [](Outcome& out) {
              const auto audit = audit_table({2, 3, 4, 5}, 12, 12);
              out.note << audit.cells << " cells;";
              for (const auto& [rule, count] : audit.exact_rows) out.note << " " << rule << ": " << count;
              out.note << "; ";
              out.require(audit.ok(), audit.ok() ? "" : audit.failures.front());
              // Independent arithmetic for the closed exact rows.
              for (std::uint64_t q : {2u, 3u, 4u, 5u})
                for (unsigned m = 1; m <= 12; ++m)
                  for (unsigned k = 1; k <= 12; ++k) {
                    out.require(exact_value(q, m, k, 1)->value == std::uint64_t{m} * (k - 1) + 1, "rho = 1 row");
                    if (k <= m) out.require(exact_value(q, m, k, k)->value == k, "rho = k row");
                  }
              for (unsigned r = 2; r <= 6; ++r)
                out.require(exact_value(2, 2 * r, 2 * r, 2 * r - 1)->value == 2 * r + 1, "s(2r, 2r-1) row");
              for (const char* rule : {"rho=1", "rho=k"}) {
                bool seen = false;
                for (const auto& [name, count] : audit.exact_rows) seen |= name.find(rule) != std::string::npos && count > 0;
                out.require(seen, std::string("rows for ") + rule);
              }
              out.require(audit.exact_rows.size() >= 4, "all four exact families present");
            });

  criterion(9, "bound-consistency oracle on 20 random codes and the Gabidulin chain", 60, [](Outcome& out) {
    std::mt19937_64 rng(99);
    std::size_t checks = 0;
    for (int i = 0; i < 20; ++i) {
      const unsigned q = i % 4 == 3 ? 3 : 2;
      const auto f = FieldTower::make(q, 2 + i % 2);
      const std::size_t n = 2 + rng() % 3;
      const std::size_t k = 1 + rng() % (n - 1);
      Matrix g;
      do g = random_matrix(f, k, n, rng);
      while (rank(g) != k);
      checks += check_bound_consistency(RankCode(g)).checked.size();
    }
    const auto f16 = FieldTower::make(2, 4);
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto c = gabidulin(f16, 4, k, 1);
      const auto d = gabidulin(f16, 4, k + 1, 1);
      const auto rep = check_bound_consistency(c, kDefaultBudget, &d);
      checks += rep.checked.size();
      out.require(rep.rho == 4 - k, "Gabidulin radius in chain");
      out.require(d.dimension() == 4 || min_rank_distance(d) == 4 - k, "supercode distance");
    }
    out.note << checks << " inequalities evaluated, none violated; ";
  });

  criterion(10, "[6,3] cutting set read over F_256 is rank-2-saturating (algebraic sweep)", 300, [&](Outcome& out) {
    const auto res = saturation_radius(lifted);
    const std::size_t k = cutting.k();
    out.note << "radius " << res.rho << ", certificate "
             << (verify_certificate(lifted, res.certificate).ok ? "verified" : "rejected") << "; ";
    out.require(res.rho == k - 1, "radius k - 1");
    out.require(verify_certificate(lifted, res.certificate).ok, "certificate");
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
