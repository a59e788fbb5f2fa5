#include "scenarios.hpp"

#include <algorithm>
#include <random>

#include "rsat/bounds.hpp"
#include "rsat/constructions.hpp"
#include "rsat/covering.hpp"

namespace rsat::cli {

namespace {

std::string yes_no(bool b) { return b ? "true" : "false"; }

Scenario gabidulin_scenario(std::size_t k) {
  return {"gabidulin-4-" + std::to_string(k),
          {{"q", 2}, {"m", 4}, {"n", 4}, {"k", k}, {"i", 1}},
          "rank covering radius " + std::to_string(4 - k),
          "published",
          kDefaultBudget,
          [k](std::uint64_t budget) {
            const auto code = gabidulin(FieldTower::make(2, 4), 4, k, 1);
            const std::size_t rho = rank_covering_radius(code, budget);
            return ScenarioOutcome{rho == 4 - k, "radius " + std::to_string(rho)};
          }};
}

std::vector<Scenario> build() {
  std::vector<Scenario> out;
  for (std::size_t k = 1; k <= 3; ++k) out.push_back(gabidulin_scenario(k));

  out.push_back({"rho1-2-2-2",
                 {{"q", 2}, {"m", 2}, {"k", 2}},
                 "dimension 3, saturation radius 1",
                 "published",
                 kDefaultBudget,
                 [](std::uint64_t budget) {
                   const auto f = FieldTower::make(2, 2);
                   const Vec v{1, 0};
                   const auto sys = construct_rho1(f, v, v);
                   SaturationOptions o;
                   o.budget = budget;
                   const auto rho = saturation_radius(sys, o).rho;
                   return ScenarioOutcome{sys.n() == 3 && rho == 1,
                                          "n " + std::to_string(sys.n()) + ", radius " + std::to_string(rho)};
                 }});

  out.push_back({"identity-block-2-2-3-2",
                 {{"q", 2}, {"m", 2}, {"k", 3}, {"rho", 2}},
                 "dimension 4, saturation radius 2",
                 "published",
                 kDefaultBudget,
                 [](std::uint64_t budget) {
                   const auto sys = construct_identity_block(FieldTower::make(2, 2), 3, 2);
                   SaturationOptions o;
                   o.budget = budget;
                   const auto rho = saturation_radius(sys, o).rho;
                   return ScenarioOutcome{sys.n() == 4 && rho == 2,
                                          "n " + std::to_string(sys.n()) + ", radius " + std::to_string(rho)};
                 }});

  out.push_back({"remark-4.9",
                 {{"q", 2}, {"m", 4}, {"modulus", {1, 1, 0, 0, 1}}},
                 "summand radii 2 and 1, direct sum radius 2",
                 "published",
                 kDefaultBudget,
                 [](std::uint64_t budget) {
                   const auto f = example_cutting_field();
                   const Elem a = f->basis_element(1);
                   const QSystem u1(Matrix::identity(f, 2));
                   const QSystem u2(Matrix::from_rows(f, {{1, a, f->pow(a, 5)}}, 3));
                   SaturationOptions o;
                   o.budget = budget;
                   const auto r1 = saturation_radius(u1, o).rho;
                   const auto r2 = saturation_radius(u2, o).rho;
                   const auto r = saturation_radius(direct_sum(u1, u2), o).rho;
                   return ScenarioOutcome{r1 == 2 && r2 == 1 && r == 2,
                                          "radii " + std::to_string(r1) + ", " + std::to_string(r2) +
                                              ", sum " + std::to_string(r)};
                 }});

  out.push_back({"example-5.8",
                 {{"q", 2}, {"m", 4}, {"modulus", {1, 1, 0, 0, 1}}, {"extended_m", 8}},
                 "cutting, scattered with 63 points, radius 2 over F_256",
                 "published",
                 kDefaultBudget,
                 [](std::uint64_t budget) {
                   const auto sys = example_cutting_6_3();
                   const bool cutting = is_linear_cutting_blocking_set(sys, budget);
                   const auto ls = linear_set(sys, budget);
                   const bool scattered = is_scattered(ls);
                   SaturationOptions o;
                   o.budget = budget;
                   const auto rho = saturation_radius(extend_scalars(sys, FieldTower::make(2, 8)), o).rho;
                   return ScenarioOutcome{cutting && scattered && ls.size() == 63 && rho == 2,
                                          "cutting " + yes_no(cutting) + ", scattered " + yes_no(scattered) +
                                              ", points " + std::to_string(ls.size()) + ", radius " +
                                              std::to_string(rho)};
                 }});

  out.push_back({"remark-5.9",
                 {{"q", 2}, {"m", 4}},
                 "[8,4] system that is a cutting blocking set",
                 "published",
                 kDefaultBudget,
                 [](std::uint64_t budget) {
                   const auto sys = example_8_4(FieldTower::make(2, 4));
                   const bool cutting = is_linear_cutting_blocking_set(sys, budget);
                   return ScenarioOutcome{sys.n() == 8 && sys.k() == 4 && cutting, "cutting " + yes_no(cutting)};
                 }});

  out.push_back({"subgeometry-2-2-1",
                 {{"q", 2}, {"r", 2}, {"t", 2}, {"h", 1}},
                 "radius 3; 200 random targets decompose into <= 3 terms",
                 "published",
                 kDefaultBudget,
                 [](std::uint64_t budget) {
                   const SubgeometryShape shape{2, 2, 1};
                   const auto f = FieldTower::make(2, 4);
                   const auto sys = construct_subgeometry(f, shape);
                   const auto basis = ComplementBasis::greedy(f, shape.t);
                   std::mt19937_64 rng(7);
                   std::size_t bad = 0;
                   for (int i = 0; i < 200; ++i) {
                     Vec v(shape.k());
                     for (auto& x : v) x = random_element(*f, rng);
                     const auto d = decompose(sys, shape, v, basis);
                     if (!verify_decomposition(sys, d) || d.length() > shape.head()) ++bad;
                   }
                   SaturationOptions o;
                   o.budget = budget;
                   const auto rho = saturation_radius(sys, o).rho;
                   return ScenarioOutcome{bad == 0 && rho == 3,
                                          "radius " + std::to_string(rho) + ", bad decompositions " +
                                              std::to_string(bad)};
                 }});

  out.push_back({"search-2-2-2-1",
                 {{"q", 2}, {"m", 2}, {"k", 2}, {"rho", 1}},
                 "least dimension 3",
                 "derived",
                 kDefaultBudget,
                 [](std::uint64_t budget) {
                   const auto r = brute_force_s(2, 2, 2, 1, budget);
                   return ScenarioOutcome{r.n == 3, "n " + std::to_string(r.n)};
                 }});

  out.push_back({"table-diff",
                 {{"q", {2, 3, 4, 5}}, {"mmax", 12}, {"kmax", 12}},
                 "every listed exact value equals lower = upper; lower <= upper everywhere",
                 "published",
                 kDefaultBudget,
                 [](std::uint64_t) {
                   const auto audit = audit_table({2, 3, 4, 5}, 12, 12);
                   std::string msg = std::to_string(audit.cells) + " cells, " +
                                     std::to_string(audit.failures.size()) + " failures";
                   if (!audit.ok()) msg += "; first: " + audit.failures.front();
                   return ScenarioOutcome{audit.ok(), msg};
                 }});

  std::sort(out.begin(), out.end(), [](const Scenario& a, const Scenario& b) { return a.name < b.name; });
  return out;
}

}  // namespace

const std::vector<Scenario>& scenarios() {
  static const std::vector<Scenario> all = build();
  return all;
}

}  // namespace rsat::cli
