#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "rsat/bounds.hpp"
#include "rsat/constructions.hpp"
#include "rsat/covering.hpp"
#include "rsat/io.hpp"

using namespace rsat;

TEST_SUITE("io") {
  TEST_CASE("matrix JSON round trip") {
    std::mt19937_64 rng(41);
    for (auto [q, m] : std::vector<std::pair<unsigned, unsigned>>{{2, 4}, {3, 3}, {4, 2}}) {
      const auto f = FieldTower::make(q, m);
      const Matrix a = random_matrix(f, 3, 4, rng);
      const Matrix b = matrix_from_json(json::parse(matrix_to_json(a).dump()));
      CHECK(b == a);
      CHECK(b.field().modulus() == f->modulus());
    }
    const auto e = example_cutting_6_3();
    const auto j = matrix_to_json(e.generator());
    CHECK(j.at("modulus") == json::array({1, 1, 0, 0, 1}));
    CHECK(j.at("entries").at(0).at(0) == json::array({1, 1, 0, 0}));  // x^4 = 1 + x
  }

  TEST_CASE("malformed matrix JSON raises ParseError") {
    CHECK_THROWS_AS(matrix_from_json(json::array()), ParseError);
    CHECK_THROWS_AS(matrix_from_json(json{{"q", 2}, {"m", 2}}), ParseError);
    CHECK_THROWS_AS(matrix_from_json(json{{"q", 6}, {"m", 2}, {"rows", 0}, {"cols", 0}, {"entries", json::array()}}),
                    ParseError);
    CHECK_THROWS_AS(matrix_from_json(json{{"q", 2}, {"m", 2}, {"rows", 1}, {"cols", 1}, {"entries", {{{1, 2}}}}}),
                    ParseError);
    CHECK_THROWS_AS(matrix_from_json(json{{"q", 2}, {"m", 2}, {"rows", 2}, {"cols", 1}, {"entries", {{{1, 0}}}}}),
                    ParseError);
    CHECK_THROWS_AS(
        matrix_from_json(json{{"q", 2}, {"m", 2}, {"modulus", {1, 0, 1}}, {"rows", 0}, {"cols", 0}, {"entries", json::array()}}),
        ParseError);
    CHECK_THROWS_AS(matrix_from_json(json{{"q", "two"}, {"m", 2}, {"rows", 0}, {"cols", 0}, {"entries", json::array()}}),
                    ParseError);
    CHECK_THROWS_AS(read_matrix_file("/nonexistent/matrix.json"), ParseError);
  }

  TEST_CASE("certificate round trip re-verifies") {
    const auto f = FieldTower::make(2, 2);
    const auto sys = construct_identity_block(f, 3, 2);
    const auto res = saturation_radius(sys);
    const auto j = certificate_to_json(*f, res.certificate);
    CHECK(j.at("system_hash").is_string());
    const auto back = certificate_from_json(*f, json::parse(j.dump()));
    CHECK(back.rho == res.certificate.rho);
    CHECK(back.system_hash == res.certificate.system_hash);
    CHECK(back.witnesses.size() == res.certificate.witnesses.size());
    CHECK(back.tightness == res.certificate.tightness);
    CHECK(verify_certificate(sys, back).ok);
    CHECK_THROWS_AS(certificate_from_json(*f, json{{"rho", 1}}), ParseError);
  }

  TEST_CASE("profile, linear set and decomposition JSON") {
    const auto f = FieldTower::make(2, 2);
    const auto sys = construct_identity_block(f, 2, 1);
    const auto p = profile_to_json(saturation_radius(sys).profile, *f);
    CHECK(p.at("radius") == 1);
    CHECK(p.at("coverage").size() == 2);
    const auto ls = linear_set_to_json(*f, linear_set(sys));
    CHECK(ls.size() == 5);
    CHECK(ls.at(0).at("weight") == 2);  // (0, 1) carries both e_2 and x e_2

    const auto f16 = FieldTower::make(2, 4);
    const SubgeometryShape shape{2, 2, 1};
    const auto sub = construct_subgeometry(f16, shape);
    const auto d = decompose(sub, shape, Vec{1, 2, 4, 3}, ComplementBasis::greedy(f16, 2));
    const auto dj = decomposition_to_json(*f16, d);
    CHECK(dj.at("terms").size() == d.length());
    CHECK(dj.at("trace").size() == d.trace.size());
  }

  TEST_CASE("CSV and markdown renderings") {
    const auto spec = weight_spectrum(gabidulin(FieldTower::make(2, 4), 4, 2, 1));
    const auto csv = weight_spectrum_csv(spec);
    CHECK(csv.rfind("weight,count\n", 0) == 0);
    CHECK(csv.find("3,225") != std::string::npos);
    CHECK(csv.find("4,30") != std::string::npos);

    const BoundsTable t(2, 3, 3);
    const auto bc = bounds_csv(t);
    CHECK(bc.rfind("q,m,k,rho,", 0) == 0);
    std::size_t lines = 0;
    for (char c : bc) lines += c == '\n';
    CHECK(lines == t.entries().size() + 1);
    CHECK(bounds_json(t).size() == t.entries().size());
    CHECK(bounds_markdown(t).find("| k |") != std::string::npos);
  }
}
