#pragma once

// JSON / CSV / markdown interchange.

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "rsat/bounds.hpp"
#include "rsat/constructions.hpp"
#include "rsat/covering.hpp"

namespace rsat {

using nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json field_to_json(const FieldTower& f);

/// Element as its ascending coefficient vector over F_q.
json element_to_json(const FieldTower& f, Elem a);
Elem element_from_json(const FieldTower& f, const json& j);
json vector_to_json(const FieldTower& f, std::span<const Elem> v);
Vec vector_from_json(const FieldTower& f, const json& j);

/// {q, m, modulus, rows, cols, entries: [[coeff-vectors]]}.
json matrix_to_json(const Matrix& g);
/// Builds the tower from q, m and modulus. Throws ParseError on any
/// structural problem (missing keys, wrong sizes, reducible modulus, ...).
Matrix matrix_from_json(const json& j);
Matrix read_matrix_file(const std::string& path);

json linear_set_to_json(const FieldTower& f, const LinearSet& ls);

json certificate_to_json(const FieldTower& f, const SaturationCertificate& c);
SaturationCertificate certificate_from_json(const FieldTower& f, const json& j);

json profile_to_json(const CoverProfile& p, const FieldTower& f);

json decomposition_to_json(const FieldTower& f, const Decomposition& d);

/// "weight,count" lines in increasing weight.
std::string weight_spectrum_csv(const WeightSpectrum& s);

std::string bounds_csv(const BoundsTable& t);
json bounds_json(const BoundsTable& t);
std::string bounds_markdown(const BoundsTable& t);

}  // namespace rsat
