#include "rsat/io.hpp"

#include <fstream>
#include <sstream>

namespace rsat {

json field_to_json(const FieldTower& f) { return json::parse(f.describe_json()); }

json element_to_json(const FieldTower& f, Elem a) { return f.coords(a); }

Elem element_from_json(const FieldTower& f, const json& j) {
  if (!j.is_array() || j.size() != f.m())
    throw ParseError("field element must be an array of " + std::to_string(f.m()) + " coefficients");
  std::vector<Elem> c;
  for (const auto& x : j) {
    if (!x.is_number_unsigned() || x.get<std::uint64_t>() >= f.q())
      throw ParseError("coefficient outside F_" + std::to_string(f.q()));
    c.push_back(x.get<Elem>());
  }
  return f.from_coords(c);
}

json vector_to_json(const FieldTower& f, std::span<const Elem> v) {
  json out = json::array();
  for (Elem a : v) out.push_back(element_to_json(f, a));
  return out;
}

Vec vector_from_json(const FieldTower& f, const json& j) {
  if (!j.is_array()) throw ParseError("vector must be an array of field elements");
  Vec v;
  for (const auto& x : j) v.push_back(element_from_json(f, x));
  return v;
}

json matrix_to_json(const Matrix& g) {
  const FieldTower& f = g.field();
  json j;
  j["q"] = f.q();
  j["m"] = f.m();
  j["modulus"] = f.modulus();
  j["rows"] = g.rows();
  j["cols"] = g.cols();
  json entries = json::array();
  for (std::size_t i = 0; i < g.rows(); ++i) entries.push_back(vector_to_json(f, g.row(i)));
  j["entries"] = std::move(entries);
  return j;
}

Matrix matrix_from_json(const json& j) {
  try {
    if (!j.is_object()) throw ParseError("matrix JSON must be an object");
    for (const char* key : {"q", "m", "rows", "cols", "entries"})
      if (!j.contains(key)) throw ParseError(std::string("matrix JSON lacks \"") + key + "\"");
    const auto q = j.at("q").get<std::uint64_t>();
    const auto m = j.at("m").get<unsigned>();
    std::optional<std::vector<Elem>> modulus;
    if (j.contains("modulus") && !j.at("modulus").is_null()) modulus = j.at("modulus").get<std::vector<Elem>>();
    TowerPtr f;
    try {
      f = FieldTower::make(q, m, modulus);
    } catch (const FieldError& e) {
      throw ParseError(std::string("bad field: ") + e.what());
    }
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const json& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != rows) throw ParseError("entries must have `rows` rows");
    Matrix g(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      const Vec row = vector_from_json(*f, entries[i]);
      if (row.size() != cols) throw ParseError("row " + std::to_string(i) + " does not have `cols` entries");
      for (std::size_t c = 0; c < cols; ++c) g(i, c) = row[c];
    }
    return g;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed matrix JSON: ") + e.what());
  }
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return matrix_from_json(j);
}

json linear_set_to_json(const FieldTower& f, const LinearSet& ls) {
  json out = json::array();
  for (std::size_t i = 0; i < ls.size(); ++i)
    out.push_back({{"point", vector_to_json(f, ls.points[i])}, {"weight", ls.weights[i]}});
  return out;
}

json certificate_to_json(const FieldTower& f, const SaturationCertificate& c) {
  json j;
  std::ostringstream hash;
  hash << std::hex << c.system_hash;
  j["system_hash"] = hash.str();
  j["rho"] = c.rho;
  json w = json::array();
  for (const auto& x : c.witnesses)
    w.push_back({{"target", vector_to_json(f, x.target)}, {"lambda", vector_to_json(f, x.lambda)}});
  j["witnesses"] = std::move(w);
  j["tightness"] = c.tightness ? vector_to_json(f, *c.tightness) : json(nullptr);
  return j;
}

SaturationCertificate certificate_from_json(const FieldTower& f, const json& j) {
  try {
    SaturationCertificate c;
    c.system_hash = std::stoull(j.at("system_hash").get<std::string>(), nullptr, 16);
    c.rho = j.at("rho").get<std::size_t>();
    for (const auto& w : j.at("witnesses"))
      c.witnesses.push_back({vector_from_json(f, w.at("target")), vector_from_json(f, w.at("lambda"))});
    if (!j.at("tightness").is_null()) c.tightness = vector_from_json(f, j.at("tightness"));
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  } catch (const std::logic_error& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  }
}

json profile_to_json(const CoverProfile& p, const FieldTower& f) {
  json j;
  j["radius"] = p.radius;
  j["coverage"] = p.coverage;
  j["tightness"] = p.tightness ? vector_to_json(f, *p.tightness) : json(nullptr);
  return j;
}

json decomposition_to_json(const FieldTower& f, const Decomposition& d) {
  json j;
  j["target"] = vector_to_json(f, d.target);
  json terms = json::array();
  for (std::size_t i = 0; i < d.length(); ++i)
    terms.push_back({{"lambda", element_to_json(f, d.lambdas[i])}, {"u", vector_to_json(f, d.us[i])}});
  j["terms"] = std::move(terms);
  j["trace"] = d.trace;
  j["span_completion"] = d.used_span_completion;
  return j;
}

std::string weight_spectrum_csv(const WeightSpectrum& s) {
  std::ostringstream out;
  out << "weight,count\n";
  for (const auto& [w, c] : s.counts) out << w << ',' << c << '\n';
  return out.str();
}

namespace {

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string exact_cell(const BoundsEntry& e) { return e.exact ? std::to_string(*e.exact) : ""; }

}  // namespace

std::string bounds_csv(const BoundsTable& t) {
  std::ostringstream out;
  out << "q,m,k,rho,lower,lower_provenance,upper,upper_provenance,exact,exact_provenance\n";
  for (const auto& e : t.entries())
    out << e.q << ',' << e.m << ',' << e.k << ',' << e.rho << ',' << e.lower.value << ','
        << csv_quote(e.lower.provenance) << ',' << e.upper.value << ',' << csv_quote(e.upper.provenance) << ','
        << exact_cell(e) << ',' << csv_quote(e.exact_provenance) << '\n';
  return out.str();
}

json bounds_json(const BoundsTable& t) {
  json out = json::array();
  for (const auto& e : t.entries()) {
    json j = {{"q", e.q},
              {"m", e.m},
              {"k", e.k},
              {"rho", e.rho},
              {"lower", {{"value", e.lower.value}, {"provenance", e.lower.provenance}}},
              {"upper", {{"value", e.upper.value}, {"provenance", e.upper.provenance}}}};
    j["exact"] = e.exact ? json(*e.exact) : json(nullptr);
    if (e.exact) j["exact_provenance"] = e.exact_provenance;
    out.push_back(std::move(j));
  }
  return out;
}

std::string bounds_markdown(const BoundsTable& t) {
  std::ostringstream out;
  out << "| k | rho | lower | upper | exact | upper from |\n|---|---|---|---|---|---|\n";
  for (const auto& e : t.entries()) {
    std::string prov = e.upper.provenance;
    for (auto& c : prov)
      if (c == '|') c = '/';
    out << "| " << e.k << " | " << e.rho << " | " << e.lower.value << " | " << e.upper.value << " | "
        << (e.exact ? std::to_string(*e.exact) : "-") << " | " << prov << " |\n";
  }
  return out.str();
}

}  // namespace rsat
