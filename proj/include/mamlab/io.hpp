#pragma once

// JSON input files (schema 1) and the JSON forms of scalars, faces, points
// and intervals used in reports.
//
// Input layout:
//   {"schema": 1, "name": ..., "symbols": [{"name", "enclosure": [lo, hi],
//    "sqrt_of": q, "bits": b}], "n": int, "vectors": [[scalar, ...], ...],
//    "complex": {"m": int, "maximal_faces": [[int, ...], ...]},
//    "psi": [[{"re": scalar, "im": scalar}, ...], ...], "offsets": [scalar, ...],
//    "subspace_candidates": [[[rational, ...], ...], ...]}
// Scalars are expression strings or JSON integers; rationals are "p/q",
// decimal strings or JSON numbers.

#include <json.hpp>

#include <complex>
#include <string>
#include <vector>

#include "mamlab/error.hpp"
#include "mamlab/kahler.hpp"
#include "mamlab/problem.hpp"
#include "mamlab/scalar/interval.hpp"
#include "mamlab/scalar/parse.hpp"

namespace mamlab::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchema = 1;

// ---------------------------------------------------------------------------
// Reading

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
  return j.at(key);
}

inline const Json& array_field(const Json& j, const char* key, const std::string& where) {
  const Json& a = field(j, key, where);
  if (!a.is_array()) throw InputError(where + ": field '" + key + "' must be an array");
  return a;
}

inline long integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InputError(where + ": expected an integer");
  return j.get<long>();
}

}  // namespace detail

inline mpq_class read_rational(const Json& j) {
  if (j.is_string()) return parse_decimal(j.get<std::string>());
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  if (j.is_number_float()) return parse_decimal(j.dump());
  throw InputError("expected a rational number, got " + j.dump());
}

inline Scalar read_scalar(const Json& j, const SymbolTable& table) {
  if (j.is_string()) return parse_scalar(j.get<std::string>(), table);
  if (j.is_number()) return Scalar(read_rational(j));
  throw InputError("expected a scalar expression, got " + j.dump());
}

inline ScalarVector read_scalars(const Json& j, const SymbolTable& table) {
  if (!j.is_array()) throw InputError("expected an array of scalars");
  ScalarVector v;
  for (const auto& e : j) v.push_back(read_scalar(e, table));
  return v;
}

inline QVector read_rationals(const Json& j) {
  if (!j.is_array()) throw InputError("expected an array of rationals");
  QVector v;
  for (const auto& e : j) v.push_back(read_rational(e));
  return v;
}

inline Face read_face(const Json& j) {
  if (!j.is_array()) throw InputError("a face must be an array of vertex indices");
  std::vector<int> v;
  for (const auto& e : j) v.push_back(static_cast<int>(detail::integer(e, "face")));
  return make_face(std::move(v));
}

inline SymbolTable read_symbols(const Json& j) {
  SymbolTable t;
  if (j.is_null()) return t;
  if (!j.is_array()) throw InputError("'symbols' must be an array");
  for (const auto& s : j) {
    const std::string name = detail::field(s, "name", "symbol").get<std::string>();
    std::optional<mpq_class> radicand;
    if (s.contains("sqrt_of")) radicand = read_rational(s.at("sqrt_of"));
    if (s.contains("enclosure")) {
      const Json& e = s.at("enclosure");
      if (!e.is_array() || e.size() != 2) throw InputError("symbol '" + name + "': enclosure must be [lo, hi]");
      t.add(Symbol{name, read_rational(e[0]), read_rational(e[1]), radicand});
    } else if (radicand) {
      const int bits = s.contains("bits") ? static_cast<int>(detail::integer(s.at("bits"), "bits")) : 128;
      t.add_sqrt(name, *radicand, bits);
    } else {
      throw InputError("symbol '" + name + "' needs an enclosure or sqrt_of");
    }
  }
  return t;
}

inline SimplicialComplex read_complex(const Json& j) {
  const long m = detail::integer(detail::field(j, "m", "complex"), "complex.m");
  std::vector<Face> faces;
  for (const auto& f : detail::array_field(j, "maximal_faces", "complex")) faces.push_back(read_face(f));
  return SimplicialComplex(static_cast<int>(m), std::move(faces));
}

inline PsiMap read_psi(const Json& j, const SymbolTable& table, std::size_t m) {
  if (!j.is_array() || j.size() != m) throw InputError("'psi' must have one row per vector");
  PsiMap p;
  p.m = m;
  p.ell = m ? j[0].size() : 0;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != p.ell) throw InputError("'psi' rows must all have length ℓ");
    ComplexVector r;
    for (const auto& c : row) {
      if (!c.is_object()) throw InputError("Ψ entries are {\"re\": ..., \"im\": ...}");
      r.push_back({c.contains("re") ? read_scalar(c.at("re"), table) : Scalar(),
                   c.contains("im") ? read_scalar(c.at("im"), table) : Scalar()});
    }
    p.rows.push_back(std::move(r));
  }
  return p;
}

inline Problem read_problem(const Json& j) {
  if (!j.is_object()) throw InputError("input must be a JSON object");
  if (!j.contains("schema")) throw InputError("missing mandatory field 'schema'");
  if (!j.at("schema").is_number_integer() || j.at("schema").get<long>() != kSchema)
    throw InputError("unsupported schema " + j.at("schema").dump() + " (expected 1)");
  Problem p;
  p.name = j.contains("name") ? j.at("name").get<std::string>() : std::string("input");
  p.fan.table = read_symbols(j.contains("symbols") ? j.at("symbols") : Json());
  p.fan.complex = read_complex(detail::field(j, "complex", "input"));
  const long n = detail::integer(detail::field(j, "n", "input"), "n");
  if (n < 0) throw InputError("n must be nonnegative");
  p.fan.n = static_cast<std::size_t>(n);
  for (const auto& v : detail::array_field(j, "vectors", "input")) p.fan.vectors.push_back(read_scalars(v, p.fan.table));
  p.fan.check_shape();
  const std::size_t m = static_cast<std::size_t>(p.fan.m());
  if (j.contains("psi")) p.psi = read_psi(j.at("psi"), p.fan.table, m);
  if (j.contains("offsets")) {
    p.offsets = read_scalars(j.at("offsets"), p.fan.table);
    if (p.offsets->size() != m) throw InputError("'offsets' must have one entry per vector");
  }
  if (j.contains("subspace_candidates")) {
    for (const auto& space : j.at("subspace_candidates")) {
      std::vector<QVector> w;
      for (const auto& v : space) {
        w.push_back(read_rationals(v));
        if (w.back().size() != m) throw InputError("candidate vectors must have length m");
      }
      p.candidates.push_back(std::move(w));
    }
  }
  return p;
}

inline Problem parse_problem(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return read_problem(j);
}

inline PointC read_point(const Json& j) {
  if (!j.is_array()) throw InputError("a point is an array of {\"re\", \"im\"}");
  PointC z;
  for (const auto& c : j) {
    auto part = [&](const char* key) {
      if (!c.contains(key)) return 0.0;
      return c.at(key).is_string() ? parse_decimal(c.at(key).get<std::string>()).get_d() : c.at(key).get<double>();
    };
    z.emplace_back(part("re"), part("im"));
  }
  return z;
}

// ---------------------------------------------------------------------------
// Writing

inline Json rational(const mpq_class& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return q.get_str();
}

/// Constants print as rationals, everything else in the parenthesized form.
inline std::string scalar_text(const Scalar& s, const SymbolTable& t) {
  return s.is_rational() ? s.rational_value().get_str() : s.to_string(t);
}

inline Json scalar(const Scalar& s, const SymbolTable& t) {
  if (s.is_rational()) return rational(s.rational_value());
  return s.to_string(t);
}

inline Json scalars(const ScalarVector& v, const SymbolTable& t) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(scalar(s, t));
  return a;
}

inline Json rationals(const QVector& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(rational(q));
  return a;
}

inline Json integers(const std::vector<mpz_class>& v) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back(z.fits_slong_p() ? Json(z.get_si()) : Json(z.get_str()));
  return a;
}

inline Json face(const Face& f) { return Json(f); }

inline Json faces(const std::vector<Face>& fs) {
  Json a = Json::array();
  for (const auto& f : fs) a.push_back(face(f));
  return a;
}

inline Json complex_number(const Complex& c, const SymbolTable& t) {
  return Json{{"re", scalar(c.re, t)}, {"im", scalar(c.im, t)}};
}

inline Json interval(const Interval& x) { return Json{{"mid", x.midpoint()}, {"rad", x.radius()}}; }

inline Json point(const PointC& z) {
  Json a = Json::array();
  for (const auto& c : z) a.push_back(Json{{"re", c.real()}, {"im", c.imag()}});
  return a;
}

inline Json vector(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

inline Json symbols(const SymbolTable& t) {
  Json a = Json::array();
  for (const auto& s : t.symbols()) {
    Json e{{"name", s.name}, {"enclosure", Json::array({s.lo.get_str(), s.hi.get_str()})}};
    if (s.sqrt_radicand) e["sqrt_of"] = rational(*s.sqrt_radicand);
    a.push_back(std::move(e));
  }
  return a;
}

inline Json complex_data(const SimplicialComplex& k) {
  return Json{{"m", k.m()}, {"maximal_faces", faces(k.maximal_faces())}};
}

inline Json psi(const PsiMap& p, const SymbolTable& t) {
  Json rows = Json::array();
  for (const auto& r : p.rows) {
    Json row = Json::array();
    for (const auto& c : r) row.push_back(complex_number(c, t));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json problem(const Problem& p) {
  Json j{{"schema", kSchema}, {"name", p.name}};
  if (!p.fan.table.empty()) j["symbols"] = symbols(p.fan.table);
  j["n"] = p.fan.n;
  Json vs = Json::array();
  for (const auto& v : p.fan.vectors) vs.push_back(scalars(v, p.fan.table));
  j["vectors"] = std::move(vs);
  j["complex"] = complex_data(p.fan.complex);
  if (p.psi) j["psi"] = psi(*p.psi, p.fan.table);
  if (p.offsets) j["offsets"] = scalars(*p.offsets, p.fan.table);
  if (!p.candidates.empty()) {
    Json c = Json::array();
    for (const auto& w : p.candidates) {
      Json space = Json::array();
      for (const auto& v : w) space.push_back(rationals(v));
      c.push_back(std::move(space));
    }
    j["subspace_candidates"] = std::move(c);
  }
  return j;
}

}  // namespace mamlab::io
