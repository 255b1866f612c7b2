#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "helly/operator_family.hpp"
#include "helly/set_family.hpp"
#include "helly/subspace.hpp"

namespace helly {

using json = nlohmann::json;

/// All scalars cross the file boundary as strings ("3", "-1/2"), never as
/// JSON numbers, so exactness survives any JSON tooling.  nlohmann objects
/// keep keys sorted, which makes every emitted document byte-stable.

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open \"" + path + "\"");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw input_error("\"" + path + "\": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write \"" + path + "\"");
  out << text;
  if (!out) throw input_error("failed writing \"" + path + "\"");
}

inline json field_to_json(const FieldSpec& field) {
  if (field.is_rationals()) return "Q";
  return json{{"GF", field.modulus()}};
}

inline FieldSpec field_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "Q") return FieldSpec::rationals();
    throw input_error("field string must be \"Q\", got \"" + j.get<std::string>() + "\"");
  }
  if (j.is_object() && j.contains("GF") && j["GF"].is_number_integer()) {
    return FieldSpec::gf(j["GF"].get<std::int64_t>());
  }
  throw input_error("field must be \"Q\" or {\"GF\": p}");
}

/// Command-line field syntax: "Q" or "GF:p".
inline FieldSpec parse_field_arg(const std::string& text) {
  if (text == "Q") return FieldSpec::rationals();
  if (text.rfind("GF:", 0) == 0) {
    const std::string digits = text.substr(3);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw input_error("field must be Q or GF:p, got \"" + text + "\"");
    }
    return FieldSpec::gf(std::stoll(digits));
  }
  throw input_error("field must be Q or GF:p, got \"" + text + "\"");
}

inline json vector_to_json(const Vector& v) {
  json out = json::array();
  for (const Scalar& s : v) out.push_back(s.format());
  return out;
}

inline Vector vector_from_json(const json& j, const FieldSpec& field, std::size_t dim,
                               const std::string& what) {
  if (!j.is_array() || j.size() != dim) {
    throw input_error(what + " must be an array of " + std::to_string(dim) + " scalar strings");
  }
  Vector v;
  v.reserve(dim);
  for (const json& e : j) {
    if (!e.is_string()) throw input_error(what + ": scalars must be strings");
    v.push_back(Scalar::parse(e.get<std::string>(), field));
  }
  return v;
}

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(vector_to_json(m.row(r)));
  return rows;
}

inline Matrix matrix_from_json(const json& j, const FieldSpec& field, std::size_t dim,
                               const std::string& what) {
  if (!j.is_array() || j.size() != dim) {
    throw input_error(what + " must be a " + std::to_string(dim) + "x" +
                      std::to_string(dim) + " array");
  }
  std::vector<Vector> rows;
  for (std::size_t r = 0; r < dim; ++r) {
    rows.push_back(vector_from_json(j[r], field, dim, what + " row " + std::to_string(r)));
  }
  return Matrix::from_rows(field, rows, dim);
}

inline json family_to_json(const OperatorFamily& fam) {
  json ops = json::array();
  for (const NamedOperator& op : fam.operators()) {
    ops.push_back(json{{"name", op.name}, {"matrix", matrix_to_json(op.matrix)}});
  }
  return json{{"field", field_to_json(fam.field())},
              {"dim", fam.dim()},
              {"operators", ops}};
}

inline OperatorFamily family_from_json(const json& j) {
  if (!j.is_object() || !j.contains("field") || !j.contains("dim") || !j.contains("operators")) {
    throw input_error("family file needs \"field\", \"dim\" and \"operators\"");
  }
  FieldSpec field = field_from_json(j["field"]);
  if (!j["dim"].is_number_unsigned() && !j["dim"].is_number_integer()) {
    throw input_error("\"dim\" must be an integer");
  }
  std::size_t dim = j["dim"].get<std::size_t>();
  if (!j["operators"].is_array()) throw input_error("\"operators\" must be an array");
  std::vector<NamedOperator> ops;
  for (const json& e : j["operators"]) {
    if (!e.is_object() || !e.contains("name") || !e.contains("matrix") ||
        !e["name"].is_string()) {
      throw input_error("each operator needs a \"name\" string and a \"matrix\"");
    }
    std::string name = e["name"].get<std::string>();
    ops.push_back({name, matrix_from_json(e["matrix"], field, dim, "operator \"" + name + "\"")});
  }
  return OperatorFamily(field, dim, std::move(ops));
}

inline OperatorFamily load_family(const std::string& path) {
  return family_from_json(read_json_file(path));
}

inline void save_family(const OperatorFamily& fam, const std::string& path) {
  write_text_file(path, family_to_json(fam).dump(2) + "\n");
}

inline json set_family_to_json(const SetFamily& fam) {
  json members = json::array();
  for (SetMask m : fam.members()) {
    json elems = json::array();
    for (int e : mask_elements(m)) elems.push_back(e);
    members.push_back(elems);
  }
  return json{{"q", fam.q()}, {"members", members}};
}

inline SetFamily set_family_from_json(const json& j) {
  if (!j.is_object() || !j.contains("q") || !j.contains("members")) {
    throw input_error("set family file needs \"q\" and \"members\"");
  }
  if (!j["q"].is_number_integer()) throw input_error("\"q\" must be an integer");
  int q = j["q"].get<int>();
  if (!j["members"].is_array()) throw input_error("\"members\" must be an array");
  std::vector<SetMask> members;
  for (const json& e : j["members"]) {
    if (!e.is_array()) throw input_error("each member must be an array of elements");
    std::vector<int> elems;
    for (const json& x : e) {
      if (!x.is_number_integer()) throw input_error("set elements must be integers");
      elems.push_back(x.get<int>());
    }
    members.push_back(mask_from_elements(q, elems));
  }
  return SetFamily(q, std::move(members));
}

inline SetFamily load_set_family(const std::string& path) {
  return set_family_from_json(read_json_file(path));
}

inline json subspace_to_json(const Subspace& s) {
  return matrix_to_json(s.basis());
}

/// A subspace file entry is a list of basis rows; the span is canonicalized
/// on load, so any spanning set denotes the same subspace.
inline Subspace subspace_from_json(const json& j, const FieldSpec& field, std::size_t dim,
                                   const std::string& what) {
  if (!j.is_array()) throw input_error(what + " must be an array of basis rows");
  std::vector<Vector> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    rows.push_back(vector_from_json(j[r], field, dim, what + " row " + std::to_string(r)));
  }
  return Subspace::span(field, dim, rows);
}

inline std::vector<Subspace> subspaces_from_json(const json& j, const FieldSpec& field,
                                                 std::size_t dim) {
  if (!j.is_array()) throw input_error("subspace file must be a JSON array of subspaces");
  std::vector<Subspace> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(subspace_from_json(j[i], field, dim, "subspace " + std::to_string(i)));
  }
  return out;
}

}  // namespace helly
