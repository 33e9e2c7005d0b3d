#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "disjoint/rota.hpp"

namespace disjoint {

// Instance file format:
//   {"n": 3, "field": "Q" | "GF(p)", "bases": [basis_1, ..., basis_n]}
// where basis_i is an array of n rows of n entries, row j being the vector at
// array position (i, j). Entries are JSON integers or decimal strings "a" / "a/b".
// A file may also hold a JSON array of such objects.

namespace detail {

inline Rational entry_from_json(const nlohmann::json& v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw std::invalid_argument("entry must be an integer or a decimal string, got " + v.dump());
}

}  // namespace detail

inline RotaInstance instance_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("instance must be a JSON object");
  for (const char* key : {"n", "field", "bases"})
    if (!doc.contains(key)) throw std::invalid_argument(std::string("instance is missing \"") + key + "\"");
  if (!doc.at("n").is_number_unsigned()) throw std::invalid_argument("\"n\" must be a non-negative integer");
  if (!doc.at("field").is_string()) throw std::invalid_argument("\"field\" must be a string");
  const auto n = doc.at("n").get<unsigned>();
  const FieldSpec field = FieldSpec::parse(doc.at("field").get<std::string>());
  const auto& bases_doc = doc.at("bases");
  if (!bases_doc.is_array() || bases_doc.size() != n)
    throw std::invalid_argument("\"bases\" must be an array of " + std::to_string(n) + " bases");

  std::vector<RationalMatrix> bases;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& basis = bases_doc[i];
    if (!basis.is_array() || basis.size() != n)
      throw std::invalid_argument("row " + std::to_string(i + 1) + " must hold " + std::to_string(n) + " vectors");
    RationalMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto& vec = basis[j];
      if (!vec.is_array() || vec.size() != n)
        throw std::invalid_argument("row " + std::to_string(i + 1) + ", vector " + std::to_string(j + 1) +
                                    " must have " + std::to_string(n) + " entries");
      for (std::size_t c = 0; c < n; ++c) m(j, c) = detail::entry_from_json(vec[c]);
    }
    bases.push_back(std::move(m));
  }
  return make_instance(field, std::move(bases));
}

inline nlohmann::json to_json(const RotaInstance& inst) {
  nlohmann::json bases = nlohmann::json::array();
  for (const auto& b : inst.bases) {
    nlohmann::json basis = nlohmann::json::array();
    for (std::size_t j = 0; j < b.rows(); ++j) {
      nlohmann::json vec = nlohmann::json::array();
      for (const auto& x : b.row(j)) vec.push_back(x.get_str(10));
      basis.push_back(std::move(vec));
    }
    bases.push_back(std::move(basis));
  }
  return {{"n", inst.n}, {"field", inst.field.to_string()}, {"bases", std::move(bases)}};
}

inline nlohmann::json to_json(const Transversal& t) { return t.choices; }

/// Parses one instance or an array of instances.
inline std::vector<RotaInstance> instances_from_json(const nlohmann::json& doc) {
  std::vector<RotaInstance> out;
  if (doc.is_array()) {
    for (const auto& item : doc) out.push_back(instance_from_json(item));
  } else {
    out.push_back(instance_from_json(doc));
  }
  return out;
}

inline std::vector<RotaInstance> load_instances(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open instance file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("instance file '" + path + "': " + e.what());
  }
  return instances_from_json(doc);
}

inline RotaInstance load_instance(const std::string& path) {
  auto all = load_instances(path);
  if (all.size() != 1)
    throw std::invalid_argument("instance file '" + path + "' holds " + std::to_string(all.size()) +
                                " instances, expected one");
  return std::move(all.front());
}

}  // namespace disjoint
