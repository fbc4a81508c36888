#pragma once

// JSON forms:
//   lattice  {id?, basis: [names], gram: [[int]], relative?}
//   class    {lattice: id, coords: [int]}
//   model    {name, basis, gram, euler, sign, simply_connected, pi1_justification,
//             marked: {name: [int]}, sw: [{coords, value}], convention_note}
//   profile  {gram: [[int]], pairings: {className: [int]}}
// Integers that do not fit in 64 bits are written as decimal strings and
// accepted back in either form.

#include "fourcalc/fourmanifold.hpp"
#include "fourcalc/lattice.hpp"
#include "fourcalc/plumbing.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace fourcalc::io {

using json = nlohmann::ordered_json;

inline json to_json(const Integer& x) {
  if (auto v = to_int64(x)) return *v;
  return x.str();
}

inline Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) return Integer(j.get<std::string>());
  throw StructuralError("expected an integer, got " + j.dump());
}

inline json to_json(const std::vector<Integer>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline std::vector<Integer> vector_from_json(const json& j) {
  if (!j.is_array()) throw StructuralError("expected an integer array, got " + j.dump());
  std::vector<Integer> v;
  for (const auto& x : j) v.push_back(integer_from_json(x));
  return v;
}

inline json to_json(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

inline IntMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw StructuralError("expected a matrix, got " + j.dump());
  std::vector<std::vector<Integer>> rows;
  for (const auto& r : j) rows.push_back(vector_from_json(r));
  return IntMatrix::from_rows(rows);
}

inline json lattice_to_json(const IntersectionLattice& l) {
  json j;
  j["id"] = l.id();
  j["basis"] = l.labels();
  j["gram"] = to_json(l.gram());
  if (l.relative()) j["relative"] = true;
  return j;
}

inline LatticePtr lattice_from_json(const json& j) {
  return make_lattice(j.value("id", std::string("lattice")), j.at("basis").get<std::vector<std::string>>(),
                      matrix_from_json(j.at("gram")), j.value("relative", false));
}

inline json class_to_json(const HomologyClass& c) {
  return json{{"lattice", c.lattice()->id()}, {"coords", to_json(c.coords())}};
}

inline HomologyClass class_from_json(const json& j, const LatticePtr& lattice) {
  if (j.contains("lattice") && j.at("lattice").get<std::string>() != lattice->id())
    throw StructuralError("class refers to lattice '" + j.at("lattice").get<std::string>() + "', expected '" +
                          lattice->id() + "'");
  return HomologyClass(lattice, vector_from_json(j.at("coords")));
}

inline json model_to_json(const FourManifoldModel& x) {
  json j;
  j["name"] = x.name();
  j["basis"] = x.lattice()->labels();
  j["gram"] = to_json(x.lattice()->gram());
  j["euler"] = x.euler();
  j["sign"] = x.sign();
  j["simply_connected"] = x.simply_connected();
  j["pi1_justification"] = x.pi1_justification();
  json marked = json::object();
  for (const auto& [n, c] : x.marked()) marked[n] = to_json(c.coords());
  j["marked"] = std::move(marked);
  json sw = json::array();
  for (const auto& e : x.sw().entries()) sw.push_back(json{{"coords", to_json(e.cls.coords())}, {"value", to_json(e.value)}});
  j["sw"] = std::move(sw);
  j["convention_note"] = x.sw().convention_note();
  return j;
}

inline FourManifoldModel model_from_json(const json& j) {
  FourManifoldModel::Data d;
  d.name = j.at("name").get<std::string>();
  d.lattice = make_lattice(d.name, j.at("basis").get<std::vector<std::string>>(), matrix_from_json(j.at("gram")));
  d.euler = j.at("euler").get<std::int64_t>();
  d.sign = j.at("sign").get<std::int64_t>();
  d.simply_connected = j.value("simply_connected", false);
  d.pi1_justification = j.value("pi1_justification", std::string());
  if (j.contains("marked"))
    for (const auto& [n, v] : j.at("marked").items()) d.marked.emplace(n, HomologyClass(d.lattice, vector_from_json(v)));
  std::vector<SWTable::Entry> entries;
  if (j.contains("sw"))
    for (const auto& e : j.at("sw"))
      entries.push_back({HomologyClass(d.lattice, vector_from_json(e.at("coords"))), integer_from_json(e.at("value"))});
  d.sw = SWTable(d.lattice, entries, j.value("convention_note", std::string()));
  return FourManifoldModel(std::move(d));
}

inline json profile_to_json(const IntersectionProfile& p) {
  json pairings = json::object();
  for (const auto& [n, v] : p.pairings) pairings[n] = to_json(v);
  return json{{"gram", to_json(p.gram)}, {"pairings", std::move(pairings)}};
}

inline IntersectionProfile profile_from_json(const json& j) {
  IntersectionProfile p;
  p.gram = matrix_from_json(j.at("gram"));
  if (!p.gram.is_symmetric()) throw StructuralError("profile gram is not symmetric");
  for (const auto& [n, v] : j.at("pairings").items()) p.pairings.emplace(n, vector_from_json(v));
  return p;
}

}  // namespace fourcalc::io
