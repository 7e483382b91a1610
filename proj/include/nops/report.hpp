#pragma once

#include <string>

#include <json.hpp>

#include "nops/closures.hpp"

namespace nops {

using Json = nlohmann::ordered_json;

inline Json to_json(const NoetherianCertificate& cert, const VarList& vars) {
  Json j;
  j["status"] = to_string(cert.status);
  j["degree_bound"] = cert.degree_bound;
  Json ops = Json::array();
  for (const auto& op : cert.ops.ops) ops.push_back(to_string(op, vars));
  j["operators"] = ops;
  if (cert.ops.modulus) j["modulus"] = to_string(*cert.ops.modulus, vars);
  if (cert.witness) {
    j["witness"] = to_string(*cert.witness, vars);
    j["witness_side"] = cert.side == WitnessSide::in_ideal_not_killed ? "in_ideal_not_killed" : "killed_not_in_ideal";
  }
  if (!cert.note.empty()) j["note"] = cert.note;
  return j;
}

inline Json to_json(const ConstantRow& row, unsigned c_max, unsigned degree_bound, const VarList& vars) {
  Json j;
  j["J_id"] = row.j_id;
  j["n"] = row.n;
  j["c_min"] = row.c_min ? Json(*row.c_min) : Json(c_min_text(row, c_max));
  j["witness"] = row.witness ? Json(to_string(*row.witness, vars)) : Json(nullptr);
  j["degree_bound"] = degree_bound;
  return j;
}

inline Json to_json(const ConstantReport& rep, const VarList& vars) {
  Json j;
  j["parameters"] = {{"degree_bound", rep.degree_bound}, {"n_max", rep.n_max}, {"c_max", rep.c_max}};
  Json rows = Json::array();
  for (const auto& r : rep.rows) rows.push_back(to_json(r, rep.c_max, rep.degree_bound, vars));
  j["rows"] = rows;
  if (auto c = rep.aggregate()) j["aggregate_c"] = *c;
  else j["aggregate_c"] = "NOT_FOUND(<=" + std::to_string(rep.c_max) + ")";
  j["verdict"] = rep.verdict;
  return j;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline std::string to_csv(const ConstantReport& rep, const VarList& vars) {
  std::string out = "J_id,n,c_min,witness,degree_bound\n";
  for (const auto& r : rep.rows)
    out += csv_field(r.j_id) + "," + std::to_string(r.n) + "," + csv_field(c_min_text(r, rep.c_max)) + "," +
           csv_field(r.witness ? to_string(*r.witness, vars) : "") + "," + std::to_string(rep.degree_bound) + "\n";
  return out;
}

inline Json to_json(const SeparatingOperatorResult& res, const VarList& vars) {
  Json j;
  j["found"] = res.found;
  if (!res.found) return j;
  j["operator"] = to_string(res.delta, vars);
  j["order"] = res.order;
  j["coefficient_degree"] = res.coeff_degree;
  Json psi = Json::array();
  for (const auto& p : res.psi) psi.push_back(to_string(p, vars));
  j["psi"] = psi;
  j["d"] = res.d_value ? Json(to_string(*res.d_value, vars)) : Json(nullptr);
  j["d_consistent"] = res.d_consistent;
  if (res.inconsistent_generator) j["inconsistent_generator"] = to_string(*res.inconsistent_generator, vars);
  j["linearity"] = {{"passed", res.linearity_passed}, {"pairs", res.pairs_tested}, {"seed", res.seed}};
  if (res.linearity_witness)
    j["linearity"]["witness"] = {to_string(res.linearity_witness->first, vars),
                                 to_string(res.linearity_witness->second, vars)};
  return j;
}

inline Json to_json(const FiltrationReport& rep) {
  Json j;
  j["passed"] = rep.passed;
  j["length"] = rep.length;
  j["failures"] = rep.failures;
  j["assumption"] = rep.assumption;
  return j;
}

inline Json to_json(const ReverseCheck& r, const VarList& vars) {
  Json j;
  j["passed"] = r.passed;
  j["checked"] = r.checked;
  if (r.witness) j["witness"] = to_string(*r.witness, vars);
  return j;
}

}  // namespace nops
