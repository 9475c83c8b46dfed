#pragma once

// JSON and CSV serialization of results.

#include <json.hpp>

#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include "trispec/certify.hpp"
#include "trispec/equilateral.hpp"
#include "trispec/fem.hpp"
#include "trispec/isosceles.hpp"
#include "trispec/report.hpp"

namespace trispec::io {

using json = nlohmann::ordered_json;

inline json to_json(const Check& c) {
  json j{{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"margin", c.margin}, {"verdict", to_string(c.verdict)}};
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

inline json to_json(const Report& r) {
  json j;
  j["claim"] = r.claim;
  j["verdict"] = to_string(r.verdict());
  for (const auto& [k, v] : r.info) j[k] = v;
  json w = json::object();
  for (const auto& [k, v] : r.witness) w[k] = v;
  j["witness"] = w;
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  j["checks"] = checks;
  return j;
}

inline json to_json(const equilateral::SpectrumTable& t) {
  json rows = json::array();
  for (const auto& e : t.entries)
    rows.push_back({{"rank", e.rank}, {"m", e.mode.m}, {"n", e.mode.n}, {"q", e.q}, {"lambda", e.lambda}});
  return {{"class", equilateral::to_string(t.mode_class)}, {"sidelength", t.sidelength}, {"entries", rows}};
}

inline json to_json(const fem::EigenResult& r) {
  json j{{"level", r.level}, {"iterations", r.iterations}};
  j["values"] = r.values;
  j["residuals"] = r.residuals;
  return j;
}

inline json to_json(const fem::Spectrum& s) {
  json j;
  j["levels"] = {s.coarse.level, s.fine.level};
  j["coarse"] = s.coarse.values;
  j["fine"] = s.fine.values;
  j["extrapolated"] = s.values;
  j["error_estimates"] = s.errors;
  return j;
}

inline json to_json(const certify::CertifiedInterval& c) {
  return {{"lambda_bar", c.lambda_bar}, {"epsilon", c.epsilon}, {"lower", c.lower}, {"upper", c.upper}};
}

inline json to_json(const fem::RayleighData& d) {
  json j{{"n", d.n}, {"gamma", d.gamma}, {"delta", d.delta}, {"gamma_fine", d.gamma_fine}, {"delta_fine", d.delta_fine}};
  j["eigenvalues"] = d.eigenvalues;
  return j;
}

inline json to_json(const isosceles::SweepTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"alpha", r.alpha},
                    {"lambda1", r.lambda1},
                    {"lambda_a", r.lambda_a},
                    {"lambda_s", r.lambda_s},
                    {"error1", r.error1},
                    {"error_a", r.error_a},
                    {"error_s", r.error_s}});
  return {{"scaling", isosceles::to_string(t.scaling)}, {"level", t.level}, {"rows", rows}};
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

namespace detail {
inline std::ostream& full_precision(std::ostream& os) {
  os << std::setprecision(17);
  return os;
}
}  // namespace detail

inline void write_csv(std::ostream& os, const equilateral::SpectrumTable& t) {
  detail::full_precision(os);
  os << "rank,m,n,q,lambda\n";
  for (const auto& e : t.entries) os << e.rank << ',' << e.mode.m << ',' << e.mode.n << ',' << e.q << ',' << e.lambda << '\n';
}

inline void write_csv(std::ostream& os, const isosceles::SweepTable& t) {
  detail::full_precision(os);
  os << "alpha,lambda1,lambda_a,lambda_s,error1,error_a,error_s\n";
  for (const auto& r : t.rows)
    os << r.alpha << ',' << r.lambda1 << ',' << r.lambda_a << ',' << r.lambda_s << ',' << r.error1 << ',' << r.error_a
       << ',' << r.error_s << '\n';
}

inline void write_csv(std::ostream& os, const Report& r) {
  detail::full_precision(os);
  os << "name,lhs,rhs,margin,verdict\n";
  for (const auto& c : r.checks) {
    std::string name = c.name;
    for (auto& ch : name)
      if (ch == ',') ch = ';';
    os << name << ',' << c.lhs << ',' << c.rhs << ',' << c.margin << ',' << to_string(c.verdict) << '\n';
  }
}

}  // namespace trispec::io
