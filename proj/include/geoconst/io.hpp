#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "geoconst/audit.hpp"
#include "geoconst/constants.hpp"
#include "geoconst/error.hpp"
#include "geoconst/norm_spec.hpp"

namespace geoconst {

using ordered_json = nlohmann::ordered_json;

/// Canonical serialized form of a real: 12 significant digits, below the
/// estimator noise floor and above every comparison tolerance.
inline double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

inline std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// ---------------------------------------------------------------------------
// norm spec files

inline NormSpec norm_spec_from_json(const ordered_json& j) {
  auto need = [&](const char* key) -> const ordered_json& {
    if (!j.contains(key))
      throw Error(Errc::ParseError, std::string("$.") + key + ": missing field");
    return j.at(key);
  };
  NormSpec spec;
  const auto& fam = need("family");
  if (!fam.is_string()) throw Error(Errc::ParseError, "$.family: expected string");
  const std::string f = fam.get<std::string>();
  if (f == "lp")
    spec.family = NormFamily::Lp;
  else if (f == "wlp")
    spec.family = NormFamily::WeightedLp;
  else if (f == "linf")
    spec.family = NormFamily::Linf;
  else if (f == "polyhedral")
    spec.family = NormFamily::Polyhedral;
  else
    throw Error(Errc::ParseError, "$.family: unknown family '" + f + "'");

  const auto& dim = need("dim");
  if (!dim.is_number_integer()) throw Error(Errc::ParseError, "$.dim: expected integer");
  spec.dim = dim.get<int>();

  if (spec.family == NormFamily::Lp || spec.family == NormFamily::WeightedLp) {
    const auto& p = need("p");
    if (!p.is_number()) throw Error(Errc::ParseError, "$.p: expected number");
    spec.p = p.get<double>();
  }
  if (spec.family == NormFamily::WeightedLp) {
    const auto& w = need("weights");
    if (!w.is_array()) throw Error(Errc::ParseError, "$.weights: expected array");
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!w[i].is_number())
        throw Error(Errc::ParseError, "$.weights[" + std::to_string(i) + "]: expected number");
      spec.weights.push_back(w[i].get<double>());
    }
  }
  if (spec.family == NormFamily::Polyhedral) {
    const auto& vs = need("vertices");
    if (!vs.is_array()) throw Error(Errc::ParseError, "$.vertices: expected array");
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (!vs[i].is_array())
        throw Error(Errc::ParseError, "$.vertices[" + std::to_string(i) + "]: expected array");
      Vec v;
      for (std::size_t k = 0; k < vs[i].size(); ++k) {
        if (!vs[i][k].is_number())
          throw Error(Errc::ParseError, "$.vertices[" + std::to_string(i) + "][" +
                                            std::to_string(k) + "]: expected number");
        v.push_back(vs[i][k].get<double>());
      }
      spec.vertices.push_back(std::move(v));
    }
  }
  return validate_spec(spec);
}

inline NormSpec load_norm_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open norm spec file '" + path + "'");
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(Errc::ParseError, "invalid JSON in '" + path + "': " + e.what());
  }
  return norm_spec_from_json(j);
}

inline ordered_json norm_spec_to_json(const NormSpec& spec) {
  ordered_json j;
  j["family"] = family_name(spec.family);
  j["dim"] = spec.dim;
  if (spec.family == NormFamily::Lp || spec.family == NormFamily::WeightedLp)
    j["p"] = round12(spec.p);
  if (spec.family == NormFamily::WeightedLp) {
    auto arr = ordered_json::array();
    for (double w : spec.weights) arr.push_back(round12(w));
    j["weights"] = arr;
  }
  if (spec.family == NormFamily::Polyhedral) {
    auto arr = ordered_json::array();
    for (const auto& v : spec.vertices) {
      auto row = ordered_json::array();
      for (double c : v) row.push_back(round12(c));
      arr.push_back(row);
    }
    j["vertices"] = arr;
  }
  return j;
}

// ---------------------------------------------------------------------------
// estimates and audit reports

inline ordered_json witness_to_json(const WitnessPair& w) {
  ordered_json j;
  auto xs = ordered_json::array();
  for (double c : w.x) xs.push_back(round12(c));
  auto ys = ordered_json::array();
  for (double c : w.y) ys.push_back(round12(c));
  j["x"] = xs;
  j["y"] = ys;
  j["residuals"] = ordered_json::array({round12(w.res_x), round12(w.res_y), round12(w.res_xy)});
  return j;
}

inline ordered_json estimate_to_json(const ConstantEstimate& est) {
  ordered_json j;
  j["constant"] = constant_tag(est.id.kind);
  if (est.id.kind == ConstantKind::GLp) j["p"] = round12(est.id.param);
  if (est.id.kind == ConstantKind::Delta) {
    j["eps"] = round12(est.id.param);
    j["equality_form"] = est.params.delta_equality;
  }
  j["value"] = round12(est.value);
  j["direction"] = direction_name(est.direction);
  j["refined"] = est.refined;
  j["theta_grid"] = est.params.theta_grid;
  j["phi_grid"] = est.params.phi_grid;
  j["sections"] = est.params.sections;
  j["seed"] = est.params.seed;
  j["witness"] = witness_to_json(est.witness);
  return j;
}

inline ordered_json report_to_json(const AuditReport& rep) {
  ordered_json j;
  j["version"] = "ledger_v1";
  j["spec"] = norm_spec_to_json(rep.spec);
  j["tol"] = round12(rep.tol);
  {
    ordered_json p;
    p["theta_grid"] = rep.params.theta_grid;
    p["phi_grid"] = rep.params.phi_grid;
    p["sections"] = rep.params.sections;
    p["radial_levels"] = rep.params.radial_levels;
    p["seed"] = rep.params.seed;
    p["tau_feas"] = round12(rep.params.tau_feas);
    j["params"] = p;
  }
  auto ests = ordered_json::array();
  for (const auto& e : rep.estimates) ests.push_back(estimate_to_json(e));
  j["estimates"] = ests;
  auto checks = ordered_json::array();
  for (const auto& c : rep.checks) {
    ordered_json cj;
    cj["check_id"] = c.check_id;
    cj["lhs"] = round12(c.lhs);
    cj["relation"] = c.relation;
    cj["rhs"] = round12(c.rhs);
    cj["slack"] = round12(c.slack);
    cj["verdict"] = verdict_name(c.verdict);
    cj["note"] = c.note;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["flags"] = rep.flags;
  j["notes"] = rep.notes;
  return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidParameter, "cannot write to '" + path + "'");
  out << text;
}

}  // namespace geoconst
