#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "geoconst/constants.hpp"
#include "geoconst/error.hpp"
#include "geoconst/io.hpp"
#include "geoconst/norm.hpp"

namespace geoconst {

struct SweepRow {
  double param = 0.0;  // the swept exponent p
  double value = 0.0;
  BoundDirection direction = BoundDirection::LowerBoundOfSup;
  std::optional<double> analytic_upper_bound;
};

struct SweepTable {
  ConstantId constant;
  int dim = 2;
  int theta_grid = 0, phi_grid = 0;
  std::uint64_t seed = 0;
  std::vector<SweepRow> rows;  // sorted by param ascending, params unique
};

/// Closed-form upper bound on GL over the lp family, when one applies.
inline std::optional<double> lp_gl_upper_bound(ConstantId id, double p) {
  if (id.kind != ConstantKind::GL) return std::nullopt;
  if (p >= 2.0) return 2.0 * std::pow(std::pow(2.0, p) - 1.0, 2.0 / p);
  return 2.0 * std::pow(3.0, 2.0 / p);
}

/// Estimates the constant on lp spaces for `steps` exponents equally spaced
/// over [p_from, p_to]. Values are canonicalized to 12 significant digits so
/// the CSV form round-trips exactly.
inline SweepTable run_sweep(int dim, double p_from, double p_to, int steps, ConstantId id,
                            const EstimateParams& params = {}) {
  if (!(p_from >= 1.0) || !(p_to > p_from))
    throw Error(Errc::InvalidParameter, "need 1 <= p_from < p_to");
  if (steps < 2) throw Error(Errc::InvalidParameter, "need at least 2 sweep steps");
  SweepTable table;
  table.constant = id;
  table.dim = dim;
  table.theta_grid = params.theta_grid;
  table.phi_grid = params.phi_grid;
  table.seed = params.seed;
  for (int i = 0; i < steps; ++i) {
    const double p = round12(p_from + (p_to - p_from) * i / (steps - 1));
    const Norm norm(NormSpec::lp(dim, p));
    const ConstantEstimate est = estimate(norm, id, params);
    SweepRow row;
    row.param = p;
    row.value = round12(est.value);
    row.direction = est.direction;
    if (auto b = lp_gl_upper_bound(id, p)) row.analytic_upper_bound = round12(*b);
    table.rows.push_back(row);
  }
  return table;
}

inline std::string sweep_to_csv(const SweepTable& table) {
  std::ostringstream os;
  os << "p,value,direction,analytic_upper_bound\n";
  for (const auto& r : table.rows) {
    os << fmt12(r.param) << ',' << fmt12(r.value) << ',' << direction_name(r.direction) << ',';
    if (r.analytic_upper_bound) os << fmt12(*r.analytic_upper_bound);
    os << '\n';
  }
  return os.str();
}

/// Inverse of sweep_to_csv for the row payload (metadata is not part of the
/// CSV and must be supplied by the caller).
inline std::vector<SweepRow> sweep_rows_from_csv(const std::string& csv) {
  std::istringstream is(csv);
  std::string line;
  if (!std::getline(is, line) || line != "p,value,direction,analytic_upper_bound")
    throw Error(Errc::ParseError, "bad CSV header");
  std::vector<SweepRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string p, value, direction, bound;
    std::getline(ls, p, ',');
    std::getline(ls, value, ',');
    std::getline(ls, direction, ',');
    std::getline(ls, bound);
    SweepRow r;
    r.param = std::strtod(p.c_str(), nullptr);
    r.value = std::strtod(value.c_str(), nullptr);
    if (direction == direction_name(BoundDirection::LowerBoundOfSup))
      r.direction = BoundDirection::LowerBoundOfSup;
    else if (direction == direction_name(BoundDirection::UpperBoundOfInf))
      r.direction = BoundDirection::UpperBoundOfInf;
    else
      throw Error(Errc::ParseError, "bad direction '" + direction + "'");
    if (!bound.empty()) r.analytic_upper_bound = std::strtod(bound.c_str(), nullptr);
    rows.push_back(r);
  }
  return rows;
}

/// Minimal standalone line chart: axes, the value polyline, the analytic
/// bound polyline when present, and a two-entry legend.
inline std::string sweep_to_svg(const SweepTable& table) {
  const int W = 640, H = 420, ml = 60, mr = 20, mt = 30, mb = 50;
  double pmin = table.rows.front().param, pmax = table.rows.back().param;
  double vmin = 1e300, vmax = -1e300;
  for (const auto& r : table.rows) {
    vmin = std::min(vmin, r.value);
    vmax = std::max(vmax, r.value);
    if (r.analytic_upper_bound) {
      vmin = std::min(vmin, *r.analytic_upper_bound);
      vmax = std::max(vmax, *r.analytic_upper_bound);
    }
  }
  if (vmax <= vmin) vmax = vmin + 1.0;
  const double pad = 0.05 * (vmax - vmin);
  vmin -= pad;
  vmax += pad;
  auto sx = [&](double p) { return ml + (p - pmin) / (pmax - pmin) * (W - ml - mr); };
  auto sy = [&](double v) { return H - mb - (v - vmin) / (vmax - vmin) * (H - mt - mb); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
     << H - mb << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
     << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double p = pmin + (pmax - pmin) * i / 4;
    const double v = vmin + (vmax - vmin) * i / 4;
    os << "<text x=\"" << sx(p) << "\" y=\"" << H - mb + 18
       << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt12(round12(p)) << "</text>\n";
    os << "<text x=\"" << ml - 6 << "\" y=\"" << sy(v) + 4
       << "\" font-size=\"11\" text-anchor=\"end\">" << fmt12(round12(v)) << "</text>\n";
  }
  os << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
     << "\" font-size=\"12\" text-anchor=\"middle\">p</text>\n";

  auto polyline = [&](const char* color, bool bound) {
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& r : table.rows) {
      if (bound && !r.analytic_upper_bound) continue;
      const double v = bound ? *r.analytic_upper_bound : r.value;
      os << (first ? "" : " ") << sx(r.param) << ',' << sy(v);
      first = false;
    }
    os << "\"/>\n";
  };
  polyline("#1f77b4", false);
  bool any_bound = false;
  for (const auto& r : table.rows) any_bound |= bool(r.analytic_upper_bound);
  if (any_bound) polyline("#d62728", true);

  os << "<rect x=\"" << ml + 10 << "\" y=\"" << mt + 4 << "\" width=\"14\" height=\"3\" fill=\"#1f77b4\"/>\n";
  os << "<text x=\"" << ml + 30 << "\" y=\"" << mt + 9 << "\" font-size=\"12\">"
     << constant_label(table.constant) << " estimate</text>\n";
  if (any_bound) {
    os << "<rect x=\"" << ml + 10 << "\" y=\"" << mt + 20 << "\" width=\"14\" height=\"3\" fill=\"#d62728\"/>\n";
    os << "<text x=\"" << ml + 30 << "\" y=\"" << mt + 25
       << "\" font-size=\"12\">analytic upper bound</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace geoconst
