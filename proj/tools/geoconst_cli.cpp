// Command-line front end: single-constant estimates, full inequality audits,
// p-sweeps with CSV/SVG output, and dual-space computations.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "geoconst/geoconst.hpp"

namespace {

using namespace geoconst;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitComputeError = 3;

struct EstimateOptions {
  std::string norm_file;
  std::string constant = "GL";
  double p = 2.0;
  bool p_set = false;
  double eps = 1.0;
  int resolution = 0;
  int sections = 64;
  std::uint64_t seed = 0x9e3779b9u;
  std::string out;
};

void add_estimate_flags(CLI::App* cmd, EstimateOptions& o, bool with_constant = true) {
  cmd->add_option("--norm", o.norm_file, "norm spec JSON file")->required();
  if (with_constant)
    cmd->add_option("--constant", o.constant, "one of H, GL, GLp, CL, J, CNJ, CZ, Delta")
        ->required();
  cmd->add_option("--p", o.p, "exponent for GLp")->each([&o](const std::string&) { o.p_set = true; });
  cmd->add_option("--eps", o.eps, "separation for Delta (default 1)");
  cmd->add_option("--resolution", o.resolution, "theta/phi grid size (default 2048)");
  cmd->add_option("--sections", o.sections, "random 2-D sections when dim > 2");
  cmd->add_option("--seed", o.seed, "sampling seed");
}

ConstantId parse_constant(const EstimateOptions& o) {
  const std::string& s = o.constant;
  if (s == "H") return ConstantId::h();
  if (s == "GL") return ConstantId::gl();
  if (s == "CL") return ConstantId::cl();
  if (s == "J") return ConstantId::j();
  if (s == "CNJ") return ConstantId::cnj();
  if (s == "CZ") return ConstantId::cz();
  if (s == "GLp") {
    if (!o.p_set) throw Error(Errc::InvalidParameter, "GLp needs --p");
    return ConstantId::glp(o.p);
  }
  if (s == "Delta") return ConstantId::delta(o.eps);
  throw Error(Errc::InvalidParameter, "unknown constant '" + s + "'");
}

EstimateParams make_params(const EstimateOptions& o) {
  EstimateParams ep;
  if (o.resolution > 0) {
    ep.theta_grid = o.resolution;
    ep.phi_grid = o.resolution;
  }
  ep.sections = o.sections;
  ep.seed = o.seed;
  return ep;
}

double printable(double v) {
  if (std::fabs(v) < 5e-7) v = 0.0;  // avoid "-0.000000"
  return v;
}

void print_estimate(const std::string& name, const ConstantEstimate& est) {
  std::printf("%s = %.6f\n", name.c_str(), printable(est.value));
  std::printf("direction: %s\n", direction_name(est.direction));
  auto vec_str = [](const Vec& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt12(round12(v[i]));
    return s + "]";
  };
  std::printf("witness x = %s\n", vec_str(est.witness.x).c_str());
  std::printf("witness y = %s\n", vec_str(est.witness.y).c_str());
  std::printf("residuals = [%g, %g, %g]\n", est.witness.res_x, est.witness.res_y,
              est.witness.res_xy);
}

int cmd_compute(const EstimateOptions& o) {
  const NormSpec spec = load_norm_spec(o.norm_file);
  const ConstantId id = parse_constant(o);
  const ConstantEstimate est = estimate(spec, id, make_params(o));
  print_estimate(constant_label(id), est);
  if (!o.out.empty()) write_text_file(o.out, estimate_to_json(est).dump(2) + "\n");
  return kExitOk;
}

int cmd_dual(const EstimateOptions& o) {
  const NormSpec spec = load_norm_spec(o.norm_file);
  const ConstantId id = parse_constant(o);
  const EstimateParams ep = make_params(o);
  const ConstantEstimate est = estimate_on_dual(spec, id, ep);
  print_estimate(constant_label(id) + " on dual", est);
  if (id.kind == ConstantKind::H) {
    const ConstantEstimate primal = estimate(spec, id, ep);
    std::printf("primal H = %.6f\n", printable(primal.value));
    std::printf("dual H bracket from primal estimate: [%.6f, %.6f]\n",
                printable(2.0 * primal.value - 2.0), printable(0.5 * primal.value + 1.0));
  }
  if (!o.out.empty()) write_text_file(o.out, estimate_to_json(est).dump(2) + "\n");
  return kExitOk;
}

int cmd_audit(const EstimateOptions& o, double tol) {
  const NormSpec spec = load_norm_spec(o.norm_file);
  const AuditReport rep = run_audit(spec, tol, make_params(o));
  std::printf("%-24s %14s %3s %14s %13s %s\n", "check_id", "lhs", "rel", "rhs", "slack",
              "verdict");
  for (const auto& c : rep.checks)
    std::printf("%-24s %14.8f %3s %14.8f %13.4e %s\n", c.check_id.c_str(), c.lhs,
                c.relation.c_str(), c.rhs, c.slack, verdict_name(c.verdict));
  for (const auto& f : rep.flags) std::printf("flag: %s\n", f.c_str());
  if (!o.out.empty()) write_text_file(o.out, report_to_json(rep).dump(2) + "\n");
  bool failed = false;
  for (const auto& c : rep.checks) failed |= c.verdict == Verdict::Fail;
  return failed ? kExitCheckFailed : kExitOk;
}

struct SweepOptions {
  std::string family = "lp";
  int dim = 2;
  double p_from = 1.0, p_to = 2.0;
  int steps = 0;
  std::string constant = "GL";
  double p = 2.0;
  double eps = 1.0;
  std::string csv, svg;
  int resolution = 0;
  std::uint64_t seed = 0x9e3779b9u;
};

int cmd_sweep(const SweepOptions& o) {
  if (o.family != "lp") throw Error(Errc::InvalidParameter, "only --family lp can be swept");
  EstimateOptions eo;
  eo.constant = o.constant;
  eo.p = o.p;
  eo.p_set = true;
  eo.eps = o.eps;
  const ConstantId id = parse_constant(eo);
  EstimateParams ep;
  if (o.resolution > 0) {
    ep.theta_grid = o.resolution;
    ep.phi_grid = o.resolution;
  }
  ep.seed = o.seed;
  const SweepTable table = run_sweep(o.dim, o.p_from, o.p_to, o.steps, id, ep);
  write_text_file(o.csv, sweep_to_csv(table));
  if (!o.svg.empty()) write_text_file(o.svg, sweep_to_svg(table));
  std::printf("wrote %zu rows to %s\n", table.rows.size(), o.csv.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geometric constants of finite-dimensional normed spaces"};
  app.require_subcommand(1);

  EstimateOptions comp_o;
  auto* comp = app.add_subcommand("compute", "estimate one constant on a space");
  add_estimate_flags(comp, comp_o);
  comp->add_option("--out", comp_o.out, "write the estimate as JSON");

  EstimateOptions audit_o;
  double tol = 1e-6;
  auto* audit = app.add_subcommand("audit", "evaluate the full inequality ledger");
  add_estimate_flags(audit, audit_o, false);
  audit->add_option("--tol", tol, "comparison tolerance (default 1e-6)");
  audit->add_option("--out", audit_o.out, "write the report as JSON");

  SweepOptions sweep_o;
  auto* sweep = app.add_subcommand("sweep", "sweep a constant over the lp family");
  sweep->add_option("--family", sweep_o.family, "norm family (lp)");
  sweep->add_option("--dim", sweep_o.dim, "dimension (default 2)");
  sweep->add_option("--p-from", sweep_o.p_from, "sweep start")->required();
  sweep->add_option("--p-to", sweep_o.p_to, "sweep end")->required();
  sweep->add_option("--steps", sweep_o.steps, "number of sweep points")->required();
  sweep->add_option("--constant", sweep_o.constant, "constant to sweep")->required();
  sweep->add_option("--p", sweep_o.p, "exponent for GLp");
  sweep->add_option("--eps", sweep_o.eps, "separation for Delta");
  sweep->add_option("--csv", sweep_o.csv, "CSV output path")->required();
  sweep->add_option("--svg", sweep_o.svg, "SVG chart output path");
  sweep->add_option("--resolution", sweep_o.resolution, "theta/phi grid size");
  sweep->add_option("--seed", sweep_o.seed, "sampling seed");

  EstimateOptions dual_o;
  auto* dual = app.add_subcommand("dual", "estimate a constant on the dual space");
  add_estimate_flags(dual, dual_o);
  dual->add_option("--out", dual_o.out, "write the estimate as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (comp->parsed()) return cmd_compute(comp_o);
    if (audit->parsed()) return cmd_audit(audit_o, tol);
    if (sweep->parsed()) return cmd_sweep(sweep_o);
    if (dual->parsed()) return cmd_dual(dual_o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_input_error(e.code()) ? kExitInputError : kExitComputeError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitComputeError;
  }
  return kExitInputError;
}
