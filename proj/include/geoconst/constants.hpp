#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "geoconst/error.hpp"
#include "geoconst/manifold.hpp"
#include "geoconst/norm.hpp"
#include "geoconst/section.hpp"
#include "geoconst/vec.hpp"

namespace geoconst {

enum class ConstantKind { H, GL, GLp, CL, J, CNJ, CZ, Delta };

/// Identifier of a constant; `param` is the exponent p for GLp and the
/// separation eps for Delta, unused otherwise.
struct ConstantId {
  ConstantKind kind = ConstantKind::GL;
  double param = 0.0;

  static ConstantId h() { return {ConstantKind::H, 0.0}; }
  static ConstantId gl() { return {ConstantKind::GL, 0.0}; }
  static ConstantId glp(double p) { return {ConstantKind::GLp, p}; }
  static ConstantId cl() { return {ConstantKind::CL, 0.0}; }
  static ConstantId j() { return {ConstantKind::J, 0.0}; }
  static ConstantId cnj() { return {ConstantKind::CNJ, 0.0}; }
  static ConstantId cz() { return {ConstantKind::CZ, 0.0}; }
  static ConstantId delta(double eps) { return {ConstantKind::Delta, eps}; }
};

inline const char* constant_tag(ConstantKind k) noexcept {
  switch (k) {
    case ConstantKind::H:     return "H";
    case ConstantKind::GL:    return "GL";
    case ConstantKind::GLp:   return "GLp";
    case ConstantKind::CL:    return "CL";
    case ConstantKind::J:     return "J";
    case ConstantKind::CNJ:   return "CNJ";
    case ConstantKind::CZ:    return "CZ";
    case ConstantKind::Delta: return "Delta";
  }
  return "?";
}

inline std::string constant_label(ConstantId id) {
  std::string s = constant_tag(id.kind);
  if (id.kind == ConstantKind::GLp) s += "(p=" + std::to_string(id.param) + ")";
  if (id.kind == ConstantKind::Delta) s += "(eps=" + std::to_string(id.param) + ")";
  return s;
}

enum class BoundDirection { LowerBoundOfSup, UpperBoundOfInf };

inline const char* direction_name(BoundDirection d) noexcept {
  return d == BoundDirection::LowerBoundOfSup ? "lower-bound-of-sup" : "upper-bound-of-inf";
}

inline BoundDirection direction_of(ConstantKind k) noexcept {
  return k == ConstantKind::Delta ? BoundDirection::UpperBoundOfInf
                                  : BoundDirection::LowerBoundOfSup;
}

/// Evaluation point reported with an estimate. res_xy is |  ||x-y|| - 1  |,
/// meaningful for triangle-set witnesses.
struct WitnessPair {
  Vec x, y;
  double res_x = 0.0, res_y = 0.0, res_xy = 0.0;
};

struct EstimateParams {
  int theta_grid = 2048;
  int phi_grid = 2048;
  int sections = 64;
  int radial_levels = 16;
  std::uint64_t seed = 0x9e3779b9u;
  double tau_feas = 1e-9;
  bool refine = true;
  bool delta_equality = false;  // Delta: constrain ||x-y|| = eps instead of >= eps
};

struct ConstantEstimate {
  ConstantId id;
  double value = 0.0;
  BoundDirection direction = BoundDirection::LowerBoundOfSup;
  WitnessPair witness;
  EstimateParams params;
  bool refined = false;
};

/// The constant's defining expression evaluated at an arbitrary pair.
/// For Delta this is 1 - ||x+y||/2 (the constraint is handled by the caller).
inline double evaluate_objective(const Norm& norm, ConstantId id, const Vec& x, const Vec& y) {
  const std::size_t d = x.size();
  static thread_local Vec u, v;  // called from million-point scans; no per-call allocation
  u.resize(d);
  v.resize(d);
  switch (id.kind) {
    case ConstantKind::H:
    case ConstantKind::GL:
    case ConstantKind::GLp:
    case ConstantKind::CL: {
      for (std::size_t i = 0; i < d; ++i) u[i] = x[i] + y[i];
      for (std::size_t i = 0; i < d; ++i) v[i] = 2.0 * x[i] - y[i];
      const double a = norm.eval_unchecked(u);
      const double b = norm.eval_unchecked(v);
      switch (id.kind) {
        case ConstantKind::H:  return std::min(a, b);
        case ConstantKind::GL: return a * a + b * b;
        case ConstantKind::GLp:
          return detail::pow_fast(a, id.param) + detail::pow_fast(b, id.param);
        default: return a * b;  // CL
      }
    }
    case ConstantKind::J: {
      for (std::size_t i = 0; i < d; ++i) u[i] = x[i] + y[i];
      for (std::size_t i = 0; i < d; ++i) v[i] = x[i] - y[i];
      return std::min(norm.eval_unchecked(u), norm.eval_unchecked(v));
    }
    case ConstantKind::CNJ:
    case ConstantKind::CZ: {
      for (std::size_t i = 0; i < d; ++i) u[i] = x[i] + y[i];
      for (std::size_t i = 0; i < d; ++i) v[i] = x[i] - y[i];
      const double a = norm.eval_unchecked(u);
      const double b = norm.eval_unchecked(v);
      const double nx = norm.eval_unchecked(x);
      const double ny = norm.eval_unchecked(y);
      const double den = nx * nx + ny * ny;
      return id.kind == ConstantKind::CNJ ? (a * a + b * b) / (2.0 * den) : (a * b) / den;
    }
    case ConstantKind::Delta: {
      for (std::size_t i = 0; i < d; ++i) u[i] = x[i] + y[i];
      return 1.0 - 0.5 * norm.eval_unchecked(u);
    }
  }
  return 0.0;
}

/// Interval every sampled evaluation of the constant provably lies in
/// (universal bounds; the triangle-set ones hold pointwise on admissible
/// pairs). Estimates escaping it signal an implementation bug.
struct UniversalRange {
  double lo, hi;
};

inline UniversalRange universal_range(ConstantId id) {
  switch (id.kind) {
    case ConstantKind::H:   return {1.0, 2.0};
    case ConstantKind::GL:  return {4.5, 8.0};
    case ConstantKind::GLp: {
      const double p = id.param;
      return {std::pow(2.0, 1.0 - p) * std::pow(3.0, p), std::pow(2.0, p + 1.0)};
    }
    case ConstantKind::CL:  return {2.0, 4.0};
    case ConstantKind::J:   return {0.0, 2.0};
    case ConstantKind::CNJ: return {1.0, 2.0};
    case ConstantKind::CZ:  return {0.0, 2.0};
    case ConstantKind::Delta: return {0.0, 1.0};
  }
  return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
}

namespace detail {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline void check_universal(ConstantId id, double value, double tau_feas) {
  const auto r = universal_range(id);
  const double allowance = 1e-9 + 16.0 * tau_feas + 1e-12;
  if (value > r.hi + allowance || value < r.lo - allowance)
    throw Error(Errc::InternalInconsistency,
                constant_label(id) + " estimate " + std::to_string(value) +
                    " escapes its universal range [" + std::to_string(r.lo) + ", " +
                    std::to_string(r.hi) + "]");
}

/// Golden-section ascent of f on [lo, hi]. Returns nothing; improvements are
/// reported through f itself (callers fold evaluations into an incumbent).
template <class F>
void golden_scan(F&& f, double lo, double hi, int iters) {
  constexpr double invphi = 0.6180339887498948482;
  f(lo);
  f(hi);
  double a = lo, b = hi;
  double c = b - (b - a) * invphi;
  double d = a + (b - a) * invphi;
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && (b - a) > 1e-14; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * invphi;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * invphi;
      fd = f(d);
    }
  }
}

struct Incumbent {
  double value = kNegInf;  // stored in maximization orientation
  Vec x, y;
  int section = 0;
  double theta = 0.0, phi = 0.0, radius = 1.0;
  bool valid() const { return value != kNegInf; }
};

/// Maximization fold with strict improvement, so the first attainer of the
/// maximum is kept (deterministic witness).
inline void fold_max(Incumbent& inc, double value, const Vec& x, const Vec& y, int section,
                     double theta, double phi, double radius = 1.0) {
  if (value > inc.value) {
    inc.value = value;
    inc.x = x;
    inc.y = y;
    inc.section = section;
    inc.theta = theta;
    inc.phi = phi;
    inc.radius = radius;
  }
}

/// sign = +1 maximizes the objective, -1 minimizes (Delta).
inline double oriented(ConstantKind k) { return k == ConstantKind::Delta ? -1.0 : 1.0; }

/// Local re-rooting polish for triangle-set constants: theta moves along the
/// section, y is re-solved from the third constraint near the incumbent
/// branch, flat arcs get their own line search.
inline void polish_T(const Norm& norm, ConstantId id, const EstimateParams& params,
                     double target, Incumbent& inc) {
  const auto sections = make_sections(norm, norm.dim() == 2 ? 0 : params.sections, params.seed);
  const auto& basis = sections[inc.section];
  SectionScanner scanner(norm, basis, 64);  // table unused; reuse g() machinery
  const double sgn = oriented(id.kind);
  const double tau = params.tau_feas;
  const double cell_t = kTwoPi / params.theta_grid;
  const double cell_p = kTwoPi / params.phi_grid;
  const double w = 2.0 * cell_p;

  double phi_center = inc.phi;

  auto objective_at = [&](const Vec& x, const Vec& y) {
    return sgn * evaluate_objective(norm, id, x, y);
  };

  // best feasible value for given theta among constraint roots near phi_center
  auto local_best = [&](double theta) {
    Vec x = boundary_point(norm, basis, theta);
    constexpr int kScan = 32;
    double best = kNegInf;
    double gprev = scanner.g(x, phi_center - w, target);
    double pprev = phi_center - w;
    for (int i = 0; i <= kScan; ++i) {
      const double phi = phi_center - w + 2.0 * w * i / kScan;
      const double gc = scanner.g(x, phi, target);
      auto consider = [&](double ph) {
        Vec y = boundary_point(norm, basis, ph);
        const double val = objective_at(x, y);
        if (val > best) best = val;
        fold_max(inc, val, x, y, inc.section, theta, ph);
      };
      if (std::fabs(gc) <= tau) consider(phi);
      if (i > 0 && std::fabs(gprev) > tau && std::fabs(gc) > tau && gprev * gc < 0.0) {
        double lo = pprev, hi = phi, glo = gprev, ph = lo, gp = glo;
        for (int it = 0; it < 60 && (hi - lo) > 1e-15; ++it) {
          ph = 0.5 * (lo + hi);
          gp = scanner.g(x, ph, target);
          if (gp == 0.0) break;
          if ((gp < 0.0) == (glo < 0.0)) {
            lo = ph;
            glo = gp;
          } else {
            hi = ph;
          }
        }
        if (std::fabs(gp) <= tau) consider(ph);
      }
      gprev = gc;
      pprev = phi;
    }
    return best;
  };

  double prev = inc.value;
  for (int round = 0; round < 3; ++round) {
    golden_scan([&](double th) { return local_best(th); }, inc.theta - cell_t, inc.theta + cell_t,
                60);
    // flat-arc line search in phi at the incumbent x
    phi_center = inc.phi;
    const Vec x = inc.x;
    if (std::fabs(scanner.g(x, inc.phi + cell_p / 8, target)) <= tau ||
        std::fabs(scanner.g(x, inc.phi - cell_p / 8, target)) <= tau) {
      golden_scan(
          [&](double ph) {
            if (std::fabs(scanner.g(x, ph, target)) > tau) return kNegInf;
            Vec y = boundary_point(norm, basis, ph);
            const double val = objective_at(x, y);
            fold_max(inc, val, x, y, inc.section, inc.theta, ph);
            return val;
          },
          inc.phi - w, inc.phi + w, 50);
    }
    phi_center = inc.phi;
    if (inc.value - prev < 1e-12) break;
    prev = inc.value;
  }
}

/// Coordinate-wise golden polish for two-point constants. `feasible`
/// evaluates the pair constraint; infeasible points score -inf.
inline void polish_pairs(const Norm& norm, ConstantId id, const EstimateParams& params,
                         Incumbent& inc, double min_separation) {
  const auto sections = make_sections(norm, norm.dim() == 2 ? 0 : params.sections, params.seed);
  const auto& basis = sections[inc.section];
  const double sgn = oriented(id.kind);
  const double cell_t = kTwoPi / params.theta_grid;
  const double cell_p = kTwoPi / params.phi_grid;
  const int d = norm.dim();
  Vec diff(d);

  auto eval_at = [&](double theta, double phi) {
    Vec x = boundary_point(norm, basis, theta);
    Vec y = boundary_point(norm, basis, phi);
    if (inc.radius != 1.0)
      for (auto& c : y) c *= inc.radius;
    if (min_separation > 0.0) {
      sub_into(x, y, diff);
      if (norm.eval_unchecked(diff) < min_separation) return kNegInf;
    }
    const double val = sgn * evaluate_objective(norm, id, x, y);
    fold_max(inc, val, x, y, inc.section, theta, phi, inc.radius);
    return val;
  };

  double prev = inc.value;
  for (int round = 0; round < 3; ++round) {
    golden_scan([&](double th) { return eval_at(th, inc.phi); }, inc.theta - cell_t,
                inc.theta + cell_t, 50);
    golden_scan([&](double ph) { return eval_at(inc.theta, ph); }, inc.phi - cell_p,
                inc.phi + cell_p, 50);
    if (inc.value - prev < 1e-12) break;
    prev = inc.value;
  }
}

inline WitnessPair make_witness(const Norm& norm, const Incumbent& inc) {
  WitnessPair w;
  w.x = inc.x;
  w.y = inc.y;
  w.res_x = std::fabs(norm.eval_unchecked(inc.x) - 1.0);
  w.res_y = std::fabs(norm.eval_unchecked(inc.y) - 1.0);
  Vec d = sub(inc.x, inc.y);
  w.res_xy = std::fabs(norm.eval_unchecked(d) - 1.0);
  return w;
}

}  // namespace detail

inline bool is_triangle_kind(ConstantKind k) {
  return k == ConstantKind::H || k == ConstantKind::GL || k == ConstantKind::GLp ||
         k == ConstantKind::CL;
}

inline void validate_constant_id(ConstantId id) {
  if (id.kind == ConstantKind::GLp && !(id.param >= 1.0 && std::isfinite(id.param)))
    throw Error(Errc::InvalidParameter, "GLp exponent must lie in [1, inf)");
  if (id.kind == ConstantKind::Delta && !(id.param >= 0.0 && id.param <= 2.0))
    throw Error(Errc::InvalidParameter, "Delta separation must lie in [0, 2]");
}

/// Estimate of a triangle-set constant over a precomputed sample of T(X).
/// Lets several constants share one sample set, which keeps their pointwise
/// order relations intact at the estimate level.
inline ConstantEstimate estimate_from_samples(const Norm& norm, ConstantId id,
                                              const std::vector<AdmissiblePair>& samples,
                                              const EstimateParams& params = {}) {
  validate_constant_id(id);
  if (!is_triangle_kind(id.kind))
    throw Error(Errc::InvalidParameter, "estimate_from_samples handles triangle-set constants");
  if (id.kind == ConstantKind::GL) id.param = 2.0;  // GL is GLp at p = 2

  detail::Incumbent inc;
  for (const auto& s : samples) {
    const double val = evaluate_objective(norm, id, s.x, s.y);
    detail::fold_max(inc, val, s.x, s.y, s.section, s.theta, s.phi);
  }
  if (!inc.valid()) throw Error(Errc::NoSolution, "constraint set sample is empty");
  detail::check_universal(id, inc.value, params.tau_feas);
  if (params.refine) detail::polish_T(norm, id, params, 1.0, inc);
  detail::check_universal(id, inc.value, params.tau_feas);

  ConstantEstimate est;
  est.id = id;
  est.value = inc.value;
  est.direction = direction_of(id.kind);
  est.witness = detail::make_witness(norm, inc);
  est.params = params;
  est.refined = params.refine;
  return est;
}

/// Numeric estimate of the constant on X. Suprema are approached from below
/// (grid evaluation at admissible points plus local refinement); Delta is an
/// infimum and is approached from above.
inline ConstantEstimate estimate(const Norm& norm, ConstantId id, const EstimateParams& params = {}) {
  using detail::Incumbent;
  const double sgn = detail::oriented(id.kind);

  validate_constant_id(id);
  if (id.kind == ConstantKind::GL) id.param = 2.0;  // GL is GLp at p = 2

  Incumbent inc;
  const bool t_kind = is_triangle_kind(id.kind);
  const bool delta_eq = id.kind == ConstantKind::Delta && params.delta_equality;

  if (t_kind) {
    TriangleParams tp{params.theta_grid, params.phi_grid, params.sections, params.seed,
                      params.tau_feas};
    return estimate_from_samples(norm, id, sample_T(norm, tp), params);
  }

  if (delta_eq) {
    const double target = id.param;
    TriangleParams tp{params.theta_grid, params.phi_grid, params.sections, params.seed,
                      params.tau_feas};
    // the equality-form Delta re-solves the scanner with target eps
    std::vector<AdmissiblePair> samples;
    {
      const auto sections = make_sections(norm, norm.dim() == 2 ? 0 : tp.sections, tp.seed);
      const auto corners = section_corners(norm);
      Vec diff(norm.dim());
      for (std::size_t si = 0; si < sections.size(); ++si) {
        detail::SectionScanner scanner(norm, sections[si], tp.phi_grid);
        std::vector<std::pair<double, Vec>> xs;
        for (int i = 0; i < tp.theta_grid; ++i) {
          const double theta = kTwoPi * i / tp.theta_grid;
          xs.emplace_back(theta, boundary_point(norm, sections[si], theta));
        }
        for (const auto& c : corners)
          if (std::fabs(norm.eval_unchecked(c) - 1.0) <= tp.tau_feas)
            xs.emplace_back(std::atan2(c[1], c[0]), c);
        for (auto& [theta, x] : xs) {
          auto roots = scanner.solve(x, target, tp.tau_feas);
          for (auto& [phi, y] : roots) {
            AdmissiblePair p;
            p.x = x;
            p.y = std::move(y);
            p.section = int(si);
            p.theta = theta;
            p.phi = phi;
            samples.push_back(std::move(p));
          }
          for (const auto& c : corners) {
            if (std::fabs(norm.eval_unchecked(c) - 1.0) > tp.tau_feas) continue;
            sub_into(x, c, diff);
            if (std::fabs(norm.eval_unchecked(diff) - target) > tp.tau_feas) continue;
            AdmissiblePair p;
            p.x = x;
            p.y = c;
            p.section = int(si);
            p.theta = theta;
            p.phi = std::atan2(c[1], c[0]);
            samples.push_back(std::move(p));
          }
        }
      }
    }
    for (const auto& s : samples) {
      const double val = sgn * evaluate_objective(norm, id, s.x, s.y);
      detail::fold_max(inc, val, s.x, s.y, s.section, s.theta, s.phi);
    }
    if (!inc.valid()) throw Error(Errc::NoSolution, "constraint set sample is empty");
    detail::check_universal(id, sgn * inc.value, params.tau_feas);
    if (params.refine) detail::polish_T(norm, id, params, target, inc);
  } else if (id.kind == ConstantKind::J || id.kind == ConstantKind::Delta) {
    const double eps = id.kind == ConstantKind::Delta ? id.param : 0.0;
    PairGrids pg{params.theta_grid, params.phi_grid, params.radial_levels, params.sections,
                 params.seed};
    const int d = norm.dim();
    Vec diff(d);
    for_each_sphere_pair(norm, PairSet::BothUnit, pg, [&](const SpherePair& p) {
      if (eps > 0.0) {
        sub_into(p.x, p.y, diff);
        if (norm.eval_unchecked(diff) < eps) return;
      }
      const double val = sgn * evaluate_objective(norm, id, p.x, p.y);
      detail::fold_max(inc, val, p.x, p.y, p.section, p.theta, p.phi);
    });
    if (!inc.valid())
      throw Error(Errc::NoSolution, "no sampled pair satisfies the separation constraint");
    detail::check_universal(id, sgn * inc.value, params.tau_feas);
    if (params.refine) detail::polish_pairs(norm, id, params, inc, eps);
  } else {  // CNJ / CZ
    PairGrids pg{params.theta_grid, params.phi_grid, params.radial_levels, params.sections,
                 params.seed};
    for_each_sphere_pair(norm, PairSet::XUnitYBall, pg, [&](const SpherePair& p) {
      const double val = evaluate_objective(norm, id, p.x, p.y);
      detail::fold_max(inc, val, p.x, p.y, p.section, p.theta, p.phi, p.radius);
    });
    detail::check_universal(id, inc.value, params.tau_feas);
    if (params.refine) detail::polish_pairs(norm, id, params, inc, 0.0);
  }

  detail::check_universal(id, sgn * inc.value, params.tau_feas);

  ConstantEstimate est;
  est.id = id;
  est.value = sgn * inc.value;
  est.direction = direction_of(id.kind);
  est.witness = detail::make_witness(norm, inc);
  est.params = params;
  est.refined = params.refine;
  return est;
}

inline ConstantEstimate estimate(const NormSpec& spec, ConstantId id,
                                 const EstimateParams& params = {}) {
  return estimate(Norm(spec), id, params);
}

/// The same constant computed on the dual space X*.
inline ConstantEstimate estimate_on_dual(const NormSpec& spec, ConstantId id,
                                         const EstimateParams& params = {}) {
  return estimate(Norm(dual_spec(spec)), id, params);
}

/// Runs `estimate` across an increasing ladder of grids, carrying the best
/// witness forward so the reported sequence is monotone (nondecreasing for
/// suprema, nonincreasing for Delta).
inline std::vector<ConstantEstimate> refine_convergence(const Norm& norm, ConstantId id,
                                                        const std::vector<int>& grids,
                                                        EstimateParams base = {}) {
  if (grids.empty()) throw Error(Errc::InvalidParameter, "grid list is empty");
  for (std::size_t i = 0; i < grids.size(); ++i) {
    if (grids[i] < 64) throw Error(Errc::InvalidParameter, "grids must be >= 64");
    if (i > 0 && grids[i] <= grids[i - 1])
      throw Error(Errc::InvalidParameter, "grids must be strictly increasing");
  }
  std::vector<ConstantEstimate> out;
  for (int g : grids) {
    EstimateParams p = base;
    p.theta_grid = g;
    p.phi_grid = g;
    ConstantEstimate est = estimate(norm, id, p);
    if (!out.empty()) {
      const auto& prev = out.back();
      const double carried = evaluate_objective(norm, est.id, prev.witness.x, prev.witness.y);
      const bool better = est.direction == BoundDirection::LowerBoundOfSup
                              ? carried > est.value
                              : carried < est.value;
      if (better) {
        est.value = carried;
        est.witness = prev.witness;
      }
    }
    out.push_back(std::move(est));
  }
  return out;
}

inline std::vector<ConstantEstimate> refine_convergence(const NormSpec& spec, ConstantId id,
                                                        const std::vector<int>& grids,
                                                        EstimateParams base = {}) {
  return refine_convergence(Norm(spec), id, grids, base);
}

}  // namespace geoconst
