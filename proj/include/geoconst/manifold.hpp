#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "geoconst/error.hpp"
#include "geoconst/norm.hpp"
#include "geoconst/section.hpp"
#include "geoconst/vec.hpp"

namespace geoconst {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// A point of the constraint set T(X) = { (x,y) : ||x|| = ||y|| = ||x-y|| = 1 },
/// together with the achieved residuals and the sampling coordinates it came
/// from (used by local refinement).
struct AdmissiblePair {
  Vec x, y;
  double res_x = 0.0, res_y = 0.0, res_xy = 0.0;
  int section = 0;
  double theta = 0.0, phi = 0.0;
};

struct TriangleParams {
  int theta_grid = 2048;
  int phi_grid = 2048;
  int sections = 64;            // extra random sections when dim > 2
  std::uint64_t seed = 0x9e3779b9u;
  double tau_feas = 1e-9;
};

namespace detail {

/// Scans y = v(phi) around one section and solves ||x - v(phi)|| = 1 for a
/// fixed unit x: sign changes are bisected, stretches with |g| <= tau
/// (flat arcs of polyhedral spheres) are sampled at their endpoints plus
/// eight interior points.
class SectionScanner {
 public:
  SectionScanner(const Norm& norm, const SectionBasis& basis, int grid)
      : norm_(norm), basis_(basis), grid_(grid), dim_(norm.dim()),
        table_(std::size_t(grid) * dim_), scratch_(dim_), point_(dim_) {
    for (int k = 0; k < grid; ++k) {
      const double phi = kTwoPi * k / grid;
      Vec v = boundary_point(norm, basis, phi);
      std::copy(v.begin(), v.end(), table_.begin() + std::size_t(k) * dim_);
    }
  }

  const Norm& norm() const { return norm_; }
  const SectionBasis& basis() const { return basis_; }
  int grid() const { return grid_; }

  double phi_at(int k) const { return kTwoPi * k / grid_; }

  /// g(phi) = ||x - v(phi)|| - target, for arbitrary phi.
  double g(const Vec& x, double phi, double target) {
    const double c = std::cos(phi), s = std::sin(phi);
    lincomb(c, basis_.e1, s, basis_.e2, point_);
    const double n = norm_.eval_unchecked(point_);
    for (int i = 0; i < dim_; ++i) scratch_[i] = x[i] - point_[i] / n;
    return norm_.eval_unchecked(scratch_) - target;
  }

  /// Copy of the precomputed v(phi_k).
  Vec point_at(int k) const {
    return Vec(table_.begin() + std::size_t(k) * dim_, table_.begin() + std::size_t(k + 1) * dim_);
  }

  double g_at(const Vec& x, int k, double target) {
    const double* v = table_.data() + std::size_t(k) * dim_;
    for (int i = 0; i < dim_; ++i) scratch_[i] = x[i] - v[i];
    return norm_.eval_unchecked(scratch_) - target;
  }

  /// All solutions (phi, y) of ||x - y(phi)|| = target found on this grid,
  /// ascending in phi.
  std::vector<std::pair<double, Vec>> solve(const Vec& x, double target, double tau) {
    const int G = grid_;
    std::vector<double> gv(G);
    for (int k = 0; k < G; ++k) gv[k] = g_at(x, k, target);

    std::vector<std::pair<double, Vec>> roots;
    std::vector<char> near(G);
    bool any_near = false, all_near = true;
    for (int k = 0; k < G; ++k) {
      near[k] = std::fabs(gv[k]) <= tau;
      any_near |= near[k];
      all_near &= bool(near[k]);
    }

    // flat arcs: maximal cyclic runs of near-zero grid points
    if (all_near) {
      emit_flat(x, 0, G - 1, target, tau, roots);
    } else if (any_near) {
      int k0 = 0;
      while (near[k0]) ++k0;  // anchor the cyclic scan at a non-near point
      int run_start = -1, run_len = 0;
      for (int step = 1; step <= G; ++step) {
        const int idx = (k0 + step) % G;
        if (near[idx]) {
          if (run_start < 0) {
            run_start = k0 + step;  // unwrapped index, may exceed G
            run_len = 1;
          } else {
            ++run_len;
          }
        } else if (run_start >= 0) {
          emit_flat(x, run_start, run_start + run_len - 1, target, tau, roots);
          run_start = -1;
        }
      }
      // the scan ends at k0 which is non-near, so no run is left open
    }

    // bisect strict sign changes
    for (int k = 0; k < G; ++k) {
      const int k2 = (k + 1) % G;
      if (near[k] || near[k2]) continue;
      if (gv[k] * gv[k2] >= 0.0) continue;
      double lo = phi_at(k), hi = phi_at(k) + kTwoPi / G;
      double glo = gv[k];
      double phi = lo, gphi = glo;
      // run the bracket down to machine resolution: stopping at |g| <= tau
      // leaves residuals that inflate attained objective values measurably
      for (int it = 0; it < 60 && (hi - lo) > 1e-15; ++it) {
        phi = 0.5 * (lo + hi);
        gphi = g(x, phi, target);
        if (gphi == 0.0) break;
        if ((gphi < 0.0) == (glo < 0.0)) {
          lo = phi;
          glo = gphi;
        } else {
          hi = phi;
        }
      }
      if (std::fabs(gphi) <= tau) {
        Vec y = boundary_point(norm_, basis_, phi);
        roots.emplace_back(std::fmod(phi, kTwoPi), std::move(y));
      }
    }

    std::sort(roots.begin(), roots.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return roots;
  }

 private:
  /// Emits the endpoints of the (possibly wrapping) grid-index run plus
  /// eight interior samples. Endpoints use the exact grid angle so that
  /// symmetric configurations keep exact coordinates.
  void emit_flat(const Vec& x, int k_lo, int k_hi, double target, double tau,
                 std::vector<std::pair<double, Vec>>& roots) {
    auto push = [&](double phi) {
      if (phi >= kTwoPi) phi -= kTwoPi;
      if (std::fabs(g(x, phi, target)) > tau) return;  // interior dip out of band
      Vec y = boundary_point(norm_, basis_, phi);
      roots.emplace_back(phi, std::move(y));
    };
    push(phi_at(k_lo % grid_));
    if (k_hi > k_lo) {
      const double lo = kTwoPi * k_lo / grid_, hi = kTwoPi * k_hi / grid_;
      for (int i = 1; i <= 8; ++i) push(lo + (hi - lo) * i / 9.0);
      push(phi_at(k_hi % grid_));
    }
  }

  const Norm& norm_;
  const SectionBasis& basis_;
  int grid_, dim_;
  std::vector<double> table_;
  Vec scratch_, point_;
};

inline AdmissiblePair make_pair_checked(const Norm& norm, Vec x, Vec y, int section, double theta,
                                        double phi) {
  AdmissiblePair p;
  p.res_x = std::fabs(norm.eval_unchecked(x) - 1.0);
  p.res_y = std::fabs(norm.eval_unchecked(y) - 1.0);
  Vec d = sub(x, y);
  p.res_xy = std::fabs(norm.eval_unchecked(d) - 1.0);
  p.x = std::move(x);
  p.y = std::move(y);
  p.section = section;
  p.theta = theta;
  p.phi = phi;
  return p;
}

}  // namespace detail

/// Solutions y of ||y|| = 1, ||x - y|| = 1 in the given section, for a unit
/// vector x. `grid` controls the phi scan (>= 64).
inline std::vector<AdmissiblePair> third_constraint_roots(const Norm& norm,
                                                          const SectionBasis& basis, const Vec& x,
                                                          int grid, double tau_feas = 1e-9) {
  if (grid < 64) throw Error(Errc::InvalidParameter, "phi grid must be >= 64");
  if (!(tau_feas > 0.0)) throw Error(Errc::InvalidParameter, "tau_feas must be positive");
  if (int(x.size()) != norm.dim()) throw Error(Errc::DimensionMismatch, "x has wrong dimension");
  if (std::fabs(norm(x) - 1.0) > tau_feas)
    throw Error(Errc::InvalidParameter, "x is not a unit vector within tau_feas");

  detail::SectionScanner scanner(norm, basis, grid);
  auto roots = scanner.solve(x, 1.0, tau_feas);
  if (roots.empty())
    throw Error(Errc::NoSolution, "no admissible y found; grid or tau_feas too coarse");
  std::vector<AdmissiblePair> out;
  out.reserve(roots.size());
  for (auto& [phi, y] : roots)
    out.push_back(detail::make_pair_checked(norm, x, std::move(y), 0, std::atan2(x[1], x[0]), phi));
  return out;
}

inline std::vector<AdmissiblePair> third_constraint_roots(const NormSpec& spec,
                                                          const SectionBasis& basis, const Vec& x,
                                                          int grid, double tau_feas = 1e-9) {
  return third_constraint_roots(Norm(spec), basis, x, grid, tau_feas);
}

/// Deterministic sample of T(X). x runs over the theta grid of every section
/// (plus the exact sphere corners of 2-D polyhedral-type norms), y over all
/// third-constraint roots (plus corners satisfying both constraints).
inline std::vector<AdmissiblePair> sample_T(const Norm& norm, const TriangleParams& params = {}) {
  if (params.theta_grid < 1 || params.phi_grid < 64)
    throw Error(Errc::InvalidParameter, "grids too small: need theta_grid >= 1, phi_grid >= 64");
  if (params.sections < 0) throw Error(Errc::InvalidParameter, "sections must be >= 0");
  if (!(params.tau_feas > 0.0)) throw Error(Errc::InvalidParameter, "tau_feas must be positive");

  const auto sections = make_sections(norm, norm.dim() == 2 ? 0 : params.sections, params.seed);
  const auto corners = section_corners(norm);
  const double tau = params.tau_feas;

  std::vector<AdmissiblePair> out;
  for (std::size_t si = 0; si < sections.size(); ++si) {
    detail::SectionScanner scanner(norm, sections[si], params.phi_grid);

    std::vector<std::pair<double, Vec>> xs;
    xs.reserve(params.theta_grid + corners.size());
    for (const auto& c : corners)
      if (std::fabs(norm.eval_unchecked(c) - 1.0) <= tau)
        xs.emplace_back(std::atan2(c[1], c[0]), c);
    for (int i = 0; i < params.theta_grid; ++i) {
      const double theta = kTwoPi * i / params.theta_grid;
      xs.emplace_back(theta, boundary_point(norm, sections[si], theta));
    }

    Vec diff(norm.dim());
    for (auto& [theta, x] : xs) {
      auto roots = scanner.solve(x, 1.0, tau);
      std::size_t emitted = roots.size();
      for (auto& [phi, y] : roots)
        out.push_back(detail::make_pair_checked(norm, x, std::move(y), int(si), theta, phi));
      for (const auto& c : corners) {
        if (std::fabs(norm.eval_unchecked(c) - 1.0) > tau) continue;
        sub_into(x, c, diff);
        if (std::fabs(norm.eval_unchecked(diff) - 1.0) > tau) continue;
        out.push_back(
            detail::make_pair_checked(norm, x, c, int(si), theta, std::atan2(c[1], c[0])));
        ++emitted;
      }
      if (emitted == 0)
        throw Error(Errc::NoSolution, "no admissible y for a sampled x; grids too coarse");
    }
  }
  return out;
}

inline std::vector<AdmissiblePair> sample_T(const NormSpec& spec, const TriangleParams& params = {}) {
  return sample_T(Norm(spec), params);
}

// ---------------------------------------------------------------------------
// two-point boundary samples for the classical constants

enum class PairSet {
  BothUnit,    // (x, y) in S_X x S_X
  XUnitYBall,  // ||x|| = 1, ||y|| in {k/R : k = 0..R}
};

struct SpherePair {
  Vec x, y;
  double radius = 1.0;  // ||y|| level
  int section = 0;
  double theta = 0.0, phi = 0.0;
};

struct PairGrids {
  int theta_grid = 2048;
  int phi_grid = 2048;
  int radial_levels = 16;  // XUnitYBall: ||y|| in {k/16}
  int sections = 64;
  std::uint64_t seed = 0x9e3779b9u;
};

/// Streams the deterministic pair sample to `fn(const SpherePair&)` without
/// materializing it. sample_sphere_pairs collects the same sequence.
template <class F>
void for_each_sphere_pair(const Norm& norm, PairSet set, const PairGrids& grids, F&& fn) {
  if (grids.theta_grid < 1 || grids.phi_grid < 1)
    throw Error(Errc::InvalidParameter, "grids must be positive");
  if (set == PairSet::XUnitYBall && grids.radial_levels < 1)
    throw Error(Errc::InvalidParameter, "radial_levels must be positive");
  if (grids.sections < 0) throw Error(Errc::InvalidParameter, "sections must be >= 0");

  const auto sections = make_sections(norm, norm.dim() == 2 ? 0 : grids.sections, grids.seed);
  const auto corners = section_corners(norm);
  const int d = norm.dim();

  for (std::size_t si = 0; si < sections.size(); ++si) {
    std::vector<std::pair<double, Vec>> boundary;
    boundary.reserve(grids.phi_grid + corners.size());
    for (const auto& c : corners) boundary.emplace_back(std::atan2(c[1], c[0]), c);
    for (int k = 0; k < grids.phi_grid; ++k) {
      const double phi = kTwoPi * k / grids.phi_grid;
      boundary.emplace_back(phi, boundary_point(norm, sections[si], phi));
    }

    std::vector<std::pair<double, Vec>> xs;
    if (grids.theta_grid == grids.phi_grid) {
      xs = boundary;
    } else {
      xs.reserve(grids.theta_grid + corners.size());
      for (const auto& c : corners) xs.emplace_back(std::atan2(c[1], c[0]), c);
      for (int i = 0; i < grids.theta_grid; ++i) {
        const double theta = kTwoPi * i / grids.theta_grid;
        xs.emplace_back(theta, boundary_point(norm, sections[si], theta));
      }
    }

    SpherePair p;
    p.section = int(si);
    for (const auto& [theta, x] : xs) {
      p.theta = theta;
      p.x = x;
      if (set == PairSet::BothUnit) {
        p.radius = 1.0;
        for (const auto& [phi, y] : boundary) {
          p.phi = phi;
          p.y = y;
          fn(p);
        }
      } else {
        const int R = grids.radial_levels;
        for (int k = 0; k <= R; ++k) {
          const double r = double(k) / R;
          p.radius = r;
          if (k == 0) {
            p.phi = 0.0;
            p.y.assign(d, 0.0);
            fn(p);
            continue;
          }
          for (const auto& [phi, y] : boundary) {
            p.phi = phi;
            p.y.resize(d);
            for (int i = 0; i < d; ++i) p.y[i] = r * y[i];
            fn(p);
          }
        }
      }
    }
  }
}

inline std::vector<SpherePair> sample_sphere_pairs(const Norm& norm, PairSet set,
                                                   const PairGrids& grids) {
  std::vector<SpherePair> out;
  for_each_sphere_pair(norm, set, grids, [&](const SpherePair& p) { out.push_back(p); });
  return out;
}

inline std::vector<SpherePair> sample_sphere_pairs(const NormSpec& spec, PairSet set,
                                                   const PairGrids& grids) {
  return sample_sphere_pairs(Norm(spec), set, grids);
}

}  // namespace geoconst
