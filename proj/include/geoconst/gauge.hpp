#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "geoconst/error.hpp"
#include "geoconst/vec.hpp"

namespace geoconst::detail {

/// Planar centrally-symmetric polygon prepared for Minkowski-functional
/// queries: vertices sorted by angle, gauge evaluated by intersecting the
/// query ray with the boundary edge of its angular sector.
struct Poly2 {
  std::vector<double> px, py, ang;

  Poly2() = default;

  explicit Poly2(const std::vector<Vec>& verts) {
    std::vector<std::size_t> order(verts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::vector<double> a(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) a[i] = std::atan2(verts[i][1], verts[i][0]);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a[i] < a[j]; });
    for (std::size_t i : order) {
      px.push_back(verts[i][0]);
      py.push_back(verts[i][1]);
      ang.push_back(a[i]);
    }
  }

  std::size_t size() const { return px.size(); }

  double gauge(double x, double y) const {
    if (x == 0.0 && y == 0.0) return 0.0;
    const std::size_t n = px.size();
    const double a = std::atan2(y, x);
    // sector [ang[j], ang[j+1]) containing a, cyclic
    std::size_t i = std::upper_bound(ang.begin(), ang.end(), a) - ang.begin();
    std::size_t j = (i == 0) ? n - 1 : i - 1;
    std::size_t k = (j + 1) % n;
    // ray s*(x,y) meets edge P_j -> P_k at s = cross(P_j,P_k)/cross(v, P_k-P_j)
    const double dx = px[k] - px[j], dy = py[k] - py[j];
    const double den = x * dy - y * dx;
    const double num = px[j] * py[k] - py[j] * px[k];
    if (num == 0.0)
      throw Error(Errc::InternalInconsistency, "polygon edge collinear with origin");
    return den / num;
  }

  /// Vertices of the polar polygon: one functional per non-degenerate edge,
  /// solving <f, P_j> = <f, P_k> = 1. Collinear vertex runs collapse to a
  /// single functional.
  std::vector<Vec> polar_vertices() const {
    const std::size_t n = px.size();
    std::vector<Vec> out;
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t k = (j + 1) % n;
      const double cr = px[j] * py[k] - py[j] * px[k];
      if (std::fabs(cr) < 1e-14) continue;  // radial/degenerate pair
      Vec f = {(py[k] - py[j]) / cr, (px[j] - px[k]) / cr};
      bool dup = false;
      for (const auto& g : out)
        if (std::fabs(g[0] - f[0]) <= 1e-9 && std::fabs(g[1] - f[1]) <= 1e-9) { dup = true; break; }
      if (!dup) out.push_back(std::move(f));
    }
    return out;
  }
};

/// Two-phase dense simplex for the gauge LP
///     min sum(lambda)  s.t.  A lambda = b, lambda >= 0
/// where the columns of A are the polytope vertices. Small problems only
/// (dims <= ~8, a few dozen vertices), so a plain tableau with Bland's rule
/// is adequate.
class GaugeLp {
 public:
  explicit GaugeLp(const std::vector<Vec>& verts)
      : m_(verts.size()), d_(verts.empty() ? 0 : verts.front().size()), cols_(verts) {}

  double gauge(const Vec& v) const {
    const std::size_t m = m_, d = d_;
    // tableau rows 0..d-1: constraints; row d: phase objective
    // columns 0..m-1: lambda; m..m+d-1: artificials; last: rhs
    const std::size_t ncol = m + d + 1;
    std::vector<std::vector<double>> t(d + 1, std::vector<double>(ncol, 0.0));
    std::vector<int> basis(d);
    for (std::size_t r = 0; r < d; ++r) {
      const double sgn = v[r] < 0.0 ? -1.0 : 1.0;
      for (std::size_t c = 0; c < m; ++c) t[r][c] = sgn * cols_[c][r];
      t[r][m + r] = 1.0;
      t[r][ncol - 1] = sgn * v[r];
      basis[r] = int(m + r);
    }
    // phase 1: minimize sum of artificials
    for (std::size_t c = 0; c < ncol; ++c) {
      double s = 0.0;
      for (std::size_t r = 0; r < d; ++r) s += t[r][c];
      t[d][c] = (c >= m && c < m + d) ? 0.0 : -s;  // reduced costs after pricing out
    }
    run_simplex(t, basis, m + d);
    double art = 0.0;
    for (std::size_t r = 0; r < d; ++r)
      if (basis[r] >= int(m)) art += std::fabs(t[r][ncol - 1]);
    if (art > 1e-9)
      throw Error(Errc::InternalInconsistency, "gauge LP infeasible (polytope does not span)");
    // phase 2: minimize sum(lambda); artificials barred from entering
    for (std::size_t c = 0; c < ncol; ++c) t[d][c] = (c < m) ? 1.0 : 0.0;
    for (std::size_t r = 0; r < d; ++r)
      if (basis[r] < int(m) && t[d][basis[r]] != 0.0) {
        const double f = t[d][basis[r]];
        for (std::size_t c = 0; c < ncol; ++c) t[d][c] -= f * t[r][c];
      }
    run_simplex(t, basis, m);
    return -t[d][ncol - 1];
  }

 private:
  static void run_simplex(std::vector<std::vector<double>>& t, std::vector<int>& basis,
                          std::size_t enterable) {
    const std::size_t d = t.size() - 1;
    const std::size_t ncol = t.front().size();
    for (int iter = 0; iter < 4096; ++iter) {
      // Bland: smallest-index column with negative reduced cost
      std::size_t pc = ncol;
      for (std::size_t c = 0; c < enterable; ++c)
        if (t[d][c] < -1e-11) { pc = c; break; }
      if (pc == ncol) return;  // optimal
      std::size_t pr = d;
      double best = 0.0;
      for (std::size_t r = 0; r < d; ++r) {
        if (t[r][pc] > 1e-11) {
          const double ratio = t[r][ncol - 1] / t[r][pc];
          if (pr == d || ratio < best - 1e-15 ||
              (std::fabs(ratio - best) <= 1e-15 && basis[r] < basis[pr])) {
            pr = r;
            best = ratio;
          }
        }
      }
      if (pr == d)
        throw Error(Errc::InternalInconsistency, "gauge LP unbounded");
      pivot(t, pr, pc);
      basis[pr] = int(pc);
    }
    throw Error(Errc::InternalInconsistency, "gauge LP failed to converge");
  }

  static void pivot(std::vector<std::vector<double>>& t, std::size_t pr, std::size_t pc) {
    const double piv = t[pr][pc];
    for (double& x : t[pr]) x /= piv;
    for (std::size_t r = 0; r < t.size(); ++r) {
      if (r == pr) continue;
      const double f = t[r][pc];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < t[r].size(); ++c) t[r][c] -= f * t[pr][c];
    }
  }

  std::size_t m_, d_;
  std::vector<Vec> cols_;
};

/// Facets of conv(verts) in dimension d >= 3 by subset enumeration: every
/// d-subset spanning a hyperplane <f, x> = 1 that supports the whole vertex
/// set contributes f as a polar vertex. Exponential in d; guarded.
inline std::vector<Vec> polar_vertices_nd(const std::vector<Vec>& verts) {
  const std::size_t m = verts.size();
  const std::size_t d = verts.front().size();
  double combos = 1.0;
  for (std::size_t i = 0; i < d; ++i) combos *= double(m - i) / double(i + 1);
  if (combos > 2e5)
    throw Error(Errc::Unsupported, "polar of polytope with this many vertices is not supported");

  std::vector<Vec> out;
  std::vector<std::size_t> idx(d);
  for (std::size_t i = 0; i < d; ++i) idx[i] = i;
  auto advance = [&]() -> bool {
    std::size_t i = d;
    while (i-- > 0) {
      if (idx[i] != i + m - d) {
        ++idx[i];
        for (std::size_t j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  do {
    // solve <f, verts[idx[r]]> = 1 for all r
    std::vector<std::vector<double>> a(d, std::vector<double>(d + 1, 0.0));
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) a[r][c] = verts[idx[r]][c];
      a[r][d] = 1.0;
    }
    bool singular = false;
    for (std::size_t c = 0; c < d && !singular; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c + 1; r < d; ++r)
        if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
      if (std::fabs(a[piv][c]) < 1e-12) { singular = true; break; }
      std::swap(a[piv], a[c]);
      for (std::size_t r = 0; r < d; ++r) {
        if (r == c) continue;
        const double f = a[r][c] / a[c][c];
        for (std::size_t k = c; k <= d; ++k) a[r][k] -= f * a[c][k];
      }
    }
    if (singular) continue;
    Vec f(d);
    for (std::size_t c = 0; c < d; ++c) f[c] = a[c][d] / a[c][c];
    bool supporting = true;
    for (const auto& u : verts)
      if (dot(f, u) > 1.0 + 1e-9) { supporting = false; break; }
    if (!supporting) continue;
    bool dup = false;
    for (const auto& g : out)
      if (vmax_abs_diff(g, f) <= 1e-9) { dup = true; break; }
    if (!dup) out.push_back(std::move(f));
  } while (advance());
  if (out.empty())
    throw Error(Errc::InternalInconsistency, "polar polytope has no facets");
  return out;
}

}  // namespace geoconst::detail
