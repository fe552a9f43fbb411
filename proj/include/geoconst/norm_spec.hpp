#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "geoconst/error.hpp"
#include "geoconst/gauge.hpp"
#include "geoconst/vec.hpp"

namespace geoconst {

enum class NormFamily { Lp, WeightedLp, Linf, Polyhedral };

inline const char* family_name(NormFamily f) noexcept {
  switch (f) {
    case NormFamily::Lp:         return "lp";
    case NormFamily::WeightedLp: return "wlp";
    case NormFamily::Linf:       return "linf";
    case NormFamily::Polyhedral: return "polyhedral";
  }
  return "?";
}

/// Declarative description of a norm on R^dim.
///
/// Polyhedral norms are given by the vertex set of their unit ball; the set
/// must be centrally symmetric and its hull must have nonempty interior.
struct NormSpec {
  NormFamily family = NormFamily::Lp;
  int dim = 2;
  double p = 2.0;               // Lp / WeightedLp only, p in [1, inf)
  Vec weights;                  // WeightedLp only, strictly positive, size dim
  std::vector<Vec> vertices;    // Polyhedral only

  static NormSpec lp(int dim, double p) {
    NormSpec s;
    s.family = NormFamily::Lp;
    s.dim = dim;
    s.p = p;
    return s;
  }
  static NormSpec linf(int dim) {
    NormSpec s;
    s.family = NormFamily::Linf;
    s.dim = dim;
    return s;
  }
  static NormSpec weighted_lp(int dim, double p, Vec w) {
    NormSpec s;
    s.family = NormFamily::WeightedLp;
    s.dim = dim;
    s.p = p;
    s.weights = std::move(w);
    return s;
  }
  static NormSpec polyhedral(std::vector<Vec> verts) {
    NormSpec s;
    s.family = NormFamily::Polyhedral;
    s.dim = verts.empty() ? 0 : int(verts.front().size());
    s.vertices = std::move(verts);
    return s;
  }
};

namespace detail {

/// Rank of the row set {vertices} via Gaussian elimination with partial
/// pivoting. Used for the nonempty-interior check.
inline int matrix_rank(std::vector<Vec> rows, double tol = 1e-10) {
  int rank = 0;
  std::size_t ncols = rows.empty() ? 0 : rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t piv = r;
    for (std::size_t i = r + 1; i < rows.size(); ++i)
      if (std::fabs(rows[i][c]) > std::fabs(rows[piv][c])) piv = i;
    if (std::fabs(rows[piv][c]) <= tol) continue;
    std::swap(rows[piv], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      double f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
    ++rank;
  }
  return rank;
}

inline double cross2(double ax, double ay, double bx, double by) {
  return ax * by - ay * bx;
}

/// Strict convex hull of 2-D points (Andrew monotone chain); collinear
/// boundary points are dropped.
inline std::vector<Vec> hull2d(std::vector<Vec> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Vec> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross2(h[k - 1][0] - h[k - 2][0], h[k - 1][1] - h[k - 2][1],
                            pts[i][0] - h[k - 2][0], pts[i][1] - h[k - 2][1]) <= 0)
      --k;
    h[k++] = pts[i];
  }
  std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross2(h[k - 1][0] - h[k - 2][0], h[k - 1][1] - h[k - 2][1],
                                pts[i][0] - h[k - 2][0], pts[i][1] - h[k - 2][1]) <= 0)
      --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

/// True if q lies in the convex hull of hull2d-output `h` at distance
/// >= tol inside every edge (strict interior).
inline bool strictly_inside_hull2d(const std::vector<Vec>& h, const Vec& q, double tol = 1e-12) {
  std::size_t n = h.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec& a = h[i];
    const Vec& b = h[(i + 1) % n];
    if (cross2(b[0] - a[0], b[1] - a[1], q[0] - a[0], q[1] - a[1]) <= tol) return false;
  }
  return true;
}

}  // namespace detail

/// Checks all NormSpec invariants and returns a normalized copy (polyhedral
/// vertex sets deduplicated, strict hull-interior vertices dropped, 2-D
/// vertices sorted by angle). Throws geoconst::Error on violation.
inline NormSpec validate_spec(NormSpec spec) {
  if (spec.dim < 2)
    throw Error(Errc::DimensionTooSmall, "dim must be >= 2, got " + std::to_string(spec.dim));

  switch (spec.family) {
    case NormFamily::Lp:
    case NormFamily::WeightedLp: {
      if (!(spec.p >= 1.0) || !std::isfinite(spec.p))
        throw Error(Errc::BadExponent, "p must lie in [1, inf), got " + std::to_string(spec.p));
      if (spec.family == NormFamily::WeightedLp) {
        if (int(spec.weights.size()) != spec.dim)
          throw Error(Errc::InvalidParameter, "weights: expected " + std::to_string(spec.dim) +
                                                  " entries, got " + std::to_string(spec.weights.size()));
        for (std::size_t i = 0; i < spec.weights.size(); ++i)
          if (!(spec.weights[i] > 0.0) || !std::isfinite(spec.weights[i]))
            throw Error(Errc::InvalidParameter,
                        "weights[" + std::to_string(i) + "] must be strictly positive");
      } else {
        spec.weights.clear();
      }
      spec.vertices.clear();
      break;
    }
    case NormFamily::Linf:
      spec.weights.clear();
      spec.vertices.clear();
      break;
    case NormFamily::Polyhedral: {
      auto& vs = spec.vertices;
      if (vs.empty())
        throw Error(Errc::DegeneratePolytope, "vertices: empty set");
      for (std::size_t i = 0; i < vs.size(); ++i) {
        if (int(vs[i].size()) != spec.dim)
          throw Error(Errc::InvalidParameter, "vertices[" + std::to_string(i) + "]: expected " +
                                                  std::to_string(spec.dim) + " coordinates");
        if (!all_finite(vs[i]))
          throw Error(Errc::InvalidParameter, "vertices[" + std::to_string(i) + "]: non-finite entry");
      }
      // drop exact-duplicate vertices (tolerance 1e-12, first occurrence kept)
      std::vector<Vec> uniq;
      for (const auto& v : vs) {
        bool dup = false;
        for (const auto& u : uniq)
          if (detail::vmax_abs_diff(u, v) <= 1e-12) { dup = true; break; }
        if (!dup) uniq.push_back(v);
      }
      // central symmetry: every vertex needs its negation
      for (std::size_t i = 0; i < uniq.size(); ++i) {
        bool found = false;
        for (const auto& u : uniq)
          if (detail::vmax_abs_diff(scaled(uniq[i], -1.0), u) <= 1e-12) { found = true; break; }
        if (!found)
          throw Error(Errc::AsymmetricPolytope,
                      "vertices[" + std::to_string(i) + "] has no negated counterpart");
      }
      if (detail::matrix_rank(uniq) < spec.dim)
        throw Error(Errc::DegeneratePolytope, "vertex hull has empty interior");

      if (spec.dim == 2) {
        auto hull = detail::hull2d(uniq);
        std::vector<Vec> kept;
        for (const auto& v : uniq)
          if (!detail::strictly_inside_hull2d(hull, v)) kept.push_back(v);
        std::sort(kept.begin(), kept.end(), [](const Vec& a, const Vec& b) {
          return std::atan2(a[1], a[0]) < std::atan2(b[1], b[0]);
        });
        spec.vertices = std::move(kept);
      } else {
        // drop vertices strictly inside the hull of the remaining set
        std::vector<Vec> kept;
        for (std::size_t i = 0; i < uniq.size(); ++i) {
          std::vector<Vec> others;
          for (std::size_t j = 0; j < uniq.size(); ++j)
            if (j != i) others.push_back(uniq[j]);
          bool interior = false;
          try {
            interior = detail::GaugeLp(others).gauge(uniq[i]) <= 1.0 - 1e-9;
          } catch (const Error&) {
            interior = false;  // others do not span: certainly not interior
          }
          if (!interior) kept.push_back(uniq[i]);
        }
        spec.vertices = std::move(kept);
      }
      break;
    }
  }
  return spec;
}

}  // namespace geoconst
