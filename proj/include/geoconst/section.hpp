#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "geoconst/error.hpp"
#include "geoconst/norm.hpp"
#include "geoconst/vec.hpp"

namespace geoconst {

/// Two independent directions spanning a planar section of the ambient
/// space; both are unit vectors of the ambient norm. Every two-vector
/// quantity evaluated here depends on the norm only through such sections.
struct SectionBasis {
  Vec e1, e2;
};

inline SectionBasis standard_section(const Norm& norm) {
  const int d = norm.dim();
  Vec e1(d, 0.0), e2(d, 0.0);
  e1[0] = 1.0;
  e2[1] = 1.0;
  const double n1 = norm.eval_unchecked(e1), n2 = norm.eval_unchecked(e2);
  for (auto& x : e1) x /= n1;
  for (auto& x : e2) x /= n2;
  return {std::move(e1), std::move(e2)};
}

/// Deterministic family of sections: the single standard one in dimension 2;
/// otherwise every coordinate plane followed by `random_sections` seeded
/// pseudo-random planes.
inline std::vector<SectionBasis> make_sections(const Norm& norm, int random_sections,
                                               std::uint64_t seed) {
  const int d = norm.dim();
  std::vector<SectionBasis> out;
  if (d == 2) {
    out.push_back(standard_section(norm));
    return out;
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      Vec e1(d, 0.0), e2(d, 0.0);
      e1[i] = 1.0;
      e2[j] = 1.0;
      const double n1 = norm.eval_unchecked(e1), n2 = norm.eval_unchecked(e2);
      for (auto& x : e1) x /= n1;
      for (auto& x : e2) x /= n2;
      out.push_back({std::move(e1), std::move(e2)});
    }
  }
  detail::Rng rng(seed);
  int made = 0;
  while (made < random_sections) {
    Vec g1(d), g2(d);
    for (int i = 0; i < d; ++i) g1[i] = rng.gauss();
    for (int i = 0; i < d; ++i) g2[i] = rng.gauss();
    // reject nearly dependent draws
    const double n1e = euclid(g1);
    if (n1e < 1e-6) continue;
    const double proj = dot(g1, g2) / (n1e * n1e);
    Vec g2perp(d);
    for (int i = 0; i < d; ++i) g2perp[i] = g2[i] - proj * g1[i];
    if (euclid(g2perp) < 1e-6 * euclid(g2)) continue;
    const double n1 = norm.eval_unchecked(g1), n2 = norm.eval_unchecked(g2perp);
    for (auto& x : g1) x /= n1;
    for (auto& x : g2perp) x /= n2;
    out.push_back({std::move(g1), std::move(g2perp)});
    ++made;
  }
  return out;
}

/// Unit-sphere point of the section at angle theta:
///   v(theta) = (cos theta * e1 + sin theta * e2) / || ... ||.
/// Continuous and 2*pi-periodic in theta.
inline Vec boundary_point(const Norm& norm, const SectionBasis& basis, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  Vec w(basis.e1.size());
  lincomb(c, basis.e1, s, basis.e2, w);
  const double n = norm.eval_unchecked(w);
  if (n == 0.0)
    throw Error(Errc::DegenerateDirection, "section directions are dependent at this angle");
  for (auto& x : w) x /= n;
  return w;
}

inline Vec boundary_point(const NormSpec& spec, const SectionBasis& basis, double theta) {
  return boundary_point(Norm(spec), basis, theta);
}

/// sup{ <f, x> : ||x|| = 1 } over a sampled boundary. Numeric cross-check for
/// the closed-form dual norm.
inline double support_function_estimate(const Norm& norm, const Vec& f, int grid,
                                        int random_sections = 16,
                                        std::uint64_t seed = 0x9e3779b9u) {
  if (grid < 2) throw Error(Errc::InvalidParameter, "grid must be >= 2");
  if (int(f.size()) != norm.dim()) throw Error(Errc::DimensionMismatch, "functional dimension");
  double best = 0.0;
  for (const auto& basis : make_sections(norm, norm.dim() == 2 ? 0 : random_sections, seed)) {
    for (int i = 0; i < grid; ++i) {
      const double theta = 6.283185307179586476925286766559 * i / grid;
      best = std::max(best, dot(f, boundary_point(norm, basis, theta)));
    }
  }
  if (norm.dim() == 2) {
    switch (norm.spec().family) {
      case NormFamily::Linf:
        for (const Vec& c : {Vec{1, 1}, Vec{1, -1}, Vec{-1, 1}, Vec{-1, -1}})
          best = std::max(best, dot(f, c));
        break;
      case NormFamily::Polyhedral:
        for (const auto& c : norm.spec().vertices) best = std::max(best, dot(f, c));
        break;
      default:
        break;
    }
  }
  return best;
}

/// Exact kink directions of the unit sphere for the 2-D polyhedral-type
/// families: polytope vertices, or the corners of the sup-norm square.
/// Extrema of piecewise-linear objectives sit at these points, and sampling
/// them verbatim keeps attained values exact instead of grid-limited.
inline std::vector<Vec> section_corners(const Norm& norm) {
  std::vector<Vec> out;
  if (norm.dim() != 2) return out;
  switch (norm.spec().family) {
    case NormFamily::Linf:
      out = {Vec{1.0, 1.0}, Vec{1.0, -1.0}, Vec{-1.0, 1.0}, Vec{-1.0, -1.0}};
      break;
    case NormFamily::Polyhedral:
      out = norm.spec().vertices;
      break;
    default:
      break;
  }
  return out;
}

}  // namespace geoconst
