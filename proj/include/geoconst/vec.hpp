#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace geoconst {

/// Dense coordinate vector in the ambient space R^n.
using Vec = std::vector<double>;

inline bool all_finite(const Vec& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Vec add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec scaled(const Vec& a, double s) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

/// r = c1*a + c2*b, written into a caller-provided buffer to keep hot loops
/// allocation-free.
inline void lincomb(double c1, const Vec& a, double c2, const Vec& b, Vec& r) {
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c1 * a[i] + c2 * b[i];
}

inline void sub_into(const Vec& a, const Vec& b, Vec& r) {
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
}

inline double euclid(const Vec& a) { return std::sqrt(dot(a, a)); }

namespace detail {

inline double vmax_abs_diff(const Vec& a, const Vec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

/// Deterministic 64-bit generator (splitmix64). Used instead of <random>
/// distributions so that sampled sequences are identical across library
/// implementations.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [-r, r].
  double symmetric(double r) { return r * (2.0 * uniform() - 1.0); }

  /// Standard normal via Box-Muller.
  double gauss() {
    double u1 = uniform(), u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }
};

}  // namespace detail
}  // namespace geoconst
