#pragma once

#include <cmath>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "geoconst/error.hpp"
#include "geoconst/gauge.hpp"
#include "geoconst/norm_spec.hpp"
#include "geoconst/vec.hpp"

namespace geoconst {

namespace detail {

inline double pow_fast(double a, double p) {
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  if (p == 3.0) return a * a * a;
  if (p == 4.0) { const double s = a * a; return s * s; }
  return std::pow(a, p);
}

}  // namespace detail

/// Compiled norm evaluator. Construction validates the spec and builds the
/// per-family acceleration structures (angle-sorted polygon in 2-D, gauge LP
/// columns otherwise). Evaluation is pure and thread-safe.
class Norm {
 public:
  explicit Norm(NormSpec spec) : Norm(validate_spec(std::move(spec)), unchecked_tag{}) {}

  /// Builds the evaluator without normalizing the vertex set. Intended for
  /// diagnostics such as feeding a deliberately non-convex polygon to the
  /// axiom checker; everything else should use the validating constructor.
  static Norm unchecked(NormSpec spec) { return Norm(std::move(spec), unchecked_tag{}); }

  const NormSpec& spec() const { return spec_; }
  int dim() const { return spec_.dim; }

  double operator()(const Vec& v) const {
    if (int(v.size()) != spec_.dim)
      throw Error(Errc::DimensionMismatch, "vector has " + std::to_string(v.size()) +
                                               " coordinates, norm expects " + std::to_string(spec_.dim));
    return eval_unchecked(v);
  }

  double eval_unchecked(const Vec& v) const {
    switch (spec_.family) {
      case NormFamily::Lp: {
        const double p = spec_.p;
        if (p == 1.0) {
          double s = 0.0;
          for (double x : v) s += std::fabs(x);
          return s;
        }
        if (p == 2.0) {
          double s = 0.0;
          for (double x : v) s += x * x;
          return std::sqrt(s);
        }
        double s = 0.0;
        for (double x : v) s += detail::pow_fast(std::fabs(x), p);
        return std::pow(s, 1.0 / p);
      }
      case NormFamily::WeightedLp: {
        const double p = spec_.p;
        double s = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i)
          s += spec_.weights[i] * detail::pow_fast(std::fabs(v[i]), p);
        return p == 1.0 ? s : std::pow(s, 1.0 / p);
      }
      case NormFamily::Linf: {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::fabs(x));
        return m;
      }
      case NormFamily::Polyhedral: {
        if (spec_.dim == 2) return poly2_.gauge(v[0], v[1]);
        return lp_->gauge(v);
      }
    }
    return 0.0;
  }

 private:
  struct unchecked_tag {};

  Norm(NormSpec spec, unchecked_tag) : spec_(std::move(spec)) {
    if (spec_.family == NormFamily::Polyhedral) {
      if (spec_.dim == 2)
        poly2_ = detail::Poly2(spec_.vertices);
      else
        lp_ = std::make_shared<detail::GaugeLp>(spec_.vertices);
    }
  }

  NormSpec spec_;
  detail::Poly2 poly2_;
  std::shared_ptr<detail::GaugeLp> lp_;  // shared: Norm is freely copyable
};

inline double eval_norm(const NormSpec& spec, const Vec& v) { return Norm(spec)(v); }

/// Spec of the dual norm. Closed-form conjugates for the lp families; the
/// polar polytope for polyhedral balls.
inline NormSpec dual_spec(const NormSpec& spec_in) {
  NormSpec spec = validate_spec(spec_in);
  switch (spec.family) {
    case NormFamily::Lp: {
      if (spec.p == 1.0) return NormSpec::linf(spec.dim);
      return NormSpec::lp(spec.dim, spec.p / (spec.p - 1.0));
    }
    case NormFamily::Linf:
      return NormSpec::lp(spec.dim, 1.0);
    case NormFamily::WeightedLp: {
      if (spec.p == 1.0) {
        // dual ball of sum(w_i |x_i|) <= 1 is the box |f_i| <= w_i
        if (spec.dim > 20)
          throw Error(Errc::Unsupported, "dual of weighted-l1 ball needs 2^dim vertices");
        std::vector<Vec> verts;
        const std::size_t count = std::size_t(1) << spec.dim;
        for (std::size_t mask = 0; mask < count; ++mask) {
          Vec v(spec.dim);
          for (int i = 0; i < spec.dim; ++i)
            v[i] = (mask >> i) & 1 ? -spec.weights[i] : spec.weights[i];
          verts.push_back(std::move(v));
        }
        return validate_spec(NormSpec::polyhedral(std::move(verts)));
      }
      const double q = spec.p / (spec.p - 1.0);
      Vec w(spec.dim);
      for (int i = 0; i < spec.dim; ++i) w[i] = std::pow(spec.weights[i], 1.0 - q);
      return NormSpec::weighted_lp(spec.dim, q, std::move(w));
    }
    case NormFamily::Polyhedral: {
      std::vector<Vec> polar = spec.dim == 2 ? detail::Poly2(spec.vertices).polar_vertices()
                                             : detail::polar_vertices_nd(spec.vertices);
      return validate_spec(NormSpec::polyhedral(std::move(polar)));
    }
  }
  throw Error(Errc::InternalInconsistency, "unreachable");
}

/// Norm of the linear functional f in the dual space, i.e. the operator norm
/// sup{ <f,x> : ||x|| <= 1 } evaluated through the closed-form dual spec.
inline double eval_dual_norm(const NormSpec& spec, const Vec& f) {
  return Norm(dual_spec(spec))(f);
}

struct AxiomReport {
  int samples = 0;
  int violations = 0;
  double worst_excess = 0.0;   // largest relative violation over all three axioms
  std::string worst_case;      // description of the worst offending input
};

/// Samples vector pairs and scalars deterministically from `seed` and checks
/// homogeneity, symmetry and the triangle inequality to 1e-10 relative
/// tolerance. Returns counts; see require_axioms for the throwing variant.
inline AxiomReport check_norm_axioms(const Norm& norm, int samples, std::uint64_t seed) {
  if (samples <= 0) throw Error(Errc::InvalidParameter, "samples must be positive");
  constexpr double tol = 1e-10;
  detail::Rng rng(seed);
  AxiomReport rep;
  rep.samples = samples;
  const int d = norm.dim();
  Vec u(d), v(d), w(d);
  auto record = [&](double excess, const char* kind, const Vec& a, const Vec& b, double alpha) {
    if (excess <= tol) return;
    ++rep.violations;
    if (excess > rep.worst_excess) {
      rep.worst_excess = excess;
      std::ostringstream os;
      os << kind << " violated by " << excess << " at u=[";
      for (int i = 0; i < d; ++i) os << (i ? "," : "") << a[i];
      os << "] v=[";
      for (int i = 0; i < d; ++i) os << (i ? "," : "") << b[i];
      os << "] alpha=" << alpha;
      rep.worst_case = os.str();
    }
  };
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < d; ++i) u[i] = rng.symmetric(2.0);
    for (int i = 0; i < d; ++i) v[i] = rng.symmetric(2.0);
    const double alpha = rng.symmetric(3.0);
    const double nu = norm.eval_unchecked(u);
    const double nv = norm.eval_unchecked(v);
    for (int i = 0; i < d; ++i) w[i] = alpha * v[i];
    const double nav = norm.eval_unchecked(w);
    record(std::fabs(nav - std::fabs(alpha) * nv) / std::max(1.0, std::fabs(alpha) * nv),
           "homogeneity", u, v, alpha);
    for (int i = 0; i < d; ++i) w[i] = -v[i];
    record(std::fabs(norm.eval_unchecked(w) - nv) / std::max(1.0, nv), "symmetry", u, v, -1.0);
    for (int i = 0; i < d; ++i) w[i] = u[i] + v[i];
    record((norm.eval_unchecked(w) - (nu + nv)) / std::max(1.0, nu + nv), "triangle", u, v, 1.0);
  }
  return rep;
}

inline AxiomReport check_norm_axioms(const NormSpec& spec, int samples, std::uint64_t seed) {
  return check_norm_axioms(Norm(spec), samples, seed);
}

/// Throws Errc::AxiomViolation carrying the worst witness if any sampled
/// axiom check fails.
inline void require_axioms(const Norm& norm, int samples, std::uint64_t seed) {
  const AxiomReport rep = check_norm_axioms(norm, samples, seed);
  if (rep.violations > 0) throw Error(Errc::AxiomViolation, rep.worst_case);
}

}  // namespace geoconst
