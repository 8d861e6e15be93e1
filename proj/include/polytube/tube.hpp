// The additive tube semigroup S = V + iW attached to a polyhedral set C,
// where W is the interior of the finiteness cone B(C), together with the
// absolute value alpha(x + iy) = exp(-inf <C, y>).
#pragma once

#include "polytube/common.hpp"
#include "polytube/convex_ops.hpp"
#include "polytube/distance.hpp"
#include "polytube/polyhedra.hpp"

#include <complex>
#include <memory>
#include <utility>
#include <vector>

namespace polytube {

template <typename Scalar>
class AbsoluteValueContext;

template <typename Scalar = double>
using ContextPtr = std::shared_ptr<const AbsoluteValueContext<Scalar>>;

template <typename Scalar = double>
struct TubePoint {
  ContextPtr<Scalar> ctx;
  VecX<Scalar> re;
  VecX<Scalar> im;
};

// Holds C together with the data S and alpha depend on.  Valid only when
// the recession cone of C is pointed, which makes the interior of B(C)
// nonempty and the tube semigroup nondegenerate.
template <typename Scalar = double>
class AbsoluteValueContext {
 public:
  static ContextPtr<Scalar> create(PolyhedralSet<Scalar> set, Scalar tol = geom_tol<Scalar>()) {
    auto ctx = ContextPtr<Scalar>(new AbsoluteValueContext(std::move(set), tol));
    if (ctx->set().rays().cols() > 0) {
      // Pointedness certificate: the min-norm point of the hull of the unit
      // recession generators is nonzero exactly when no cancellation is
      // possible, and it is then itself an interior direction of B(C).
      const VecX<Scalar> nu = min_norm_point<Scalar>(ctx->set().rays());
      if (nu.norm() <= Scalar(1e-7))
        throw DegenerateCone("finiteness cone has empty interior; the tube is degenerate");
    }
    return ctx;
  }

  const PolyhedralSet<Scalar>& set() const { return set_; }
  Scalar tol() const { return tol_; }

  // Strict interior of B(C): positive margin against every recession
  // generator (vacuous when C is bounded).
  bool in_cone_interior(const VecX<Scalar>& y) const {
    if (y.size() != set_.dim()) throw DimensionMismatch("tube imaginary part: wrong dimension");
    const Scalar margin = detail::scaled_tol(tol_, y.norm());
    for (Eigen::Index j = 0; j < set_.rays().cols(); ++j)
      if (set_.rays().col(j).dot(y) <= margin) return false;
    return true;
  }

 private:
  AbsoluteValueContext(PolyhedralSet<Scalar> set, Scalar tol)
      : set_(std::move(set)), tol_(tol) {}

  PolyhedralSet<Scalar> set_;
  Scalar tol_;
};

template <typename Scalar = double>
ContextPtr<Scalar> make_context(PolyhedralSet<Scalar> set, Scalar tol = geom_tol<Scalar>()) {
  return AbsoluteValueContext<Scalar>::create(std::move(set), tol);
}

template <typename Scalar>
TubePoint<Scalar> tube_point(const ContextPtr<Scalar>& ctx, VecX<Scalar> re, VecX<Scalar> im) {
  if (!ctx) throw InvalidInput("tube point without a context");
  if (re.size() != ctx->set().dim() || im.size() != ctx->set().dim())
    throw DimensionMismatch("tube point: wrong dimension");
  if (!ctx->in_cone_interior(im))
    throw OutsideSemigroup("imaginary part is not interior to the finiteness cone");
  return {ctx, std::move(re), std::move(im)};
}

namespace detail {
template <typename Scalar>
void require_same_context(const TubePoint<Scalar>& s, const TubePoint<Scalar>& t) {
  if (s.ctx.get() != t.ctx.get())
    throw InvalidInput("tube points belong to different contexts");
}
}  // namespace detail

template <typename Scalar>
TubePoint<Scalar> multiply(const TubePoint<Scalar>& s, const TubePoint<Scalar>& t) {
  detail::require_same_context(s, t);
  return {s.ctx, s.re + t.re, s.im + t.im};
}

template <typename Scalar>
TubePoint<Scalar> star(const TubePoint<Scalar>& s) {
  return {s.ctx, -s.re, s.im};
}

template <typename Scalar>
Scalar alpha(const TubePoint<Scalar>& s) {
  const Scalar v = support_value<Scalar>(s.ctx->set(), s.im, s.ctx->tol());
  if (!std::isfinite(v))
    throw OutsideSemigroup("support value diverged for a semigroup element");
  return std::exp(-v);
}

template <typename Scalar>
Scalar alpha(const ContextPtr<Scalar>& ctx, const TubePoint<Scalar>& s) {
  if (ctx.get() != s.ctx.get()) throw InvalidInput("tube point belongs to a different context");
  return alpha(s);
}

// The point z x = Re(z) x + i Im(z) x on the complex ray through x.  Lands
// in the semigroup exactly when Im(z) x is interior to the finiteness cone.
template <typename Scalar>
TubePoint<Scalar> one_param_point(const ContextPtr<Scalar>& ctx, const VecX<Scalar>& x,
                                  std::complex<Scalar> z) {
  if (x.size() != ctx->set().dim()) throw DimensionMismatch("one-parameter point: wrong dimension");
  return tube_point<Scalar>(ctx, VecX<Scalar>(z.real() * x), VecX<Scalar>(z.imag() * x));
}

struct AbsoluteValueReport {
  std::size_t pairs = 0;
  std::size_t star_mismatches = 0;
  std::size_t submultiplicativity_failures = 0;
  double worst_submultiplicative_excess = 0.0;  // max of alpha(st)/(alpha(s) alpha(t)) - 1
};

// Checks alpha(s) == alpha(s*) bitwise (alpha only reads the imaginary
// part) and alpha(st) <= alpha(s) alpha(t) up to relative rounding slack.
template <typename Scalar>
AbsoluteValueReport check_absolute_value_axioms(
    const std::vector<std::pair<TubePoint<Scalar>, TubePoint<Scalar>>>& pairs,
    Scalar rel_slack = Scalar(1e-12)) {
  AbsoluteValueReport rep;
  for (const auto& [s, t] : pairs) {
    ++rep.pairs;
    if (alpha(s) != alpha(star(s))) ++rep.star_mismatches;
    const Scalar lhs = alpha(multiply(s, t));
    const Scalar rhs = alpha(s) * alpha(t);
    const Scalar excess = lhs / rhs - Scalar(1);
    rep.worst_submultiplicative_excess =
        std::max(rep.worst_submultiplicative_excess, double(excess));
    if (excess > rel_slack) ++rep.submultiplicativity_failures;
  }
  return rep;
}

}  // namespace polytube
