// The commutative model attached to a tube semigroup: weighted point masses
// on S, their Gelfand transforms over the character space (identified with
// C itself), multipliers from group translations, and momenta of states.
#pragma once

#include "polytube/common.hpp"
#include "polytube/convex_ops.hpp"
#include "polytube/tube.hpp"

#include <complex>
#include <utility>
#include <vector>

namespace polytube {

template <typename Scalar = double>
struct AlgebraTerm {
  std::complex<Scalar> coeff;
  TubePoint<Scalar> point;
};

// Finite linear combination sum c_k delta_{s_k} of point masses on the tube
// semigroup.  Terms at coinciding points are merged and negligible
// coefficients dropped, so the zero element has no terms.
template <typename Scalar = double>
class AlgebraElement {
 public:
  static AlgebraElement zero(ContextPtr<Scalar> ctx) {
    AlgebraElement a;
    a.ctx_ = std::move(ctx);
    return a;
  }

  static AlgebraElement delta(const TubePoint<Scalar>& s,
                              std::complex<Scalar> coeff = std::complex<Scalar>(1)) {
    AlgebraElement a;
    a.ctx_ = s.ctx;
    a.append(coeff, s);
    a.prune();
    return a;
  }

  static AlgebraElement from_terms(ContextPtr<Scalar> ctx, std::vector<AlgebraTerm<Scalar>> terms) {
    AlgebraElement a;
    a.ctx_ = std::move(ctx);
    for (auto& t : terms) {
      if (t.point.ctx.get() != a.ctx_.get())
        throw InvalidInput("algebra term belongs to a different context");
      a.append(t.coeff, t.point);
    }
    a.prune();
    return a;
  }

  const ContextPtr<Scalar>& ctx() const { return ctx_; }
  const std::vector<AlgebraTerm<Scalar>>& terms() const { return terms_; }

  AlgebraElement& operator+=(const AlgebraElement& other) {
    if (ctx_.get() != other.ctx_.get())
      throw InvalidInput("algebra elements belong to different contexts");
    for (const auto& t : other.terms_) append(t.coeff, t.point);
    prune();
    return *this;
  }

  AlgebraElement& operator*=(std::complex<Scalar> z) {
    for (auto& t : terms_) t.coeff *= z;
    prune();
    return *this;
  }

 private:
  void append(std::complex<Scalar> coeff, const TubePoint<Scalar>& s) {
    const Scalar tol = ctx_->tol();
    for (auto& t : terms_) {
      const Scalar scale =
          std::max(Scalar(1), std::max(s.re.norm() + s.im.norm(),
                                       t.point.re.norm() + t.point.im.norm()));
      if ((t.point.re - s.re).template lpNorm<Eigen::Infinity>() <= tol * scale &&
          (t.point.im - s.im).template lpNorm<Eigen::Infinity>() <= tol * scale) {
        t.coeff += coeff;
        return;
      }
    }
    terms_.push_back({coeff, s});
  }

  void prune() {
    std::vector<AlgebraTerm<Scalar>> kept;
    for (auto& t : terms_)
      if (std::abs(t.coeff) >= Scalar(1e-15)) kept.push_back(std::move(t));
    terms_ = std::move(kept);
  }

  ContextPtr<Scalar> ctx_;
  std::vector<AlgebraTerm<Scalar>> terms_;
};

template <typename Scalar>
AlgebraElement<Scalar> operator+(AlgebraElement<Scalar> a, const AlgebraElement<Scalar>& b) {
  a += b;
  return a;
}

template <typename Scalar>
AlgebraElement<Scalar> operator*(std::complex<Scalar> z, AlgebraElement<Scalar> a) {
  a *= z;
  return a;
}

// Convolution: delta_s * delta_t = delta_{st}.
template <typename Scalar>
AlgebraElement<Scalar> mul(const AlgebraElement<Scalar>& a, const AlgebraElement<Scalar>& b) {
  if (a.ctx().get() != b.ctx().get())
    throw InvalidInput("algebra elements belong to different contexts");
  std::vector<AlgebraTerm<Scalar>> terms;
  for (const auto& ta : a.terms())
    for (const auto& tb : b.terms())
      terms.push_back({ta.coeff * tb.coeff, multiply(ta.point, tb.point)});
  return AlgebraElement<Scalar>::from_terms(a.ctx(), std::move(terms));
}

// (sum c_k delta_{s_k})* = sum conj(c_k) delta_{s_k^*}.
template <typename Scalar>
AlgebraElement<Scalar> star(const AlgebraElement<Scalar>& a) {
  std::vector<AlgebraTerm<Scalar>> terms;
  for (const auto& t : a.terms()) terms.push_back({std::conj(t.coeff), star(t.point)});
  return AlgebraElement<Scalar>::from_terms(a.ctx(), std::move(terms));
}

// Upper bound sum |c_k| alpha(s_k) on the represented operator norm.
template <typename Scalar>
Scalar ell1_alpha_norm(const AlgebraElement<Scalar>& a) {
  Scalar s = Scalar(0);
  for (const auto& t : a.terms()) s += std::abs(t.coeff) * alpha(t.point);
  return s;
}

// Bounded characters of (S, alpha) are exactly the points of C.
template <typename Scalar>
bool is_bounded_character(const ContextPtr<Scalar>& ctx, const VecX<Scalar>& f,
                          Scalar tol = geom_tol<Scalar>()) {
  return ctx->set().contains(f, tol);
}

namespace detail {
// chi_f(x + iy) = exp(i<f,x> - <f,y>), without the domain check.
template <typename Scalar>
std::complex<Scalar> character_value(const VecX<Scalar>& f, const TubePoint<Scalar>& s) {
  return std::exp(std::complex<Scalar>(-f.dot(s.im), f.dot(s.re)));
}

template <typename Scalar>
std::complex<Scalar> gelfand_value(const AlgebraElement<Scalar>& a, const VecX<Scalar>& f) {
  std::complex<Scalar> v(0);
  for (const auto& t : a.terms()) v += t.coeff * character_value(f, t.point);
  return v;
}
}  // namespace detail

// The Gelfand transform of a at the character labeled by f in C.
template <typename Scalar>
std::complex<Scalar> gelfand_eval(const AlgebraElement<Scalar>& a, const VecX<Scalar>& f,
                                  Scalar tol = geom_tol<Scalar>()) {
  if (!is_bounded_character(a.ctx(), f, tol))
    throw DomainError("character label lies outside the spectrum");
  return detail::gelfand_value(a, f);
}

// Unitary multiplier from the group translation by v, evaluated at f in C.
template <typename Scalar>
std::complex<Scalar> multiplier_eval(const ContextPtr<Scalar>& ctx, const VecX<Scalar>& v,
                                     const VecX<Scalar>& f, Scalar tol = geom_tol<Scalar>()) {
  if (v.size() != ctx->set().dim()) throw DimensionMismatch("multiplier: wrong dimension");
  if (!is_bounded_character(ctx, f, tol))
    throw DomainError("character label lies outside the spectrum");
  return std::polar(Scalar(1), f.dot(v));
}

// Closure of {<f, x> : f in C} as an interval; the ends may be infinite.
template <typename Scalar>
std::pair<Scalar, Scalar> momentum_interval(const ContextPtr<Scalar>& ctx,
                                            const VecX<Scalar>& x,
                                            Scalar tol = geom_tol<Scalar>()) {
  const Scalar lo = support_value<Scalar>(ctx->set(), x, tol);
  const Scalar hi = -support_value<Scalar>(ctx->set(), VecX<Scalar>(-x), tol);
  return {lo, hi};
}

// Operator norm of the holomorphically extended one-parameter multiplier
// z = a + ib along x, which equals exp(-b inf <C, x>); +infinity when x
// leaves the finiteness cone.
template <typename Scalar>
Scalar one_param_norm(const ContextPtr<Scalar>& ctx, const VecX<Scalar>& x, Scalar b,
                      Scalar tol = geom_tol<Scalar>()) {
  if (!(b > Scalar(0))) throw InvalidInput("one-parameter norm needs Im z > 0");
  return std::exp(-b * support_value<Scalar>(ctx->set(), x, tol));
}

// A state given by a finite convex combination of characters from C.
template <typename Scalar = double>
struct SmoothState {
  ContextPtr<Scalar> ctx;
  std::vector<std::pair<Scalar, VecX<Scalar>>> atoms;  // (weight, character label)
};

template <typename Scalar>
SmoothState<Scalar> make_state(const ContextPtr<Scalar>& ctx,
                               std::vector<std::pair<Scalar, VecX<Scalar>>> atoms,
                               Scalar tol = geom_tol<Scalar>()) {
  if (atoms.empty()) throw InvalidInput("a state needs at least one atom");
  Scalar total = Scalar(0);
  for (const auto& [w, f] : atoms) {
    if (!(w > Scalar(0))) throw InvalidInput("state weights must be positive");
    if (!is_bounded_character(ctx, f, tol))
      throw DomainError("state atom lies outside the spectrum");
    total += w;
  }
  if (std::abs(total - Scalar(1)) > Scalar(1e-12))
    throw InvalidInput("state weights must sum to one");
  return {ctx, std::move(atoms)};
}

// The derivative at the identity of the state pulled through the
// translation multipliers: the weighted average of the atom labels.
template <typename Scalar>
VecX<Scalar> momentum(const SmoothState<Scalar>& state) {
  VecX<Scalar> m = VecX<Scalar>::Zero(state.ctx->set().dim());
  for (const auto& [w, f] : state.atoms) m += w * f;
  return m;
}

template <typename Scalar = double>
struct MomentumSet {
  PolyhedralSet<Scalar> hull;
  bool recession_appended = false;
};

// Convex hull of the momenta of the given states, optionally completed by
// the recession directions of C.  Always contained in C.
template <typename Scalar>
MomentumSet<Scalar> momentum_set(const ContextPtr<Scalar>& ctx,
                                 const std::vector<SmoothState<Scalar>>& states,
                                 bool append_recession = false,
                                 Scalar tol = geom_tol<Scalar>()) {
  if (states.empty()) throw InvalidInput("momentum set of no states");
  MatX<Scalar> pts(ctx->set().dim(), static_cast<Eigen::Index>(states.size()));
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].ctx.get() != ctx.get())
      throw InvalidInput("state belongs to a different context");
    pts.col(static_cast<Eigen::Index>(i)) = momentum(states[i]);
  }
  MomentumSet<Scalar> out;
  out.recession_appended = append_recession;
  out.hull = append_recession
                 ? PolyhedralSet<Scalar>::from_points(pts, ctx->set().rays(), tol)
                 : PolyhedralSet<Scalar>::from_points(pts, tol);
  if (!contains_set(ctx->set(), out.hull, tol))
    throw DomainError("momentum hull escaped the spectrum");
  return out;
}

template <typename Scalar = double>
struct SeparationWitness {
  VecX<Scalar> group_element;
  Scalar separation;
};

// For distinct characters f != g, a translation v with
// |multiplier(v)(f) - multiplier(v)(g)| = sqrt(2), exhibited along the
// coordinate where f and g differ most.
template <typename Scalar>
SeparationWitness<Scalar> separation_witness(const ContextPtr<Scalar>& ctx,
                                             const VecX<Scalar>& f, const VecX<Scalar>& g,
                                             Scalar tol = geom_tol<Scalar>()) {
  if (f.size() != g.size() || f.size() != ctx->set().dim())
    throw DimensionMismatch("separation witness: wrong dimension");
  Eigen::Index j = -1;
  Scalar gap = tol * std::max(Scalar(1), std::max(f.norm(), g.norm()));
  for (Eigen::Index i = 0; i < f.size(); ++i)
    if (std::abs(f(i) - g(i)) > gap) {
      gap = std::abs(f(i) - g(i));
      j = i;
    }
  if (j < 0) throw InvalidInput("characters coincide; nothing separates them");
  VecX<Scalar> v = VecX<Scalar>::Zero(f.size());
  constexpr Scalar half_pi = Scalar(1.57079632679489661923);
  v(j) = half_pi / (f(j) - g(j));
  const Scalar sep = std::abs(multiplier_eval(ctx, v, f, tol) - multiplier_eval(ctx, v, g, tol));
  return {std::move(v), sep};
}

// The half-line [m, infinity) in one variable; the smallest interesting
// instance of the whole construction.
template <typename Scalar = double>
ContextPtr<Scalar> half_plane_instance(Scalar m, Scalar tol = geom_tol<Scalar>()) {
  MatX<Scalar> pt(1, 1), ray(1, 1);
  pt(0, 0) = m;
  ray(0, 0) = Scalar(1);
  return make_context<Scalar>(PolyhedralSet<Scalar>::from_points(pt, ray, tol), tol);
}

}  // namespace polytube
