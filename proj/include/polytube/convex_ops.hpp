// Support-function calculus on polyhedral sets: support values, recession
// and finiteness cones, duality, linear minimization, level sets and
// reconstruction of a set from sampled support values.
#pragma once

#include "polytube/common.hpp"
#include "polytube/polyhedra.hpp"

#include <optional>
#include <vector>

namespace polytube {

// inf_{a in C} <a, x>.  Finite iff x lies in the finiteness cone B(C);
// otherwise -infinity (some recession direction decreases the functional).
template <typename Scalar>
Scalar support_value(const PolyhedralSet<Scalar>& c, const VecX<Scalar>& x,
                     Scalar tol = geom_tol<Scalar>()) {
  if (x.size() != c.dim()) throw DimensionMismatch("support value: wrong dimension");
  const Scalar slack = detail::scaled_tol(tol, x.norm());
  for (Eigen::Index j = 0; j < c.rays().cols(); ++j)
    if (c.rays().col(j).dot(x) < -slack) return minus_inf<Scalar>();
  Scalar best = plus_inf<Scalar>();
  for (Eigen::Index j = 0; j < c.vertices().cols(); ++j)
    best = std::min(best, Scalar(c.vertices().col(j).dot(x)));
  return best;
}

// s_C(x) = -inf_{a in C} <a, x>: finite exactly on the finiteness cone,
// +infinity where the infimum diverges.
template <typename Scalar>
Scalar support_function(const PolyhedralSet<Scalar>& c, const VecX<Scalar>& x,
                        Scalar tol = geom_tol<Scalar>()) {
  return -support_value<Scalar>(c, x, tol);
}

template <typename Scalar>
PolyhedralCone<Scalar> recession_cone(const PolyhedralSet<Scalar>& c,
                                      Scalar tol = geom_tol<Scalar>()) {
  return PolyhedralCone<Scalar>::from_generators(c.rays(), c.dim(), tol);
}

// Same cone computed from the halfspace form: {x : <n_i, x> >= 0} over the
// facet normals of C.  An independent code path used for cross checks.
template <typename Scalar>
PolyhedralCone<Scalar> recession_cone_from_halfspaces(const PolyhedralSet<Scalar>& c,
                                                      Scalar tol = geom_tol<Scalar>()) {
  const auto& hs = c.halfspaces();
  MatX<Scalar> normals(c.dim(), static_cast<Eigen::Index>(hs.size()));
  for (std::size_t i = 0; i < hs.size(); ++i)
    normals.col(static_cast<Eigen::Index>(i)) = hs[i].normal;
  return PolyhedralCone<Scalar>::from_normals(normals, c.dim(), tol);
}

// B(C) = {x : inf <C, x> > -inf}, the dual of the recession cone.
template <typename Scalar>
PolyhedralCone<Scalar> b_cone(const PolyhedralSet<Scalar>& c, Scalar tol = geom_tol<Scalar>()) {
  return PolyhedralCone<Scalar>::from_normals(c.rays(), c.dim(), tol);
}

template <typename Scalar>
PolyhedralCone<Scalar> dual_cone(const PolyhedralCone<Scalar>& k,
                                 Scalar tol = geom_tol<Scalar>()) {
  return PolyhedralCone<Scalar>::from_normals(k.generators(), k.dim(), tol);
}

template <typename Scalar>
bool is_bounded(const PolyhedralSet<Scalar>& c) {
  return c.rays().cols() == 0;
}

// Whether the polar {v : |<a, v>| <= 1 for all a in C} has 0 strictly
// inside, tested through the slack of the polar's halfspace system at 0.
template <typename Scalar>
bool polar_is_absorbing(const PolyhedralSet<Scalar>& c, Scalar tol = geom_tol<Scalar>()) {
  for (Eigen::Index j = 0; j < c.rays().cols(); ++j)
    if (c.rays().col(j).norm() > tol) return false;  // <v, r> <= 0 has zero slack at 0
  for (Eigen::Index j = 0; j < c.vertices().cols(); ++j) {
    const Scalar nrm = c.vertices().col(j).norm();
    if (nrm > tol && Scalar(1) / nrm <= tol) return false;
  }
  return true;
}

template <typename Scalar>
struct LinearMinimum {
  Scalar value;
  VecX<Scalar> minimizer;  // lexicographically smallest minimizing vertex
};

// Minimizes <., x> over C.  Throws UnboundedBelow with a certifying
// recession direction when the infimum is -infinity.
template <typename Scalar>
LinearMinimum<Scalar> minimize_linear(const PolyhedralSet<Scalar>& c, const VecX<Scalar>& x,
                                      Scalar tol = geom_tol<Scalar>()) {
  if (x.size() != c.dim()) throw DimensionMismatch("linear minimization: wrong dimension");
  const Scalar slack = detail::scaled_tol(tol, x.norm());
  for (Eigen::Index j = 0; j < c.rays().cols(); ++j)
    if (c.rays().col(j).dot(x) < -slack) throw UnboundedBelow<Scalar>(c.rays().col(j));

  Scalar best = plus_inf<Scalar>();
  for (Eigen::Index j = 0; j < c.vertices().cols(); ++j)
    best = std::min(best, Scalar(c.vertices().col(j).dot(x)));

  const Scalar tie = detail::scaled_tol(tol, std::abs(best));
  Eigen::Index pick = -1;
  for (Eigen::Index j = 0; j < c.vertices().cols(); ++j) {
    if (c.vertices().col(j).dot(x) > best + tie) continue;
    if (pick < 0) {
      pick = j;
      continue;
    }
    for (Eigen::Index i = 0; i < c.dim(); ++i) {
      const Scalar d = c.vertices()(i, j) - c.vertices()(i, pick);
      if (d < -tol) {
        pick = j;
        break;
      }
      if (d > tol) break;
    }
  }
  return {best, c.vertices().col(pick)};
}

// {a in C : <a, x> <= m}; nullopt when empty.  Bounded whenever x is
// interior to B(C).
template <typename Scalar>
std::optional<PolyhedralSet<Scalar>> level_set(const PolyhedralSet<Scalar>& c,
                                               const VecX<Scalar>& x, Scalar m,
                                               Scalar tol = geom_tol<Scalar>()) {
  if (x.size() != c.dim()) throw DimensionMismatch("level set: wrong dimension");
  std::vector<Halfspace<Scalar>> hs = c.halfspaces();
  hs.push_back({-x, -m});
  return PolyhedralSet<Scalar>::from_halfspaces(c.dim(), hs, tol);
}

// Normalized sum of the recession generators; the zero vector for bounded
// sets.  Must land strictly inside B(C), otherwise the recession cone is
// not pointed and the construction fails loudly.
template <typename Scalar>
VecX<Scalar> canonical_interior_direction(const PolyhedralSet<Scalar>& c,
                                          Scalar tol = geom_tol<Scalar>()) {
  if (c.rays().cols() == 0) return VecX<Scalar>::Zero(c.dim());
  VecX<Scalar> x0 = c.rays().rowwise().sum();
  const Scalar nrm = x0.norm();
  if (nrm <= tol) throw DegenerateCone("recession generators sum to zero");
  x0 /= nrm;
  for (Eigen::Index j = 0; j < c.rays().cols(); ++j)
    if (c.rays().col(j).dot(x0) <= tol)
      throw DegenerateCone("generator sum is not interior to the finiteness cone");
  return x0;
}

// Outer polyhedral approximation of C from finitely many support values:
// the intersection over perturbed facet directions u' = (1-eps) u + eps x0
// of {a : <a, u'> >= inf <C, u'>}.  Always contains C; converges to C as
// eps -> 0.
template <typename Scalar>
PolyhedralSet<Scalar> reconstruct_from_support(const PolyhedralSet<Scalar>& c, Scalar eps,
                                               Scalar tol = geom_tol<Scalar>()) {
  if (!(eps > Scalar(0) && eps < Scalar(1)))
    throw InvalidInput("reconstruction blend must lie in (0, 1)");
  const VecX<Scalar> x0 = canonical_interior_direction(c, tol);
  std::vector<Halfspace<Scalar>> hs;
  for (const auto& h : c.halfspaces()) {
    VecX<Scalar> u = (Scalar(1) - eps) * h.normal + eps * x0;
    const Scalar v = support_value<Scalar>(c, u, tol);
    if (!std::isfinite(v))
      throw DegenerateCone("perturbed direction escaped the finiteness cone");
    hs.push_back({std::move(u), v});
  }
  auto rec = PolyhedralSet<Scalar>::from_halfspaces(c.dim(), hs, tol);
  if (!rec) throw DegenerateCone("support reconstruction produced an empty set");
  return *rec;
}

}  // namespace polytube
