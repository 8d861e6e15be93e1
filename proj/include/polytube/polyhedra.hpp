// Polyhedral convex sets and cones with dual representations.
//
// A PolyhedralSet is conv(vertices) + cone(rays); a PolyhedralCone is
// cone(generators).  In dimension <= kMaxConversionDim both keep a minimal
// halfspace description alongside the generator description, maintained by
// double description conversions through homogenization.  In higher
// dimensions only the generator form is stored and halfspace-dependent
// operations throw UnsupportedDimension.
#pragma once

#include "polytube/common.hpp"
#include "polytube/double_description.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace polytube {

// The closed halfspace {a : <a, normal> >= offset}.
template <typename Scalar>
struct Halfspace {
  VecX<Scalar> normal;
  Scalar offset;
};

namespace detail {

template <typename Scalar>
MatX<Scalar> dedupe_columns(const MatX<Scalar>& cols, Scalar tol) {
  MatX<Scalar> out(cols.rows(), cols.cols());
  Eigen::Index n = 0;
  for (Eigen::Index j = 0; j < cols.cols(); ++j) {
    bool dup = false;
    for (Eigen::Index k = 0; k < n && !dup; ++k) {
      const Scalar scale = std::max(Scalar(1), std::max(cols.col(j).norm(), out.col(k).norm()));
      dup = (out.col(k) - cols.col(j)).template lpNorm<Eigen::Infinity>() <= tol * scale;
    }
    if (!dup) out.col(n++) = cols.col(j);
  }
  return out.leftCols(n);
}

template <typename Scalar>
MatX<Scalar> normalize_directions(const MatX<Scalar>& cols, Scalar tol) {
  MatX<Scalar> unit(cols.rows(), cols.cols());
  Eigen::Index n = 0;
  for (Eigen::Index j = 0; j < cols.cols(); ++j) {
    const Scalar nrm = cols.col(j).norm();
    if (nrm <= tol) throw InvalidInput("zero direction vector");
    unit.col(n++) = cols.col(j) / nrm;
  }
  return dedupe_columns<Scalar>(unit.leftCols(n), tol);
}

// Stacks the pointed-part rays and both orientations of the lineality basis.
template <typename Scalar>
MatX<Scalar> decomposition_generators(const ConeDecomposition<Scalar>& dec) {
  const Eigen::Index d = dec.rays.rows();
  MatX<Scalar> out(d, dec.rays.cols() + 2 * dec.lineality.cols());
  out.leftCols(dec.rays.cols()) = dec.rays;
  out.middleCols(dec.rays.cols(), dec.lineality.cols()) = dec.lineality;
  out.rightCols(dec.lineality.cols()) = -dec.lineality;
  return out;
}

// Minimal halfspace form of conv(verts) + cone(rays) via the dual of the
// homogenization cone{(v,1)} + cone{(r,0)}.
template <typename Scalar>
std::vector<Halfspace<Scalar>> vform_to_hform(const MatX<Scalar>& verts,
                                              const MatX<Scalar>& rays,
                                              Scalar tol) {
  const Eigen::Index d = verts.rows();
  MatX<Scalar> rows(verts.cols() + rays.cols(), d + 1);
  for (Eigen::Index j = 0; j < verts.cols(); ++j) {
    rows.row(j).head(d) = verts.col(j).transpose();
    rows(j, d) = Scalar(1);
  }
  for (Eigen::Index j = 0; j < rays.cols(); ++j) {
    rows.row(verts.cols() + j).head(d) = rays.col(j).transpose();
    rows(verts.cols() + j, d) = Scalar(0);
  }
  const auto dual = extreme_rays<Scalar>(rows, d + 1, tol);
  std::vector<Halfspace<Scalar>> hs;
  const MatX<Scalar> gen = decomposition_generators(dual);
  for (Eigen::Index j = 0; j < gen.cols(); ++j) {
    const VecX<Scalar> u = gen.col(j).head(d);
    const Scalar nrm = u.norm();
    if (nrm <= tol) continue;  // the trivial constraint 0 >= -c
    hs.push_back({u / nrm, -gen(d, j) / nrm});
  }
  return hs;
}

// A facet of conv(verts) + cone(rays) always touches a stored vertex (the
// vertices represent the minimal faces), so a halfspace tight at none of
// them is implied by the rest.  Degenerate inputs produce one such
// constraint per dual ray that survives the lineality quotient.
template <typename Scalar>
std::vector<Halfspace<Scalar>> drop_slack_halfspaces(std::vector<Halfspace<Scalar>> hs,
                                                     const MatX<Scalar>& verts, Scalar tol) {
  std::vector<Halfspace<Scalar>> kept;
  for (auto& h : hs) {
    bool tight = false;
    for (Eigen::Index j = 0; j < verts.cols() && !tight; ++j)
      tight = std::abs(h.normal.dot(verts.col(j)) - h.offset) <=
              scaled_tol(tol, verts.col(j).norm());
    if (tight) kept.push_back(std::move(h));
  }
  return kept;
}

template <typename Scalar>
struct VForm {
  MatX<Scalar> verts;
  MatX<Scalar> rays;
  bool empty = false;
};

// Generator form of an intersection of halfspaces, via the cone
// {(a, t) : <u_i, a> - b_i t >= 0, t >= 0} sliced at t = 1.
template <typename Scalar>
VForm<Scalar> hform_to_vform(Eigen::Index dim,
                             const std::vector<Halfspace<Scalar>>& hs,
                             Scalar tol) {
  MatX<Scalar> rows(static_cast<Eigen::Index>(hs.size()) + 1, dim + 1);
  for (std::size_t i = 0; i < hs.size(); ++i) {
    rows.row(static_cast<Eigen::Index>(i)).head(dim) = hs[i].normal.transpose();
    rows(static_cast<Eigen::Index>(i), dim) = -hs[i].offset;
  }
  rows.row(static_cast<Eigen::Index>(hs.size())).setZero();
  rows(static_cast<Eigen::Index>(hs.size()), dim) = Scalar(1);

  const auto dec = extreme_rays<Scalar>(rows, dim + 1, tol);
  VForm<Scalar> out;
  out.verts.resize(dim, dec.rays.cols());
  out.rays.resize(dim, dec.rays.cols() + 2 * dec.lineality.cols());
  Eigen::Index nv = 0, nr = 0;
  for (Eigen::Index j = 0; j < dec.rays.cols(); ++j) {
    const Scalar t = dec.rays(dim, j);
    if (t > tol)
      out.verts.col(nv++) = dec.rays.col(j).head(dim) / t;
    else
      out.rays.col(nr++) = dec.rays.col(j).head(dim).normalized();
  }
  for (Eigen::Index j = 0; j < dec.lineality.cols(); ++j) {
    const VecX<Scalar> l = dec.lineality.col(j).head(dim).normalized();
    out.rays.col(nr++) = l;
    out.rays.col(nr++) = -l;
  }
  out.verts.conservativeResize(dim, nv);
  out.rays.conservativeResize(dim, nr);
  out.empty = (nv == 0);
  return out;
}

}  // namespace detail

template <typename Scalar = double>
class PolyhedralCone {
 public:
  static PolyhedralCone from_generators(MatX<Scalar> gens, Eigen::Index dim,
                                        Scalar tol = geom_tol<Scalar>()) {
    PolyhedralCone k;
    k.dim_ = dim;
    if (gens.cols() > 0 && gens.rows() != dim)
      throw DimensionMismatch("cone generators have wrong dimension");
    MatX<Scalar> unit = gens.cols() ? detail::normalize_directions<Scalar>(gens, tol)
                                    : MatX<Scalar>(dim, 0);
    if (dim > kMaxConversionDim) {
      k.generators_ = std::move(unit);
      k.has_generators_ = true;
      return k;
    }
    const auto dual = extreme_rays<Scalar>(unit.transpose(), dim, tol);
    k.normals_ = detail::decomposition_generators(dual);
    const auto primal = extreme_rays<Scalar>(k.normals_.transpose(), dim, tol);
    k.generators_ = detail::decomposition_generators(primal);
    k.lineality_dim_ = primal.lineality.cols();
    k.has_generators_ = k.has_normals_ = true;
    return k;
  }

  static PolyhedralCone from_normals(MatX<Scalar> normals, Eigen::Index dim,
                                     Scalar tol = geom_tol<Scalar>()) {
    PolyhedralCone k;
    k.dim_ = dim;
    if (normals.cols() > 0 && normals.rows() != dim)
      throw DimensionMismatch("cone normals have wrong dimension");
    MatX<Scalar> unit = normals.cols() ? detail::normalize_directions<Scalar>(normals, tol)
                                       : MatX<Scalar>(dim, 0);
    if (dim > kMaxConversionDim) {
      k.normals_ = std::move(unit);
      k.has_normals_ = true;
      return k;
    }
    const auto primal = extreme_rays<Scalar>(unit.transpose(), dim, tol);
    k.generators_ = detail::decomposition_generators(primal);
    k.lineality_dim_ = primal.lineality.cols();
    const auto dual = extreme_rays<Scalar>(k.generators_.transpose(), dim, tol);
    k.normals_ = detail::decomposition_generators(dual);
    k.has_generators_ = k.has_normals_ = true;
    return k;
  }

  Eigen::Index dim() const { return dim_; }
  bool has_generators() const { return has_generators_; }
  bool has_normals() const { return has_normals_; }

  const MatX<Scalar>& generators() const {
    if (!has_generators_)
      throw UnsupportedDimension("cone generators unavailable above the conversion dimension");
    return generators_;
  }
  const MatX<Scalar>& normals() const {
    if (!has_normals_)
      throw UnsupportedDimension("cone halfspace form unavailable above the conversion dimension");
    return normals_;
  }

  bool is_zero() const { return generators().cols() == 0; }
  bool is_full_space() const { return normals().cols() == 0; }
  bool pointed() const {
    if (!has_generators_ || dim_ > kMaxConversionDim)
      throw UnsupportedDimension("pointedness requires the canonical generator form");
    return lineality_dim_ == 0;
  }

  bool contains(const VecX<Scalar>& x, Scalar tol = geom_tol<Scalar>()) const {
    if (x.size() != dim_) throw DimensionMismatch("cone membership: wrong dimension");
    const Scalar slack = detail::scaled_tol(tol, x.norm());
    const auto& ns = normals();
    for (Eigen::Index j = 0; j < ns.cols(); ++j)
      if (ns.col(j).dot(x) < -slack) return false;
    return true;
  }

  bool interior_contains(const VecX<Scalar>& x, Scalar tol = geom_tol<Scalar>()) const {
    if (x.size() != dim_) throw DimensionMismatch("cone membership: wrong dimension");
    const Scalar margin = detail::scaled_tol(tol, x.norm());
    const auto& ns = normals();
    for (Eigen::Index j = 0; j < ns.cols(); ++j)
      if (ns.col(j).dot(x) <= margin) return false;
    return true;
  }

 private:
  Eigen::Index dim_ = 0;
  MatX<Scalar> generators_;
  MatX<Scalar> normals_;
  Eigen::Index lineality_dim_ = 0;
  bool has_generators_ = false;
  bool has_normals_ = false;
};

template <typename Scalar = double>
class PolyhedralSet {
 public:
  // conv(points) + cone(rays).  Within the conversion dimension both stored
  // forms are canonicalized: redundant points and halfspaces are removed.
  static PolyhedralSet from_points(MatX<Scalar> points, MatX<Scalar> rays,
                                   Scalar tol = geom_tol<Scalar>()) {
    if (points.cols() == 0) throw InvalidInput("a polyhedral set needs at least one point");
    const Eigen::Index dim = points.rows();
    if (rays.cols() > 0 && rays.rows() != dim)
      throw DimensionMismatch("rays have wrong dimension");
    PolyhedralSet c;
    c.dim_ = dim;
    c.vertices_ = detail::dedupe_columns<Scalar>(points, tol);
    c.rays_ = rays.cols() ? detail::normalize_directions<Scalar>(rays, tol) : MatX<Scalar>(dim, 0);
    if (dim > kMaxConversionDim) return c;

    c.halfspaces_ = detail::vform_to_hform<Scalar>(c.vertices_, c.rays_, tol);
    auto vf = detail::hform_to_vform<Scalar>(dim, c.halfspaces_, tol);
    if (vf.empty) throw InvalidInput("degenerate point set produced an empty conversion");
    c.vertices_ = std::move(vf.verts);
    c.rays_ = std::move(vf.rays);
    c.halfspaces_ =
        detail::drop_slack_halfspaces<Scalar>(std::move(c.halfspaces_), c.vertices_, tol);
    c.has_halfspaces_ = true;
    return c;
  }

  static PolyhedralSet from_points(MatX<Scalar> points, Scalar tol = geom_tol<Scalar>()) {
    const Eigen::Index dim = points.rows();
    return from_points(std::move(points), MatX<Scalar>(dim, 0), tol);
  }

  // Intersection of halfspaces; nullopt when the intersection is empty.
  static std::optional<PolyhedralSet> from_halfspaces(
      Eigen::Index dim, const std::vector<Halfspace<Scalar>>& halfspaces,
      Scalar tol = geom_tol<Scalar>()) {
    if (dim > kMaxConversionDim)
      throw UnsupportedDimension("halfspace input above the conversion dimension");
    std::vector<Halfspace<Scalar>> unit;
    unit.reserve(halfspaces.size());
    for (const auto& h : halfspaces) {
      if (h.normal.size() != dim) throw DimensionMismatch("halfspace normal has wrong dimension");
      const Scalar nrm = h.normal.norm();
      if (nrm <= tol) {
        if (h.offset > tol) return std::nullopt;  // 0 >= positive is infeasible
        continue;
      }
      unit.push_back({h.normal / nrm, h.offset / nrm});
    }
    auto vf = detail::hform_to_vform<Scalar>(dim, unit, tol);
    if (vf.empty) return std::nullopt;
    PolyhedralSet c;
    c.dim_ = dim;
    c.vertices_ = std::move(vf.verts);
    c.rays_ = std::move(vf.rays);
    c.halfspaces_ = detail::drop_slack_halfspaces<Scalar>(
        detail::vform_to_hform<Scalar>(c.vertices_, c.rays_, tol), c.vertices_, tol);
    c.has_halfspaces_ = true;
    return c;
  }

  Eigen::Index dim() const { return dim_; }
  const MatX<Scalar>& vertices() const { return vertices_; }
  const MatX<Scalar>& rays() const { return rays_; }
  bool has_halfspaces() const { return has_halfspaces_; }
  const std::vector<Halfspace<Scalar>>& halfspaces() const {
    if (!has_halfspaces_)
      throw UnsupportedDimension("halfspace form unavailable above the conversion dimension");
    return halfspaces_;
  }

  bool contains(const VecX<Scalar>& a, Scalar tol = geom_tol<Scalar>()) const {
    if (a.size() != dim_) throw DimensionMismatch("set membership: wrong dimension");
    const Scalar slack = detail::scaled_tol(tol, a.norm());
    for (const auto& h : halfspaces())
      if (h.normal.dot(a) < h.offset - slack) return false;
    return true;
  }

 private:
  Eigen::Index dim_ = 0;
  MatX<Scalar> vertices_;
  MatX<Scalar> rays_;
  std::vector<Halfspace<Scalar>> halfspaces_;
  bool has_halfspaces_ = false;
};

// One-sided inclusion: every generator of `inner` satisfies the halfspace
// form of `outer` (vertices directly, rays through the recession system).
template <typename Scalar>
bool contains_set(const PolyhedralSet<Scalar>& outer, const PolyhedralSet<Scalar>& inner,
                  Scalar tol = geom_tol<Scalar>()) {
  if (outer.dim() != inner.dim()) throw DimensionMismatch("set inclusion: dimensions differ");
  const auto& hs = outer.halfspaces();
  for (Eigen::Index j = 0; j < inner.vertices().cols(); ++j) {
    const VecX<Scalar> v = inner.vertices().col(j);
    const Scalar slack = detail::scaled_tol(tol, v.norm());
    for (const auto& h : hs)
      if (h.normal.dot(v) < h.offset - slack) return false;
  }
  for (Eigen::Index j = 0; j < inner.rays().cols(); ++j) {
    const VecX<Scalar> r = inner.rays().col(j);
    for (const auto& h : hs)
      if (h.normal.dot(r) < -tol) return false;
  }
  return true;
}

template <typename Scalar>
bool set_equal(const PolyhedralSet<Scalar>& a, const PolyhedralSet<Scalar>& b,
               Scalar tol = geom_tol<Scalar>()) {
  return contains_set(a, b, tol) && contains_set(b, a, tol);
}

template <typename Scalar>
bool cone_equal(const PolyhedralCone<Scalar>& a, const PolyhedralCone<Scalar>& b,
                Scalar tol = geom_tol<Scalar>()) {
  if (a.dim() != b.dim()) throw DimensionMismatch("cone equality: dimensions differ");
  for (Eigen::Index j = 0; j < a.generators().cols(); ++j)
    if (!b.contains(VecX<Scalar>(a.generators().col(j)), tol)) return false;
  for (Eigen::Index j = 0; j < b.generators().cols(); ++j)
    if (!a.contains(VecX<Scalar>(b.generators().col(j)), tol)) return false;
  return true;
}

}  // namespace polytube
