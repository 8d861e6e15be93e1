// Euclidean distances between polytopes: min-norm point in a convex hull
// (Wolfe's algorithm) and a clipped Hausdorff distance for possibly
// unbounded polyhedral sets.
#pragma once

#include "polytube/common.hpp"
#include "polytube/polyhedra.hpp"

#include <vector>

namespace polytube {

// The point of conv(columns of p) closest to the origin.
template <typename Scalar>
VecX<Scalar> min_norm_point(const MatX<Scalar>& p, Scalar tol = Scalar(1e-12)) {
  const Eigen::Index d = p.rows();
  const Eigen::Index n = p.cols();
  if (n == 0) throw InvalidInput("min-norm point of an empty hull");

  Eigen::Index start = 0;
  for (Eigen::Index j = 1; j < n; ++j)
    if (p.col(j).squaredNorm() < p.col(start).squaredNorm()) start = j;

  std::vector<Eigen::Index> corral{start};
  VecX<Scalar> w = VecX<Scalar>::Ones(1);
  VecX<Scalar> x = p.col(start);

  const auto affine_min = [&](const std::vector<Eigen::Index>& idx) {
    const Eigen::Index k = static_cast<Eigen::Index>(idx.size());
    MatX<Scalar> kkt(k + 1, k + 1);
    for (Eigen::Index a = 0; a < k; ++a)
      for (Eigen::Index b = 0; b < k; ++b) kkt(a, b) = p.col(idx[a]).dot(p.col(idx[b]));
    kkt.row(k).setOnes();
    kkt.col(k).setOnes();
    kkt(k, k) = Scalar(0);
    VecX<Scalar> rhs = VecX<Scalar>::Zero(k + 1);
    rhs(k) = Scalar(1);
    VecX<Scalar> sol = kkt.completeOrthogonalDecomposition().solve(rhs);
    return VecX<Scalar>(sol.head(k));
  };

  for (int outer = 0; outer < 1000; ++outer) {
    Eigen::Index best = 0;
    Scalar best_dot = p.col(0).dot(x);
    for (Eigen::Index j = 1; j < n; ++j) {
      const Scalar dj = p.col(j).dot(x);
      if (dj < best_dot) {
        best_dot = dj;
        best = j;
      }
    }
    const Scalar xx = x.squaredNorm();
    if (best_dot >= xx - tol * std::max(Scalar(1), xx)) break;
    bool already = false;
    for (Eigen::Index i : corral) already = already || (i == best);
    if (already) break;
    corral.push_back(best);
    w.conservativeResize(w.size() + 1);
    w(w.size() - 1) = Scalar(0);

    for (int inner = 0; inner < 1000; ++inner) {
      VecX<Scalar> mu = affine_min(corral);
      if ((mu.array() >= -tol).all()) {
        w = mu.cwiseMax(Scalar(0));
        w /= w.sum();
        break;
      }
      Scalar theta = Scalar(1);
      for (Eigen::Index i = 0; i < mu.size(); ++i)
        if (mu(i) < Scalar(0)) theta = std::min(theta, w(i) / (w(i) - mu(i)));
      w = (Scalar(1) - theta) * w + theta * mu;
      std::vector<Eigen::Index> keep_idx;
      std::vector<Scalar> keep_w;
      for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (w(i) > tol) {
          keep_idx.push_back(corral[static_cast<std::size_t>(i)]);
          keep_w.push_back(w(i));
        }
      }
      corral = std::move(keep_idx);
      w.resize(static_cast<Eigen::Index>(keep_w.size()));
      for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = keep_w[static_cast<std::size_t>(i)];
      w /= w.sum();
    }
    x = VecX<Scalar>::Zero(d);
    for (Eigen::Index i = 0; i < w.size(); ++i) x += w(i) * p.col(corral[static_cast<std::size_t>(i)]);
  }
  return x;
}

template <typename Scalar>
Scalar distance_to_hull(const VecX<Scalar>& point, const MatX<Scalar>& hull_points,
                        Scalar tol = Scalar(1e-12)) {
  if (hull_points.rows() != point.size())
    throw DimensionMismatch("hull distance: wrong dimension");
  return min_norm_point<Scalar>(hull_points.colwise() - point, tol).norm();
}

// Intersection with the box [-radius, radius]^d.  The result is a polytope
// whenever the input meets the box.
template <typename Scalar>
PolyhedralSet<Scalar> clip_to_box(const PolyhedralSet<Scalar>& c, Scalar radius,
                                  Scalar tol = geom_tol<Scalar>()) {
  std::vector<Halfspace<Scalar>> hs = c.halfspaces();
  for (Eigen::Index i = 0; i < c.dim(); ++i) {
    VecX<Scalar> e = VecX<Scalar>::Zero(c.dim());
    e(i) = Scalar(1);
    hs.push_back({e, -radius});
    hs.push_back({-e, -radius});
  }
  auto clipped = PolyhedralSet<Scalar>::from_halfspaces(c.dim(), hs, tol);
  if (!clipped) throw InvalidInput("clipping box misses the set");
  return *clipped;
}

// sup over the clip radius box of the two one-sided vertex-to-hull
// distances.  Agrees with the Hausdorff distance of the clipped sets.
template <typename Scalar>
Scalar hausdorff_clipped(const PolyhedralSet<Scalar>& a, const PolyhedralSet<Scalar>& b,
                         Scalar radius, Scalar tol = geom_tol<Scalar>()) {
  const PolyhedralSet<Scalar> ac = clip_to_box(a, radius, tol);
  const PolyhedralSet<Scalar> bc = clip_to_box(b, radius, tol);
  Scalar h = Scalar(0);
  for (Eigen::Index j = 0; j < ac.vertices().cols(); ++j)
    h = std::max(h, distance_to_hull<Scalar>(ac.vertices().col(j), bc.vertices()));
  for (Eigen::Index j = 0; j < bc.vertices().cols(); ++j)
    h = std::max(h, distance_to_hull<Scalar>(bc.vertices().col(j), ac.vertices()));
  return h;
}

// Default clip radius: comfortably beyond every vertex of both sets.
template <typename Scalar>
Scalar suggested_clip_radius(const PolyhedralSet<Scalar>& a, const PolyhedralSet<Scalar>& b) {
  Scalar m = Scalar(1);
  for (Eigen::Index j = 0; j < a.vertices().cols(); ++j)
    m = std::max(m, a.vertices().col(j).template lpNorm<Eigen::Infinity>());
  for (Eigen::Index j = 0; j < b.vertices().cols(); ++j)
    m = std::max(m, b.vertices().col(j).template lpNorm<Eigen::Infinity>());
  return Scalar(10) * (m + Scalar(1));
}

template <typename Scalar>
Scalar hausdorff_clipped_auto(const PolyhedralSet<Scalar>& a, const PolyhedralSet<Scalar>& b,
                              Scalar tol = geom_tol<Scalar>()) {
  return hausdorff_clipped(a, b, suggested_clip_radius(a, b), tol);
}

}  // namespace polytube
