// Seeded random instances: polyhedral sets on a coarse coordinate grid,
// absolute-value contexts, semigroup points, characters and algebra
// elements.  Everything is driven by CounterRng so a single 64-bit seed
// reproduces a whole suite.
#pragma once

#include "polytube/common.hpp"
#include "polytube/distance.hpp"
#include "polytube/gelfand.hpp"
#include "polytube/polyhedra.hpp"
#include "polytube/rng.hpp"
#include "polytube/tube.hpp"

#include <vector>

namespace polytube {

inline VecX<double> random_grid_point(CounterRng& rng, Eigen::Index dim, double lo = -4.0,
                                      double hi = 4.0) {
  VecX<double> v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = std::round(rng.uniform(lo, hi) * 1000.0) / 1000.0;
  return v;
}

inline VecX<double> random_unit(CounterRng& rng, Eigen::Index dim) {
  for (;;) {
    VecX<double> v = random_grid_point(rng, dim, -1.0, 1.0);
    if (v.norm() > 0.3) return v.normalized();
  }
}

enum class SetKind {
  Bounded,           // no recession
  PointedUnbounded,  // recession cone pointed with nonempty dual interior
  Wild,              // arbitrary recession directions, lineality allowed
};

inline PolyhedralSet<double> random_polyhedral_set(CounterRng& rng, Eigen::Index dim,
                                                   SetKind kind) {
  const Eigen::Index npts = dim + 1 + Eigen::Index(rng.below(4));
  MatX<double> pts(dim, npts);
  for (Eigen::Index j = 0; j < npts; ++j) pts.col(j) = random_grid_point(rng, dim);
  if (kind == SetKind::Bounded) return PolyhedralSet<double>::from_points(pts);

  const Eigen::Index nrays = 1 + Eigen::Index(rng.below(3));
  MatX<double> rays(dim, nrays);
  if (kind == SetKind::PointedUnbounded) {
    // All rays lie in a narrow cone around a common axis, which keeps the
    // recession cone pointed with an interior dual.
    const VecX<double> axis = random_unit(rng, dim);
    for (Eigen::Index j = 0; j < nrays; ++j) {
      VecX<double> p(dim);
      for (Eigen::Index i = 0; i < dim; ++i) p(i) = rng.uniform(-1.0, 1.0);
      if (p.norm() > 1e-12) p *= 0.45 * rng.uniform(0.1, 1.0) / p.norm();
      rays.col(j) = (axis + p).normalized();
    }
  } else {
    for (Eigen::Index j = 0; j < nrays; ++j) rays.col(j) = random_unit(rng, dim);
  }
  return PolyhedralSet<double>::from_points(pts, rays);
}

inline ContextPtr<double> random_context(CounterRng& rng, Eigen::Index dim,
                                         bool allow_bounded = true) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    const SetKind kind =
        (allow_bounded && rng.coin(0.4)) ? SetKind::Bounded : SetKind::PointedUnbounded;
    try {
      return make_context(random_polyhedral_set(rng, dim, kind));
    } catch (const DegenerateCone&) {
      continue;
    }
  }
  throw DegenerateCone("could not sample a nondegenerate context");
}

inline TubePoint<double> random_tube_point(CounterRng& rng, const ContextPtr<double>& ctx) {
  const auto& c = ctx->set();
  const VecX<double> x = random_grid_point(rng, c.dim());
  if (c.rays().cols() == 0) return tube_point(ctx, x, random_grid_point(rng, c.dim()));
  const VecX<double> x0 = min_norm_point<double>(c.rays()).normalized();
  for (int attempt = 0; attempt < 32; ++attempt) {
    VecX<double> y = rng.uniform(0.3, 1.5) * x0;
    for (Eigen::Index j = 0; j < c.rays().cols(); ++j)
      y += rng.uniform(0.0, 2.0) * c.rays().col(j);
    if (ctx->in_cone_interior(y)) return tube_point(ctx, x, y);
  }
  return tube_point(ctx, x, VecX<double>(2.0 * x0));
}

inline VecX<double> random_character_label(CounterRng& rng, const ContextPtr<double>& ctx) {
  const auto& c = ctx->set();
  VecX<double> w(c.vertices().cols());
  for (Eigen::Index j = 0; j < w.size(); ++j) w(j) = rng.uniform(0.05, 1.0);
  w /= w.sum();
  VecX<double> f = c.vertices() * w;
  for (Eigen::Index j = 0; j < c.rays().cols(); ++j)
    f += rng.uniform(0.0, 1.5) * c.rays().col(j);
  return f;
}

inline AlgebraElement<double> random_element(CounterRng& rng, const ContextPtr<double>& ctx,
                                             int max_terms = 4) {
  const int k = 1 + int(rng.below(std::uint64_t(max_terms)));
  std::vector<AlgebraTerm<double>> terms;
  for (int j = 0; j < k; ++j)
    terms.push_back({std::complex<double>(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)),
                     random_tube_point(rng, ctx)});
  return AlgebraElement<double>::from_terms(ctx, std::move(terms));
}

}  // namespace polytube
