// Extreme-ray enumeration for polyhedral cones given by homogeneous
// inequalities (the double description method).
//
// A cone {x : A x >= 0} decomposes as  span(lineality) + cone(rays)  where
// the rays are the extreme rays of the pointed part, i.e. of the cone
// intersected with the orthogonal complement of its lineality space.  All
// polyhedral representation conversions in this library reduce to this one
// primitive via homogenization.
#pragma once

#include "polytube/common.hpp"

#include <bitset>
#include <vector>

namespace polytube {

template <typename Scalar>
struct ConeDecomposition {
  MatX<Scalar> lineality;  // d x l, orthonormal columns
  MatX<Scalar> rays;       // d x r, unit columns, extreme in lineality-complement
};

namespace detail {

inline constexpr std::size_t kMaxIneq = 256;
using ActiveSet = std::bitset<kMaxIneq>;

// Incremental double description on a pointed cone {y : B y >= 0}; B must
// have full column rank (ker B = 0) and unit rows.  Returns unit extreme rays.
template <typename Scalar>
MatX<Scalar> dd_pointed(const MatX<Scalar>& B, Scalar tol) {
  const Eigen::Index n = B.rows();
  const Eigen::Index m = B.cols();
  if (n == 0 || m == 0) return MatX<Scalar>(m, 0);
  if (static_cast<std::size_t>(n) > kMaxIneq)
    throw UnsupportedDimension("double description: too many inequalities");

  // Seed with a simplicial cone cut out by m independent rows.
  Eigen::ColPivHouseholderQR<MatX<Scalar>> qr(B.transpose());
  const auto perm = qr.colsPermutation().indices();
  std::vector<Eigen::Index> seed(perm.data(), perm.data() + m);
  MatX<Scalar> seed_rows(m, m);
  for (Eigen::Index j = 0; j < m; ++j) seed_rows.row(j) = B.row(seed[j]);
  MatX<Scalar> init = seed_rows.partialPivLu().solve(MatX<Scalar>::Identity(m, m));

  std::vector<VecX<Scalar>> rays;
  std::vector<ActiveSet> active;
  std::vector<char> processed(n, 0);
  for (Eigen::Index j = 0; j < m; ++j) {
    VecX<Scalar> r = init.col(j).normalized();
    ActiveSet z;
    for (Eigen::Index i = 0; i < m; ++i)
      if (std::abs(B.row(seed[i]).dot(r)) <= tol) z.set(static_cast<std::size_t>(seed[i]));
    rays.push_back(std::move(r));
    active.push_back(z);
  }
  for (Eigen::Index j = 0; j < m; ++j) processed[seed[j]] = 1;

  for (Eigen::Index g = 0; g < n; ++g) {
    if (processed[g]) continue;
    processed[g] = 1;
    const auto row = B.row(g);

    std::vector<Scalar> s(rays.size());
    std::vector<std::size_t> pos, neg, zero;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      s[k] = row.dot(rays[k]);
      if (s[k] > tol)
        pos.push_back(k);
      else if (s[k] < -tol)
        neg.push_back(k);
      else
        zero.push_back(k);
    }
    if (neg.empty()) {
      for (std::size_t k : zero) active[k].set(static_cast<std::size_t>(g));
      continue;
    }

    std::vector<VecX<Scalar>> next;
    std::vector<ActiveSet> next_active;
    for (std::size_t k : pos) {
      next.push_back(rays[k]);
      next_active.push_back(active[k]);
    }
    for (std::size_t k : zero) {
      ActiveSet z = active[k];
      z.set(static_cast<std::size_t>(g));
      next.push_back(rays[k]);
      next_active.push_back(z);
    }
    for (std::size_t p : pos) {
      for (std::size_t q : neg) {
        ActiveSet common = active[p] & active[q];
        // Combinatorial adjacency: no third extreme ray is active on the
        // whole common set.
        bool adjacent = true;
        for (std::size_t w = 0; w < rays.size() && adjacent; ++w) {
          if (w == p || w == q) continue;
          if ((common & ~active[w]).none()) adjacent = false;
        }
        if (!adjacent) continue;
        VecX<Scalar> r = (s[p] * rays[q] - s[q] * rays[p]).normalized();
        ActiveSet z = common;
        z.set(static_cast<std::size_t>(g));
        next.push_back(std::move(r));
        next_active.push_back(z);
      }
    }
    rays = std::move(next);
    active = std::move(next_active);
  }

  // Drop numerically duplicated directions, if any survived.
  MatX<Scalar> out(m, static_cast<Eigen::Index>(rays.size()));
  Eigen::Index cnt = 0;
  for (const auto& r : rays) {
    bool dup = false;
    for (Eigen::Index j = 0; j < cnt && !dup; ++j)
      dup = (out.col(j) - r).template lpNorm<Eigen::Infinity>() <= tol;
    if (!dup) out.col(cnt++) = r;
  }
  return out.leftCols(cnt);
}

}  // namespace detail

// Decomposes {x in R^dim : inequalities * x >= 0 componentwise}, where the
// rows of `inequalities` are the inequality normals (any scaling).
template <typename Scalar>
ConeDecomposition<Scalar> extreme_rays(const MatX<Scalar>& inequalities,
                                       Eigen::Index dim,
                                       Scalar tol = geom_tol<Scalar>()) {
  ConeDecomposition<Scalar> out;
  MatX<Scalar> A(inequalities.rows(), dim);
  Eigen::Index n = 0;
  for (Eigen::Index i = 0; i < inequalities.rows(); ++i) {
    const Scalar nrm = inequalities.row(i).norm();
    if (nrm <= tol) continue;
    A.row(n++) = inequalities.row(i) / nrm;
  }
  A.conservativeResize(n, dim);

  if (n == 0) {
    out.lineality = MatX<Scalar>::Identity(dim, dim);
    out.rays = MatX<Scalar>(dim, 0);
    return out;
  }

  Eigen::FullPivLU<MatX<Scalar>> lu(A);
  lu.setThreshold(Scalar(1e-9));
  MatX<Scalar> kernel = lu.kernel();
  const Eigen::Index l = (lu.dimensionOfKernel() == 0) ? 0 : kernel.cols();

  MatX<Scalar> complement;
  if (l == 0) {
    out.lineality = MatX<Scalar>(dim, 0);
    complement = MatX<Scalar>::Identity(dim, dim);
  } else {
    Eigen::HouseholderQR<MatX<Scalar>> qr(kernel);
    MatX<Scalar> q = qr.householderQ() * MatX<Scalar>::Identity(dim, dim);
    out.lineality = q.leftCols(l);
    complement = q.rightCols(dim - l);
  }

  if (complement.cols() == 0) {
    out.rays = MatX<Scalar>(dim, 0);
    return out;
  }
  MatX<Scalar> reduced = detail::dd_pointed<Scalar>(A * complement, tol);
  out.rays = complement * reduced;
  for (Eigen::Index j = 0; j < out.rays.cols(); ++j) out.rays.col(j).normalize();
  return out;
}

}  // namespace polytube
