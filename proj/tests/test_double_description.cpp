#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <polytube/double_description.hpp>
#include <polytube/polyhedra.hpp>
#include <polytube/rng.hpp>

using namespace polytube;

namespace {

MatX<double> rows(std::initializer_list<std::initializer_list<double>> data) {
  const Eigen::Index n = Eigen::Index(data.size());
  const Eigen::Index d = Eigen::Index(data.begin()->size());
  MatX<double> m(n, d);
  Eigen::Index i = 0;
  for (const auto& row : data) {
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

bool has_direction(const MatX<double>& cols, const VecX<double>& dir, double tol = 1e-9) {
  const VecX<double> u = dir.normalized();
  for (Eigen::Index j = 0; j < cols.cols(); ++j)
    if ((cols.col(j) - u).lpNorm<Eigen::Infinity>() <= tol) return true;
  return false;
}

VecX<double> vec2(double a, double b) {
  VecX<double> v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("first quadrant has the coordinate axes as extreme rays") {
  const auto dec = extreme_rays<double>(rows({{1, 0}, {0, 1}}), 2);
  CHECK(dec.lineality.cols() == 0);
  REQUIRE(dec.rays.cols() == 2);
  CHECK(has_direction(dec.rays, vec2(1, 0)));
  CHECK(has_direction(dec.rays, vec2(0, 1)));
}

TEST_CASE("no constraints yield the full space as lineality") {
  const auto dec = extreme_rays<double>(MatX<double>(0, 3), 3);
  CHECK(dec.lineality.cols() == 3);
  CHECK(dec.rays.cols() == 0);
}

TEST_CASE("a single halfspace splits into lineality plus one ray") {
  const auto dec = extreme_rays<double>(rows({{1, 0}}), 2);
  REQUIRE(dec.lineality.cols() == 1);
  CHECK(std::abs(dec.lineality(0, 0)) <= 1e-12);
  REQUIRE(dec.rays.cols() == 1);
  CHECK(has_direction(dec.rays, vec2(1, 0)));
}

TEST_CASE("opposite halfspaces cut a hyperplane") {
  const auto dec = extreme_rays<double>(rows({{1, 0}, {-1, 0}}), 2);
  CHECK(dec.lineality.cols() == 1);
  CHECK(dec.rays.cols() == 0);
}

TEST_CASE("opposite halfspaces in one variable leave only the origin") {
  const auto dec = extreme_rays<double>(rows({{1}, {-1}}), 1);
  CHECK(dec.lineality.cols() == 0);
  CHECK(dec.rays.cols() == 0);
}

TEST_CASE("dual of a planar wedge") {
  // {x : x1 >= 0, x1 + x2 >= 0} is generated by (0,1) and (1,-1).
  const auto dec = extreme_rays<double>(rows({{1, 0}, {1, 1}}), 2);
  CHECK(dec.lineality.cols() == 0);
  REQUIRE(dec.rays.cols() == 2);
  CHECK(has_direction(dec.rays, vec2(0, 1)));
  CHECK(has_direction(dec.rays, vec2(1, -1)));
}

TEST_CASE("redundant constraints do not add rays") {
  const auto dec = extreme_rays<double>(rows({{1, 0}, {0, 1}, {1, 1}, {2, 1}}), 2);
  CHECK(dec.rays.cols() == 2);
}

TEST_CASE("octant in three variables") {
  const auto dec = extreme_rays<double>(rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), 3);
  CHECK(dec.lineality.cols() == 0);
  CHECK(dec.rays.cols() == 3);
}

TEST_CASE("four-sided cone over a square cross-section") {
  // z >= |x|, z >= |y| as four inequalities; extreme rays are the four
  // diagonals (+-1, +-1, 1).
  const auto dec = extreme_rays<double>(
      rows({{1, 0, 1}, {-1, 0, 1}, {0, 1, 1}, {0, -1, 1}}), 3);
  CHECK(dec.lineality.cols() == 0);
  REQUIRE(dec.rays.cols() == 4);
  VecX<double> d(3);
  for (double sx : {-1.0, 1.0})
    for (double sy : {-1.0, 1.0}) {
      d << sx, sy, 1;
      CHECK(has_direction(dec.rays, d));
    }
}

TEST_CASE("randomized cones: output is feasible, orthogonal and reproduces the cone") {
  CounterRng rng(2024);
  int nonempty = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const Eigen::Index dim = 2 + Eigen::Index(rng.below(3));
    const Eigen::Index nrows = 1 + Eigen::Index(rng.below(6));
    MatX<double> a(nrows, dim);
    for (Eigen::Index i = 0; i < nrows; ++i)
      for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = double(rng.below(5)) - 2.0;

    const auto dec = extreme_rays<double>(a, dim);
    for (Eigen::Index j = 0; j < dec.lineality.cols(); ++j)
      CHECK((a * dec.lineality.col(j)).lpNorm<Eigen::Infinity>() <= 1e-8);
    for (Eigen::Index j = 0; j < dec.rays.cols(); ++j) {
      CHECK((a * dec.rays.col(j)).minCoeff() >= -1e-8);
      if (dec.lineality.cols() > 0)
        CHECK((dec.lineality.transpose() * dec.rays.col(j)).lpNorm<Eigen::Infinity>() <= 1e-8);
    }
    if (dec.rays.cols() + dec.lineality.cols() > 0) ++nonempty;

    // Membership through the dual description must agree with the
    // defining inequalities on sampled points.
    const MatX<double> gens = detail::decomposition_generators(dec);
    const auto dual = extreme_rays<double>(gens.transpose(), dim);
    const MatX<double> normals = detail::decomposition_generators(dual);
    for (int s = 0; s < 20; ++s) {
      VecX<double> x(dim);
      for (Eigen::Index j = 0; j < dim; ++j) x(j) = rng.uniform(-3.0, 3.0);
      const bool direct = ((a * x).array() >= -1e-7).all();
      const bool via_dual =
          normals.cols() == 0 || ((normals.transpose() * x).array() >= -1e-7).all();
      if (direct != via_dual) {
        // Skip points within tolerance of some boundary; both answers are
        // legitimate there.
        const double margin = std::min(std::abs((a * x).minCoeff()),
                                       normals.cols() ? std::abs((normals.transpose() * x).minCoeff())
                                                      : 1.0);
        CHECK(margin <= 1e-6);
      }
    }
  }
  CHECK(nonempty > 60);
}
