#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <polytube/sampling.hpp>
#include <polytube/tube.hpp>

using namespace polytube;

namespace {

MatX<double> cols(std::initializer_list<std::initializer_list<double>> data) {
  const Eigen::Index d = Eigen::Index(data.begin()->size());
  MatX<double> m(d, Eigen::Index(data.size()));
  Eigen::Index j = 0;
  for (const auto& col : data) {
    Eigen::Index i = 0;
    for (double v : col) m(i++, j) = v;
    ++j;
  }
  return m;
}

VecX<double> vec(std::initializer_list<double> data) {
  VecX<double> v(Eigen::Index(data.size()));
  Eigen::Index i = 0;
  for (double x : data) v(i++) = x;
  return v;
}

ContextPtr<double> strip_context() {  // [0,1] x [0, inf)
  return make_context(
      PolyhedralSet<double>::from_points(cols({{0, 0}, {1, 0}}), cols({{0, 1}})));
}

}  // namespace

TEST_CASE("contexts with flat finiteness cones are rejected") {
  CHECK_THROWS_AS(make_context(PolyhedralSet<double>::from_points(
                      cols({{0, 0}}), cols({{1, 0}, {-1, 0}}))),
                  DegenerateCone);
  CHECK_THROWS_AS(make_context(PolyhedralSet<double>::from_points(
                      cols({{0, 0}}), cols({{1, 0}, {-1, 0}, {0, 1}}))),
                  DegenerateCone);
  CHECK_NOTHROW(make_context(PolyhedralSet<double>::from_points(
      cols({{0, 0}}), cols({{1, 0}, {0, 1}}))));
}

TEST_CASE("imaginary parts must be interior to the finiteness cone") {
  const auto ctx = strip_context();
  CHECK_NOTHROW(tube_point(ctx, vec({3, -2}), vec({0, 1})));
  CHECK_NOTHROW(tube_point(ctx, vec({0, 0}), vec({-5, 0.1})));
  CHECK_THROWS_AS(tube_point(ctx, vec({0, 0}), vec({1, 0})), OutsideSemigroup);
  CHECK_THROWS_AS(tube_point(ctx, vec({0, 0}), vec({0, -1})), OutsideSemigroup);
  CHECK_THROWS_AS(tube_point(ctx, vec({0, 0}), vec({0, 0})), OutsideSemigroup);
}

TEST_CASE("bounded sets put no restriction on imaginary parts") {
  const auto ctx = make_context(PolyhedralSet<double>::from_points(cols({{0, 0}, {1, 1}})));
  CHECK_NOTHROW(tube_point(ctx, vec({0, 0}), vec({-7, 3})));
  CHECK_NOTHROW(tube_point(ctx, vec({0, 0}), vec({0, 0})));
}

TEST_CASE("multiplication adds and the involution flips the real part") {
  const auto ctx = strip_context();
  const auto s = tube_point(ctx, vec({1, 2}), vec({0.5, 1}));
  const auto t = tube_point(ctx, vec({-3, 0}), vec({-0.25, 2}));
  const auto st = multiply(s, t);
  CHECK((st.re - vec({-2, 2})).norm() == 0.0);
  CHECK((st.im - vec({0.25, 3})).norm() == 0.0);
  const auto sc = star(s);
  CHECK((sc.re + s.re).norm() == 0.0);
  CHECK((sc.im - s.im).norm() == 0.0);
  const auto ss = star(star(s));
  CHECK((ss.re - s.re).norm() == 0.0);
  const auto lhs = star(multiply(s, t));
  const auto rhs = multiply(star(s), star(t));
  CHECK((lhs.re - rhs.re).norm() == 0.0);
  CHECK((lhs.im - rhs.im).norm() == 0.0);
}

TEST_CASE("points from different contexts do not mix") {
  const auto a = strip_context();
  const auto b = strip_context();
  const auto s = tube_point(a, vec({0, 0}), vec({0, 1}));
  const auto t = tube_point(b, vec({0, 0}), vec({0, 1}));
  CHECK_THROWS_AS(multiply(s, t), InvalidInput);
}

TEST_CASE("absolute value on the strip") {
  const auto ctx = strip_context();
  CHECK(alpha(tube_point(ctx, vec({4, 4}), vec({0, 2}))) == doctest::Approx(1.0));
  CHECK(alpha(tube_point(ctx, vec({0, 0}), vec({-1, 1}))) ==
        doctest::Approx(std::exp(1.0)));
  CHECK(alpha(tube_point(ctx, vec({0, 0}), vec({1, 1}))) == doctest::Approx(1.0));
}

TEST_CASE("absolute value on a bounded simplex") {
  const auto ctx = make_context(PolyhedralSet<double>::from_points(cols({{1, 0}, {0, 1}})));
  CHECK(alpha(tube_point(ctx, vec({0, 0}), vec({1, 1}))) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(alpha(tube_point(ctx, vec({3, -2}), vec({-1, -1}))) ==
        doctest::Approx(std::exp(1.0)).epsilon(1e-14));
}

TEST_CASE("absolute value only reads the imaginary part") {
  const auto ctx = strip_context();
  const auto s = tube_point(ctx, vec({2, -1}), vec({0.5, 0.75}));
  const auto t = tube_point(ctx, vec({-9, 9}), vec({0.5, 0.75}));
  CHECK(alpha(s) == alpha(t));
  CHECK(alpha(s) == alpha(star(s)));
}

TEST_CASE("axiom checker sees no violations on random instances") {
  CounterRng rng(31337);
  for (int c = 0; c < 6; ++c) {
    const Eigen::Index dim = 1 + Eigen::Index(rng.below(3));
    const auto ctx = random_context(rng, dim);
    std::vector<std::pair<TubePoint<double>, TubePoint<double>>> pairs;
    for (int i = 0; i < 400; ++i)
      pairs.emplace_back(random_tube_point(rng, ctx), random_tube_point(rng, ctx));
    const auto rep = check_absolute_value_axioms(pairs);
    CHECK(rep.pairs == 400);
    CHECK(rep.star_mismatches == 0);
    CHECK(rep.submultiplicativity_failures == 0);
    CHECK(rep.worst_submultiplicative_excess <= 1e-12);
  }
}

TEST_CASE("one-parameter points scale a single direction") {
  const auto ctx = strip_context();
  const VecX<double> x = vec({1, 2});
  const auto p = one_param_point(ctx, x, {0.25, 0.5});
  CHECK((p.re - vec({0.25, 0.5})).norm() == 0.0);
  CHECK((p.im - vec({0.5, 1})).norm() == 0.0);

  // Dyadic parameters compose exactly: z1 x + z2 x = (z1 + z2) x.
  const auto q = one_param_point(ctx, x, {0.5, 0.25});
  const auto sum = one_param_point(ctx, x, {0.75, 0.75});
  const auto prod = multiply(p, q);
  CHECK((prod.re - sum.re).norm() == 0.0);
  CHECK((prod.im - sum.im).norm() == 0.0);

  CHECK_THROWS_AS(one_param_point(ctx, x, {1.0, -0.5}), OutsideSemigroup);
  CHECK_THROWS_AS(one_param_point(ctx, x, {1.0, 0.0}), OutsideSemigroup);
}

TEST_CASE("one-parameter composition holds to rounding on random parameters") {
  CounterRng rng(4242);
  const auto ctx = strip_context();
  const VecX<double> x = vec({0.5, 1});
  for (int i = 0; i < 200; ++i) {
    const std::complex<double> z1(rng.uniform(-3.0, 3.0), rng.uniform(0.1, 2.0));
    const std::complex<double> z2(rng.uniform(-3.0, 3.0), rng.uniform(0.1, 2.0));
    const auto prod = multiply(one_param_point(ctx, x, z1), one_param_point(ctx, x, z2));
    const auto sum = one_param_point(ctx, x, z1 + z2);
    CHECK((prod.re - sum.re).lpNorm<Eigen::Infinity>() <=
          1e-15 * (1.0 + sum.re.lpNorm<Eigen::Infinity>()));
    CHECK((prod.im - sum.im).lpNorm<Eigen::Infinity>() <=
          1e-15 * (1.0 + sum.im.lpNorm<Eigen::Infinity>()));
  }
}
