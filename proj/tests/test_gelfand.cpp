#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <polytube/gelfand.hpp>
#include <polytube/norm_bracket.hpp>
#include <polytube/sampling.hpp>

#include <complex>

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

VecX<double> vec1(double x) { return vec({x}); }

ContextPtr<double> strip_context() {
  return make_context(
      PolyhedralSet<double>::from_points(cols({{0, 0}, {1, 0}}), cols({{0, 1}})));
}

}  // namespace

TEST_CASE("terms at the same point merge and cancellation empties the element") {
  const auto ctx = strip_context();
  const auto s = tube_point(ctx, vec({1, 0}), vec({0, 1}));
  std::vector<AlgebraTerm<double>> terms;
  terms.push_back({{1.0, 0.5}, s});
  terms.push_back({{2.0, -0.5}, s});
  const auto a = AlgebraElement<double>::from_terms(ctx, terms);
  REQUIRE(a.terms().size() == 1);
  CHECK(a.terms()[0].coeff == std::complex<double>(3.0, 0.0));

  const auto z = AlgebraElement<double>::delta(s) + std::complex<double>(-1.0) *
                                                        AlgebraElement<double>::delta(s);
  CHECK(z.terms().empty());
  const auto nb = norm_bracket(z);
  CHECK(nb.lower == 0.0);
  CHECK(nb.upper == 0.0);
}

TEST_CASE("transform of a point mass is the character value") {
  const auto ctx = strip_context();
  const auto s = tube_point(ctx, vec({2, 0}), vec({0.5, 1}));
  const VecX<double> f = vec({0.5, 0.25});
  const auto v = gelfand_eval(AlgebraElement<double>::delta(s), f);
  const auto expect = std::exp(std::complex<double>(-(0.5 * 0.5 + 0.25 * 1.0), 0.5 * 2.0));
  CHECK(std::abs(v - expect) <= 1e-15);
  CHECK_THROWS_AS(gelfand_eval(AlgebraElement<double>::delta(s), vec({-0.5, 0.25})),
                  DomainError);
}

TEST_CASE("transform of a conjugate pair is real") {
  const auto ctx = strip_context();
  const auto s = tube_point(ctx, vec({0.7, -0.3}), vec({0.2, 1.4}));
  const auto a = AlgebraElement<double>::delta(s) + AlgebraElement<double>::delta(star(s));
  const VecX<double> f = vec({0.9, 0.6});
  const auto v = gelfand_eval(a, f);
  const double expect = 2.0 * std::exp(-f.dot(s.im)) * std::cos(f.dot(s.re));
  CHECK(std::abs(v.imag()) <= 1e-15);
  CHECK(v.real() == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("transform is multiplicative and conjugates the involution") {
  CounterRng rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    const Eigen::Index dim = 1 + Eigen::Index(rng.below(2));
    const auto ctx = random_context(rng, dim);
    const auto a = random_element(rng, ctx, 4);
    const auto b = random_element(rng, ctx, 4);
    const auto ab = mul(a, b);
    const auto as = star(a);
    for (int k = 0; k < 25; ++k) {
      const VecX<double> f = random_character_label(rng, ctx);
      const auto va = gelfand_eval(a, f);
      const auto vb = gelfand_eval(b, f);
      const auto vab = gelfand_eval(ab, f);
      const auto vas = gelfand_eval(as, f);
      const double scale = std::max(1.0, std::abs(va) * std::abs(vb));
      CHECK(std::abs(vab - va * vb) <= 1e-12 * scale);
      CHECK(std::abs(vas - std::conj(va)) <= 1e-12 * std::max(1.0, std::abs(va)));
      CHECK(std::abs(va) <= ell1_alpha_norm(a) + 1e-12);
    }
  }
}

TEST_CASE("bounded characters are exactly the points of the set") {
  const auto ctx = strip_context();
  CHECK(is_bounded_character(ctx, vec({0.5, 3.0})));
  CHECK(is_bounded_character(ctx, vec({1.0, 0.0})));
  CHECK(!is_bounded_character(ctx, vec({1.5, 1.0})));
  CHECK(!is_bounded_character(ctx, vec({0.5, -0.1})));
}

TEST_CASE("character values stay within the absolute value bound") {
  CounterRng rng(333);
  for (int trial = 0; trial < 30; ++trial) {
    const auto ctx = random_context(rng, 1 + Eigen::Index(rng.below(3)));
    const VecX<double> f = random_character_label(rng, ctx);
    for (int k = 0; k < 20; ++k) {
      const auto s = random_tube_point(rng, ctx);
      CHECK(std::abs(detail::character_value(f, s)) <= alpha(s) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("multipliers are unitary and multiplicative") {
  CounterRng rng(555);
  const auto ctx = strip_context();
  for (int k = 0; k < 100; ++k) {
    const VecX<double> v = random_grid_point(rng, 2);
    const VecX<double> w = random_grid_point(rng, 2);
    const VecX<double> f = random_character_label(rng, ctx);
    const auto mv = multiplier_eval(ctx, v, f);
    const auto mw = multiplier_eval(ctx, w, f);
    const auto mvw = multiplier_eval(ctx, VecX<double>(v + w), f);
    CHECK(std::abs(std::abs(mv) - 1.0) <= 1e-15);
    CHECK(std::abs(mvw - mv * mw) <= 1e-14);
  }
}

TEST_CASE("states validate weights and atom membership") {
  const auto ctx = strip_context();
  std::vector<std::pair<double, VecX<double>>> atoms;
  atoms.emplace_back(0.25, vec({0, 0}));
  atoms.emplace_back(0.75, vec({1, 2}));
  const auto st = make_state(ctx, atoms);
  CHECK((momentum(st) - vec({0.75, 1.5})).norm() <= 1e-15);

  atoms[0].first = 0.5;
  CHECK_THROWS_AS(make_state(ctx, atoms), InvalidInput);  // weights sum to 1.25
  atoms[0].first = -0.75;
  atoms[1].first = 1.75;
  CHECK_THROWS_AS(make_state(ctx, atoms), InvalidInput);
  atoms[0].first = 0.25;
  atoms[1].first = 0.75;
  atoms[1].second = vec({2, 2});
  CHECK_THROWS_AS(make_state(ctx, atoms), DomainError);
}

TEST_CASE("momentum matches the phase derivative of the state") {
  const auto ctx = strip_context();
  std::vector<std::pair<double, VecX<double>>> atoms;
  atoms.emplace_back(0.2, vec({0.1, 0.4}));
  atoms.emplace_back(0.5, vec({0.9, 2.0}));
  atoms.emplace_back(0.3, vec({0.5, 0.0}));
  const auto st = make_state(ctx, atoms);
  const VecX<double> mu = momentum(st);
  const double h = 1e-5;
  for (Eigen::Index k = 0; k < 2; ++k) {
    // Central difference of t -> sum_j w_j exp(i <f_j, t e_k>) at t = 0;
    // the derivative is i <mu, e_k>.
    const auto phase = [&](double t) {
      std::complex<double> acc = 0.0;
      for (const auto& [w, f] : atoms) acc += w * std::exp(std::complex<double>(0.0, t * f(k)));
      return acc;
    };
    const std::complex<double> diff = (phase(h) - phase(-h)) / (2.0 * h);
    CHECK(std::abs(diff - std::complex<double>(0.0, mu(k))) <= 1e-6);
  }
}

TEST_CASE("momentum hull of an interval example") {
  const auto ctx = half_plane_instance(1.5);
  std::vector<SmoothState<double>> states;
  for (double f : {1.5, 2.5, 3.5})
    states.push_back(make_state(ctx, {{1.0, vec1(f)}}));
  const auto ms = momentum_set(ctx, states);
  CHECK(!ms.recession_appended);
  CHECK(set_equal(ms.hull, PolyhedralSet<double>::from_points(cols({{1.5}, {3.5}}))));
  CHECK(contains_set(ctx->set(), ms.hull));
}

TEST_CASE("vertex states with appended recession saturate the set") {
  CounterRng rng(808);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index dim = 1 + Eigen::Index(rng.below(2));
    const auto ctx = random_context(rng, dim);
    std::vector<SmoothState<double>> states;
    for (Eigen::Index j = 0; j < ctx->set().vertices().cols(); ++j)
      states.push_back(make_state(ctx, {{1.0, VecX<double>(ctx->set().vertices().col(j))}}));
    const auto ms = momentum_set(ctx, states, true);
    CHECK(ms.recession_appended);
    CHECK(set_equal(ms.hull, ctx->set()));
  }
}

TEST_CASE("separation witnesses split distinct characters by sqrt(2)") {
  const auto ctx = half_plane_instance(0.0);
  const auto w = separation_witness(ctx, vec1(0.0), vec1(1.0));
  CHECK(w.separation == doctest::Approx(std::sqrt(2.0)));
  CHECK(w.separation > 1e-6);
  CHECK_THROWS_AS(separation_witness(ctx, vec1(1.0), vec1(1.0)), InvalidInput);

  CounterRng rng(616);
  for (int trial = 0; trial < 40; ++trial) {
    const auto rctx = random_context(rng, 1 + Eigen::Index(rng.below(3)));
    const VecX<double> f = random_character_label(rng, rctx);
    const VecX<double> g = random_character_label(rng, rctx);
    if ((f - g).lpNorm<Eigen::Infinity>() <= 1e-6) continue;
    const auto ws = separation_witness(rctx, f, g);
    const auto diff = std::abs(multiplier_eval(rctx, ws.group_element, f) -
                               multiplier_eval(rctx, ws.group_element, g));
    CHECK(diff == doctest::Approx(ws.separation));
    CHECK(ws.separation > 1e-6);
  }
}

TEST_CASE("single-term norms equal the absolute value bitwise") {
  CounterRng rng(2718);
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::Index dim = 1 + Eigen::Index(rng.below(5));
    const auto ctx = random_context(rng, dim);
    const auto s = random_tube_point(rng, ctx);
    const auto nb = norm_bracket(AlgebraElement<double>::delta(s));
    CHECK(nb.lower == nb.upper);
    CHECK(nb.lower == alpha(s));
  }
}

TEST_CASE("norm bracket encloses the analytic two-term cancellation value") {
  const auto ctx = half_plane_instance(0.0);
  const auto a = AlgebraElement<double>::delta(tube_point(ctx, vec1(0), vec1(1))) +
                 std::complex<double>(-1.0) *
                     AlgebraElement<double>::delta(tube_point(ctx, vec1(0), vec1(2)));
  const auto nb = norm_bracket(a, 8e-4);

  double grid = 0.0;
  for (double f = 0.0; f <= 20.0; f += 1e-4)
    grid = std::max(grid, std::abs(std::exp(-f) - std::exp(-2 * f)));
  CHECK(std::abs(grid - 0.25) <= 1e-6);

  // The enclosed value is exactly 1/4; the endpoints carry at most a few
  // ulps of rounding from the exp evaluations.
  CHECK(nb.lower <= 0.25 * (1 + 1e-12));
  CHECK(nb.upper >= 0.25 * (1 - 1e-12));
  CHECK(nb.width() <= 1e-3 * 0.25);
  CHECK(nb.lower <= grid + 1e-9);
  CHECK(nb.upper >= grid - 1e-9);
}

TEST_CASE("norm brackets dominate sampled transform values and meet the width target") {
  CounterRng rng(1123);
  for (int trial = 0; trial < 8; ++trial) {
    const Eigen::Index dim = 1 + Eigen::Index(rng.below(2));
    const auto ctx = random_context(rng, dim);
    const auto a = random_element(rng, ctx, 3);
    if (a.terms().size() < 2) continue;
    const auto nb = norm_bracket(a);
    CHECK(nb.lower <= nb.upper);
    CHECK(nb.width() <= 1e-3 * std::max(nb.upper, 1e-12));
    CHECK(nb.upper <= ell1_alpha_norm(a) * (1.0 + 1e-9) + 1e-12);
    double sampled = 0.0;
    for (int k = 0; k < 500; ++k)
      sampled = std::max(sampled,
                         std::abs(detail::gelfand_value(a, random_character_label(rng, ctx))));
    CHECK(sampled <= nb.upper * (1.0 + 1e-9) + 1e-12);
  }
}

TEST_CASE("star-square norm matches the squared norm within bracket slack") {
  CounterRng rng(77711);
  for (int trial = 0; trial < 6; ++trial) {
    const auto ctx = random_context(rng, 1);
    const auto a = random_element(rng, ctx, 3);
    const auto na = norm_bracket(a);
    const auto nsq = norm_bracket(mul(star(a), a));
    const double mid = (na.lower + na.upper) / 2;
    const double mid_sq = (nsq.lower + nsq.upper) / 2;
    CHECK(std::abs(mid_sq - mid * mid) <= 3e-3 * std::max(mid * mid, 1e-9));
  }
}

TEST_CASE("one-parameter norms follow the support value exactly") {
  for (double m : {-2.0, 0.0, 0.5, 3.0}) {
    const auto ctx = half_plane_instance(m);
    for (double b : {0.1, 1.0, 10.0}) {
      const double direct = one_param_norm(ctx, vec1(1.0), b);
      CHECK(direct == doctest::Approx(std::exp(-m * b)).epsilon(1e-12));
      const auto nb = norm_bracket(
          AlgebraElement<double>::delta(one_param_point(ctx, vec1(1.0), {0.3, b})));
      CHECK(nb.lower == nb.upper);
      CHECK(nb.lower == doctest::Approx(direct).epsilon(1e-12));
    }
  }

  // A one-point set supports nothing, so every one-parameter norm is 1.
  const auto origin = make_context(PolyhedralSet<double>::from_points(cols({{0, 0}})));
  for (double b : {0.1, 1.0, 10.0}) {
    CHECK(one_param_norm(origin, vec({1, 0}), b) == doctest::Approx(1.0));
    CHECK(one_param_norm(origin, vec({-2, 5}), b) == doctest::Approx(1.0));
  }

  const auto simplex =
      make_context(PolyhedralSet<double>::from_points(cols({{1, 0}, {0, 1}})));
  CHECK(one_param_norm(simplex, vec({1, 1}), 2.0) ==
        doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
}

TEST_CASE("momentum intervals expose the spectrum endpoints") {
  const auto ctx = strip_context();
  const auto [lo_x, hi_x] = momentum_interval(ctx, vec({1, 0}));
  CHECK(lo_x == doctest::Approx(0.0));
  CHECK(hi_x == doctest::Approx(1.0));
  const auto [lo_y, hi_y] = momentum_interval(ctx, vec({0, 1}));
  CHECK(lo_y == doctest::Approx(0.0));
  CHECK(hi_y == plus_inf<double>());
}
