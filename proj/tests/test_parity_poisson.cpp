#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "korovkin/parity_poisson.hpp"
#include "support/oracles.hpp"

using korovkin::ClassicalFailureTable;
using korovkin::Fn2D;
using korovkin::Grid2D;
using korovkin::kPi;
using korovkin::MethodPoint;
using korovkin::OperatorFamily;
using korovkin::WeightFamily;
using Catch::Approx;

TEST_CASE("family action: odd parity kills the operator, even parity doubles the mean") {
  const OperatorFamily L = korovkin::parity_poisson_family();
  std::mt19937 rng(15);
  std::uniform_real_distribution<double> u(-kPi, kPi);

  const Fn2D dead = L.apply(1, 0, korovkin::test_function(3));
  for (int it = 0; it < 20; ++it) REQUIRE(dead(u(rng), u(rng)) == 0.0);

  const Fn2D two = L.apply(2, 2, korovkin::test_function(0));
  for (int it = 0; it < 20; ++it) REQUIRE(two(u(rng), u(rng)) == Approx(2.0).margin(1e-12));

  const Fn2D f2 = L.apply(2, 2, korovkin::test_function(2));
  for (int it = 0; it < 20; ++it) {
    const double x = u(rng);
    REQUIRE(f2(x, kPi / 2) == Approx(2.0 * (2.0 / 3.0)).margin(1e-10));
  }
}

TEST_CASE("test_closed_form matches apply on the catalog") {
  const OperatorFamily L = korovkin::parity_poisson_family();
  const Grid2D g(8, 8);
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> mn(0, 5), node(0, 7);
  for (int i = 0; i < 5; ++i)
    for (int it = 0; it < 6; ++it) {
      const long m = mn(rng), n = mn(rng);
      const double x = g.x(node(rng)), y = g.y(node(rng));
      REQUIRE(L.apply(m, n, korovkin::test_function(i))(x, y) ==
              Approx(L.test_closed_form(i, m, n, x, y)).margin(1e-10));
    }
}

TEST_CASE("closed_error: printed values and argument swap") {
  REQUIRE(korovkin::closed_error(0, 0.9, 0.9) == Approx(0.01 / 3.61).margin(1e-15));

  // i = 1 at r = s = 0.5 written out directly
  const double direct =
      std::abs(1.0 / 9.0 + std::log(0.5) - (0.25 * std::log(1.5)) / 0.75);
  REQUIRE(korovkin::closed_error(1, 0.5, 0.5) == Approx(direct).margin(1e-14));

  // the second/fourth test functions swap the arguments
  REQUIRE(korovkin::closed_error(2, 0.3, 0.7) ==
          Approx(korovkin::closed_error(1, 0.7, 0.3)).margin(0.0));
  REQUIRE(korovkin::closed_error(1, 0.42, 0.13) == korovkin::closed_error(3, 0.42, 0.13));
  REQUIRE(korovkin::closed_error(2, 0.42, 0.13) == korovkin::closed_error(4, 0.42, 0.13));

  REQUIRE_THROWS_AS(korovkin::closed_error(5, 0.5, 0.5), std::invalid_argument);
  REQUIRE_THROWS_AS(korovkin::closed_error(0, 1.0, 0.5), std::invalid_argument);

  korovkin::ClosedErrorCurve curve{2};
  REQUIRE(curve(0.3, 0.7) == korovkin::closed_error(2, 0.3, 0.7));
}

TEST_CASE("closed_error: removable singularity near r = 0") {
  // E(x,t) -> 1 as x -> 0; the series branch joins the log branch smoothly
  REQUIRE(korovkin::closed_error(1, 1e-12, 0.3) == Approx(1.0).margin(1e-8));
  const double below = korovkin::closed_error(1, 0.9e-8, 0.55);
  const double above = korovkin::closed_error(1, 1.1e-8, 0.55);
  REQUIRE(below == Approx(above).margin(1e-10));
}

TEST_CASE("closed_error vanishes along the diagonal ladder") {
  for (int i = 0; i < 5; ++i) {
    double prev = 1e300;
    for (double r : {0.5, 0.9, 0.99, 0.999}) {
      const double e = korovkin::closed_error(i, r, r);
      REQUIRE(e >= 0.0);
      REQUIRE(e < prev);
      prev = e;
    }
    REQUIRE(prev < 1e-2);
  }
}

TEST_CASE("closed_gamma_series: symmetry, ladder decay, closed-form cross-check") {
  REQUIRE(korovkin::closed_gamma_series(0.3, 0.7, 1e-10) ==
          Approx(korovkin::closed_gamma_series(0.7, 0.3, 1e-10)).margin(1e-9));

  double prev = 1e300;
  const double tols[] = {1e-8, 1e-8, 3e-4};
  const double rs[] = {0.9, 0.99, 0.999};
  for (int k = 0; k < 3; ++k) {
    const double gam = korovkin::closed_gamma_series(rs[k], rs[k], tols[k]);
    REQUIRE(gam < prev);
    prev = gam;
  }
  REQUIRE(prev < 0.1);

  // independent evaluation from per-axis logarithm series:
  // sum (1+(-1)^(m+n)) (1/(2(m+1)) + 1/(2(n+1))) r^m s^n =
  //   (A(r)/(1-s) + A(s)/(1-r) + B(r)/(1+s) + B(s)/(1+r)) / 2
  // with A(x) = -ln(1-x)/x and B(x) = ln(1+x)/x.
  auto closed = [](double r, double s) {
    const double Ar = -std::log1p(-r) / r, As = -std::log1p(-s) / s;
    const double Br = std::log1p(r) / r, Bs = std::log1p(s) / s;
    const double series = 0.5 * (Ar / (1.0 - s) + As / (1.0 - r) + Br / (1.0 + s) + Bs / (1.0 + r));
    return std::sqrt((1.0 - r) * (1.0 - s) * series);
  };
  for (double r : {0.5, 0.9}) {
    REQUIRE(korovkin::closed_gamma_series(r, r, 1e-10) == Approx(closed(r, r)).margin(1e-9));
  }

  // brute truncation oracle at (0.5, 0.5)
  const double brute = std::sqrt(
      0.25 * oracles::brute_double_series(
                 [](int m, int n) {
                   const double pre = ((m + n) % 2 == 0) ? 2.0 : 0.0;
                   return pre * (0.5 / (m + 1.0) + 0.5 / (n + 1.0));
                 },
                 0.5, 0.5, 400, 400));
  REQUIRE(korovkin::closed_gamma_series(0.5, 0.5, 1e-10) == Approx(brute).margin(1e-9));
}

TEST_CASE("korovkin_errors of the family match the closed curves") {
  const OperatorFamily L = korovkin::parity_poisson_family();
  const Grid2D g(128, 128);
  for (const auto& [r, s] :
       {std::pair{0.5, 0.5}, {0.9, 0.9}, {0.99, 0.99}, {0.999, 0.999}, {0.3, 0.7}}) {
    const auto errs =
        korovkin::korovkin_errors(L, WeightFamily::abel(), MethodPoint(r, s), g, 1e-9);
    for (int i = 0; i < 5; ++i)
      REQUIRE(errs[i] == Approx(korovkin::closed_error(i, r, s)).margin(1e-6));
  }
}

TEST_CASE("classical_failure_table: all errors are 1, values oscillate, probe "
          "stays silent") {
  const ClassicalFailureTable t = korovkin::classical_failure_table(20);
  REQUIRE(t.error_at(0, 0) == Approx(1.0).margin(1e-12));
  REQUIRE(t.error_at(0, 1) == Approx(1.0).margin(1e-12));
  for (long m = 0; m <= 20; ++m)
    for (long n = 0; n <= 20; ++n)
      REQUIRE(t.error_at(m, n) == Approx(1.0).margin(1e-12));

  REQUIRE(t.value_at(0, 0) == Approx(2.0).margin(1e-12));
  REQUIRE(t.value_at(1, 0) == 0.0);

  const auto verdict = korovkin::pringsheim_probe(t.value_seq(), 20, 1e-9);
  REQUIRE_FALSE(verdict.converged);
  REQUIRE_THROWS_AS(t.value_seq().term(21, 0), std::out_of_range);
  REQUIRE_THROWS_AS(korovkin::classical_failure_table(1), std::invalid_argument);
}

TEST_CASE("jp_test_average falls back cleanly for non-separable weights") {
  const OperatorFamily L = korovkin::parity_poisson_family();
  // same weights as abel but without the separability hint
  auto opaque = WeightFamily::custom(
      "opaque-abel", [](long, long) { return 1.0; }, true,
      [](double r, double s) { return 1.0 / ((1.0 - r) * (1.0 - s)); });
  const MethodPoint pt(0.6, 0.4);
  const double fast = L.jp_test_average(1, WeightFamily::abel(), pt, 1e-11);
  const double slow = L.jp_test_average(1, opaque, pt, 1e-11);
  REQUIRE(fast == Approx(slow).margin(1e-9));
}
