#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "korovkin/summability.hpp"
#include "support/oracles.hpp"

using korovkin::BudgetError;
using korovkin::DoubleSeq;
using korovkin::MethodPoint;
using korovkin::MissingBoundError;
using korovkin::TransformOptions;
using korovkin::TransformResult;
using korovkin::WeightFamily;
using Catch::Approx;

namespace {

WeightFamily harmonic_row_family() {
  // p_mn = 1/(m+1): divergent partial sums, separable, closed form known
  auto w = WeightFamily::custom(
      "harmonic-row",
      [](long m, long) { return 1.0 / static_cast<double>(m + 1); }, true,
      [](double r, double s) { return (-std::log1p(-r) / r) / (1.0 - s); });
  w.axis_m = [](long m) { return 1.0 / static_cast<double>(m + 1); };
  w.axis_n = [](long) { return 1.0; };
  return w;
}

DoubleSeq const_seq(double c) {
  DoubleSeq a;
  a.term = [c](long, long) { return c; };
  a.uniform_bound = std::abs(c);
  return a;
}

} // namespace

TEST_CASE("eval_p: abel closed form matches brute truncation") {
  const MethodPoint pt(0.5, 0.5);
  const double v = korovkin::eval_p(WeightFamily::abel(), pt, 1e-12);
  REQUIRE(v == Approx(4.0).margin(1e-12));
  const double brute =
      oracles::brute_double_series([](int, int) { return 1.0; }, 0.5, 0.5, 200, 200);
  REQUIRE(v == Approx(brute).margin(1e-10));
}

TEST_CASE("eval_p: logarithmic closed form") {
  const MethodPoint pt(0.5, 0.5);
  const double v = korovkin::eval_p(WeightFamily::logarithmic(), pt, 1e-12);
  const double expected = std::pow(2.0 * std::log(2.0), 2); // per-axis -ln(1-r)/r
  REQUIRE(v == Approx(expected).margin(1e-12));
  const double brute = oracles::brute_double_series(
      [](int m, int n) { return 1.0 / ((m + 1.0) * (n + 1.0)); }, 0.5, 0.5, 200, 200);
  REQUIRE(v == Approx(brute).margin(1e-10));
}

TEST_CASE("eval_p: only the (0,0) weight survives as r,s -> 0+") {
  auto w = WeightFamily::custom(
      "toy", [](long m, long n) { return 3.0 + m + n; }, true);
  const double v = korovkin::eval_p(w, MethodPoint(1e-13, 1e-13), 1e-10);
  REQUIRE(v == Approx(3.0).margin(1e-10));
}

TEST_CASE("eval_p: adaptive truncation matches brute for a custom family") {
  auto w = WeightFamily::custom(
      "inv-diag", [](long m, long n) { return 1.0 / (1.0 + m + n); }, true);
  const double v = korovkin::eval_p(w, MethodPoint(0.3, 0.6), 1e-11);
  const double brute = oracles::brute_double_series(
      [](int m, int n) { return 1.0 / (1.0 + m + n); }, 0.3, 0.6, 400, 400);
  REQUIRE(v == Approx(brute).margin(1e-9));
}

TEST_CASE("eval_p: boundary cap and term budget are enforced") {
  REQUIRE_THROWS_AS(korovkin::eval_p(WeightFamily::abel(), MethodPoint(0.99995, 0.5), 1e-8),
                    BudgetError);
  auto w = WeightFamily::custom(
      "inv-diag", [](long m, long n) { return 1.0 / (1.0 + m + n); }, true);
  REQUIRE_THROWS_AS(korovkin::eval_p(w, MethodPoint(0.999, 0.999), 1e-10, 10'000),
                    BudgetError);
}

TEST_CASE("ps_transform: normalization on the constant sequence") {
  const MethodPoint pt(0.7, 0.4);
  for (const auto& w :
       {WeightFamily::abel(), WeightFamily::logarithmic(), harmonic_row_family()}) {
    const TransformResult t = korovkin::ps_transform(const_seq(1.0), w, pt, 1e-10);
    REQUIRE(t.value == Approx(1.0).margin(1e-9));
    REQUIRE(t.tail_bound <= 1e-10);
  }
}

TEST_CASE("ps_transform: parity sequence under abel weights") {
  DoubleSeq a;
  a.term = [](long m, long n) { return ((m + n) % 2 == 0) ? 2.0 : 0.0; };
  a.uniform_bound = 2.0;
  const TransformResult t =
      korovkin::ps_transform(a, WeightFamily::abel(), MethodPoint(0.9, 0.9), 1e-10);
  REQUIRE(t.value == Approx(1.0 + 0.01 / 3.61).margin(1e-9));
}

TEST_CASE("ps_transform: alternating sequence has the product closed form") {
  DoubleSeq a;
  a.term = [](long m, long n) { return ((m + n) % 2 == 0) ? 1.0 : -1.0; };
  a.uniform_bound = 1.0;
  const TransformResult t =
      korovkin::ps_transform(a, WeightFamily::abel(), MethodPoint(0.5, 0.5), 1e-10);
  REQUIRE(t.value == Approx(1.0 / 9.0).margin(1e-9));
  const double brute = oracles::brute_transform(
      [](int m, int n) { return ((m + n) % 2 == 0) ? 1.0 : -1.0; },
      [](int, int) { return 1.0; }, 0.5, 0.5, 300, 300);
  REQUIRE(t.value == Approx(brute).margin(1e-9));
}

TEST_CASE("ps_transform: explicit truncation orders bypass the bound requirement") {
  DoubleSeq a;
  a.term = [](long m, long n) { return ((m + n) % 2 == 0) ? 1.0 : -1.0; };
  TransformOptions opt;
  opt.orders = {200, 200};
  const TransformResult t =
      korovkin::ps_transform(a, WeightFamily::abel(), MethodPoint(0.5, 0.5), 1e-10, opt);
  REQUIRE(t.m_order == 200);
  REQUIRE(t.n_order == 200);
  const double brute = oracles::brute_transform(
      [](int m, int n) { return ((m + n) % 2 == 0) ? 1.0 : -1.0; },
      [](int, int) { return 1.0; }, 0.5, 0.5, 200, 200);
  REQUIRE(t.value == Approx(brute).margin(1e-12));
}

TEST_CASE("ps_transform: error paths") {
  DoubleSeq unbounded;
  unbounded.term = [](long m, long n) { return static_cast<double>(m + n); };
  REQUIRE_THROWS_AS(korovkin::ps_transform(unbounded, WeightFamily::abel(),
                                           MethodPoint(0.5, 0.5), 1e-8),
                    MissingBoundError);

  DoubleSeq cheat;
  cheat.term = [](long m, long) { return static_cast<double>(m); };
  cheat.uniform_bound = 1.0;
  REQUIRE_THROWS_AS(
      korovkin::ps_transform(cheat, WeightFamily::abel(), MethodPoint(0.5, 0.5), 1e-8),
      std::invalid_argument);

  // tolerance unreachable within the default budget this close to 1
  REQUIRE_THROWS_AS(korovkin::ps_transform(const_seq(1.0), WeightFamily::abel(),
                                           MethodPoint(0.999, 0.999), 1e-9),
                    BudgetError);
}

namespace {

struct RandomSeq {
  DoubleSeq seq;
  std::function<double(int, int)> term; // oracle copy
};

RandomSeq random_bounded_seq(std::mt19937& rng) {
  std::uniform_real_distribution<double> amp(-5.0, 5.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 3.0);
  const int kind = static_cast<int>(rng() % 3);
  const double A = amp(rng);
  RandomSeq out;
  if (kind == 0) {
    const double x = unit(rng), y = unit(rng);
    out.term = [A, x, y](int m, int n) {
      return A * std::pow(x, m) * std::pow(y, n);
    };
  } else if (kind == 1) {
    const double al = phase(rng), be = phase(rng);
    out.term = [A, al, be](int m, int n) { return A * std::cos(al * m + be * n); };
  } else {
    out.term = [A](int m, int n) { return A / (1.0 + m + n); };
  }
  out.seq.term = [t = out.term](long m, long n) {
    return t(static_cast<int>(m), static_cast<int>(n));
  };
  out.seq.uniform_bound = std::abs(A);
  return out;
}

WeightFamily random_family(std::mt19937& rng) {
  switch (rng() % 3) {
    case 0: return WeightFamily::abel();
    case 1: return WeightFamily::logarithmic();
    default: return harmonic_row_family();
  }
}

MethodPoint random_point(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.05, 0.9);
  return MethodPoint(u(rng), u(rng));
}

} // namespace

TEST_CASE("ps_transform properties: normalization, linearity, positivity, "
          "dominance, product-geometric oracle") {
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> cdist(-10.0, 10.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double tol = 1e-10;

  for (int it = 0; it < 100; ++it) {
    const WeightFamily w = random_family(rng);
    const MethodPoint pt = random_point(rng);

    // normalization
    const double c = cdist(rng);
    REQUIRE(korovkin::ps_transform(const_seq(c), w, pt, tol).value ==
            Approx(c).margin(1e-9));

    // linearity
    const RandomSeq A = random_bounded_seq(rng);
    const RandomSeq B = random_bounded_seq(rng);
    const double al = unit(rng) * 3.0, be = unit(rng) * 3.0;
    DoubleSeq combo;
    combo.term = [&, al, be](long m, long n) {
      return al * A.seq.term(m, n) + be * B.seq.term(m, n);
    };
    combo.uniform_bound =
        std::abs(al) * *A.seq.uniform_bound + std::abs(be) * *B.seq.uniform_bound;
    const double lhs = korovkin::ps_transform(combo, w, pt, tol).value;
    const double rhs = al * korovkin::ps_transform(A.seq, w, pt, tol).value +
                       be * korovkin::ps_transform(B.seq, w, pt, tol).value;
    REQUIRE(lhs == Approx(rhs).margin(2e-9));

    // positivity
    DoubleSeq pos;
    pos.term = [&](long m, long n) { return std::abs(A.seq.term(m, n)); };
    pos.uniform_bound = A.seq.uniform_bound;
    REQUIRE(korovkin::ps_transform(pos, w, pt, tol).value >= -1e-9);

    // dominance
    DoubleSeq upper;
    upper.term = [&](long m, long n) { return A.seq.term(m, n) + 0.5; };
    upper.uniform_bound = *A.seq.uniform_bound + 0.5;
    REQUIRE(korovkin::ps_transform(A.seq, w, pt, tol).value <=
            korovkin::ps_transform(upper, w, pt, tol).value + 2e-9);

    // product-geometric oracle under abel weights
    const double x = unit(rng), y = unit(rng);
    DoubleSeq geo;
    geo.term = [x, y](long m, long n) { return std::pow(x, m) * std::pow(y, n); };
    geo.uniform_bound = 1.0;
    const double got =
        korovkin::ps_transform(geo, WeightFamily::abel(), pt, tol).value;
    const double expected = (1.0 - pt.r) * (1.0 - pt.s) /
                            ((1.0 - x * pt.r) * (1.0 - y * pt.s));
    REQUIRE(got == Approx(expected).margin(1e-9));
  }
}

TEST_CASE("b_regularity_residuals: abel row residual is 1-s") {
  const auto res = korovkin::b_regularity_residuals(WeightFamily::abel(), 0, 0,
                                                    MethodPoint(0.5, 0.999), 1e-10);
  REQUIRE(res.row == Approx(0.001).margin(1e-12));
  REQUIRE(res.col == Approx(0.5).margin(1e-12));
}

TEST_CASE("b_regularity_residuals: logarithmic row residual matches the closed "
          "form and a brute sum") {
  const MethodPoint pt(0.5, 0.999);
  const auto res =
      korovkin::b_regularity_residuals(WeightFamily::logarithmic(), 0, 0, pt, 1e-10);
  // (1/p) sum_m r^m/(m+1) = -s / ln(1-s) at n0 = 0
  const double closed = -pt.s / std::log1p(-pt.s);
  REQUIRE(res.row == Approx(closed).margin(1e-10));

  long double num = 0.0L;
  for (int m = 0; m <= 4000; ++m) num += std::pow(0.5L, m) / (m + 1.0L);
  const double p = korovkin::eval_p(WeightFamily::logarithmic(), pt, 1e-13);
  REQUIRE(res.row == Approx(static_cast<double>(num) / p).margin(1e-10));
}

TEST_CASE("b_regularity_residuals: nonnegative and vanishing along the ladder") {
  for (const auto& w : {WeightFamily::abel(), WeightFamily::logarithmic()}) {
    double prev_row = 1e300, prev_col = 1e300;
    for (double r : {0.9, 0.99, 0.999}) {
      const auto res = korovkin::b_regularity_residuals(w, 2, 3, MethodPoint(r, r), 1e-10);
      REQUIRE(res.row >= 0.0);
      REQUIRE(res.col >= 0.0);
      REQUIRE(res.row < prev_row);
      REQUIRE(res.col < prev_col);
      prev_row = res.row;
      prev_col = res.col;
    }
  }
}

TEST_CASE("pringsheim_probe verdicts") {
  REQUIRE_THROWS_AS(korovkin::pringsheim_probe(const_seq(1.0), 1, 0.1),
                    std::invalid_argument);

  const auto flat = korovkin::pringsheim_probe(const_seq(5.0), 20, 1e-12);
  REQUIRE(flat.converged);
  REQUIRE(flat.limit == Approx(5.0));

  DoubleSeq parity;
  parity.term = [](long m, long n) { return ((m + n) % 2 == 0) ? 2.0 : 0.0; };
  REQUIRE_FALSE(korovkin::pringsheim_probe(parity, 20, 0.5).converged);

  DoubleSeq slow;
  slow.term = [](long m, long n) { return 1.0 / (m + n + 1.0); };
  REQUIRE_FALSE(korovkin::pringsheim_probe(slow, 40, 0.1).converged);
}

TEST_CASE("partial_sum_growth_probe: divergent families grow, convergent ones do not") {
  REQUIRE(korovkin::partial_sum_growth_probe(WeightFamily::abel()));
  REQUIRE(korovkin::partial_sum_growth_probe(WeightFamily::logarithmic()));
  auto conv = WeightFamily::custom(
      "conv", [](long m, long n) { return std::pow(0.5, m + n); }, false);
  REQUIRE_FALSE(korovkin::partial_sum_growth_probe(conv));
}
