#pragma once

// Double sequences of positive linear operators on 2pi-periodic bivariate
// functions, and the numeric verifiers built on their J_p averages: the
// five-test-function error vector, the localized gamma scale, the
// modulus-based bound check, and the pointwise trigonometric localization
// inequality.
//
// The J_p average of a family at f is, per grid node (x,y),
//
//   (1/p(r,s)) sum_{m,n} L_mn(f; x,y) p_mn r^m s^n.
//
// Families may expose progressively stronger capabilities; the average picks
// the best one available:
//   1. test_multiplier / jp_test_average: the family acts diagonally on the
//      test catalog, L_mn(f_i) = mult_i(m,n) * f_i.  One scalar transform per
//      test function replaces one transform per grid node.
//   2. jp_mode_average: the family damps Fourier modes diagonally, so the
//      average of any band-limited f is a reweighted partial sum.
//   3. apply only (black box): term-by-term summation, truncation rectangle
//      capped at 256 x 256.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "korovkin/fourier.hpp"
#include "korovkin/periodic.hpp"
#include "korovkin/summability.hpp"

namespace korovkin {

/// Indexed family (m,n) -> positive linear operator on Fn2D.
struct OperatorFamily {
  std::string name;
  std::function<Fn2D(long, long, const Fn2D&)> apply;
  bool is_positive = false;
  /// Diagonal action on the test catalog: L_mn(f_i) = test_multiplier(i,m,n) * f_i.
  std::function<double(int, long, long)> test_multiplier;
  /// Exact evaluator for L_mn(f_i; x, y).
  std::function<double(int, long, long, double, double)> test_closed_form;
  /// Bound on ||L_mn(f_0)||.
  std::function<double(long, long)> norm_bound;
  /// J_p average of the test multiplier sequence, when the family can compute
  /// it faster than the generic rectangle transform.
  std::function<double(int, const WeightFamily&, const MethodPoint&, double)> jp_test_average;
  /// J_p-averaged Fourier mode multipliers D_jk for 0 <= j <= J, 0 <= k <= K,
  /// row-major, each within the given absolute tolerance.
  std::function<std::vector<double>(const WeightFamily&, const MethodPoint&, double, int, int)>
      jp_mode_average;
};

enum class ProbeVerdict { holds_on_window, no_verdict };

struct JpOptions {
  int mode_cutoff_x = 32;
  int mode_cutoff_y = 32;
  int n_quad = 256;
  long black_box_cap = 256; ///< per-axis truncation cap for apply-only families
  std::int64_t term_budget = kDefaultTermBudget;
  int modulus_samples = 2048;
};

/// The identity family: L_mn(f) = f for all (m,n).
inline OperatorFamily identity_family() {
  OperatorFamily L;
  L.name = "identity";
  L.apply = [](long, long, const Fn2D& f) { return f; };
  L.is_positive = true;
  L.test_multiplier = [](int, long, long) { return 1.0; };
  L.test_closed_form = [](int i, long, long, double x, double y) {
    return test_function(i)(x, y);
  };
  L.norm_bound = [](long, long) { return 1.0; };
  return L;
}

/// Probe of the basic summability condition
///   sum ||L_mn(f_0)|| p_mn r^m s^n < infinity.
/// Sums the series over the window by rings max(m,n) = k and compares the
/// quarter-window blocks B1 = sum of rings in (W/2, 3W/4] and B2 = sum in
/// (3W/4, W]: holds-on-window when B2 <= 4 * max(r,s)^(W/4) * B1 + 1e-9, the
/// decay a convergent geometric tail with polynomial ring growth must show.
/// Growth or stagnation yields no-verdict; the probe never claims failure of
/// the condition.
inline ProbeVerdict norm_summability_probe(const OperatorFamily& L,
                                           const WeightFamily& w,
                                           const MethodPoint& pt, long window) {
  if (window < 4)
    throw std::invalid_argument("norm_summability_probe: window must be >= 4");
  detail::require_within_cap(pt);

  const Grid2D g(32, 32);
  const Fn2D f0 = test_function(0);
  auto op_norm = [&](long m, long n) {
    if (L.norm_bound) return L.norm_bound(m, n);
    return sup_norm(L.apply(m, n, f0), g);
  };

  std::vector<double> ring(window + 1, 0.0);
  for (long k = 0; k <= window; ++k) {
    detail::Accumulator acc;
    // ring max(m,n) == k, row-major order
    for (long m = 0; m <= k; ++m) {
      const long n_lo = (m == k) ? 0 : k;
      for (long n = n_lo; n <= k; ++n)
        acc.add(op_norm(m, n) * w.weight(m, n) * std::pow(pt.r, m) * std::pow(pt.s, n));
    }
    ring[k] = acc.value();
    if (!std::isfinite(ring[k])) return ProbeVerdict::no_verdict;
  }

  double b1 = 0.0, b2 = 0.0;
  for (long k = window / 2 + 1; k <= 3 * window / 4; ++k) b1 += ring[k];
  for (long k = 3 * window / 4 + 1; k <= window; ++k) b2 += ring[k];
  const double decay =
      4.0 * std::pow(std::max(pt.r, pt.s), static_cast<double>(window) / 4.0);
  return (b2 <= decay * b1 + 1e-9) ? ProbeVerdict::holds_on_window
                                   : ProbeVerdict::no_verdict;
}

namespace detail {

inline double multiplier_window_bound(const OperatorFamily& L, int i, long window = 64) {
  double b = 0.0;
  for (long m = 0; m <= window; ++m)
    for (long n = 0; n <= window; ++n)
      b = std::max(b, std::abs(L.test_multiplier(i, m, n)));
  return b;
}

/// J_p average of the test multiplier sequence: family fast path when
/// present, generic rectangle transform otherwise.
inline double jp_multiplier_average(const OperatorFamily& L, int i,
                                    const WeightFamily& w, const MethodPoint& pt,
                                    double tol, const JpOptions& opt) {
  if (L.jp_test_average) return L.jp_test_average(i, w, pt, tol);
  TransformOptions topt;
  topt.term_budget = opt.term_budget;
  // Window-scanned estimate, doubled: sups like sup_m m/(m+1) are approached
  // from below, so the scan alone can undershoot.
  topt.enforce_uniform_bound = false;
  const double bound = 2.0 * multiplier_window_bound(L, i);
  return ps_transform_with([&](long m, long n) { return L.test_multiplier(i, m, n); },
                           bound, w, pt, tol, topt)
      .value;
}

/// Generic J_p average for apply-only families: term-by-term over a square
/// truncation rectangle grown until the tail bound meets tol, capped at
/// opt.black_box_cap per axis.  Deterministic ring-by-ring accumulation.
inline std::vector<double> jp_average_black_box(const OperatorFamily& L,
                                                const Fn2D& f, const WeightFamily& w,
                                                const MethodPoint& pt,
                                                const Grid2D& g, double tol,
                                                const JpOptions& opt) {
  const double p = eval_p(w, pt, std::min(tol, 1e-12), opt.term_budget);
  const long nodes = g.size();
  std::vector<Accumulator> acc(nodes);

  double f_bound = f.claimed_bound ? *f.claimed_bound : sup_norm(f, g);
  double observed = 0.0;
  double norm_bound_max = 0.0;

  auto add_term = [&](long m, long n) {
    const Fn2D gf = L.apply(m, n, f);
    const double pw = w.weight(m, n) * std::pow(pt.r, m) * std::pow(pt.s, n);
    long id = 0;
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.x(i);
      for (int j = 0; j < g.ny; ++j, ++id) {
        const double v = gf(x, g.y(j));
        observed = std::max(observed, std::abs(v));
        acc[id].add(v * pw);
      }
    }
    if (L.norm_bound) norm_bound_max = std::max(norm_bound_max, L.norm_bound(m, n));
  };

  long size = std::min<long>(16, opt.black_box_cap);
  for (long m = 0; m <= size; ++m)
    for (long n = 0; n <= size; ++n) add_term(m, n);

  for (;;) {
    // Tail of the normalized average is bounded by B * (r^(M+1) + s^(N+1))
    // for weights nonincreasing in each index, B a bound on ||L_mn(f)||.
    const double B = (L.norm_bound && L.is_positive) ? f_bound * norm_bound_max
                                                     : 2.0 * observed;
    const double tail = B * (std::pow(pt.r, size + 1) + std::pow(pt.s, size + 1));
    if (tail <= tol) break;
    if (size >= opt.black_box_cap)
      throw BudgetError("jp_average: black-box truncation cap " +
                        std::to_string(opt.black_box_cap) +
                        " reached with tail bound " + std::to_string(tail) +
                        " > tol");
    const long new_size = std::min(opt.black_box_cap, size * 2);
    for (long m = 0; m <= new_size; ++m)
      for (long n = (m <= size ? size + 1 : 0); n <= new_size; ++n) add_term(m, n);
    size = new_size;
  }

  std::vector<double> out(nodes);
  for (long id = 0; id < nodes; ++id) out[id] = acc[id].value() / p;
  return out;
}

} // namespace detail

/// J_p average of the family at f on every grid node, with tolerance tol.
/// Row-major node order (x index outer).
inline std::vector<double> jp_average(const OperatorFamily& L, const Fn2D& f,
                                      const WeightFamily& w, const MethodPoint& pt,
                                      const Grid2D& g, double tol,
                                      const JpOptions& opt = {}) {
  detail::require_within_cap(pt);
  if (!(tol > 0.0)) throw std::invalid_argument("jp_average: tol must be positive");

  if (f.catalog_index && (L.jp_test_average || L.test_multiplier)) {
    const double t = detail::jp_multiplier_average(L, *f.catalog_index, w, pt, tol, opt);
    std::vector<double> out(g.size());
    long id = 0;
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.ny; ++j, ++id) out[id] = t * f(g.x(i), g.y(j));
    return out;
  }

  if (L.jp_mode_average) {
    const int J = opt.mode_cutoff_x, K = opt.mode_cutoff_y;
    detail::FoldedCoeffs folded =
        detail::fold_series_factors(coeffs(f, J, K, opt.n_quad));
    double l1 = 0.0;
    for (size_t i = 0; i < folded.fa.size(); ++i)
      l1 += std::abs(folded.fa[i]) + std::abs(folded.fb[i]) + std::abs(folded.fc[i]) +
            std::abs(folded.fd[i]);
    const double mode_tol = tol / std::max(1.0, 2.0 * l1);
    const std::vector<double> D = L.jp_mode_average(w, pt, mode_tol, J, K);
    for (int j = 0; j <= J; ++j)
      for (int k = 0; k <= K; ++k) {
        const long i = folded.idx(j, k);
        folded.fa[i] *= D[i];
        folded.fb[i] *= D[i];
        folded.fc[i] *= D[i];
        folded.fd[i] *= D[i];
      }
    return detail::eval_folded_on_grid(folded, J, K, g);
  }

  return detail::jp_average_black_box(L, f, w, pt, g, tol, opt);
}

/// Sup-norm over the grid of (J_p average of L at f_i) - f_i, for the five
/// test functions i = 0..4.
inline std::array<double, 5> korovkin_errors(const OperatorFamily& L,
                                             const WeightFamily& w,
                                             const MethodPoint& pt, const Grid2D& g,
                                             double tol, const JpOptions& opt = {}) {
  std::array<double, 5> err{};
  for (int i = 0; i < 5; ++i) {
    const Fn2D fi = test_function(i);
    const std::vector<double> avg = jp_average(L, fi, w, pt, g, tol, opt);
    double worst = 0.0;
    long id = 0;
    for (int ix = 0; ix < g.nx; ++ix)
      for (int jy = 0; jy < g.ny; ++jy, ++id)
        worst = std::max(worst, std::abs(avg[id] - fi(g.x(ix), g.y(jy))));
    err[i] = worst;
  }
  return err;
}

/// gamma(r,s): square root of the sup over grid nodes of the J_p average of
/// m,n -> L_mn(phi_{x,y})(x,y), the localized test function being centered at
/// the same node where the operator value is read.
///
/// For families with a diagonal catalog action the node value follows from
/// sin^2((u-x)/2) = (1 - cos u cos x - sin u sin x)/2 and linearity:
///   t_0 - (t_1 sin^2 x + t_3 cos^2 x + t_2 sin^2 y + t_4 cos^2 y)/2
/// with t_i the averaged multipliers, so five scalar transforms cover every
/// node.
inline double gamma_scale(const OperatorFamily& L, const WeightFamily& w,
                          const MethodPoint& pt, const Grid2D& g, double tol,
                          const JpOptions& opt = {}) {
  detail::require_within_cap(pt);

  double worst = 0.0;
  if (L.jp_test_average || L.test_multiplier) {
    std::array<double, 5> t{};
    for (int i = 0; i < 5; ++i)
      t[i] = detail::jp_multiplier_average(L, i, w, pt, tol / 3.0, opt);
    for (int i = 0; i < g.nx; ++i) {
      const double sx = std::sin(g.x(i)), cx = std::cos(g.x(i));
      for (int j = 0; j < g.ny; ++j) {
        const double sy = std::sin(g.y(j)), cy = std::cos(g.y(j));
        const double v = t[0] - 0.5 * (t[1] * sx * sx + t[3] * cx * cx +
                                       t[2] * sy * sy + t[4] * cy * cy);
        worst = std::max(worst, v);
      }
    }
  } else {
    TransformOptions topt;
    topt.term_budget = opt.term_budget;
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.ny; ++j) {
        const double x = g.x(i), y = g.y(j);
        const Fn2D phi = phi_at(x, y);
        // ||L_mn(phi)|| <= 2 ||L_mn(f_0)|| for positive families
        double bound = 2.0;
        if (L.norm_bound) {
          double nb = 0.0;
          for (long m = 0; m <= 64; ++m)
            for (long n = 0; n <= 64; ++n) nb = std::max(nb, L.norm_bound(m, n));
          bound *= nb;
        }
        const double v =
            ps_transform_with([&](long m, long n) { return L.apply(m, n, phi)(x, y); },
                              bound, w, pt, tol, topt)
                .value;
        worst = std::max(worst, v);
      }
  }
  return std::sqrt(std::max(0.0, worst));
}

struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// Checks the modulus-of-continuity bound
///   || Jp(L,f) - f || <= K * ( e_0 * w(f;gamma) + w(f;gamma) + e_0 ),
/// with e_0 the f_0 error, gamma from gamma_scale, and
/// K = max(1 + pi^2, M_f).
inline BoundCheck modulus_bound_check(const Fn2D& f, const OperatorFamily& L,
                                      const WeightFamily& w, const MethodPoint& pt,
                                      const Grid2D& g, double tol,
                                      const JpOptions& opt = {}) {
  const double e0 = korovkin_errors(L, w, pt, g, tol, opt)[0];
  const double gam = gamma_scale(L, w, pt, g, tol, opt);
  const double omega = modulus(f, gam, opt.modulus_samples);
  const double mf = f.claimed_bound ? *f.claimed_bound : sup_norm(f, g);
  const double K = std::max(1.0 + kPi * kPi, mf);

  const std::vector<double> avg = jp_average(L, f, w, pt, g, tol, opt);
  double lhs = 0.0;
  long id = 0;
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j, ++id)
      lhs = std::max(lhs, std::abs(avg[id] - f(g.x(i), g.y(j))));

  BoundCheck out;
  out.lhs = lhs;
  out.rhs = K * (e0 * omega + omega + e0);
  out.holds = lhs <= out.rhs + tol;
  return out;
}

struct PointwiseCheck {
  double delta = 0.0;
  bool holds = false;
};

/// Verifies the pointwise localization inequality
///   |f(u,v) - f(x,y)| <= eps + (2 M_f / sin^2(delta/2))
///                              * ( sin^2((u-x)/2) + sin^2((v-y)/2) )
/// over all pairs of grid nodes.  delta is the largest value on the ladder
/// pi * 2^-k (k = 0..12) with modulus(f, sqrt(2)*delta) <= eps; if no ladder
/// value qualifies, the grid resolution cannot support the requested eps and
/// an error is raised.
inline PointwiseCheck pointwise_check(const Fn2D& f, double eps, const Grid2D& g,
                                      int modulus_samples = 2048) {
  if (!(eps > 0.0)) throw std::invalid_argument("pointwise_check: eps must be positive");
  if (!f.claimed_bound)
    throw std::invalid_argument("pointwise_check: f must carry a claimed bound");

  double delta = -1.0;
  for (int k = 0; k <= 12; ++k) {
    const double cand = kPi * std::pow(2.0, -k);
    if (modulus(f, std::sqrt(2.0) * cand, modulus_samples) <= eps) {
      delta = cand;
      break;
    }
  }
  if (delta < 0.0)
    throw std::runtime_error("pointwise_check: no admissible delta on the ladder "
                             "(eps too small for the sampling resolution)");

  const double mf = *f.claimed_bound;
  const double sd = std::sin(delta / 2.0);
  const double C = 2.0 * mf / (sd * sd);

  const long nodes = g.size();
  std::vector<double> fv(nodes), cxv(g.nx), sxv(g.nx), cyv(g.ny), syv(g.ny);
  for (int i = 0; i < g.nx; ++i) {
    cxv[i] = std::cos(g.x(i));
    sxv[i] = std::sin(g.x(i));
  }
  for (int j = 0; j < g.ny; ++j) {
    cyv[j] = std::cos(g.y(j));
    syv[j] = std::sin(g.y(j));
  }
  long id = 0;
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j, ++id) fv[id] = f(g.x(i), g.y(j));

  bool holds = true;
  for (int i1 = 0; i1 < g.nx && holds; ++i1)
    for (int j1 = 0; j1 < g.ny && holds; ++j1) {
      const long id1 = static_cast<long>(i1) * g.ny + j1;
      for (int i2 = 0; i2 < g.nx && holds; ++i2) {
        // sin^2((u-x)/2) = (1 - cos u cos x - sin u sin x)/2
        const double sux = 0.5 * (1.0 - cxv[i2] * cxv[i1] - sxv[i2] * sxv[i1]);
        for (int j2 = 0; j2 < g.ny; ++j2) {
          const double svy = 0.5 * (1.0 - cyv[j2] * cyv[j1] - syv[j2] * syv[j1]);
          const long id2 = static_cast<long>(i2) * g.ny + j2;
          if (std::abs(fv[id2] - fv[id1]) > eps + C * (sux + svy) + 1e-12) {
            holds = false;
            break;
          }
        }
      }
    }

  PointwiseCheck out;
  out.delta = delta;
  out.holds = holds;
  return out;
}

} // namespace korovkin
