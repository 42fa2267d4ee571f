#pragma once

// Power-series (J_p) summability of real double sequences.
//
// A weight family p = (p_mn) with p_00 > 0 and divergent partial sums
// determines the method: a double sequence (a_mn) is transformed into
//
//     (1/p(r,s)) * sum_{m,n>=0} a_mn p_mn r^m s^n,   p(r,s) = sum p_mn r^m s^n,
//
// evaluated at method points (r,s) in (0,1)^2.  The transform is computed by
// adaptive rectangular truncation with a reported tail bound; summation is
// row-major with compensated accumulation, so serial runs are bitwise
// reproducible.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "korovkin/detail/summation.hpp"

namespace korovkin {

/// Points with r or s above this cap are rejected: the term count needed for
/// typical tolerances explodes as (r,s) -> 1.
inline constexpr double kBoundaryCap = 0.9999;

/// Default cap on the number of evaluated series terms per transform.
inline constexpr std::int64_t kDefaultTermBudget = 100'000'000;

/// A series did not reach the requested tolerance within its term budget, or
/// the method point lies beyond the boundary cap.
class BudgetError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A transform was requested for a sequence without a uniform bound and
/// without explicit truncation orders.
class MissingBoundError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Evaluation point (r,s) of a power-series method, both in (0,1).
struct MethodPoint {
  double r;
  double s;

  MethodPoint(double r_, double s_) : r(r_), s(s_) {
    if (!(r > 0.0 && r < 1.0) || !(s > 0.0 && s < 1.0))
      throw std::invalid_argument("MethodPoint: r and s must lie in (0,1)");
  }
};

namespace detail {

inline void require_within_cap(const MethodPoint& pt) {
  if (pt.r > kBoundaryCap || pt.s > kBoundaryCap)
    throw BudgetError(
        "method point (" + std::to_string(pt.r) + ", " + std::to_string(pt.s) +
        ") exceeds the boundary cap " + std::to_string(kBoundaryCap) +
        "; series evaluation this close to 1 is outside the term budget");
}

} // namespace detail

/// Weight double sequence p = (p_mn) defining a J_p method.
///
/// Requirements on the weights: p_mn >= 0, p_00 > 0, and the partial sums of
/// p_mn must diverge.  Divergence is not decidable numerically; custom
/// families declare it and `partial_sum_growth_probe` offers a spot check.
struct WeightFamily {
  enum class Kind { abel, logarithmic, custom };

  Kind kind = Kind::custom;
  std::string name;
  std::function<double(long, long)> weight;
  /// Exact evaluator for p(r,s); null when no closed form is known.
  std::function<double(double, double)> closed_p;
  /// Per-axis factors with weight(m,n) == axis_m(m) * axis_n(n), when the
  /// family is separable.  Enables one-dimensional fast paths downstream.
  std::function<double(long)> axis_m;
  std::function<double(long)> axis_n;
  bool divergent_partial_sums = true;

  static WeightFamily abel() {
    WeightFamily w;
    w.kind = Kind::abel;
    w.name = "abel";
    w.weight = [](long, long) { return 1.0; };
    w.closed_p = [](double r, double s) { return 1.0 / ((1.0 - r) * (1.0 - s)); };
    w.axis_m = [](long) { return 1.0; };
    w.axis_n = [](long) { return 1.0; };
    return w;
  }

  static WeightFamily logarithmic() {
    WeightFamily w;
    w.kind = Kind::logarithmic;
    w.name = "logarithmic";
    w.weight = [](long m, long n) {
      return 1.0 / (static_cast<double>(m + 1) * static_cast<double>(n + 1));
    };
    // per axis: sum_m r^m/(m+1) = -log(1-r)/r
    w.closed_p = [](double r, double s) {
      return (std::log1p(-r) * std::log1p(-s)) / (r * s);
    };
    w.axis_m = [](long m) { return 1.0 / static_cast<double>(m + 1); };
    w.axis_n = [](long n) { return 1.0 / static_cast<double>(n + 1); };
    return w;
  }

  static WeightFamily custom(std::string label,
                             std::function<double(long, long)> weights,
                             bool declares_divergent_partial_sums,
                             std::function<double(double, double)> closed = nullptr) {
    WeightFamily w;
    w.kind = Kind::custom;
    w.name = std::move(label);
    w.weight = std::move(weights);
    w.closed_p = std::move(closed);
    w.divergent_partial_sums = declares_divergent_partial_sums;
    if (!(w.weight(0, 0) > 0.0))
      throw std::invalid_argument("WeightFamily: weight(0,0) must be positive");
    // Divergence of the partial sums is not decidable numerically: spot-check
    // growth on a 64x64 window, warn on a mismatch, trust the declaration.
    double half = 0.0, full = 0.0;
    for (long m = 0; m <= 64; ++m)
      for (long n = 0; n <= 64; ++n) {
        const double x = w.weight(m, n);
        full += x;
        if (m <= 32 && n <= 32) half += x;
      }
    const bool grows = full >= 1.05 * half;
    if (grows != w.divergent_partial_sums)
      std::fprintf(stderr,
                   "korovkin: weight family '%s' declares %s partial sums but the "
                   "64x64 window spot-check suggests otherwise\n", w.name.c_str(),
                   w.divergent_partial_sums ? "divergent" : "convergent");
    return w;
  }
};

/// Lazily evaluated double sequence, the object being J_p-summed.  The
/// uniform bound, when present, is what makes adaptive tail bounds sound;
/// it is spot-checked on every term the transform touches.
struct DoubleSeq {
  std::function<double(long, long)> term;
  std::optional<double> uniform_bound;
};

struct TransformResult {
  double value = 0.0;
  long m_order = 0; ///< truncation order in m (terms 0..m_order)
  long n_order = 0;
  double tail_bound = 0.0;
};

struct TransformOptions {
  /// Fixed truncation orders (M,N); disables adaptive growth.
  std::optional<std::pair<long, long>> orders;
  std::int64_t term_budget = kDefaultTermBudget;
  /// When false, uniform_bound is treated as a tail-bound estimate supplied
  /// by internal callers rather than a declared invariant, and terms are not
  /// checked against it.
  bool enforce_uniform_bound = true;
};

/// p(r,s) with absolute error <= tol.  Uses the closed form when available,
/// otherwise adaptive rectangular truncation.  The truncation tail estimate
/// scales the last partial sum by r^(M+1) + s^(N+1); it is a true bound for
/// families whose weights are nonincreasing in each index.
inline double eval_p(const WeightFamily& w, const MethodPoint& pt, double tol,
                     std::int64_t term_budget = kDefaultTermBudget) {
  detail::require_within_cap(pt);
  if (!(tol > 0.0)) throw std::invalid_argument("eval_p: tol must be positive");
  if (w.closed_p) return w.closed_p(pt.r, pt.s);

  const double r = pt.r, s = pt.s;
  for (long size = 16;; size *= 2) {
    if (static_cast<std::int64_t>(size + 1) * (size + 1) > term_budget)
      throw BudgetError("eval_p: series for p(r,s) did not meet the tolerance "
                        "within the term budget; the point is too close to the "
                        "boundary for the configured budget");
    detail::Accumulator acc;
    double rm = 1.0;
    for (long m = 0; m <= size; ++m) {
      double sn = 1.0;
      for (long n = 0; n <= size; ++n) {
        acc.add(w.weight(m, n) * rm * sn);
        sn *= s;
      }
      rm *= r;
    }
    const double partial = acc.value();
    const double q = std::pow(r, size + 1) + std::pow(s, size + 1);
    if (q < 1.0) {
      const double tail = partial * q / (1.0 - q);
      if (tail <= tol) return partial;
    }
  }
}

/// Core J_p transform over an inlinable term callable.  See `ps_transform`
/// for the type-erased front end and the contract.
template <class Term>
TransformResult ps_transform_with(Term&& term, std::optional<double> uniform_bound,
                                  const WeightFamily& w, const MethodPoint& pt,
                                  double tol, const TransformOptions& opt = {}) {
  detail::require_within_cap(pt);
  if (!(tol > 0.0))
    throw std::invalid_argument("ps_transform: tol must be positive");
  if (!uniform_bound && !opt.orders)
    throw MissingBoundError("ps_transform: sequence has no uniform bound and no "
                            "explicit truncation orders were supplied");

  const double r = pt.r, s = pt.s;
  const bool closed = static_cast<bool>(w.closed_p);
  const double p_closed = closed ? w.closed_p(r, s) : 0.0;

  long size_m = opt.orders ? opt.orders->first : 16;
  long size_n = opt.orders ? opt.orders->second : 16;
  if (!opt.orders && uniform_bound && closed && *uniform_bound > 0.0) {
    // Smallest orders with B*(r^(M+1) + s^(N+1)) <= tol, so the first pass
    // usually succeeds and geometric growth cannot overshoot the budget.
    const double target = tol / (2.0 * *uniform_bound);
    if (target < 1.0) {
      size_m = std::max<long>(size_m, static_cast<long>(std::ceil(std::log(target) / std::log(r))));
      size_n = std::max<long>(size_n, static_cast<long>(std::ceil(std::log(target) / std::log(s))));
    }
  }
  for (;;) {
    if ((static_cast<std::int64_t>(size_m) + 1) * (size_n + 1) > opt.term_budget)
      throw BudgetError("ps_transform: term budget of " +
                        std::to_string(opt.term_budget) +
                        " exceeded before the tail bound met the tolerance");

    detail::Accumulator num;
    detail::Accumulator psum;
    double max_abs_term = 0.0;
    double rm = 1.0;
    for (long m = 0; m <= size_m; ++m) {
      double sn = 1.0;
      for (long n = 0; n <= size_n; ++n) {
        const double a = term(m, n);
        const double pw = w.weight(m, n) * rm * sn;
        max_abs_term = std::max(max_abs_term, std::abs(a));
        num.add(a * pw);
        if (!closed) psum.add(pw);
        sn *= s;
      }
      rm *= r;
    }
    if (opt.enforce_uniform_bound && uniform_bound &&
        max_abs_term > *uniform_bound * (1.0 + 1e-9) + 1e-300)
      throw std::invalid_argument("ps_transform: sequence exceeds its declared "
                                  "uniform bound on the truncation window");

    const double bound = uniform_bound ? *uniform_bound : max_abs_term;
    const double q = std::pow(r, size_m + 1) + std::pow(s, size_n + 1);
    // Tail of the normalized transform.  With a closed p(r,s) the numerator
    // tail is at most bound * p * q for weights nonincreasing in each index.
    // Without one, normalize by the same-rectangle partial sum of p: writing
    // the exact value as (num + en)/(psum + ep) with |en| <= bound * ep and
    // ep estimated by psum * q/(1-q), the error of num/psum is at most
    // (bound + |value|) * ep / psum.
    double value, tail;
    if (closed) {
      value = num.value() / p_closed;
      tail = bound * q;
    } else {
      value = num.value() / psum.value();
      const double ep_rel = (q < 1.0) ? q / (1.0 - q) : 1.0;
      tail = (bound + std::abs(value)) * ep_rel;
    }

    if (opt.orders || tail <= tol) {
      TransformResult out;
      out.value = value;
      out.m_order = size_m;
      out.n_order = size_n;
      out.tail_bound = tail;
      return out;
    }
    size_m *= 2;
    size_n *= 2;
  }
}

/// J_p transform of `a` at (r,s): value approximates
/// (1/p(r,s)) sum a_mn p_mn r^m s^n with tail_bound <= tol on success.
inline TransformResult ps_transform(const DoubleSeq& a, const WeightFamily& w,
                                    const MethodPoint& pt, double tol,
                                    const TransformOptions& opt = {}) {
  return ps_transform_with(a.term, a.uniform_bound, w, pt, tol, opt);
}

struct RegularityResiduals {
  double row = 0.0; ///< (1/p(r,s)) sum_m p_{m,n0} r^m
  double col = 0.0; ///< (1/p(r,s)) sum_n p_{m0,n} s^n
};

/// Normalized single-index weight sums at fixed (m0,n0).  Both residuals of a
/// b-regular method vanish as r,s -> 1^-; the fixed index contributes its
/// weight but no power factor.
inline RegularityResiduals b_regularity_residuals(const WeightFamily& w, long m0,
                                                  long n0, const MethodPoint& pt,
                                                  double tol) {
  detail::require_within_cap(pt);
  if (m0 < 0 || n0 < 0)
    throw std::invalid_argument("b_regularity_residuals: indices must be >= 0");
  if (!(tol > 0.0))
    throw std::invalid_argument("b_regularity_residuals: tol must be positive");
  const double p = eval_p(w, pt, std::min(tol, 1e-12));
  RegularityResiduals out;
  out.row = detail::power_series_1d([&](long m) { return w.weight(m, n0); }, pt.r,
                                    1e-14) / p;
  out.col = detail::power_series_1d([&](long n) { return w.weight(m0, n); }, pt.s,
                                    1e-14) / p;
  return out;
}

struct PringsheimVerdict {
  bool converged = false;
  double limit = 0.0; ///< meaningful only when converged
};

/// Window probe for Pringsheim convergence.  Scans all terms with
/// 0 <= m,n <= window and reports converged-to(l) only when every scanned
/// term lies within tol of a common value; otherwise no-verdict.  The probe
/// never claims divergence.
inline PringsheimVerdict pringsheim_probe(const DoubleSeq& a, long window,
                                          double tol) {
  if (window < 2)
    throw std::invalid_argument("pringsheim_probe: window must be >= 2");
  double lo = a.term(0, 0), hi = lo;
  for (long m = 0; m <= window; ++m)
    for (long n = 0; n <= window; ++n) {
      const double v = a.term(m, n);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  PringsheimVerdict v;
  if ((hi - lo) / 2.0 <= tol) {
    v.converged = true;
    v.limit = (hi + lo) / 2.0;
  }
  return v;
}

/// Spot check that the partial sums of the weights keep growing on a
/// window x window rectangle.  Returns true when growth is observed; a false
/// result contradicts a family's divergence declaration.
inline bool partial_sum_growth_probe(const WeightFamily& w, long window = 64) {
  detail::Accumulator half, full;
  for (long m = 0; m <= window; ++m)
    for (long n = 0; n <= window; ++n) {
      const double x = w.weight(m, n);
      full.add(x);
      if (m <= window / 2 && n <= window / 2) half.add(x);
    }
  return full.value() >= 1.05 * half.value();
}

} // namespace korovkin
