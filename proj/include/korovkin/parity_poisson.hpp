#pragma once

// Reference operator family
//
//   L_mn(f; x,y) = (1 + (-1)^(m+n)) * T_mn(f; x,y),
//
// where T_mn is the (m/(m+1), n/(n+1))-th Abel-Poisson mean of the double
// Fourier series of f.  The parity prefactor oscillates between 0 and 2, so
// the family converges nowhere in the plain (Pringsheim) sense, yet its
// Abel-weight J_p averages converge to f; closed forms for the test-function
// errors and the gamma scale make the family the ground-truth oracle layer
// for the verifiers in operators.hpp.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "korovkin/fourier.hpp"
#include "korovkin/operators.hpp"
#include "korovkin/periodic.hpp"
#include "korovkin/summability.hpp"

namespace korovkin {

namespace detail {

inline double parity_prefactor(long m, long n) {
  return ((m + n) % 2 == 0) ? 2.0 : 0.0;
}

inline double ipow(double x, int e) {
  double r = 1.0, b = x;
  for (; e > 0; e >>= 1) {
    if (e & 1) r *= b;
    b *= b;
  }
  return r;
}

/// sum_m axis(m) * (m/(m+1))^j * (+-x)^m, near machine precision.
inline double damped_axis_series(const std::function<double(long)>& axis, int j,
                                 double x, bool alternate) {
  return power_series_1d(
      [&](long m) {
        const double c = axis(m) * ipow(poisson_radius(m), j);
        return (alternate && (m & 1)) ? -c : c;
      },
      x);
}

inline double separable_p(const WeightFamily& w, const MethodPoint& pt) {
  if (w.closed_p) return w.closed_p(pt.r, pt.s);
  return damped_axis_series(w.axis_m, 0, pt.r, false) *
         damped_axis_series(w.axis_n, 0, pt.s, false);
}

/// E(x,t) from the closed error curves; the removable singularity of
/// ln(1-x)/x at x -> 0 is evaluated by a three-term expansion.
inline double closed_error_E(double x, double t) {
  double log1m_over_x, log1p_over_x;
  if (x < 1e-8) {
    log1m_over_x = -(1.0 + x / 2.0 + x * x / 3.0);
    log1p_over_x = 1.0 - x / 2.0 + x * x / 3.0;
  } else {
    log1m_over_x = std::log1p(-x) / x;
    log1p_over_x = std::log1p(x) / x;
  }
  const double term1 = (1.0 - x) * (1.0 - t) / ((1.0 + x) * (1.0 + t));
  const double term2 = (1.0 - x) * log1m_over_x;
  const double term3 = (1.0 - t) * (1.0 - x) * log1p_over_x / (1.0 + t);
  return std::abs(term1 + term2 - term3);
}

} // namespace detail

struct ParityPoissonOptions {
  int n_quad = 256;
  int J = 32;
  int K = 32;
};

/// Exact sup-norm error of the Abel-weight J_p average of the family at test
/// function i:
///   i = 0:       (1-r)(1-s) / ((1+r)(1+s))
///   i = 1, 3:    E(r,s)
///   i = 2, 4:    E(s,r)
/// with E(x,t) = | (1-x)(1-t)/((1+x)(1+t)) + (1-x)ln(1-x)/x
///               - (1-t)(1-x)ln(1+x)/((1+t)x) |.
inline double closed_error(int i, double r, double s) {
  if (i < 0 || i > 4)
    throw std::invalid_argument("closed_error: index must be in 0..4");
  if (!(r > 0.0 && r < 1.0 && s > 0.0 && s < 1.0))
    throw std::invalid_argument("closed_error: r and s must lie in (0,1)");
  if (i == 0) return (1.0 - r) * (1.0 - s) / ((1.0 + r) * (1.0 + s));
  return (i == 1 || i == 3) ? detail::closed_error_E(r, s)
                            : detail::closed_error_E(s, r);
}

struct ClosedErrorCurve {
  int index = 0;
  double operator()(double r, double s) const { return closed_error(index, r, s); }
};

/// gamma(r,s) of the family under Abel weights, from the series
///   sqrt( (1-r)(1-s) sum (1+(-1)^(m+n)) (1/(2(m+1)) + 1/(2(n+1))) r^m s^n ),
/// evaluated by ps_transform with the tail bounded to tol.
inline double closed_gamma_series(double r, double s, double tol) {
  const MethodPoint pt(r, s);
  DoubleSeq seq;
  seq.term = [](long m, long n) {
    return detail::parity_prefactor(m, n) *
           (0.5 / static_cast<double>(m + 1) + 0.5 / static_cast<double>(n + 1));
  };
  seq.uniform_bound = 2.0;
  const TransformResult t = ps_transform(seq, WeightFamily::abel(), pt, tol);
  return std::sqrt(std::max(0.0, t.value));
}

/// The family with all fast-path capabilities populated.  apply() works on
/// the band-limited representation of f at the configured cutoffs (exact for
/// trigonometric polynomials of degree <= (J,K)).
inline OperatorFamily parity_poisson_family(ParityPoissonOptions opt = {}) {
  OperatorFamily L;
  L.name = "parity-poisson";
  L.is_positive = true;

  L.apply = [opt](long m, long n, const Fn2D& f) {
    const double pre = detail::parity_prefactor(m, n);
    const Fn2D mean = abel_poisson_mean(coeffs(f, opt.J, opt.K, opt.n_quad), m, n);
    Fn2D out;
    out.name = "L_{" + std::to_string(m) + "," + std::to_string(n) + "}(" + f.name + ")";
    out.eval = [pre, mean](double x, double y) { return pre * mean(x, y); };
    return out;
  };

  L.test_multiplier = [](int i, long m, long n) {
    const double pre = detail::parity_prefactor(m, n);
    if (i == 0) return pre;
    if (i == 1 || i == 3) return pre * poisson_radius(m);
    return pre * poisson_radius(n);
  };

  L.test_closed_form = [](int i, long m, long n, double x, double y) {
    const double pre = detail::parity_prefactor(m, n);
    switch (i) {
      case 0: return pre;
      case 1: return pre * poisson_radius(m) * std::sin(x);
      case 2: return pre * poisson_radius(n) * std::sin(y);
      case 3: return pre * poisson_radius(m) * std::cos(x);
      case 4: return pre * poisson_radius(n) * std::cos(y);
    }
    throw std::invalid_argument("test_closed_form: index must be in 0..4");
  };

  L.norm_bound = [](long m, long n) { return detail::parity_prefactor(m, n); };

  // The parity prefactor splits into 1 + (-1)^m (-1)^n, so for separable
  // weights every J_p average of the multiplier factorizes into
  // one-dimensional power series.
  L.jp_test_average = [](int i, const WeightFamily& w, const MethodPoint& pt,
                         double tol) {
    const int jm = (i == 1 || i == 3) ? 1 : 0;
    const int jn = (i == 2 || i == 4) ? 1 : 0;
    if (w.axis_m && w.axis_n) {
      const double U = detail::damped_axis_series(w.axis_m, jm, pt.r, false);
      const double Ut = detail::damped_axis_series(w.axis_m, jm, pt.r, true);
      const double V = detail::damped_axis_series(w.axis_n, jn, pt.s, false);
      const double Vt = detail::damped_axis_series(w.axis_n, jn, pt.s, true);
      return (U * V + Ut * Vt) / detail::separable_p(w, pt);
    }
    DoubleSeq seq;
    seq.term = [i, jm, jn](long m, long n) {
      return detail::parity_prefactor(m, n) *
             detail::ipow(poisson_radius(m), jm) * detail::ipow(poisson_radius(n), jn);
    };
    seq.uniform_bound = 2.0;
    return ps_transform(seq, w, pt, tol).value;
  };

  L.jp_mode_average = [](const WeightFamily& w, const MethodPoint& pt, double tol,
                         int J, int K) {
    std::vector<double> D(static_cast<size_t>(J + 1) * (K + 1));
    if (w.axis_m && w.axis_n) {
      const double p = detail::separable_p(w, pt);
      std::vector<double> U(J + 1), Ut(J + 1), V(K + 1), Vt(K + 1);
      for (int j = 0; j <= J; ++j) {
        U[j] = detail::damped_axis_series(w.axis_m, j, pt.r, false);
        Ut[j] = detail::damped_axis_series(w.axis_m, j, pt.r, true);
      }
      for (int k = 0; k <= K; ++k) {
        V[k] = detail::damped_axis_series(w.axis_n, k, pt.s, false);
        Vt[k] = detail::damped_axis_series(w.axis_n, k, pt.s, true);
      }
      for (int j = 0; j <= J; ++j)
        for (int k = 0; k <= K; ++k)
          D[static_cast<size_t>(j) * (K + 1) + k] = (U[j] * V[k] + Ut[j] * Vt[k]) / p;
      return D;
    }
    for (int j = 0; j <= J; ++j)
      for (int k = 0; k <= K; ++k) {
        DoubleSeq seq;
        seq.term = [j, k](long m, long n) {
          return detail::parity_prefactor(m, n) *
                 detail::ipow(poisson_radius(m), j) * detail::ipow(poisson_radius(n), k);
        };
        seq.uniform_bound = 2.0;
        D[static_cast<size_t>(j) * (K + 1) + k] = ps_transform(seq, w, pt, tol).value;
      }
    return D;
  };

  return L;
}

/// Window table of classical errors ||L_mn(f_0) - f_0|| together with the
/// underlying operator values L_mn(f_0) (constant in (x,y)).  Every error
/// equals 1 -- the value sequence oscillates between 2 and 0 around the
/// target 1 -- which is exactly why no plain-convergence verdict exists.
struct ClassicalFailureTable {
  long window = 0;
  std::vector<double> errors;
  std::vector<double> values;

  double error_at(long m, long n) const { return errors[m * (window + 1) + n]; }
  double value_at(long m, long n) const { return values[m * (window + 1) + n]; }

  /// The operator-value double sequence, defined for 0 <= m,n <= window.
  DoubleSeq value_seq() const {
    const long wdw = window;
    const std::vector<double> vals = values;
    DoubleSeq s;
    s.term = [wdw, vals](long m, long n) {
      if (m < 0 || n < 0 || m > wdw || n > wdw)
        throw std::out_of_range("ClassicalFailureTable: index outside window");
      return vals[m * (wdw + 1) + n];
    };
    s.uniform_bound = 2.0;
    return s;
  }
};

inline ClassicalFailureTable classical_failure_table(long window, int n_quad = 128,
                                                     int grid_n = 32) {
  if (window < 2)
    throw std::invalid_argument("classical_failure_table: window must be >= 2");
  const int JK = std::min(32, n_quad / 4);
  const CoeffTable t0 = coeffs(test_function(0), JK, JK, n_quad);
  const Grid2D g(grid_n, grid_n);

  ClassicalFailureTable out;
  out.window = window;
  out.errors.resize(static_cast<size_t>(window + 1) * (window + 1));
  out.values.resize(out.errors.size());
  for (long m = 0; m <= window; ++m)
    for (long n = 0; n <= window; ++n) {
      const double pre = detail::parity_prefactor(m, n);
      const detail::FoldedCoeffs folded = detail::fold_series_factors(
          damp_table(t0, poisson_radius(m), poisson_radius(n)));
      const std::vector<double> vals = detail::eval_folded_on_grid(folded, JK, JK, g);
      double worst = 0.0;
      for (double v : vals) worst = std::max(worst, std::abs(pre * v - 1.0));
      out.errors[m * (window + 1) + n] = worst;
      out.values[m * (window + 1) + n] = pre * vals[0];
    }
  return out;
}

} // namespace korovkin
