#pragma once

// Double Fourier series machinery: coefficient tables, rectangular partial
// sums, the Abel-Poisson kernel, and Abel-Poisson means along two independent
// evaluation paths (kernel convolution vs geometric coefficient damping).
//
// The series layout is
//
//   S(x,y) = a_00/4 + (1/2) sum_j (a_j0 cos jx + c_j0 sin jx)
//                   + (1/2) sum_k (a_0k cos ky + b_0k sin ky)
//                   + sum_{j,k>=1} ( a_jk cos jx cos ky + b_jk cos jx sin ky
//                                  + c_jk sin jx cos ky + d_jk sin jx sin ky )
//
// with a_jk = (1/pi^2) Int f(x,y) cos jx cos ky dx dy over [-pi,pi]^2 and
// b (cos*sin), c (sin*cos), d (sin*sin) analogously.  All integrals use the
// composite trapezoid rule on uniform periodic grids, which is spectrally
// accurate for smooth periodic integrands and exact for trigonometric
// polynomials below the Nyquist cutoff.

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "korovkin/detail/summation.hpp"
#include "korovkin/periodic.hpp"

namespace korovkin {

namespace detail {

inline bool is_pow2(long n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace detail

/// Real double Fourier coefficients of a function up to cutoffs (J,K).
/// Slots the series layout never reads (b_{j0}, c_{0k}, d_{j0}, d_{0k}) hold
/// exact zeros, because sin(0) = 0 in the defining integrals.
struct CoeffTable {
  int J = 0;
  int K = 0;
  std::vector<double> a, b, c, d; // (J+1)*(K+1) each, row-major in j

  long idx(int j, int k) const { return static_cast<long>(j) * (K + 1) + k; }
};

/// Fourier coefficients of f by trapezoid quadrature on an n_quad x n_quad
/// periodic grid.  Requires n_quad a power of two with n_quad >= 4*max(J,K,1),
/// which keeps all products of modes below the aliasing threshold.
inline CoeffTable coeffs(const Fn2D& f, int J, int K, int n_quad) {
  if (J < 0 || K < 0) throw std::invalid_argument("coeffs: cutoffs must be >= 0");
  if (!detail::is_pow2(n_quad) || n_quad < 4 * std::max({J, K, 1}))
    throw std::invalid_argument(
        "coeffs: insufficient quadrature resolution; n_quad must be a power of "
        "two with n_quad >= 4*max(J,K)");

  const int n = n_quad;
  std::vector<double> F(static_cast<size_t>(n) * n);
  for (int p = 0; p < n; ++p) {
    const double x = -kPi + kTwoPi * p / n;
    for (int q = 0; q < n; ++q)
      F[static_cast<size_t>(p) * n + q] = f(x, -kPi + kTwoPi * q / n);
  }

  // (1/pi^2) * (2pi/n)^2 = 4/n^2, exact in floating point for n a power of 2.
  const double scale = 4.0 / (static_cast<double>(n) * n);

  std::vector<double> cy(static_cast<size_t>(K + 1) * n), sy(cy.size());
  for (int k = 0; k <= K; ++k)
    for (int q = 0; q < n; ++q) {
      const double yq = -kPi + kTwoPi * q / n;
      cy[static_cast<size_t>(k) * n + q] = std::cos(k * yq);
      sy[static_cast<size_t>(k) * n + q] = std::sin(k * yq);
    }

  CoeffTable t;
  t.J = J;
  t.K = K;
  const size_t sz = static_cast<size_t>(J + 1) * (K + 1);
  t.a.assign(sz, 0.0);
  t.b.assign(sz, 0.0);
  t.c.assign(sz, 0.0);
  t.d.assign(sz, 0.0);

  std::vector<double> Cj(n), Sj(n);
  for (int j = 0; j <= J; ++j) {
    for (int q = 0; q < n; ++q) {
      detail::Accumulator ac, as;
      for (int p = 0; p < n; ++p) {
        const double xp = -kPi + kTwoPi * p / n;
        const double v = F[static_cast<size_t>(p) * n + q];
        ac.add(v * std::cos(j * xp));
        as.add(v * std::sin(j * xp));
      }
      Cj[q] = ac.value();
      Sj[q] = as.value();
    }
    for (int k = 0; k <= K; ++k) {
      detail::Accumulator aa, ab, acs, ad;
      const double* cyk = &cy[static_cast<size_t>(k) * n];
      const double* syk = &sy[static_cast<size_t>(k) * n];
      for (int q = 0; q < n; ++q) {
        aa.add(Cj[q] * cyk[q]);
        ab.add(Cj[q] * syk[q]);
        acs.add(Sj[q] * cyk[q]);
        ad.add(Sj[q] * syk[q]);
      }
      t.a[t.idx(j, k)] = scale * aa.value();
      t.b[t.idx(j, k)] = scale * ab.value();
      t.c[t.idx(j, k)] = scale * acs.value();
      t.d[t.idx(j, k)] = scale * ad.value();
    }
  }
  return t;
}

namespace detail {

/// Coefficients with the series layout's 1/4 and 1/2 factors folded in, so
/// that S(x,y) = sum_{j<=m,k<=n} (fa cos cos + fb cos sin + fc sin cos +
/// fd sin sin) over the full rectangle.
struct FoldedCoeffs {
  int J = 0, K = 0;
  std::vector<double> fa, fb, fc, fd;

  long idx(int j, int k) const { return static_cast<long>(j) * (K + 1) + k; }
};

inline FoldedCoeffs fold_series_factors(const CoeffTable& t) {
  FoldedCoeffs f;
  f.J = t.J;
  f.K = t.K;
  const size_t sz = t.a.size();
  f.fa.assign(sz, 0.0);
  f.fb.assign(sz, 0.0);
  f.fc.assign(sz, 0.0);
  f.fd.assign(sz, 0.0);
  for (int j = 0; j <= t.J; ++j)
    for (int k = 0; k <= t.K; ++k) {
      const long i = t.idx(j, k);
      double w;
      if (j == 0 && k == 0)
        w = 0.25;
      else if (j == 0 || k == 0)
        w = 0.5;
      else
        w = 1.0;
      f.fa[i] = w * t.a[i];
      f.fb[i] = (k >= 1 ? (j == 0 ? 0.5 : 1.0) * t.b[i] : 0.0);
      f.fc[i] = (j >= 1 ? (k == 0 ? 0.5 : 1.0) * t.c[i] : 0.0);
      f.fd[i] = (j >= 1 && k >= 1 ? t.d[i] : 0.0);
    }
  return f;
}

inline double eval_folded(const FoldedCoeffs& f, int m, int n, double x, double y) {
  Accumulator acc;
  for (int j = 0; j <= m; ++j) {
    const double cjx = std::cos(j * x), sjx = std::sin(j * x);
    for (int k = 0; k <= n; ++k) {
      const double cky = std::cos(k * y), sky = std::sin(k * y);
      const long i = f.idx(j, k);
      acc.add(f.fa[i] * cjx * cky + f.fb[i] * cjx * sky + f.fc[i] * sjx * cky +
              f.fd[i] * sjx * sky);
    }
  }
  return acc.value();
}

/// Evaluate the folded series on every node of a grid with separated trig
/// tables; two-stage contraction keeps the cost at
/// O(nx*J*K + nx*ny*K) instead of O(nx*ny*J*K).
inline std::vector<double> eval_folded_on_grid(const FoldedCoeffs& f, int m,
                                               int n, const Grid2D& g) {
  std::vector<double> cx(static_cast<size_t>(g.nx) * (m + 1));
  std::vector<double> sx(cx.size());
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j <= m; ++j) {
      cx[static_cast<size_t>(i) * (m + 1) + j] = std::cos(j * g.x(i));
      sx[static_cast<size_t>(i) * (m + 1) + j] = std::sin(j * g.x(i));
    }
  std::vector<double> cyt(static_cast<size_t>(g.ny) * (n + 1));
  std::vector<double> syt(cyt.size());
  for (int q = 0; q < g.ny; ++q)
    for (int k = 0; k <= n; ++k) {
      cyt[static_cast<size_t>(q) * (n + 1) + k] = std::cos(k * g.y(q));
      syt[static_cast<size_t>(q) * (n + 1) + k] = std::sin(k * g.y(q));
    }

  std::vector<double> out(static_cast<size_t>(g.nx) * g.ny);
  std::vector<double> rowc(n + 1), rows(n + 1);
  for (int i = 0; i < g.nx; ++i) {
    for (int k = 0; k <= n; ++k) {
      Accumulator ac, as;
      for (int j = 0; j <= m; ++j) {
        const double cjx = cx[static_cast<size_t>(i) * (m + 1) + j];
        const double sjx = sx[static_cast<size_t>(i) * (m + 1) + j];
        const long id = f.idx(j, k);
        ac.add(f.fa[id] * cjx + f.fc[id] * sjx);
        as.add(f.fb[id] * cjx + f.fd[id] * sjx);
      }
      rowc[k] = ac.value();
      rows[k] = as.value();
    }
    for (int q = 0; q < g.ny; ++q) {
      Accumulator acc;
      for (int k = 0; k <= n; ++k)
        acc.add(rowc[k] * cyt[static_cast<size_t>(q) * (n + 1) + k] +
                rows[k] * syt[static_cast<size_t>(q) * (n + 1) + k]);
      out[static_cast<size_t>(i) * g.ny + q] = acc.value();
    }
  }
  return out;
}

} // namespace detail

/// (m,n)-th rectangular partial sum of the series held in `t`, as a function.
inline Fn2D partial_sum(const CoeffTable& t, int m, int n) {
  if (m < 0 || n < 0 || m > t.J || n > t.K)
    throw std::invalid_argument("partial_sum: cutoff exceeded");
  auto folded = std::make_shared<detail::FoldedCoeffs>(detail::fold_series_factors(t));
  Fn2D f;
  f.eval = [folded, m, n](double x, double y) {
    return detail::eval_folded(*folded, m, n, x, y);
  };
  f.name = "S_{" + std::to_string(m) + "," + std::to_string(n) + "}";
  return f;
}

/// Abel-Poisson kernel P(r,t) = (1-r^2) / (1 - 2r cos t + r^2), positive for
/// 0 <= r < 1.
inline double poisson_kernel(double r, double t) {
  if (!(r >= 0.0 && r < 1.0))
    throw std::invalid_argument("poisson_kernel: r must lie in [0,1)");
  return (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(t) + r * r);
}

/// Radius m/(m+1) used for the (m,n)-th Abel-Poisson mean.
inline double poisson_radius(long m) {
  if (m < 0) throw std::invalid_argument("poisson_radius: m must be >= 0");
  return static_cast<double>(m) / static_cast<double>(m + 1);
}

enum class MeanPath { convolution, damping };

/// Abel-Poisson mean via coefficient damping: entry (j,k) is scaled by
/// rho_x^j * rho_y^k.
inline CoeffTable damp_table(const CoeffTable& t, double rho_x, double rho_y) {
  CoeffTable out = t;
  double rj = 1.0;
  for (int j = 0; j <= t.J; ++j) {
    double rk = rj;
    for (int k = 0; k <= t.K; ++k) {
      const long i = t.idx(j, k);
      out.a[i] *= rk;
      out.b[i] *= rk;
      out.c[i] *= rk;
      out.d[i] *= rk;
      rk *= rho_y;
    }
    rj *= rho_x;
  }
  return out;
}

/// Damping-path Abel-Poisson mean of the function represented by `t`.
inline Fn2D abel_poisson_mean(const CoeffTable& t, long m, long n) {
  Fn2D f = partial_sum(damp_table(t, poisson_radius(m), poisson_radius(n)), t.J, t.K);
  f.name = "T_{" + std::to_string(m) + "," + std::to_string(n) + "}";
  return f;
}

namespace detail {

struct ConvolutionData {
  int n = 0;
  std::vector<double> table; // values on the n x n grid
  std::vector<double> Pm, Pn;
  Fn2D f;
};

} // namespace detail

/// (m,n)-th Abel-Poisson mean of f,
///
///   T_mn(f)(x,y) = (1/4pi^2) Int Int f(x-u, y-v) P(m/(m+1), u) P(n/(n+1), v) du dv,
///
/// via the requested path on an n_quad x n_quad periodic grid.
///
/// The convolution path precomputes the means on the grid nodes, where the
/// shifted arguments land back on grid nodes and no interpolation occurs;
/// off-node evaluations fall back to a direct (slower) quadrature.  Its
/// accuracy is governed by the kernel mode decay (m/(m+1))^n_quad, so n_quad
/// must be well above the largest m,n in use.  The damping path is exact for
/// band-limited f up to its cutoff.
inline Fn2D abel_poisson_mean(const Fn2D& f, long m, long n, MeanPath path,
                              int n_quad) {
  if (m < 0 || n < 0)
    throw std::invalid_argument("abel_poisson_mean: indices must be >= 0");
  if (!detail::is_pow2(n_quad) || n_quad < 4)
    throw std::invalid_argument("abel_poisson_mean: n_quad must be a power of two >= 4");

  if (path == MeanPath::damping) {
    const int JK = std::min(32, n_quad / 4);
    Fn2D out = abel_poisson_mean(coeffs(f, JK, JK, n_quad), m, n);
    out.name = "T_{" + std::to_string(m) + "," + std::to_string(n) + "}(" + f.name + ")";
    return out;
  }

  const int N = n_quad;
  const double rm = poisson_radius(m), rn = poisson_radius(n);
  auto data = std::make_shared<detail::ConvolutionData>();
  data->n = N;
  data->f = f;
  data->Pm.resize(N);
  data->Pn.resize(N);
  for (int a = 0; a < N; ++a) {
    const double u = -kPi + kTwoPi * a / N;
    data->Pm[a] = poisson_kernel(rm, u);
    data->Pn[a] = poisson_kernel(rn, u);
  }

  std::vector<double> F(static_cast<size_t>(N) * N);
  for (int p = 0; p < N; ++p) {
    const double x = -kPi + kTwoPi * p / N;
    for (int q = 0; q < N; ++q) F[static_cast<size_t>(p) * N + q] = f(x, -kPi + kTwoPi * q / N);
  }

  // (1/4pi^2) * (2pi/N)^2 = 1/N^2, exact for N a power of two.
  const double scale = 1.0 / (static_cast<double>(N) * N);

  // Separable kernel: convolve in y first, then in x.
  std::vector<double> G(static_cast<size_t>(N) * N);
  for (int c = 0; c < N; ++c)
    for (int q = 0; q < N; ++q) {
      detail::Accumulator acc;
      for (int b = 0; b < N; ++b)
        acc.add(data->Pn[b] * F[static_cast<size_t>(c) * N + ((q - b + 3 * N / 2) % N)]);
      G[static_cast<size_t>(c) * N + q] = acc.value();
    }
  data->table.resize(static_cast<size_t>(N) * N);
  for (int p = 0; p < N; ++p)
    for (int q = 0; q < N; ++q) {
      detail::Accumulator acc;
      for (int a = 0; a < N; ++a)
        acc.add(data->Pm[a] * G[static_cast<size_t>((p - a + 3 * N / 2) % N) * N + q]);
      data->table[static_cast<size_t>(p) * N + q] = scale * acc.value();
    }

  Fn2D out;
  out.name = "T_{" + std::to_string(m) + "," + std::to_string(n) + "}(" + f.name + ")";
  out.eval = [data, scale](double x, double y) {
    const int N = data->n;
    const double hx = kTwoPi / N;
    const double ip = std::round((x + kPi) / hx);
    const double iq = std::round((y + kPi) / hx);
    if (std::abs(x - (-kPi + ip * hx)) <= 1e-12 && std::abs(y - (-kPi + iq * hx)) <= 1e-12) {
      const long p = (static_cast<long>(ip) % N + N) % N;
      const long q = (static_cast<long>(iq) % N + N) % N;
      return data->table[static_cast<size_t>(p) * N + q];
    }
    detail::Accumulator acc;
    for (int a = 0; a < N; ++a) {
      const double u = -kPi + kTwoPi * a / N;
      detail::Accumulator row;
      for (int b = 0; b < N; ++b)
        row.add(data->Pn[b] * data->f(x - u, y - (-kPi + kTwoPi * b / N)));
      acc.add(data->Pm[a] * row.value());
    }
    return scale * acc.value();
  };
  return out;
}

} // namespace korovkin
