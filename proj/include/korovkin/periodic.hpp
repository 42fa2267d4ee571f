#pragma once

// 2pi-periodic continuous functions of two variables: catalog of Korovkin
// test functions, sup-norm and modulus-of-continuity estimation on
// deterministic grids.  All estimates are lower bounds that converge from
// below under refinement.

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace korovkin {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Real-valued function on R^2 assumed 2pi-periodic in both variables.
struct Fn2D {
  std::function<double(double, double)> eval;
  std::string name;
  std::optional<double> claimed_bound; ///< M_f with |f| <= M_f when known
  /// Set for the built-in test functions f_0..f_4; enables exact operator
  /// fast paths downstream.  User functions leave it empty.
  std::optional<int> catalog_index;

  double operator()(double x, double y) const { return eval(x, y); }
};

/// Uniform grid on [-pi, pi) x [-pi, pi), anchored at -pi.  When nx and ny
/// are multiples of 4 the grid contains (+-pi/2, +-pi/2), where the catalog
/// functions attain their sup-norms.
struct Grid2D {
  int nx = 0;
  int ny = 0;

  Grid2D(int nx_, int ny_) : nx(nx_), ny(ny_) {
    if (nx < 1 || ny < 1)
      throw std::invalid_argument("Grid2D: dimensions must be positive");
  }

  double x(int i) const { return -kPi + kTwoPi * i / nx; }
  double y(int j) const { return -kPi + kTwoPi * j / ny; }
  long size() const { return static_cast<long>(nx) * ny; }
};

/// max |f| over the grid nodes; a lower bound of ||f|| converging as the
/// grid refines.
inline double sup_norm(const Fn2D& f, const Grid2D& g) {
  double best = 0.0;
  for (int i = 0; i < g.nx; ++i) {
    const double xi = g.x(i);
    for (int j = 0; j < g.ny; ++j)
      best = std::max(best, std::abs(f(xi, g.y(j))));
  }
  return best;
}

/// Estimate of the modulus of continuity
///   w(f; delta) = sup{ |f(u,v)-f(x,y)| : sqrt((u-x)^2+(v-y)^2) <= delta }
/// maximized over a floor(sqrt(samples))^2 base grid and, per base point,
/// n_dirs directions x n_mags magnitudes (largest magnitude exactly delta,
/// directions include the axes).  Nested base grids make the estimate
/// monotone under sample refinement.
inline double modulus(const Fn2D& f, double delta, int samples, int n_dirs = 64,
                      int n_mags = 16) {
  if (delta < 0.0) throw std::invalid_argument("modulus: delta must be >= 0");
  if (samples < 2) throw std::invalid_argument("modulus: samples must be >= 2");
  if (delta == 0.0) return 0.0;

  const int nb = std::max(2, static_cast<int>(std::floor(std::sqrt(static_cast<double>(samples)))));
  double best = 0.0;
  for (int i = 0; i < nb; ++i) {
    const double x = -kPi + kTwoPi * i / nb;
    for (int j = 0; j < nb; ++j) {
      const double y = -kPi + kTwoPi * j / nb;
      const double f0 = f(x, y);
      for (int d = 0; d < n_dirs; ++d) {
        const double th = kTwoPi * d / n_dirs;
        const double cx = std::cos(th), cy = std::sin(th);
        for (int k = 1; k <= n_mags; ++k) {
          const double t = delta * k / n_mags;
          best = std::max(best, std::abs(f(x + t * cx, y + t * cy) - f0));
        }
      }
    }
  }
  return best;
}

/// Korovkin test catalog: f_0 = 1, f_1 = sin x, f_2 = sin y, f_3 = cos x,
/// f_4 = cos y, each with claimed bound 1.
inline Fn2D test_function(int i) {
  Fn2D f;
  f.claimed_bound = 1.0;
  f.catalog_index = i;
  switch (i) {
    case 0:
      f.eval = [](double, double) { return 1.0; };
      f.name = "1";
      break;
    case 1:
      f.eval = [](double x, double) { return std::sin(x); };
      f.name = "sin x";
      break;
    case 2:
      f.eval = [](double, double y) { return std::sin(y); };
      f.name = "sin y";
      break;
    case 3:
      f.eval = [](double x, double) { return std::cos(x); };
      f.name = "cos x";
      break;
    case 4:
      f.eval = [](double, double y) { return std::cos(y); };
      f.name = "cos y";
      break;
    default:
      throw std::invalid_argument("test_function: index must be in 0..4");
  }
  return f;
}

/// Localized test function centered at (x,y):
///   phi(u,v) = sin^2((u-x)/2) + sin^2((v-y)/2),
/// nonnegative, vanishing exactly at the center, bounded by 2.
inline Fn2D phi_at(double x, double y) {
  Fn2D f;
  f.eval = [x, y](double u, double v) {
    const double su = std::sin((u - x) / 2.0);
    const double sv = std::sin((v - y) / 2.0);
    return su * su + sv * sv;
  };
  f.name = "phi";
  f.claimed_bound = 2.0;
  return f;
}

/// Worst periodicity defect max(|f(x+2pi,y)-f(x,y)|, |f(x,y+2pi)-f(x,y)|)
/// over a samples x samples grid.  The catalog stays below 1e-12.
inline double max_periodicity_defect(const Fn2D& f, int samples = 32) {
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = -kPi + kTwoPi * i / samples;
    for (int j = 0; j < samples; ++j) {
      const double y = -kPi + kTwoPi * j / samples;
      const double v = f(x, y);
      worst = std::max(worst, std::abs(f(x + kTwoPi, y) - v));
      worst = std::max(worst, std::abs(f(x, y + kTwoPi) - v));
    }
  }
  return worst;
}

} // namespace korovkin
