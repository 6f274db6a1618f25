#include "specenc/cell_integrals.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace specenc {

namespace {

constexpr int kPanelOrder = 24;  // Gauss-Legendre order for shell panels

double legendre_eval(int n, double x, double* deriv) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  *deriv = n * (x * p1 - p0) / (x * x - 1.0);
  return p1;
}

GaussLegendre compute_gauss_legendre(int n) {
  if (n < 1 || n > 32) throw std::invalid_argument("Gauss-Legendre order out of range");
  GaussLegendre gl;
  gl.n = n;
  for (int i = 0; i < n; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double x = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
    double d = 0.0;
    for (int it = 0; it < 60; ++it) {
      const double p = legendre_eval(n, x, &d);
      const double dx = p / d;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre_eval(n, x, &d);
    gl.x[i] = x;
    gl.w[i] = 2.0 / ((1.0 - x * x) * d * d);
  }
  return gl;
}

std::mutex g_cache_mutex;

// Integrates g over the axis-aligned box [lo, hi]^d-slice given per-axis
// intervals, by tensor Gauss-Legendre of order kPanelOrder.
template <typename F>
auto box_integral(int d, const double lo[3], const double hi[3], const F& g)
    -> decltype(g(std::declval<const double*>())) {
  const GaussLegendre& gl = gauss_legendre(kPanelOrder);
  using R = decltype(g(std::declval<const double*>()));
  R total{};
  double mid[3], half[3];
  for (int a = 0; a < d; ++a) {
    mid[a] = 0.5 * (lo[a] + hi[a]);
    half[a] = 0.5 * (hi[a] - lo[a]);
  }
  const int n = gl.n;
  double pt[3] = {0.0, 0.0, 0.0};
  if (d == 1) {
    for (int i = 0; i < n; ++i) {
      pt[0] = mid[0] + half[0] * gl.x[i];
      total += gl.w[i] * g(pt);
    }
    return total * half[0];
  }
  if (d == 2) {
    for (int i = 0; i < n; ++i) {
      pt[0] = mid[0] + half[0] * gl.x[i];
      R row{};
      for (int j = 0; j < n; ++j) {
        pt[1] = mid[1] + half[1] * gl.x[j];
        row += gl.w[j] * g(pt);
      }
      total += gl.w[i] * row;
    }
    return total * (half[0] * half[1]);
  }
  for (int i = 0; i < n; ++i) {
    pt[0] = mid[0] + half[0] * gl.x[i];
    R plane{};
    for (int j = 0; j < n; ++j) {
      pt[1] = mid[1] + half[1] * gl.x[j];
      R row{};
      for (int k = 0; k < n; ++k) {
        pt[2] = mid[2] + half[2] * gl.x[k];
        row += gl.w[k] * g(pt);
      }
      plane += gl.w[j] * row;
    }
    total += gl.w[i] * plane;
  }
  return total * (half[0] * half[1] * half[2]);
}

// Integrates g over the dyadic shell [0,1]^d \ [0,1/2]^d by splitting into
// the 2^d - 1 sub-boxes where each axis is either [0,1/2] or [1/2,1], at
// least one axis taking the outer interval.
template <typename F>
auto corner_shell_integral(int d, const F& g)
    -> decltype(g(std::declval<const double*>())) {
  using R = decltype(g(std::declval<const double*>()));
  R total{};
  for (int mask = 1; mask < (1 << d); ++mask) {
    double lo[3] = {0.0, 0.0, 0.0}, hi[3] = {0.5, 0.5, 0.5};
    for (int a = 0; a < d; ++a)
      if (mask & (1 << a)) {
        lo[a] = 0.5;
        hi[a] = 1.0;
      }
    total += box_integral(d, lo, hi, g);
  }
  return total;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
  static std::map<int, GaussLegendre> cache;
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

double unit_cube_corner_integral(int d, double alpha) {
  if (alpha <= 0.0) throw std::invalid_argument("corner integral requires alpha > 0");
  static std::map<std::pair<int, double>, double> cache;
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = cache.find({d, alpha});
    if (it != cache.end()) return it->second;
  }
  const double ex = alpha - d;
  auto g = [ex, d](const double* p) {
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) r2 += p[a] * p[a];
    return std::pow(r2, 0.5 * ex);
  };
  // |u|^(alpha-d) is homogeneous of degree alpha-d; shell j scales the
  // shell-0 integral by 2^(-j alpha), summing to 1/(1 - 2^-alpha).
  const double shell0 = corner_shell_integral(d, g);
  const double value = shell0 / (1.0 - std::pow(2.0, -alpha));
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  cache[{d, alpha}] = value;
  return value;
}

double centered_cell_corner_integral(int d, double alpha) {
  return std::pow(2.0, d - alpha) * unit_cube_corner_integral(d, alpha);
}

double unit_cube_pair_integral(int d, double alpha) {
  if (alpha <= 0.0) throw std::invalid_argument("pair integral requires alpha > 0");
  static std::map<std::pair<int, double>, double> cache;
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = cache.find({d, alpha});
    if (it != cache.end()) return it->second;
  }
  // Difference-variable reduction: the double integral equals
  //   int_{[-1,1]^d} |t|^(alpha-d) prod_a (1 - |t_a|) dt
  //   = 2^d sum_{m=0..d} (-1)^m C(d,m) U_m,
  // U_m = int_{[0,1]^d} |t|^(alpha-d) t_1...t_m dt  (homogeneous of degree
  // alpha-d+m, so U_m = shell0_m / (1 - 2^-(alpha+m))).
  const double ex = alpha - d;
  double value = 0.0;
  for (int m = 0; m <= d; ++m) {
    auto g = [ex, d, m](const double* p) {
      double r2 = 0.0;
      for (int a = 0; a < d; ++a) r2 += p[a] * p[a];
      double mono = 1.0;
      for (int a = 0; a < m; ++a) mono *= p[a];
      return std::pow(r2, 0.5 * ex) * mono;
    };
    const double shell0 = corner_shell_integral(d, g);
    const double um = shell0 / (1.0 - std::pow(2.0, -(alpha + m)));
    value += (m % 2 == 0 ? 1.0 : -1.0) * binomial(d, m) * um;
  }
  value *= std::pow(2.0, d);
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  cache[{d, alpha}] = value;
  return value;
}

std::complex<double> centered_cell_radial_average_c(
    int d, const std::function<std::complex<double>(double)>& f) {
  // Positive-orthant dyadic shells of [0,1/2]^d, reflected by symmetry of
  // |u|: value = 2^d * sum_j int over 2^-j([0,1/2]^d \ [0,1/4]^d) f(|u|).
  auto g = [&f, d](const double* p) {
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) r2 += p[a] * p[a];
    return f(std::sqrt(r2));
  };
  std::complex<double> total{0.0, 0.0};
  double scale = 1.0;  // shell j spans per-axis [0, 0.5 * scale]
  for (int j = 0; j < 64; ++j) {
    std::complex<double> shell{0.0, 0.0};
    for (int mask = 1; mask < (1 << d); ++mask) {
      double lo[3] = {0.0, 0.0, 0.0}, hi[3];
      for (int a = 0; a < d; ++a) hi[a] = 0.25 * scale;
      for (int a = 0; a < d; ++a)
        if (mask & (1 << a)) {
          lo[a] = 0.25 * scale;
          hi[a] = 0.5 * scale;
        }
      shell += box_integral(d, lo, hi, g);
    }
    total += shell;
    if (j > 2 && std::abs(shell) < 1e-17 * (1.0 + std::abs(total))) break;
    scale *= 0.5;
  }
  return total * std::pow(2.0, d);  // orthant reflection; cell volume is 1
}

double centered_cell_radial_average(int d, const std::function<double(double)>& f) {
  return centered_cell_radial_average_c(d, [&f](double r) {
           return std::complex<double>(f(r), 0.0);
         })
      .real();
}

double mean_cell_radius_3d() {
  static double cached = centered_cell_radial_average(3, [](double r) { return r; });
  return cached;
}

}  // namespace specenc
