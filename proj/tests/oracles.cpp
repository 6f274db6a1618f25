#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

namespace oracle {

using specenc::cplx;

double mc_pair_integral(int d, double lo, double hi,
                        const std::function<double(const std::array<double, 3>&)>& w,
                        double alpha, std::uint64_t seed, std::size_t samples,
                        double* stderr_out) {
  if (d < 1 || d > 3) throw std::invalid_argument("mc_pair_integral: d must be 1..3");
  if (!(hi > lo)) throw std::invalid_argument("mc_pair_integral: empty cube");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  const double power = alpha - d;
  double sum = 0.0, sum_sq = 0.0;
  std::array<double, 3> x{0, 0, 0}, y{0, 0, 0};
  for (std::size_t i = 0; i < samples; ++i) {
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) {
      x[a] = u(rng);
      y[a] = u(rng);
      const double dz = x[a] - y[a];
      r2 += dz * dz;
    }
    const double f = r2 > 0.0 ? w(x) * w(y) * std::pow(r2, 0.5 * power) : 0.0;
    sum += f;
    sum_sq += f * f;
  }
  const double vol = std::pow(hi - lo, d);
  const double mean = sum / static_cast<double>(samples);
  if (stderr_out) {
    const double var =
        std::max(0.0, sum_sq / static_cast<double>(samples) - mean * mean);
    *stderr_out = vol * vol * std::sqrt(var / static_cast<double>(samples));
  }
  return vol * vol * mean;
}

cplx macdonald_quadrature(cplx nu, cplx w) {
  if (!(w.real() > 0.0))
    throw std::invalid_argument("macdonald_quadrature: requires Re w > 0");
  // Truncation point: the integrand magnitude is about
  // exp(-Re(w) cosh t + |Re nu| t); march until it is far below 1e-18.
  const double re_w = w.real();
  const double re_nu = std::abs(nu.real());
  double t_max = 2.0;
  while (t_max < 60.0 && -re_w * std::cosh(t_max) + re_nu * t_max > -60.0)
    t_max += 0.5;
  const int n = 1 << 17;  // composite Simpson panels (even count)
  const double h = t_max / n;
  auto f = [&](double t) -> cplx {
    return std::exp(-w * std::cosh(t)) * std::cosh(nu * t);
  };
  cplx acc = f(0.0) + f(t_max);
  for (int i = 1; i < n; ++i) acc += f(i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * (h / 3.0);
}

namespace {

// One fourth-order Runge-Kutta step of u'' = (v(x) - lambda) u for the state
// (u, u'), followed by renormalisation so the state never overflows in the
// classically forbidden region. Only the direction of (u, u') matters for the
// Wronskian match.
void rk4_step(const std::function<double(double)>& v, double lambda, double x,
              double h, double& u, double& up) {
  auto rhs = [&](double xx, double uu, double uup, double& du, double& dup) {
    du = uup;
    dup = (v(xx) - lambda) * uu;
  };
  double k1u, k1p, k2u, k2p, k3u, k3p, k4u, k4p;
  rhs(x, u, up, k1u, k1p);
  rhs(x + 0.5 * h, u + 0.5 * h * k1u, up + 0.5 * h * k1p, k2u, k2p);
  rhs(x + 0.5 * h, u + 0.5 * h * k2u, up + 0.5 * h * k2p, k3u, k3p);
  rhs(x + h, u + h * k3u, up + h * k3p, k4u, k4p);
  u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
  up += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
  const double scale = std::max(std::abs(u), std::abs(up));
  if (scale > 1e6) {
    u /= scale;
    up /= scale;
  }
}

}  // namespace

std::vector<double> shooting_eigenvalues_1d(const std::function<double(double)>& v,
                                            double lo, double hi, double lambda_min,
                                            int n_steps, int scan_points) {
  if (!(hi > lo)) throw std::invalid_argument("shooting: empty interval");
  if (!(lambda_min < 0.0)) throw std::invalid_argument("shooting: lambda_min must be < 0");
  if (n_steps % 2) ++n_steps;  // both sides meet exactly at the midpoint
  const double h = (hi - lo) / n_steps;
  const double xm = lo + 0.5 * (hi - lo);

  // Wronskian of the left and right shooting solutions at the midpoint;
  // lambda is an eigenvalue exactly when the two directions are parallel.
  auto match = [&](double lambda) -> double {
    double ul = 0.0, upl = 1.0;
    for (int i = 0; i < n_steps / 2; ++i) rk4_step(v, lambda, lo + i * h, h, ul, upl);
    double ur = 0.0, upr = -1.0;
    for (int i = 0; i < n_steps / 2; ++i) rk4_step(v, lambda, hi - i * h, -h, ur, upr);
    const double norm = std::max({std::abs(ul) * std::abs(upr),
                                  std::abs(upl) * std::abs(ur), 1e-300});
    return (ul * upr - upl * ur) / norm;
  };

  std::vector<double> eigs;
  const double lambda_hi = -1e-9;
  double prev_lambda = lambda_min;
  double prev_f = match(prev_lambda);
  for (int i = 1; i <= scan_points; ++i) {
    const double lam =
        lambda_min + (lambda_hi - lambda_min) * i / static_cast<double>(scan_points);
    const double f = match(lam);
    if (prev_f == 0.0) {
      eigs.push_back(prev_lambda);
    } else if (f * prev_f < 0.0) {
      double a = prev_lambda, b = lam, fa = prev_f;
      for (int it = 0; it < 80; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = match(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if (fa * fm < 0.0) {
          b = m;
        } else {
          a = m;
          fa = fm;
        }
      }
      eigs.push_back(0.5 * (a + b));
    }
    prev_lambda = lam;
    prev_f = f;
  }
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

}  // namespace oracle
