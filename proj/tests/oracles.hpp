// Independent reference implementations used only by the test suite.
//
// Each oracle computes a quantity the library also computes, but by a
// different method (Monte Carlo, direct quadrature of an integral
// representation, ODE shooting), so agreement is evidence of correctness
// rather than repetition of the same code path.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "specenc/types.hpp"

namespace oracle {

// Monte-Carlo estimate of the symmetric pair integral
//   I = integral over Q x Q of w(x) w(y) |x - y|^(alpha - d)
// where Q = [lo, hi]^d. The integrand has an integrable singularity on the
// diagonal for alpha > d/2, so plain sampling has finite variance in every
// case the library exercises. If stderr_out is non-null it receives the
// standard error of the estimate.
double mc_pair_integral(int d, double lo, double hi,
                        const std::function<double(const std::array<double, 3>&)>& w,
                        double alpha, std::uint64_t seed, std::size_t samples,
                        double* stderr_out = nullptr);

// Modified Bessel function of the second kind via the integral representation
//   K_nu(w) = integral_0^inf exp(-w cosh t) cosh(nu t) dt,
// evaluated by composite Simpson quadrature. Accurate to ~1e-11 relative for
// Re w >= 0.3 and |Re nu| <= 4; independent of the series / continued-fraction
// / asymptotic evaluation used by the library.
specenc::cplx macdonald_quadrature(specenc::cplx nu, specenc::cplx w);

// Negative Dirichlet eigenvalues of -u'' + v(x) u = lambda u on [lo, hi],
// located by two-sided fourth-order Runge-Kutta shooting with per-step
// renormalisation and a Wronskian match at the midpoint, then bisection on
// the sign changes of the match over a scan grid. With walls far outside the
// support of v these converge exponentially to the whole-line eigenvalues.
// Discontinuities of v should sit on step boundaries (choose n_steps so that
// they do) to preserve the integrator's order. Returns eigenvalues sorted
// ascending (ground state first).
std::vector<double> shooting_eigenvalues_1d(const std::function<double(double)>& v,
                                            double lo, double hi, double lambda_min,
                                            int n_steps = 24000, int scan_points = 400);

}  // namespace oracle
