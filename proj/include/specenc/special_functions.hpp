#pragma once
// Complex special functions: the gamma function, the modified Bessel
// function K_nu (Macdonald function) for complex order and argument with
// Re w > 0, the free resolvent kernels of the Laplacian in d = 1, 2, 3,
// and the kernel of the fractional power (-Delta - lambda)^(-zeta)
// together with its decay/blow-up rate diagnostics.

#include <complex>
#include <string>
#include <vector>

#include "specenc/types.hpp"

namespace specenc {

// Gamma(z) for complex z (Lanczos approximation, reflection for Re z < 1/2).
cplx gamma_complex(cplx z);

// K_nu(w) for complex order nu and complex argument with Re w > 0
// (arguments on the imaginary axis are accepted but lose accuracy as
// Re w -> 0 with large |w|).  Summary of the evaluation regimes:
//   * small |w|: reflection through the ascending I_{+,-nu} series, with the
//     log/psi limit form when nu is (near-)integer;
//   * moderate |w| with Re w > 1: continued-fraction evaluation at reduced
//     order plus forward recurrence;
//   * large |w|: divergent asymptotic series truncated at its smallest term.
cplx macdonald_k(cplx nu, cplx w);

// Individual regimes, exposed for cross-checking in diagnostics.
cplx macdonald_k_series(cplx nu, cplx w);
cplx macdonald_k_cf(cplx nu, cplx w, bool* ok = nullptr);
cplx macdonald_k_asymptotic(cplx nu, cplx w);

// Integral kernel of (-Delta - lambda)^{-1} on R^d at distance r > 0:
//   d=1: e^{-s r} / (2 s),   d=2: K_0(s r) / (2 pi),   d=3: e^{-s r)/(4 pi r),
// with s = sqrt(-lambda), Re s > 0.
cplx free_green(int d, cplx lambda, double r);

// Kernel of the fractional resolvent power (-Delta - lambda)^{-zeta} at
// distance r, up to the lambda-dependent normalizer used throughout the
// operator bounds:
//   e^{zeta^2} 2^{-zeta+1} (2 pi)^{-d/2} / (Gamma(zeta) Gamma(d/2 - zeta))
//     * (lambda / r^2)^{(d/2 - zeta)/2} * K_{d/2 - zeta}(w r),
// where w = sqrt(lambda) off the real axis and w = sqrt(-lambda) for
// lambda < 0 (on the cut the decaying branch is used).  zeta is restricted
// to the strip [(d-1)/2, (d+1)/2]; parameter combinations that hit a pole
// of Gamma(d/2 - zeta) are rejected with std::domain_error.
cplx fractional_resolvent_kernel(int d, double zeta, cplx lambda, double r);

// Log-log slope fit of |values| against r over a geometric ladder.
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;  // max |log|v| - fit| over the ladder
};
SlopeFit fit_loglog(const std::vector<double>& r, const std::vector<double>& absv);

// Empirical decay diagnostics for the fractional resolvent kernel:
// slopes of log|K| vs log r on a small-r ladder and, with the exponential
// factor e^{rho r} (rho = Re of the Bessel argument scale) removed, on a
// large-r ladder, plus the predicted exponents
//   small r:  -d/2 + zeta - |d/2 - zeta|,
//   large r:  zeta - (d+1)/2.
struct KernelBoundReport {
  double small_r_slope = 0.0, small_r_expected = 0.0;
  double large_r_slope = 0.0, large_r_expected = 0.0;
  double small_r_residual = 0.0, large_r_residual = 0.0;
  bool small_r_ok = false, large_r_ok = false;  // |slope - expected| < 0.05
  bool degenerate = false;  // order hit a gamma pole; free kernel used instead
};
KernelBoundReport kernel_bound_report(int d, double zeta, cplx lambda);

}  // namespace specenc
