// Complex gamma, the Macdonald function across its evaluation regimes,
// free resolvent kernels, and the fractional-kernel decay diagnostics.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "specenc/prng.hpp"
#include "specenc/special_functions.hpp"

using namespace specenc;

namespace {
double rel_err(cplx got, cplx want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}
}  // namespace

TEST_CASE("gamma: factorials, half-integers, reflection and duplication") {
  double fact = 1.0;
  for (int n = 1; n <= 12; ++n) {
    CHECK(rel_err(gamma_complex(cplx(n, 0)), cplx(fact, 0)) < 1e-13);
    fact *= n;
  }
  CHECK(rel_err(gamma_complex(cplx(0.5, 0)), cplx(std::sqrt(kPi), 0)) < 1e-13);
  // |Gamma(1+i)|^2 = pi / sinh(pi).
  CHECK(std::abs(std::norm(gamma_complex(cplx(1, 1))) - kPi / std::sinh(kPi)) < 1e-13);

  std::mt19937_64 rng = make_rng(kDefaultSeed + 51);
  std::uniform_real_distribution<double> re(-3.5, 3.5), im(-4.0, 4.0);
  int tested = 0;
  for (int i = 0; tested < 200 && i < 1000; ++i) {
    const cplx z(re(rng), im(rng));
    // Stay away from the poles at 0, -1, -2, ... on both sides of the
    // reflection, where cancellation swamps the identity checks.
    const auto near_pole = [](cplx v) {
      return std::abs(v.imag()) < 0.05 &&
             std::abs(v.real() - std::round(v.real())) < 0.05 && v.real() < 0.5;
    };
    if (near_pole(z) || near_pole(1.0 - z) || near_pole(2.0 * z)) continue;
    ++tested;
    // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
    const cplx refl = gamma_complex(z) * gamma_complex(1.0 - z);
    CHECK(rel_err(refl, kPi / std::sin(kPi * z)) < 1e-10);
    // Duplication: Gamma(z) Gamma(z+1/2) = 2^(1-2z) sqrt(pi) Gamma(2z).
    const cplx dup = gamma_complex(z) * gamma_complex(z + 0.5);
    const cplx want = std::pow(cplx(2, 0), 1.0 - 2.0 * z) * std::sqrt(kPi) *
                      gamma_complex(2.0 * z);
    CHECK(rel_err(dup, want) < 1e-10);
    // Conjugation symmetry.
    CHECK(rel_err(gamma_complex(std::conj(z)), std::conj(gamma_complex(z))) < 1e-12);
  }
  CHECK(tested == 200);
}

TEST_CASE("Macdonald function agrees with the integral-representation oracle") {
  // Orders: integer (log/psi limit path), generic real, complex; arguments
  // span the series, continued-fraction and asymptotic regimes with phases
  // up to +-1.2 rad.  The oracle quadrature is good to ~1e-11 for
  // Re w >= 0.3, |Re nu| <= 4.
  const std::vector<cplx> orders = {cplx(0, 0), cplx(1, 0), cplx(0.5, 0),
                                    cplx(2.3, 0), cplx(3.2, 0)};
  const std::vector<double> mags = {0.4, 1.0, 2.2, 5.0, 12.0, 40.0};
  const std::vector<double> phases = {0.0, 0.5, -1.2};
  for (const cplx& nu : orders)
    for (double m : mags)
      for (double ph : phases) {
        const cplx w = std::polar(m, ph);
        if (w.real() < 0.3) continue;
        const cplx got = macdonald_k(nu, w);
        const cplx want = oracle::macdonald_quadrature(nu, w);
        CHECK_MESSAGE(rel_err(got, want) < 5e-9,
                      "nu=", nu, " w=", w, " got=", got, " want=", want);
      }
}

TEST_CASE("Macdonald function: closed forms, symmetries, recurrence") {
  // Half-integer closed forms.
  for (const cplx w : {cplx(0.7, 0), cplx(3, 2), cplx(0.5, -4), cplx(20, 5)}) {
    const cplx pref = std::sqrt(kPi / (2.0 * w)) * std::exp(-w);
    CHECK(rel_err(macdonald_k(cplx(0.5, 0), w), pref) < 1e-11);
    CHECK(rel_err(macdonald_k(cplx(1.5, 0), w), pref * (1.0 + 1.0 / w)) < 1e-11);
  }
  // Frozen classical values.
  CHECK(rel_err(macdonald_k(cplx(0, 0), cplx(1, 0)), cplx(0.42102443824070834, 0)) < 1e-12);
  CHECK(rel_err(macdonald_k(cplx(1, 0), cplx(1, 0)), cplx(0.60190723019723458, 0)) < 1e-12);
  CHECK(rel_err(macdonald_k(cplx(0, 0), cplx(2, 0)), cplx(0.11389387274953344, 0)) < 1e-12);

  std::mt19937_64 rng = make_rng(kDefaultSeed + 52);
  std::uniform_real_distribution<double> unu(-2.4, 2.4), uph(-1.3, 1.3), um(0.3, 30.0);
  for (int i = 0; i < 120; ++i) {
    const cplx nu(unu(rng), 0.0);
    const cplx w = std::polar(um(rng), uph(rng));
    const cplx k0 = macdonald_k(nu, w);
    // Order symmetry K_{-nu} = K_nu.
    CHECK(rel_err(macdonald_k(-nu, w), k0) < 1e-9);
    // Conjugation symmetry (real order).
    CHECK(rel_err(macdonald_k(nu, std::conj(w)), std::conj(k0)) < 1e-9);
    // Three-term recurrence K_{nu+1} = K_{nu-1} + (2 nu / w) K_nu ties the
    // regimes together across order shifts.
    const cplx km = macdonald_k(nu - 1.0, w);
    const cplx kp = macdonald_k(nu + 1.0, w);
    const double scale = std::max({std::abs(kp), std::abs(km), std::abs(2.0 * nu / w * k0)});
    CHECK(std::abs(kp - km - 2.0 * nu / w * k0) < 1e-9 * std::max(scale, 1e-300));
  }

  // Orders outside the supported band and complex orders are rejected.
  CHECK_THROWS_AS((void)macdonald_k(cplx(3.8, 0), cplx(1, 0)), std::domain_error);
  CHECK_THROWS_AS((void)macdonald_k(cplx(1.0, 0.5), cplx(1, 0)), std::domain_error);
  CHECK_THROWS_AS((void)macdonald_k(cplx(0.5, 0), cplx(-1, 0)), std::domain_error);
}

TEST_CASE("free resolvent kernels: closed forms, ODE, jump condition") {
  // d = 1, lambda = -4: G(r) = e^{-2r}/4.
  CHECK(rel_err(free_green(1, cplx(-4, 0), 0.8), cplx(std::exp(-1.6) / 4.0, 0)) < 1e-13);
  // d = 3, lambda = -1: G(r) = e^{-r}/(4 pi r).
  CHECK(rel_err(free_green(3, cplx(-1, 0), 2.0),
                cplx(std::exp(-2.0) / (8.0 * kPi), 0)) < 1e-13);
  // d = 2 reduces to the Macdonald function.
  for (const cplx lam : {cplx(-1, 0), cplx(0.5, 2.0)}) {
    const cplx s = sqrt_branch(lam);
    for (double r : {0.3, 1.7})
      CHECK(rel_err(free_green(2, lam, r), macdonald_k(cplx(0, 0), s * r) / (2 * kPi)) <
            1e-12);
  }

  // Away from r = 0 the kernel solves -G'' = lambda G (d = 1), checked by
  // central differences, and the derivative jump at 0 normalizes the delta:
  // for the even kernel, G'(0+) = -1/2.
  for (const cplx lam : {cplx(-2.5, 0), cplx(1.0, 3.0), cplx(-1.0, 0.4)}) {
    const double h = 1e-4, r0 = 0.9;
    const cplx g_m = free_green(1, lam, r0 - h), g0 = free_green(1, lam, r0),
               g_p = free_green(1, lam, r0 + h);
    const cplx second = (g_p - 2.0 * g0 + g_m) / (h * h);
    CHECK(std::abs(-second - lam * g0) < 1e-5 * std::abs(g0));

    const cplx d_small = (free_green(1, lam, 1e-7) - free_green(1, lam, 1e-9)) /
                         cplx(1e-7 - 1e-9, 0);
    CHECK(std::abs(d_small - cplx(-0.5, 0)) < 1e-5);
  }

  CHECK_THROWS_AS((void)free_green(3, cplx(1.0, 0.0), 1.0), std::domain_error);
  CHECK_THROWS_AS((void)free_green(4, cplx(-1.0, 0.0), 1.0), std::invalid_argument);
}

TEST_CASE("fractional kernel: power one reduces to the free kernel up to its normalizer") {
  // At zeta = 1, d = 3 the half-order Macdonald factor collapses to an
  // exponential, so the kernel has the closed form
  //   e * lambda^{1/4} w^{-1/2} * e^{-w r} / (4 pi^{3/2} r),
  // w = sqrt(-lambda) on the cut, sqrt(lambda) elsewhere.  On the negative
  // real axis that is e^{i pi/4} (e/sqrt(pi)) times the free Green function,
  // a ratio independent of both r and lambda.
  const cplx want_ratio = std::polar(std::exp(1.0) / std::sqrt(kPi), kPi / 4.0);
  for (const cplx lam : {cplx(-1, 0), cplx(-3.7, 0)})
    for (double r : {0.3, 1.0, 2.5}) {
      const cplx ratio = fractional_resolvent_kernel(3, 1.0, lam, r) / free_green(3, lam, r);
      CHECK(std::abs(ratio - want_ratio) < 1e-10);
    }
  for (const cplx lam : {cplx(2.0, 1.5), cplx(0.0, -1.0)})
    for (double r : {0.4, 1.3}) {
      const cplx w = std::sqrt(lam);  // principal; Re > 0 off the cut
      const cplx want = std::exp(1.0) * std::pow(lam, 0.25) / std::sqrt(w) *
                        std::exp(-w * r) / (4.0 * std::pow(kPi, 1.5) * r);
      CHECK(rel_err(fractional_resolvent_kernel(3, 1.0, lam, r), want) < 1e-11);
    }

  // Gamma-pole combinations and out-of-range powers are rejected.
  CHECK_THROWS_AS((void)fractional_resolvent_kernel(3, 1.5, cplx(-1, 0), 1.0),
                  std::domain_error);
  CHECK_THROWS_AS((void)fractional_resolvent_kernel(2, 1.0, cplx(-1, 0), 1.0),
                  std::domain_error);
  CHECK_THROWS_AS((void)fractional_resolvent_kernel(3, -0.2, cplx(-1, 0), 1.0),
                  std::domain_error);
  CHECK_THROWS_AS((void)fractional_resolvent_kernel(3, 2.5, cplx(-1, 0), 1.0),
                  std::domain_error);
}

TEST_CASE("log-log slope fit recovers a synthetic power law") {
  std::vector<double> r, v;
  std::mt19937_64 rng = make_rng(kDefaultSeed + 53);
  std::uniform_real_distribution<double> noise(-1e-6, 1e-6);
  for (int i = 0; i < 40; ++i) {
    const double ri = std::pow(10.0, -3.0 + i * (2.0 / 39.0));
    r.push_back(ri);
    v.push_back(3.7 * std::pow(ri, -1.25) * (1.0 + noise(rng)));
  }
  const SlopeFit fit = fit_loglog(r, v);
  CHECK(fit.slope == doctest::Approx(-1.25).epsilon(1e-5));
  CHECK(fit.intercept == doctest::Approx(std::log(3.7)).epsilon(1e-4));
  CHECK(fit.max_residual < 1e-5);
}

TEST_CASE("kernel decay report matches the predicted exponents") {
  {
    const KernelBoundReport rep = kernel_bound_report(3, 1.0, cplx(-1, 0));
    CHECK(!rep.degenerate);
    CHECK(rep.small_r_expected == doctest::Approx(-1.0));
    CHECK(rep.large_r_expected == doctest::Approx(-1.0));
    CHECK(rep.small_r_ok);
    CHECK(rep.large_r_ok);
  }
  {
    const KernelBoundReport rep = kernel_bound_report(2, 0.75, cplx(0, 1));
    CHECK(!rep.degenerate);
    CHECK(rep.small_r_expected == doctest::Approx(-0.5));
    CHECK(rep.large_r_expected == doctest::Approx(-0.75));
    CHECK(rep.small_r_ok);
    CHECK(rep.large_r_ok);
  }
  {
    // zeta = d/2 hits the gamma pole; the report falls back to the free
    // kernel and flags itself degenerate.
    const KernelBoundReport rep = kernel_bound_report(3, 1.5, cplx(-1, 0));
    CHECK(rep.degenerate);
  }
}
