#include "specenc/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specenc {

namespace {

bool near_integer(double x, double tol = 1e-9) {
  return std::abs(x - std::round(x)) < tol;
}

// Ascending series for I_nu(w) = (w/2)^nu sum_k (w^2/4)^k / (k! Gamma(nu+k+1)).
cplx bessel_i_series(double nu, cplx w) {
  const cplx q = 0.25 * w * w;
  cplx term = std::pow(0.5 * w, nu) / gamma_complex(cplx(nu + 1.0, 0.0));
  cplx sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= q / (static_cast<double>(k) * (nu + k));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Integer-order series with the logarithmic term (harmonic-number psi form):
//   K_n(w) = (1/2)(w/2)^{-n} sum_{k<n} ((n-k-1)!/k!)(-w^2/4)^k
//          + (-1)^{n+1} ln(w/2) I_n(w)
//          + (-1)^n (1/2)(w/2)^n sum_k (psi(k+1)+psi(n+k+1)) (w^2/4)^k/(k!(n+k)!).
cplx macdonald_k_int_series(int n, cplx w) {
  const cplx q = 0.25 * w * w;
  const cplx logw2 = std::log(0.5 * w);
  const double sgn = (n % 2 == 0) ? 1.0 : -1.0;

  cplx finite{0.0, 0.0};
  if (n > 0) {
    double fact_nk1 = 1.0;  // (n-1)!
    for (int i = 2; i <= n - 1; ++i) fact_nk1 *= i;
    cplx pw = std::pow(0.5 * w, -n);
    double kfact = 1.0;
    cplx qk{1.0, 0.0};
    for (int k = 0; k <= n - 1; ++k) {
      finite += (fact_nk1 / kfact) * qk * pw;
      if (k < n - 1) {
        fact_nk1 /= (n - k - 1);
        kfact *= (k + 1);
        qk *= -q;
      }
    }
    finite *= 0.5;
  }

  double psi1 = -kEulerGamma;        // psi(1)
  double psin = -kEulerGamma;        // psi(n+1)
  for (int i = 1; i <= n; ++i) psin += 1.0 / i;

  double kfact = 1.0, nkfact = 1.0;  // k!, (n+k)!
  for (int i = 2; i <= n; ++i) nkfact *= i;
  cplx qk{1.0, 0.0};
  cplx psum{0.0, 0.0};
  for (int k = 0; k < 400; ++k) {
    const cplx term = (psi1 + psin) * qk / (kfact * nkfact);
    psum += term;
    if (k > 2 && std::abs(term) < 1e-18 * (std::abs(psum) + 1e-300)) break;
    qk *= q;
    kfact *= (k + 1);
    nkfact *= (n + k + 1);
    psi1 += 1.0 / (k + 1);
    psin += 1.0 / (n + k + 1);
  }
  const cplx in = bessel_i_series(static_cast<double>(n), w);
  return finite - sgn * logw2 * in + sgn * 0.5 * std::pow(0.5 * w, n) * psum;
}

}  // namespace

// ---------------------------------------------------------------------------
// Gamma (Lanczos, g = 7, 9 coefficients; reflection for Re z < 1/2)
// ---------------------------------------------------------------------------
cplx gamma_complex(cplx z) {
  static const double coef[9] = {
      0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,    12.507343278686905,
      -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.imag() == 0.0 && z.real() <= 0.0 && near_integer(z.real(), 1e-14))
    throw std::domain_error("gamma pole at nonpositive integer");
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) = pi / (sin(pi z) Gamma(1 - z)).
    return kPi / (std::sin(kPi * z) * gamma_complex(1.0 - z));
  }
  z -= 1.0;
  cplx x = coef[0];
  for (int i = 1; i < 9; ++i) x += coef[i] / (z + static_cast<double>(i));
  const cplx t = z + 7.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

// ---------------------------------------------------------------------------
// Macdonald function K_nu, real order, complex argument with Re w > 0
// ---------------------------------------------------------------------------
cplx macdonald_k_series(cplx nu_c, cplx w) {
  const double nu = std::abs(nu_c.real());  // K_{-nu} = K_nu, real order only
  if (near_integer(nu, 1e-6))
    return macdonald_k_int_series(static_cast<int>(std::round(nu)), w);
  // Reflection through the I series: K_nu = pi (I_{-nu} - I_nu) / (2 sin(pi nu)).
  const cplx im = bessel_i_series(-nu, w);
  const cplx ip = bessel_i_series(nu, w);
  return 0.5 * kPi * (im - ip) / std::sin(kPi * nu);
}

cplx macdonald_k_cf(cplx nu_c, cplx w, bool* ok) {
  // Continued-fraction evaluation at reduced order mu in [-1/2, 1/2), then
  // stable upward recurrence K_{m+1} = K_{m-1} + (2m/w) K_m to order nu.
  const double nu = std::abs(nu_c.real());
  const int nsteps = static_cast<int>(std::floor(nu + 0.5));
  const double mu = nu - nsteps;
  const double mu2 = mu * mu;
  if (ok) *ok = false;

  cplx b = 2.0 * (1.0 + w);
  cplx d = 1.0 / b;
  cplx h = d, delh = d;
  cplx q1{0.0, 0.0}, q2{1.0, 0.0};
  const double a1 = 0.25 - mu2;
  cplx q{a1, 0.0}, c{a1, 0.0};
  double a = -a1;
  cplx s = 1.0 + q * delh;
  bool converged = false;
  for (int i = 2; i <= 4000; ++i) {
    a -= 2 * (i - 1);
    c = -a * c / static_cast<double>(i);
    const cplx qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const cplx dels = q * delh;
    s += dels;
    if (std::abs(dels) < 1e-16 * std::abs(s)) {
      converged = true;
      break;
    }
  }
  if (!converged) return {0.0, 0.0};
  h = a1 * h;
  const cplx kmu = std::sqrt(kPi / (2.0 * w)) * std::exp(-w) / s;
  const cplx kmu1 = kmu * (mu + w + 0.5 - h) / w;
  if (ok) *ok = true;
  if (nsteps == 0) return kmu;
  cplx k0 = kmu, k1 = kmu1;
  for (int j = 1; j < nsteps; ++j) {
    const cplx k2 = k0 + (2.0 * (mu + j) / w) * k1;
    k0 = k1;
    k1 = k2;
  }
  return k1;
}

cplx macdonald_k_asymptotic(cplx nu_c, cplx w) {
  // K_nu(w) ~ sqrt(pi/(2w)) e^{-w} sum_k a_k, a_k = a_{k-1}(4nu^2-(2k-1)^2)/(8kw);
  // the divergent tail is truncated at its smallest term.
  const double nu = std::abs(nu_c.real());
  const double fournu2 = 4.0 * nu * nu;
  cplx term{1.0, 0.0}, sum{1.0, 0.0};
  double best = 1e300;
  for (int k = 1; k <= 60; ++k) {
    const double num = fournu2 - (2.0 * k - 1.0) * (2.0 * k - 1.0);
    term *= num / (8.0 * k) / w;
    const double mag = std::abs(term);
    if (mag > best) break;  // divergence onset
    sum += term;
    best = mag;
    if (mag < 1e-18 * std::abs(sum)) break;
  }
  return std::sqrt(kPi / (2.0 * w)) * std::exp(-w) * sum;
}

cplx macdonald_k(cplx nu_c, cplx w) {
  if (nu_c.imag() != 0.0)
    throw std::domain_error("Macdonald function: complex order not supported");
  const double nu = std::abs(nu_c.real());
  if (nu > 3.5) throw std::domain_error("Macdonald function: order out of supported range");
  if (w.real() < 0.0 || (w.real() == 0.0 && w.imag() == 0.0))
    throw std::domain_error("Macdonald function requires Re w >= 0, w != 0");
  const double aw = std::abs(w);
  if (aw >= 16.0) return macdonald_k_asymptotic(nu, w);
  if (aw <= 2.0) return macdonald_k_series(nu, w);
  if (w.real() > 0.25) {
    bool ok = false;
    const cplx v = macdonald_k_cf(nu, w, &ok);
    if (ok) return v;
  }
  return macdonald_k_series(nu, w);
}

// ---------------------------------------------------------------------------
// Free resolvent kernels
// ---------------------------------------------------------------------------
cplx free_green(int d, cplx lambda, double r) {
  if (r <= 0.0) throw std::domain_error("free resolvent kernel requires r > 0");
  const cplx s = sqrt_branch(lambda);
  switch (d) {
    case 1:
      return std::exp(-s * r) / (2.0 * s);
    case 2:
      return macdonald_k(0.0, s * r) / (2.0 * kPi);
    case 3:
      return std::exp(-s * r) / (4.0 * kPi * r);
    default:
      throw std::invalid_argument("dimension must be 1, 2, or 3");
  }
}

// ---------------------------------------------------------------------------
// Fractional resolvent power kernel
// ---------------------------------------------------------------------------
cplx fractional_resolvent_kernel(int d, double zeta, cplx lambda, double r) {
  if (r <= 0.0) throw std::domain_error("kernel requires r > 0");
  if (zeta < 0.5 * (d - 1) - 1e-12 || zeta > 0.5 * (d + 1) + 1e-12)
    throw std::domain_error("zeta outside the admissible strip");
  const double nu = 0.5 * d - zeta;
  if (nu <= 1e-12 && near_integer(nu, 1e-9))
    throw std::domain_error("formula degenerate (gamma pole); use free_green");

  SpectralPoint sp(lambda);
  // Off the real axis the direct square root sqrt(lambda) has Re > 0; on the
  // negative real axis the decaying branch sqrt(-lambda) > 0 is used.
  const cplx w_scale = sp.negative_real ? sp.s : sp.w_dir;

  const cplx pref = std::exp(cplx(zeta * zeta, 0.0)) * std::pow(cplx(2.0, 0.0), 1.0 - zeta) /
                    (std::pow(2.0 * kPi, 0.5 * d) * gamma_complex(cplx(zeta, 0.0)) *
                     gamma_complex(cplx(nu, 0.0)));
  const cplx ratio = std::pow(lambda / (r * r), 0.5 * nu);
  return pref * ratio * macdonald_k(cplx(nu, 0.0), w_scale * r);
}

// ---------------------------------------------------------------------------
// Slope fitting and decay diagnostics
// ---------------------------------------------------------------------------
SlopeFit fit_loglog(const std::vector<double>& r, const std::vector<double>& absv) {
  if (r.size() != absv.size() || r.size() < 2)
    throw std::invalid_argument("slope fit needs matched samples (>= 2)");
  const std::size_t n = r.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    lx[i] = std::log(r[i]);
    ly[i] = std::log(absv[i]);
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  SlopeFit fit;
  const double dn = static_cast<double>(n);
  const double den = dn * sxx - sx * sx;
  fit.slope = (dn * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / dn;
  for (std::size_t i = 0; i < n; ++i)
    fit.max_residual = std::max(fit.max_residual,
                                std::abs(ly[i] - (fit.intercept + fit.slope * lx[i])));
  return fit;
}

KernelBoundReport kernel_bound_report(int d, double zeta, cplx lambda) {
  if (std::abs(std::abs(lambda) - 1.0) > 1e-12)
    throw std::invalid_argument("decay diagnostics are normalized to |lambda| = 1");
  SpectralPoint sp(lambda);
  const cplx w_scale = sp.negative_real ? sp.s : sp.w_dir;
  const double rho = w_scale.real();

  const double nu = 0.5 * d - zeta;
  const bool degenerate = (nu <= 1e-12 && near_integer(nu, 1e-9));
  auto eval = [&](double r) {
    return degenerate ? std::abs(free_green(d, lambda, r))
                      : std::abs(fractional_resolvent_kernel(d, zeta, lambda, r));
  };

  KernelBoundReport rep;
  rep.degenerate = degenerate;
  rep.small_r_expected = -0.5 * d + zeta - std::abs(0.5 * d - zeta);
  rep.large_r_expected = zeta - 0.5 * (d + 1);

  auto ladder = [](double lo, double hi, int n) {
    std::vector<double> r(n);
    const double q = std::pow(hi / lo, 1.0 / (n - 1));
    double v = lo;
    for (int i = 0; i < n; ++i, v *= q) r[i] = v;
    return r;
  };

  {
    const std::vector<double> rs = ladder(1e-5, 1e-3, 40);
    std::vector<double> vals(rs.size());
    for (std::size_t i = 0; i < rs.size(); ++i) vals[i] = eval(rs[i]);
    const SlopeFit f = fit_loglog(rs, vals);
    rep.small_r_slope = f.slope;
    rep.small_r_residual = f.max_residual;
    rep.small_r_ok = std::abs(f.slope - rep.small_r_expected) < 0.05;
  }
  {
    const std::vector<double> rs = ladder(3.0, 50.0, 40);
    std::vector<double> vals(rs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
      vals[i] = eval(rs[i]) * std::exp(rho * rs[i]);  // strip the decay factor
    const SlopeFit f = fit_loglog(rs, vals);
    rep.large_r_slope = f.slope;
    rep.large_r_residual = f.max_residual;
    rep.large_r_ok = std::abs(f.slope - rep.large_r_expected) < 0.05;
  }
  return rep;
}

}  // namespace specenc
