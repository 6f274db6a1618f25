#include "specenc/birman_schwinger.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>

#include "specenc/cell_integrals.hpp"
#include "specenc/parallel.hpp"
#include "specenc/special_functions.hpp"

namespace specenc {

namespace {

double cubic_cell_side(const Grid& grid) {
  double hmin = grid.h[0], hmax = grid.h[0];
  for (int a = 1; a < grid.d; ++a) {
    hmin = std::min(hmin, grid.h[a]);
    hmax = std::max(hmax, grid.h[a]);
  }
  if (hmax > hmin * (1.0 + 1e-9))
    throw std::invalid_argument("resolvent assembly requires cubic cells");
  return grid.h[0];
}

// Exact integral of the free resolvent kernel over one grid cell centered at
// the evaluation point (the weakly singular diagonal of the quadrature).
cplx diagonal_cell_integral(int d, const SpectralPoint& sp, double h) {
  const cplx s = sp.s;
  switch (d) {
    case 1:
      // int_{-h/2}^{h/2} e^{-s|x|}/(2s) dx = (1 - e^{-s h/2}) / s^2.
      return (1.0 - std::exp(-s * (0.5 * h))) / (s * s);
    case 2:
      // Cell average of K_0(s|y|)/(2 pi) integrated by radial shells.
      return (h * h) *
             centered_cell_radial_average_c(2, [&](double r) {
               if (r == 0.0) return cplx{0.0, 0.0};
               return macdonald_k(0.0, s * (r * h)) / (2.0 * kPi);
             });
    case 3: {
      // 1/(4 pi |y|) integrates exactly over the cell; the decay factor is
      // evaluated at the cell's mean radius.
      const double bare = h * h * centered_cell_corner_integral(3, 2.0) / (4.0 * kPi);
      return bare * std::exp(-s * (mean_cell_radius_3d() * h));
    }
    default:
      throw std::invalid_argument("dimension must be 1, 2, or 3");
  }
}

double dist(const Grid& g, std::size_t i, std::size_t j) {
  const double dx = g.xs[i] - g.xs[j];
  const double dy = g.ys[i] - g.ys[j];
  const double dz = g.zs[i] - g.zs[j];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

std::vector<cplx> random_unit_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& z : v) z = cplx(gauss(rng), gauss(rng));
  const double norm = vec_norm2(v);
  for (auto& z : v) z /= norm;
  return v;
}

void normalize(std::vector<cplx>& v) {
  const double n = vec_norm2(v);
  if (n > 0.0)
    for (auto& z : v) z /= n;
}

}  // namespace

CMatrix assemble_sandwiched_resolvent(const Grid& grid, const std::vector<cplx>& v,
                                      cplx lambda, int threads) {
  if (v.size() != grid.size()) throw std::invalid_argument("sample count mismatch");
  const SpectralPoint sp(lambda);
  const int d = grid.d;
  const double h = cubic_cell_side(grid);
  const double vol = grid.cell_volume;
  const std::size_t n = grid.size();

  std::vector<cplx> left(n);    // (V/|V|) |V|^{1/2}
  std::vector<double> right(n); // |V|^{1/2}
  for (std::size_t i = 0; i < n; ++i) {
    const double av = std::abs(v[i]);
    right[i] = std::sqrt(av);
    left[i] = av == 0.0 ? cplx{0.0, 0.0} : v[i] / av * right[i];
  }

  const cplx diag = diagonal_cell_integral(d, sp, h);
  CMatrix m(n, n);
  // Row blocks over the upper triangle; G depends only on |x_i - x_j|, so
  // each pair is evaluated once and written to both (i,j) and (j,i).
  parallel_for_blocks(n, resolve_threads(threads), [&](int, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      m(i, i) = left[i] * right[i] * diag;
      if (left[i] == cplx{0.0, 0.0} && right[i] == 0.0) {
        for (std::size_t j = i + 1; j < n; ++j) {
          m(i, j) = cplx{0.0, 0.0};
        }
        continue;
      }
      for (std::size_t j = i + 1; j < n; ++j) {
        if (right[j] == 0.0 && left[j] == cplx{0.0, 0.0}) {
          m(i, j) = cplx{0.0, 0.0};
          continue;
        }
        const cplx g = free_green(d, lambda, dist(grid, i, j)) * vol;
        m(i, j) = left[i] * g * right[j];
        m(j, i) = left[j] * g * right[i];
      }
    }
  });
  return m;
}

double schur_norm_bound(const CMatrix& m) {
  double row_max = 0.0, col_max = 0.0;
  std::vector<double> col(m.cols, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m.cols; ++j) {
      const double a = std::abs(m(i, j));
      row += a;
      col[j] += a;
    }
    row_max = std::max(row_max, row);
  }
  for (double c : col) col_max = std::max(col_max, c);
  return std::sqrt(row_max * col_max);
}

SpectralStats spectral_stats(const CMatrix& m, const StatsOptions& opt) {
  if (m.rows != m.cols) throw std::invalid_argument("spectral stats require a square matrix");
  const std::size_t n = m.rows;
  SpectralStats st;
  if (n == 0) return st;

  const int threads = resolve_threads(opt.threads);

  // Largest singular value: power iteration on M^H M from several starts.
  std::vector<std::vector<cplx>> starts;
  if (opt.warm_start && opt.warm_start->size() == n) starts.push_back(*opt.warm_start);
  for (int r = 0; static_cast<int>(starts.size()) < std::max(1, opt.restarts); ++r)
    starts.push_back(random_unit_vector(n, opt.seed + 0x9E3779B97F4A7C15ULL * (r + 1)));

  std::vector<cplx> y, z;
  for (std::size_t r = 0; r < starts.size(); ++r) {
    std::vector<cplx> x = starts[r];
    normalize(x);
    double sigma = 0.0, prev = -1.0;
    int it = 0;
    bool conv = false;
    for (it = 1; it <= opt.max_iter; ++it) {
      matvec(m, x, y, threads);
      sigma = vec_norm2(y);
      if (sigma == 0.0) {
        conv = true;  // zero matrix (or x in the kernel of a zero row space)
        break;
      }
      matvec_adjoint(m, y, z, threads);
      x = z;
      normalize(x);
      if (prev >= 0.0 && std::abs(sigma - prev) <= opt.tol * std::max(sigma, 1e-300)) {
        conv = true;
        break;
      }
      prev = sigma;
    }
    if (r == 0 || sigma > st.op_norm) {
      st.op_norm = sigma;
      st.iters = it;
      st.converged = conv;
      st.top_vector = x;
    }
  }

  if (opt.want_spec_radius) {
    // Plain power iteration on M: a lower-bound estimate for non-normal M,
    // reported with its own convergence flag.
    std::vector<cplx> x = random_unit_vector(n, opt.seed + 0xABCDEF12345ULL);
    double rho = 0.0, prev = -1.0;
    bool conv = false;
    for (int it = 1; it <= opt.max_iter; ++it) {
      matvec(m, x, y, threads);
      const double ny = vec_norm2(y);
      if (ny == 0.0) {
        rho = 0.0;
        conv = true;
        break;
      }
      rho = std::abs(vec_dot(x, y));  // |x^H M x| with ||x|| = 1
      x = y;
      normalize(x);
      if (prev >= 0.0 && std::abs(rho - prev) <= opt.tol * std::max(rho, 1e-300)) {
        conv = true;
        break;
      }
      prev = rho;
    }
    st.spec_radius = rho;
    st.spec_radius_converged = conv;
  }

  if (opt.want_sigma_min) {
    // Smallest singular value of M + I by inverse power iteration on
    // (M+I)^H (M+I), using one LU factorization of M + I.
    CMatrix b = m;
    for (std::size_t i = 0; i < n; ++i) b(i, i) += 1.0;
    const LUFactors lu = lu_factor(std::move(b));
    std::vector<cplx> x = random_unit_vector(n, opt.seed + 0x5DEECE66DULL);
    normalize(x);
    double mu = 0.0, prev = -1.0;
    bool conv = false;
    for (int it = 1; it <= opt.max_iter; ++it) {
      std::vector<cplx> t = x;
      lu_solve_adjoint(lu, t);  // t = (B^H)^{-1} x
      lu_solve(lu, t);          // t = B^{-1} (B^H)^{-1} x = (B^H B)^{-1} x
      mu = vec_norm2(t);        // Rayleigh growth of the inverse
      if (mu == 0.0) break;
      x = t;
      normalize(x);
      if (prev >= 0.0 && std::abs(mu - prev) <= opt.tol * std::max(mu, 1e-300)) {
        conv = true;
        break;
      }
      prev = mu;
    }
    st.sigma_min_plus_i = mu > 0.0 ? 1.0 / std::sqrt(mu) : 0.0;
    st.sigma_min_converged = conv;
  }
  return st;
}

std::vector<cplx> lambda_rectangle(double re_lo, double re_hi, int n_re,
                                   double im_lo, double im_hi, int n_im) {
  if (n_re < 1 || n_im < 1) throw std::invalid_argument("resolution must be >= 1");
  std::vector<cplx> pts;
  pts.reserve(static_cast<std::size_t>(n_re) * n_im);
  for (int r = 0; r < n_im; ++r) {
    const double im =
        n_im == 1 ? im_lo : im_hi - (im_hi - im_lo) * r / (n_im - 1);  // descending
    for (int c = 0; c < n_re; ++c) {
      const double re = n_re == 1 ? re_lo : re_lo + (re_hi - re_lo) * c / (n_re - 1);
      pts.emplace_back(re, im);
    }
  }
  return pts;
}

std::vector<ScanPoint> lambda_scan(const Grid& grid, const std::vector<cplx>& v,
                                   const ScanRequest& req) {
  std::vector<ScanPoint> out(req.lambdas.size());
  std::vector<cplx> warm;
  for (std::size_t p = 0; p < req.lambdas.size(); ++p) {
    ScanPoint& sp = out[p];
    sp.lambda = req.lambdas[p];
    if (sp.lambda.imag() == 0.0 && sp.lambda.real() >= 0.0) {
      sp.valid = false;
      sp.op_norm = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    const CMatrix m = assemble_sandwiched_resolvent(grid, v, sp.lambda, req.threads);
    StatsOptions opt;
    opt.tol = req.tol;
    opt.max_iter = req.max_iter;
    opt.restarts = req.restarts;
    opt.seed = req.seed;
    opt.threads = req.threads;
    if (req.warm_start && !warm.empty()) opt.warm_start = &warm;
    const SpectralStats st = spectral_stats(m, opt);
    sp.op_norm = st.op_norm;
    sp.iters = st.iters;
    sp.excluded = st.op_norm < 1.0;
    if (req.warm_start) warm = st.top_vector;
  }
  return out;
}

EigenSearchResult eigenvalue_search(const Grid& grid, const std::vector<cplx>& v,
                                    cplx lambda0, double found_tol, int max_eval,
                                    int threads) {
  if (lambda0.imag() == 0.0 && lambda0.real() >= 0.0)
    throw std::domain_error("search start on the excluded half-axis");
  EigenSearchResult res;
  int evals = 0;
  auto objective = [&](double re, double im) {
    if (im == 0.0 && re >= 0.0) return 1e30;  // excluded half-axis
    ++evals;
    const CMatrix m = assemble_sandwiched_resolvent(grid, v, cplx(re, im), threads);
    StatsOptions opt;
    opt.want_sigma_min = true;
    opt.restarts = 1;
    opt.threads = threads;
    return spectral_stats(m, opt).sigma_min_plus_i;
  };

  // Nelder-Mead on (Re lambda, Im lambda).
  const double scale = std::max(0.25 * std::abs(lambda0), 0.05);
  struct Vertex {
    double x, y, f;
  };
  std::array<Vertex, 3> s;
  s[0] = {lambda0.real(), lambda0.imag(), 0.0};
  s[1] = {lambda0.real() - scale, lambda0.imag(), 0.0};
  s[2] = {lambda0.real(), lambda0.imag() + scale, 0.0};
  for (auto& vert : s) vert.f = objective(vert.x, vert.y);

  while (evals < max_eval) {
    std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    if (s[0].f < found_tol * 0.2) break;  // well below the acceptance bar
    const double cx = 0.5 * (s[0].x + s[1].x), cy = 0.5 * (s[0].y + s[1].y);
    Vertex refl{cx + (cx - s[2].x), cy + (cy - s[2].y), 0.0};
    refl.f = objective(refl.x, refl.y);
    if (refl.f < s[0].f) {
      Vertex exp_{cx + 2.0 * (cx - s[2].x), cy + 2.0 * (cy - s[2].y), 0.0};
      exp_.f = objective(exp_.x, exp_.y);
      s[2] = exp_.f < refl.f ? exp_ : refl;
    } else if (refl.f < s[1].f) {
      s[2] = refl;
    } else {
      Vertex con{cx + 0.5 * (s[2].x - cx), cy + 0.5 * (s[2].y - cy), 0.0};
      con.f = objective(con.x, con.y);
      if (con.f < s[2].f) {
        s[2] = con;
      } else {  // shrink toward the best vertex
        for (int i = 1; i < 3; ++i) {
          s[i].x = s[0].x + 0.5 * (s[i].x - s[0].x);
          s[i].y = s[0].y + 0.5 * (s[i].y - s[0].y);
          s[i].f = objective(s[i].x, s[i].y);
        }
      }
    }
  }
  std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  res.lambda = cplx(s[0].x, s[0].y);
  res.residual = s[0].f;
  res.evaluations = evals;
  res.found = s[0].f < found_tol;
  return res;
}

std::vector<SquareWellEigen> square_well_eigen_1d(cplx depth, double half_width) {
  std::vector<SquareWellEigen> out;
  if (depth == cplx{0.0, 0.0}) return out;
  const double a = half_width;

  // Matching functions in the interior wavenumber k (lambda = depth + k^2,
  // kappa = sqrt(-depth - k^2) with Re kappa > 0):
  //   even:  k tan(k a) - kappa = 0,   odd:  -k cot(k a) - kappa = 0.
  auto kappa_of = [&](cplx k) {
    cplx kap = std::sqrt(-depth - k * k);
    if (kap.real() < 0.0) kap = -kap;
    return kap;
  };
  auto f_even = [&](cplx k) { return k * std::tan(k * a) - kappa_of(k); };
  auto f_odd = [&](cplx k) { return -k / std::tan(k * a) - kappa_of(k); };

  auto newton = [&](const std::function<cplx(cplx)>& f, cplx k0) -> std::pair<bool, cplx> {
    cplx k = k0;
    for (int it = 0; it < 80; ++it) {
      const cplx fk = f(k);
      if (std::abs(fk) < 1e-12) return {true, k};
      const cplx dk = 1e-7 * (std::abs(k) + 1.0);
      const cplx df = (f(k + dk) - fk) / dk;
      if (std::abs(df) < 1e-300) break;
      cplx step = fk / df;
      const double cap = 0.5 * (std::abs(k) + 1.0);
      if (std::abs(step) > cap) step *= cap / std::abs(step);
      k -= step;
      if (!std::isfinite(k.real()) || !std::isfinite(k.imag())) break;
    }
    return {false, k};
  };

  const double kmax = std::sqrt(std::abs(depth));
  std::vector<cplx> starts;
  for (double t = 0.15; t < kmax * a + 3.0; t += 0.45) {
    starts.emplace_back(t / a, 0.0);
    if (depth.imag() != 0.0) {
      starts.emplace_back(t / a, 0.2 * kmax);
      starts.emplace_back(t / a, -0.2 * kmax);
    }
  }

  auto try_roots = [&](const std::function<cplx(cplx)>& f, bool even) {
    for (const cplx& k0 : starts) {
      const auto [ok, k] = newton(f, k0);
      if (!ok) continue;
      const cplx kap = kappa_of(k);
      if (kap.real() < 1e-8) continue;  // not a decaying exterior mode
      const cplx lambda = depth + k * k;
      if (lambda.imag() == 0.0 && lambda.real() >= 0.0) continue;
      // Residual of the matching condition at the converged root.
      if (std::abs(f(k)) > 1e-10) continue;
      bool dup = false;
      for (const auto& e : out)
        if (std::abs(e.lambda - lambda) < 1e-8 * (1.0 + std::abs(lambda))) dup = true;
      if (!dup) out.push_back({lambda, kap, even});
    }
  };
  try_roots(f_even, true);
  try_roots(f_odd, false);

  std::sort(out.begin(), out.end(), [](const SquareWellEigen& x, const SquareWellEigen& y) {
    return std::abs(x.lambda) > std::abs(y.lambda);
  });
  return out;
}

}  // namespace specenc
