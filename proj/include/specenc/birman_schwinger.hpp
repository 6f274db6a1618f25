#pragma once
// The sandwiched resolvent operator  A(lambda) = V^{1/2} (-Delta - lambda)^{-1} |V|^{1/2},
// with V^{1/2} = (V/|V|) |V|^{1/2}, discretized by cell-center quadrature
// with exact self-cell corrections, plus the spectral statistics used for
// eigenvalue exclusion: largest singular value, spectral radius estimate,
// and smallest singular value of A + I.

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "specenc/linalg.hpp"
#include "specenc/prng.hpp"
#include "specenc/types.hpp"

namespace specenc {

// Dense quadrature matrix of A(lambda) on the grid:
//   A_ij = v_half[i] * G_lambda(x_i - x_j) * absv_half[j] * cell_volume,
// diagonal via the exact cell-averaged Green's function.  `v` holds the
// complex samples of V at grid nodes.
CMatrix assemble_sandwiched_resolvent(const Grid& grid, const std::vector<cplx>& v,
                                      cplx lambda, int threads = 0);

struct StatsOptions {
  double tol = 1e-8;        // relative change stop for power iterations
  int max_iter = 400;
  int restarts = 3;         // independent random starts for sigma_max
  std::uint64_t seed = kDefaultSeed;
  bool want_sigma_min = false;   // smallest singular value of M + I
  bool want_spec_radius = false; // plain power iteration on M (estimate)
  const std::vector<cplx>* warm_start = nullptr;
  int threads = 0;
};

struct SpectralStats {
  double op_norm = 0.0;          // largest singular value of M
  int iters = 0;                 // iterations used by the winning restart
  bool converged = false;
  double spec_radius = 0.0;      // |dominant eigenvalue| estimate (flagged)
  bool spec_radius_converged = false;
  double sigma_min_plus_i = 0.0; // smallest singular value of M + I
  bool sigma_min_converged = false;
  std::vector<cplx> top_vector;  // right singular vector (warm-start reuse)
};

SpectralStats spectral_stats(const CMatrix& m, const StatsOptions& opt = {});

// Row-sum (Schur) upper bound on the operator norm: max_i sum_j |M_ij|
// and max_j sum_i |M_ij|, combined as sqrt of the product.
double schur_norm_bound(const CMatrix& m);

// ---------------------------------------------------------------------------
// Spectral-parameter scans
// ---------------------------------------------------------------------------
struct ScanPoint {
  cplx lambda{0.0, 0.0};
  double op_norm = 0.0;
  bool excluded = false;  // op_norm < 1 certifies no eigenvalue at lambda
  int iters = 0;
  bool valid = true;      // false for lambda on [0, inf): skipped
};

struct ScanRequest {
  std::vector<cplx> lambdas;  // row-major order of the requested grid
  double tol = 1e-8;
  int max_iter = 400;
  int restarts = 3;
  std::uint64_t seed = kDefaultSeed;
  bool warm_start = true;     // reuse previous point's singular vector
  int threads = 0;
};

std::vector<ScanPoint> lambda_scan(const Grid& grid, const std::vector<cplx>& v,
                                   const ScanRequest& req);

// Builds a rectangular lambda grid in row-major order (rows: imaginary
// part descending; columns: real part ascending), matching scan output.
std::vector<cplx> lambda_rectangle(double re_lo, double re_hi, int n_re,
                                   double im_lo, double im_hi, int n_im);

// ---------------------------------------------------------------------------
// Eigenvalue search: Nelder-Mead minimization of sigma_min(A(lambda) + I)
// over (Re lambda, Im lambda), rejecting steps landing on [0, inf).
// An eigenvalue is declared found only when the final residual
// sigma_min(A + I) falls below `found_tol`.
// ---------------------------------------------------------------------------
struct EigenSearchResult {
  bool found = false;
  cplx lambda{0.0, 0.0};
  double residual = 0.0;   // final sigma_min(A + I)
  int evaluations = 0;
};

EigenSearchResult eigenvalue_search(const Grid& grid, const std::vector<cplx>& v,
                                    cplx lambda0, double found_tol = 0.05,
                                    int max_eval = 120, int threads = 0);

// ---------------------------------------------------------------------------
// One-dimensional square-well reference solver: point spectrum of
// -u'' + c 1_{[-a,a]} u = lambda u  (complex depth c), via the even/odd
// transcendental matching equations  kappa = k tan(k a)  (even) and
// kappa = -k cot(k a) (odd), k^2 + kappa^2 = -c, solved by a damped complex
// Newton iteration from a ladder of starting points.  Returns all distinct
// roots with Re sqrt(-lambda) > 0 and matching residual below 1e-10,
// sorted by |lambda| descending (most-bound state first).
// ---------------------------------------------------------------------------
struct SquareWellEigen {
  cplx lambda{0.0, 0.0};
  cplx kappa{0.0, 0.0};  // exterior decay rate, lambda = -kappa^2
  bool even = true;      // parity of the matched mode
};
std::vector<SquareWellEigen> square_well_eigen_1d(cplx depth, double half_width);

}  // namespace specenc
