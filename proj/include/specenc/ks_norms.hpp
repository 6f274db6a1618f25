#pragma once
// Discrete potential norms over dyadic cube families.  The central object
// is the cube-supremum norm
//   ||W||_CS(alpha) = sup_Q (int_Q W)^{-1} intint_{QxQ} W(x) W(y) |x-y|^{alpha-d},
// with W = |V|^beta and the supremum over dyadic cubes Q of generations
// k_min..k_max meeting the sampling box.  Companion norms on the same grid:
//   Kato      sup_x int |V(y)| |x-y|^{2-d} dy            (d = 3; d = 2 uses
//             log+(1/|x-y|) and is excluded from comparisons),
//   PairEnergy (Rollnik-type, d = 3)  intint |V(x)V(y)| |x-y|^{-2},
//   BallAverage (Morrey-type)  sup_{x,r} r^a (r^{-d} int_{B(x,r)} |V|^p)^{1/p},
//   Lp        usual quadrature p-norm.
// All sums are pairwise; cube scans are deterministic under any thread count.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specenc/types.hpp"

namespace specenc {

enum class NormKind { KS, Kato, PairEnergy, BallAverage, Lp };

struct NormRequest {
  NormKind kind = NormKind::KS;
  double alpha = 2.0;   // kernel exponent (KS) / radius weight (BallAverage)
  double beta = 1.0;    // power applied to |V| before the norm
  double p = 1.0;       // integrability exponent (BallAverage, Lp)
  int k_min = -4;       // coarsest dyadic generation (side 2^-k_min)
  int k_max = 6;        // finest generation
  int threads = 0;      // 0 = resolve via SPECENC_THREADS / hardware
};

struct CubeTraceEntry {
  int k = 0;           // generation scanned
  double value = 0.0;  // running maximum after scanning this generation
};

struct NormResult {
  double value = 0.0;
  bool zero_potential = false;              // all cubes below the mass floor
  std::optional<DyadicCube> witness;        // maximizing cube (KS)
  std::optional<std::array<double, 3>> witness_point;  // maximizing node/center
  std::optional<double> witness_radius;     // BallAverage
  std::vector<CubeTraceEntry> trace;        // running maxima per generation
};

// Validates request parameters (throws std::invalid_argument):
//  KS: 0 < alpha < d, beta > 0.  PairEnergy: d == 3.
//  BallAverage: alpha > 0, 1 <= p <= d / alpha.  Lp: p >= 1.
NormResult potential_norm(const Grid& grid, const std::vector<double>& absv,
                          const NormRequest& req);

// Double integral over Q x Q of W(x) W(y) |x-y|^(alpha-d) restricted to grid
// cells whose centers lie in the dyadic cube; the same-cell pair uses the
// exact closed-cell integral of the kernel times W(center)^2.
double cube_double_integral(const Grid& grid, const std::vector<double>& w,
                            const DyadicCube& cube, double alpha);

// (I_alpha f)(x_i) = sum_j f(x_j) |x_i-x_j|^(alpha-d) w_j, the self term
// replaced by f(x_i) times the exact cell integral of |y|^(alpha-d).
std::vector<cplx> apply_riesz(const Grid& grid, const std::vector<cplx>& f,
                              double alpha, int threads = 0);

// Empirical operator norm of f -> w^{1/2} I_alpha(w^{1/2} f) divided by the
// cube norm of w: the weighted-operator-to-norm comparison ratio.  Must stay
// bounded by a dimensional constant across potential corpora.
double weighted_riesz_ratio(const Grid& grid, const std::vector<double>& w,
                            double alpha, int threads = 0);

}  // namespace specenc
