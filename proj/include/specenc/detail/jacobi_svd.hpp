#pragma once
// One-sided Jacobi singular values for small dense complex matrices.
// Independent of the power-iteration path, so the two can cross-check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "specenc/linalg.hpp"

namespace specenc::detail {

// All singular values of m, descending.  O(n^3) per sweep; intended for
// n <= a few hundred.
inline std::vector<double> jacobi_singular_values(const CMatrix& m) {
  const std::size_t rows = m.rows, cols = m.cols;
  // Column-major copy of the columns for cache-friendly rotations.
  std::vector<std::vector<cplx>> col(cols, std::vector<cplx>(rows));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) col[j][i] = m(i, j);

  auto dot = [&](std::size_t p, std::size_t q) {
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < rows; ++i) s += std::conj(col[p][i]) * col[q][i];
    return s;
  };

  const double eps = 1e-14;
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        const cplx apq = dot(p, q);
        const double app = std::real(dot(p, p)), aqq = std::real(dot(q, q));
        const double g = std::abs(apq);
        if (g <= eps * std::sqrt(app * aqq) || g == 0.0) continue;
        rotated = true;
        const cplx phase = apq / g;
        // Real plane rotation on (col_p, phase^{-1} col_q): zero the coupling.
        // Small root of t^2 - 2 tau t - 1 = 0 zeroes the rotated coupling.
        const double tau = (app - aqq) / (2.0 * g);
        const double t = (tau >= 0.0 ? -1.0 : 1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t), s = t * c;
        for (std::size_t i = 0; i < rows; ++i) {
          const cplx bq = std::conj(phase) * col[q][i];
          const cplx np = c * col[p][i] - s * bq;
          const cplx nq = s * col[p][i] + c * bq;
          col[p][i] = np;
          col[q][i] = phase * nq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sv(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    double s2 = 0.0;
    for (std::size_t i = 0; i < rows; ++i) s2 += std::norm(col[j][i]);
    sv[j] = std::sqrt(s2);
  }
  std::sort(sv.rbegin(), sv.rend());
  return sv;
}

}  // namespace specenc::detail
