#include "specenc/linalg.hpp"

#include <cmath>
#include <stdexcept>

#include "specenc/parallel.hpp"

namespace specenc {

void matvec(const CMatrix& m, const std::vector<cplx>& x, std::vector<cplx>& y,
            int threads) {
  if (x.size() != m.cols) throw std::invalid_argument("matvec: size mismatch");
  y.assign(m.rows, cplx{0.0, 0.0});
  parallel_for_blocks(m.rows, resolve_threads(threads),
                      [&](int, std::size_t lo, std::size_t hi) {
                        for (std::size_t i = lo; i < hi; ++i) {
                          const cplx* row = &m.a[i * m.cols];
                          cplx acc{0.0, 0.0};
                          for (std::size_t j = 0; j < m.cols; ++j) acc += row[j] * x[j];
                          y[i] = acc;
                        }
                      });
}

void matvec_adjoint(const CMatrix& m, const std::vector<cplx>& x, std::vector<cplx>& y,
                    int threads) {
  if (x.size() != m.rows) throw std::invalid_argument("matvec_adjoint: size mismatch");
  y.assign(m.cols, cplx{0.0, 0.0});
  // Column result j = sum_i conj(M_ij) x_i; parallelize over output entries
  // so each j is a serial sum (deterministic).
  parallel_for_blocks(m.cols, resolve_threads(threads),
                      [&](int, std::size_t lo, std::size_t hi) {
                        for (std::size_t j = lo; j < hi; ++j) {
                          cplx acc{0.0, 0.0};
                          for (std::size_t i = 0; i < m.rows; ++i)
                            acc += std::conj(m.a[i * m.cols + j]) * x[i];
                          y[j] = acc;
                        }
                      });
}

double vec_norm2(const std::vector<cplx>& v) {
  std::vector<double> sq(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) sq[i] = std::norm(v[i]);
  return std::sqrt(pairwise_sum(sq));
}

cplx vec_dot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  std::vector<cplx> prod(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) prod[i] = std::conj(a[i]) * b[i];
  return pairwise_sum(prod);
}

LUFactors lu_factor(CMatrix m, double pivot_floor) {
  if (m.rows != m.cols) throw std::invalid_argument("LU requires a square matrix");
  const std::size_t n = m.rows;
  LUFactors f;
  f.perm.resize(n);
  double scale_max = 0.0;
  for (const cplx& z : m.a) scale_max = std::max(scale_max, std::abs(z));
  if (scale_max == 0.0) scale_max = 1.0;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(m(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    f.perm[k] = static_cast<int>(piv);
    if (piv != k)
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
    if (best < pivot_floor * scale_max) {
      f.singular = true;
      m(k, k) = cplx(pivot_floor * scale_max, 0.0);  // regularized pivot
    }
    const cplx inv_p = 1.0 / m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx l = m(i, k) * inv_p;
      m(i, k) = l;
      if (l != cplx{0.0, 0.0}) {
        const cplx* rk = &m.a[k * n];
        cplx* ri = &m.a[i * n];
        for (std::size_t j = k + 1; j < n; ++j) ri[j] -= l * rk[j];
      }
    }
  }
  f.lu = std::move(m);
  return f;
}

void lu_solve(const LUFactors& f, std::vector<cplx>& rhs) {
  const std::size_t n = f.lu.rows;
  if (rhs.size() != n) throw std::invalid_argument("LU solve: size mismatch");
  // Row-wise forward substitution with the pivot interchange folded in:
  // row i reads only finalized entries rhs[j], j < i.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ip = static_cast<std::size_t>(f.perm[i]);
    cplx sum = rhs[ip];
    rhs[ip] = rhs[i];
    for (std::size_t j = 0; j < i; ++j) sum -= f.lu(i, j) * rhs[j];
    rhs[i] = sum;
  }
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t j = k + 1; j < n; ++j) rhs[k] -= f.lu(k, j) * rhs[j];
    rhs[k] /= f.lu(k, k);
  }
}

void lu_solve_adjoint(const LUFactors& f, std::vector<cplx>& rhs) {
  // Solve M^H z = rhs given P M = L U  =>  M = P^T L U, M^H = U^H L^H P,
  // so z = P^T (L^H)^{-1} (U^H)^{-1} rhs.
  const std::size_t n = f.lu.rows;
  if (rhs.size() != n) throw std::invalid_argument("LU adjoint solve: size mismatch");
  // Forward: U^H y = rhs  (U^H lower triangular with conj diagonal).
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < k; ++i) rhs[k] -= std::conj(f.lu(i, k)) * rhs[i];
    rhs[k] /= std::conj(f.lu(k, k));
  }
  // Backward: L^H x = y  (L^H upper triangular, unit diagonal).
  for (std::size_t k = n; k-- > 0;)
    for (std::size_t j = k + 1; j < n; ++j) rhs[k] -= std::conj(f.lu(j, k)) * rhs[j];
  // Apply P^T: reverse the recorded row swaps.
  for (std::size_t k = n; k-- > 0;) std::swap(rhs[k], rhs[f.perm[k]]);
}

}  // namespace specenc
