#pragma once
// Minimal dense complex linear algebra: row-major matrix container,
// matrix-vector products, deterministic pairwise summation, and an
// LU factorization with partial pivoting used for inverse iteration.

#include <cassert>
#include <complex>
#include <cstddef>
#include <vector>

#include "specenc/types.hpp"

namespace specenc {

struct CMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<cplx> a;  // row-major

  CMatrix() = default;
  CMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  cplx& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

// Pairwise (tree) sum: deterministic for a fixed element order and
// O(log n) error growth.  Used everywhere a sum feeds a reported value.
template <typename T>
T pairwise_sum(const T* data, std::size_t n) {
  if (n == 0) return T{};
  if (n <= 8) {
    T s = data[0];
    for (std::size_t i = 1; i < n; ++i) s += data[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

template <typename T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(v.data(), v.size());
}

// y = M x  and  y = M^H x  (row-major traversal, serial inner loops).
void matvec(const CMatrix& m, const std::vector<cplx>& x, std::vector<cplx>& y,
            int threads = 1);
void matvec_adjoint(const CMatrix& m, const std::vector<cplx>& x, std::vector<cplx>& y,
                    int threads = 1);

double vec_norm2(const std::vector<cplx>& v);
cplx vec_dot(const std::vector<cplx>& a, const std::vector<cplx>& b);  // conj(a).b

// LU with partial pivoting.  Returns false if a pivot falls below
// `pivot_floor` times the largest initial column magnitude (treated as
// numerically singular).
struct LUFactors {
  CMatrix lu;
  std::vector<int> perm;
  bool singular = false;
};
LUFactors lu_factor(CMatrix m, double pivot_floor = 1e-14);
void lu_solve(const LUFactors& f, std::vector<cplx>& rhs);
// Solves M^H z = rhs using the factorization of M.
void lu_solve_adjoint(const LUFactors& f, std::vector<cplx>& rhs);

}  // namespace specenc
