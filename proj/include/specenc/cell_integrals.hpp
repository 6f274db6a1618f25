#pragma once
// Exact-to-quadrature reference integrals over unit cells.  These supply
// the diagonal (self-cell) corrections of the quadrature operators and the
// per-cube kernel constants the norm scanner uses.  Everything reduces to
// one-dimensional Gauss-Legendre panels over dyadic shells, which handles
// the |u|^(alpha-d) singularities to near machine precision.

#include <array>
#include <complex>
#include <functional>

namespace specenc {

// Gauss-Legendre nodes/weights on [-1, 1] (computed once per order, cached).
struct GaussLegendre {
  std::array<double, 32> x{}, w{};
  int n = 0;
};
const GaussLegendre& gauss_legendre(int n);

// M_d(alpha) = integral over the unit cube [0,1]^d of |u|^(alpha-d) du,
// with the singular corner at the origin; finite for alpha > 0.
double unit_cube_corner_integral(int d, double alpha);

// C_d(alpha) = integral over the centered unit cell [-1/2,1/2]^d of
// |u|^(alpha-d) du = 2^(d-alpha) M_d.  The self-cell integral of the kernel
// over a cell of side h is h^alpha * C_d(alpha).
double centered_cell_corner_integral(int d, double alpha);

// J_d(alpha) = double integral over Q x Q, Q = [0,1]^d, of |x-y|^(alpha-d).
// Computed via the difference-variable reduction to a single d-dimensional
// integral with triangular weights.  J_1(alpha) = 2/(alpha(alpha+1)).
double unit_cube_pair_integral(int d, double alpha);

// Average of a radial function f(|u|) over the centered unit cell
// [-1/2,1/2]^d, integrated with dyadic shells toward the central
// singularity.  Handles integrable singularities (log, |u|^(a-d) with a>0).
// Used for the self-cell average of K0-type kernels and of |u| itself.
double centered_cell_radial_average(int d, const std::function<double(double)>& f);
std::complex<double> centered_cell_radial_average_c(
    int d, const std::function<std::complex<double>(double)>& f);

// Mean chord of the centered unit cell in 3-D: average of |u| over
// [-1/2,1/2]^3 (=0.4802...), used to place the self-cell exponential decay.
double mean_cell_radius_3d();

}  // namespace specenc
