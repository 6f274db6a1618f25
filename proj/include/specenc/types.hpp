#pragma once
// Core geometric and spectral value types shared by every module:
// axis-aligned boxes, uniform sampling grids, dyadic cubes, potential
// specifications, and the square-root branch bookkeeping attached to a
// spectral parameter.

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace specenc {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEulerGamma = 0.57721566490153286061;

// ---------------------------------------------------------------------------
// Box: axis-aligned box in R^d, d in {1,2,3}.  Unused trailing coordinates
// are kept at 0 so the same struct serves every dimension.
// ---------------------------------------------------------------------------
struct Box {
  int d = 3;
  std::array<double, 3> lo{0.0, 0.0, 0.0};
  std::array<double, 3> hi{0.0, 0.0, 0.0};

  double side(int axis) const { return hi[axis] - lo[axis]; }
  double volume() const {
    double v = 1.0;
    for (int a = 0; a < d; ++a) v *= side(a);
    return v;
  }
  bool contains(const std::array<double, 3>& x) const {
    for (int a = 0; a < d; ++a)
      if (x[a] < lo[a] || x[a] > hi[a]) return false;
    return true;
  }
};

// ---------------------------------------------------------------------------
// Grid: uniform tensor grid of cell centers over a box (structure-of-arrays).
// Node i = (i0 * n[1] + i1) * n[2] + i2 (unused axes have n = 1), with
// coordinate  lo[a] + (ia + 1/2) * h[a].   All cells share one volume.
// ---------------------------------------------------------------------------
struct Grid {
  int d = 3;
  Box box;
  std::array<int, 3> n{1, 1, 1};  // cells per axis; n[a] = 1 for a >= d
  std::array<double, 3> h{0.0, 0.0, 0.0};
  std::vector<double> xs, ys, zs;  // cell-center coordinates, SoA
  double cell_volume = 0.0;

  std::size_t size() const { return xs.size(); }
  std::array<double, 3> node(std::size_t i) const { return {xs[i], ys[i], zs[i]}; }
};

// Builds the grid of cell centers; n_per_axis applies to each of the d axes.
Grid make_grid(const Box& box, int n_per_axis);
Grid make_grid(const Box& box, const std::array<int, 3>& n_per_axis);

// ---------------------------------------------------------------------------
// DyadicCube: the cube  prod_a [ m[a] 2^-k, (m[a]+1) 2^-k )  of side 2^-k.
// k may be negative (large cubes).  Only the first d entries of m are used.
// ---------------------------------------------------------------------------
struct DyadicCube {
  int k = 0;
  std::array<std::int64_t, 3> m{0, 0, 0};

  double side() const { return std::ldexp(1.0, -k); }
  double lo(int axis) const { return static_cast<double>(m[axis]) * side(); }
  double hi(int axis) const { return static_cast<double>(m[axis] + 1) * side(); }
  bool operator==(const DyadicCube& o) const { return k == o.k && m == o.m; }
};

// The generation-k dyadic cube containing point x (half-open convention).
DyadicCube dyadic_cube_containing(int d, int k, const std::array<double, 3>& x);

// ---------------------------------------------------------------------------
// Spectral parameter.  For lambda outside [0, inf) the principal square
// roots  s = sqrt(-lambda)  (Re s > 0) and  w_dir = sqrt(lambda) are both
// well defined; the constructor computes and stores them.  Points on the
// closed positive real axis are rejected (continuous spectrum).
// ---------------------------------------------------------------------------
struct SpectralPoint {
  cplx lambda{0.0, 0.0};
  cplx s{0.0, 0.0};      // sqrt(-lambda), Re s > 0
  cplx w_dir{0.0, 0.0};  // sqrt(lambda), principal branch
  bool negative_real = false;

  explicit SpectralPoint(cplx lambda_value);
};

// Principal square root of -lambda with the domain guard above.  Throws
// std::domain_error for lambda on [0, inf).
cplx sqrt_branch(cplx lambda);

// ---------------------------------------------------------------------------
// Potentials.  A potential is a complex-valued function on R^d supported in
// a box, given either in closed form or as samples on a grid.
// ---------------------------------------------------------------------------
enum class PotentialKind { SquareWell, Gaussian, InverseSquare, Sampled };

struct PotentialSpec {
  PotentialKind kind = PotentialKind::SquareWell;
  int d = 3;
  cplx amplitude{1.0, 0.0};
  double width = 1.0;                      // Gaussian length scale
  double sigma = 2.0;                      // inverse-power exponent
  double eps_cut = 0.0, r_cut = 0.0;       // inverse-power truncation radii
  std::array<double, 3> center{0.0, 0.0, 0.0};
  Box box;                                 // support / sampling box
  std::array<int, 3> sample_n{1, 1, 1};    // Sampled only
  std::vector<cplx> samples;               // Sampled only, grid node order

  // Pointwise evaluation (Sampled uses nearest-cell lookup).
  cplx operator()(const std::array<double, 3>& x) const;
};

PotentialSpec square_well(int d, cplx amplitude, const Box& box);
PotentialSpec gaussian_potential(int d, cplx amplitude, double width,
                                 const std::array<double, 3>& center, const Box& box);
// amplitude / |x|^sigma on eps_cut <= |x| <= r_cut, zero elsewhere.
PotentialSpec inverse_power_potential(int d, cplx amplitude, double sigma,
                                      double eps_cut, double r_cut, const Box& box);

// Samples a potential at the cell centers of `grid` (grid node order).
std::vector<cplx> sample_potential(const PotentialSpec& pot, const Grid& grid);

// ---------------------------------------------------------------------------
// Serialization: JSON (schema_version 1, unknown keys rejected) and a raw
// little-endian binary dump for sampled data.
// ---------------------------------------------------------------------------
std::string potential_to_json(const PotentialSpec& pot);
// Strict parse: unknown keys raise std::invalid_argument naming the key.
// A sampled potential references its binary sample file by path.
PotentialSpec potential_from_json(const std::string& json_text);
PotentialSpec load_potential_file(const std::string& path);  // JSON file
void save_samples_binary(const std::vector<cplx>& samples, const std::string& path);
std::vector<cplx> load_samples_binary(const std::string& path);

}  // namespace specenc
