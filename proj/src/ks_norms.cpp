#include "specenc/ks_norms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "specenc/birman_schwinger.hpp"
#include "specenc/cell_integrals.hpp"
#include "specenc/linalg.hpp"
#include "specenc/parallel.hpp"

namespace specenc {

namespace {

constexpr double kMassFloorScale = 1e-12;  // tau = this * box volume

double cubic_cell_side(const Grid& grid) {
  double hmin = grid.h[0], hmax = grid.h[0];
  for (int a = 1; a < grid.d; ++a) {
    hmin = std::min(hmin, grid.h[a]);
    hmax = std::max(hmax, grid.h[a]);
  }
  if (hmax > hmin * (1.0 + 1e-9))
    throw std::invalid_argument("singular cell corrections require cubic cells");
  return grid.h[0];
}

// r^(alpha-d) evaluated from r^2, with fast paths for the common exponents.
struct RadialKernel {
  double ex;  // (alpha - d) / 2 as the exponent of r^2
  explicit RadialKernel(int d, double alpha) : ex(0.5 * (alpha - d)) {}
  double operator()(double r2) const {
    if (ex == -0.5) return 1.0 / std::sqrt(r2);
    if (ex == -1.0) return 1.0 / r2;
    return std::pow(r2, ex);
  }
};

double dist2(const Grid& g, std::size_t i, std::size_t j) {
  const double dx = g.xs[i] - g.xs[j];
  const double dy = g.ys[i] - g.ys[j];
  const double dz = g.zs[i] - g.zs[j];
  return dx * dx + dy * dy + dz * dz;
}

// Sum over unordered node pairs plus the exact same-cell diagonal:
//   sum_{i != j} w_i w_j |x_i-x_j|^(alpha-d) vol^2 + sum_i w_i^2 h^(d+alpha) J_d.
double pair_energy(const Grid& grid, const std::vector<double>& w,
                   const std::vector<std::size_t>& nodes, double alpha) {
  const int d = grid.d;
  const double h = cubic_cell_side(grid);
  const double vol2 = grid.cell_volume * grid.cell_volume;
  const double self = std::pow(h, d + alpha) * unit_cube_pair_integral(d, alpha);
  const RadialKernel ker(d, alpha);
  double off = 0.0, diag = 0.0;
  const std::size_t n = nodes.size();
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t i = nodes[a];
    const double wi = w[i];
    diag += wi * wi;
    if (wi == 0.0) continue;
    double row = 0.0;
    for (std::size_t b = a + 1; b < n; ++b) {
      const std::size_t j = nodes[b];
      if (w[j] == 0.0) continue;
      row += w[j] * ker(dist2(grid, i, j));
    }
    off += wi * row;
  }
  return 2.0 * off * vol2 + diag * self;
}

double node_mass(const std::vector<double>& w, const std::vector<std::size_t>& nodes,
                 double vol) {
  double m = 0.0;
  for (std::size_t i : nodes) m += w[i];
  return m * vol;
}

struct CubeBucket {
  DyadicCube cube;
  std::vector<std::size_t> nodes;
};

// All generation-k dyadic cubes holding at least one grid node, in
// lexicographic corner order (deterministic scan order).
std::vector<CubeBucket> bucket_nodes(const Grid& grid, int k) {
  std::map<std::array<std::int64_t, 3>, std::vector<std::size_t>> buckets;
  const double scale = std::ldexp(1.0, k);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::array<std::int64_t, 3> m{0, 0, 0};
    const std::array<double, 3> x = grid.node(i);
    for (int a = 0; a < grid.d; ++a)
      m[a] = static_cast<std::int64_t>(std::floor(x[a] * scale));
    buckets[m].push_back(i);
  }
  std::vector<CubeBucket> out;
  out.reserve(buckets.size());
  for (auto& [m, nodes] : buckets) {
    CubeBucket cb;
    cb.cube.k = k;
    cb.cube.m = m;
    cb.nodes = std::move(nodes);
    out.push_back(std::move(cb));
  }
  return out;
}

// Cache key: the cube clipped to the grid box.  Two cubes with the same
// clipped box contain the same node set, so mass and integral coincide.
using ClipKey = std::array<double, 6>;

ClipKey clip_key(const Grid& grid, const DyadicCube& q) {
  ClipKey key{0, 0, 0, 0, 0, 0};
  for (int a = 0; a < grid.d; ++a) {
    key[a] = std::max(q.lo(a), grid.box.lo[a]);
    key[3 + a] = std::min(q.hi(a), grid.box.hi[a]);
  }
  return key;
}

struct KsScan {
  NormResult result;
  double tau = 0.0;
};

NormResult ks_scan(const Grid& grid, const std::vector<double>& w, double alpha,
                   int k_min, int k_max, int threads) {
  NormResult res;
  const double tau = kMassFloorScale * grid.box.volume();
  std::map<ClipKey, std::pair<double, double>> cache;  // (mass, integral)
  std::mutex cache_mutex;
  bool any_mass = false;
  double best = 0.0;
  std::optional<DyadicCube> witness;

  for (int k = k_max; k >= k_min; --k) {
    std::vector<CubeBucket> cubes = bucket_nodes(grid, k);
    std::vector<double> values(cubes.size(), -1.0);  // -1: below mass floor
    const int nthreads = resolve_threads(threads);
    parallel_for_blocks(cubes.size(), nthreads, [&](int, std::size_t lo, std::size_t hi) {
      for (std::size_t c = lo; c < hi; ++c) {
        const ClipKey key = clip_key(grid, cubes[c].cube);
        std::pair<double, double> mi;
        bool have = false;
        {
          std::lock_guard<std::mutex> lock(cache_mutex);
          auto it = cache.find(key);
          if (it != cache.end()) {
            mi = it->second;
            have = true;
          }
        }
        if (!have) {
          mi.first = node_mass(w, cubes[c].nodes, grid.cell_volume);
          mi.second = (mi.first > tau)
                          ? pair_energy(grid, w, cubes[c].nodes, alpha)
                          : 0.0;
          std::lock_guard<std::mutex> lock(cache_mutex);
          cache.emplace(key, mi);
        }
        if (mi.first > tau) values[c] = mi.second / mi.first;
      }
    });
    // Deterministic merge in cube order; strictly-greater keeps the first
    // (finest-generation) witness on exact ties.
    for (std::size_t c = 0; c < cubes.size(); ++c) {
      if (values[c] < 0.0) continue;
      any_mass = true;
      if (values[c] > best) {
        best = values[c];
        witness = cubes[c].cube;
      }
    }
    res.trace.push_back({k, best});
  }
  res.value = best;
  res.witness = witness;
  res.zero_potential = !any_mass;
  return res;
}

std::vector<double> apply_power(const std::vector<double>& absv, double beta) {
  if (beta == 1.0) return absv;
  std::vector<double> w(absv.size());
  for (std::size_t i = 0; i < absv.size(); ++i)
    w[i] = absv[i] > 0.0 ? std::pow(absv[i], beta) : 0.0;
  return w;
}

NormResult kato_norm(const Grid& grid, const std::vector<double>& w, int threads) {
  const int d = grid.d;
  const double h = cubic_cell_side(grid);
  const double vol = grid.cell_volume;
  NormResult res;
  double self_cell = 0.0;  // exact integral of the kernel over one cell
  if (d >= 3) {
    self_cell = std::pow(h, 2.0) * centered_cell_corner_integral(d, 2.0);
  } else if (d == 2) {
    self_cell = h * h *
                centered_cell_radial_average(2, [h](double r) {
                  const double rr = r * h;
                  return rr < 1.0 ? -std::log(rr) : 0.0;
                });
  } else {
    throw std::invalid_argument("Kato norm requires d >= 2");
  }
  const RadialKernel ker(d, 2.0);
  const std::size_t n = grid.size();
  const int nthreads = resolve_threads(threads);
  std::vector<double> block_best(static_cast<std::size_t>(nthreads), 0.0);
  std::vector<std::size_t> block_arg(static_cast<std::size_t>(nthreads), 0);
  parallel_for_blocks(n, nthreads, [&](int b, std::size_t lo, std::size_t hi) {
    double best = -1.0;
    std::size_t arg = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || w[j] == 0.0) continue;
        if (d == 2) {
          const double r = std::sqrt(dist2(grid, i, j));
          if (r < 1.0) acc += w[j] * (-std::log(r));
        } else {
          acc += w[j] * ker(dist2(grid, i, j));
        }
      }
      const double val = acc * vol + w[i] * self_cell;
      if (val > best) {
        best = val;
        arg = i;
      }
    }
    block_best[b] = best;
    block_arg[b] = arg;
  });
  double best = -1.0;
  std::size_t arg = 0;
  for (int b = 0; b < nthreads; ++b)
    if (block_best[b] > best) {
      best = block_best[b];
      arg = block_arg[b];
    }
  res.value = std::max(best, 0.0);
  res.witness_point = grid.node(arg);
  res.zero_potential = (res.value == 0.0);
  return res;
}

NormResult ball_average_norm(const Grid& grid, const std::vector<double>& w,
                             double a, double p, int k_min, int k_max, int threads) {
  const int d = grid.d;
  const double vol = grid.cell_volume;
  std::vector<double> wp(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) wp[i] = w[i] > 0.0 ? std::pow(w[i], p) : 0.0;

  NormResult res;
  const std::size_t n = grid.size();
  const int nthreads = resolve_threads(threads);
  struct Best {
    double val = -1.0;
    std::size_t node = 0;
    double radius = 0.0;
  };
  std::vector<Best> block(static_cast<std::size_t>(nthreads));
  parallel_for_blocks(n, nthreads, [&](int b, std::size_t lo, std::size_t hi) {
    Best best;
    for (std::size_t i = lo; i < hi; ++i) {
      for (int k = k_max; k >= k_min; --k) {
        const double r = std::ldexp(1.0, -k);
        const double r2 = r * r;
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j)
          if (dist2(grid, i, j) <= r2) acc += wp[j];
        const double val =
            std::pow(r, a) * std::pow(std::pow(r, -d) * acc * vol, 1.0 / p);
        if (val > best.val) best = {val, i, r};
      }
    }
    block[b] = best;
  });
  Best best;
  for (int b = 0; b < nthreads; ++b)
    if (block[b].val > best.val) best = block[b];
  res.value = std::max(best.val, 0.0);
  res.witness_point = grid.node(best.node);
  res.witness_radius = best.radius;
  res.zero_potential = (res.value == 0.0);
  return res;
}

}  // namespace

double cube_double_integral(const Grid& grid, const std::vector<double>& w,
                            const DyadicCube& cube, double alpha) {
  // The pair integral converges for every alpha > 0 (the kernel is even
  // bounded once alpha >= d); only the norm scan restricts alpha further.
  if (alpha <= 0.0) throw std::invalid_argument("cube integral requires alpha > 0");
  std::vector<std::size_t> nodes;
  const double side = cube.side();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::array<double, 3> x = grid.node(i);
    bool inside = true;
    for (int a = 0; a < grid.d; ++a) {
      const double lo = static_cast<double>(cube.m[a]) * side;
      if (x[a] < lo || x[a] >= lo + side) {
        inside = false;
        break;
      }
    }
    if (inside) nodes.push_back(i);
  }
  if (nodes.empty()) return 0.0;
  return pair_energy(grid, w, nodes, alpha);
}

NormResult potential_norm(const Grid& grid, const std::vector<double>& absv,
                          const NormRequest& req) {
  if (absv.size() != grid.size())
    throw std::invalid_argument("sample count does not match grid");
  if (req.beta <= 0.0) throw std::invalid_argument("power beta must be positive");
  if (req.k_min > req.k_max) throw std::invalid_argument("k_min must be <= k_max");
  const std::vector<double> w = apply_power(absv, req.beta);

  switch (req.kind) {
    case NormKind::KS: {
      if (req.alpha <= 0.0 || req.alpha >= grid.d)
        throw std::invalid_argument("cube norm requires 0 < alpha < d");
      return ks_scan(grid, w, req.alpha, req.k_min, req.k_max, req.threads);
    }
    case NormKind::Kato:
      return kato_norm(grid, w, req.threads);
    case NormKind::PairEnergy: {
      if (grid.d != 3)
        throw std::invalid_argument("pair-energy norm is defined for d = 3");
      std::vector<std::size_t> all(grid.size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
      NormResult res;
      res.value = pair_energy(grid, w, all, 1.0);  // kernel |x-y|^-2
      double mass = node_mass(w, all, grid.cell_volume);
      res.zero_potential = (mass <= kMassFloorScale * grid.box.volume());
      return res;
    }
    case NormKind::BallAverage: {
      if (req.alpha <= 0.0) throw std::invalid_argument("radius weight must be positive");
      if (req.p < 1.0 || req.p > grid.d / req.alpha + 1e-12)
        throw std::invalid_argument("ball-average norm requires 1 <= p <= d/alpha");
      return ball_average_norm(grid, w, req.alpha, req.p, req.k_min, req.k_max,
                               req.threads);
    }
    case NormKind::Lp: {
      if (req.p < 1.0) throw std::invalid_argument("p-norm requires p >= 1");
      double acc = 0.0;
      for (double x : w) acc += std::pow(x, req.p);
      NormResult res;
      res.value = std::pow(acc * grid.cell_volume, 1.0 / req.p);
      res.zero_potential = (res.value == 0.0);
      return res;
    }
  }
  throw std::logic_error("unreachable norm kind");
}

std::vector<cplx> apply_riesz(const Grid& grid, const std::vector<cplx>& f,
                              double alpha, int threads) {
  const int d = grid.d;
  if (alpha <= 0.0 || alpha >= d)
    throw std::invalid_argument("fractional integral requires 0 < alpha < d");
  if (f.size() != grid.size()) throw std::invalid_argument("sample count mismatch");
  const double h = cubic_cell_side(grid);
  const double vol = grid.cell_volume;
  const double self = std::pow(h, alpha) * centered_cell_corner_integral(d, alpha);
  const RadialKernel ker(d, alpha);
  std::vector<cplx> out(f.size());
  const std::size_t n = grid.size();
  parallel_for_blocks(n, resolve_threads(threads), [&](int, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      cplx acc{0.0, 0.0};
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        acc += f[j] * ker(dist2(grid, i, j));
      }
      out[i] = acc * vol + f[i] * self;
    }
  });
  return out;
}

double weighted_riesz_ratio(const Grid& grid, const std::vector<double>& w,
                            double alpha, int threads) {
  double total = 0.0;
  for (double x : w) total += x;
  if (total * grid.cell_volume <= kMassFloorScale * grid.box.volume())
    throw std::invalid_argument("weight is numerically zero");

  NormRequest req;
  req.kind = NormKind::KS;
  req.alpha = alpha;
  req.beta = 1.0;
  req.threads = threads;
  const NormResult ks = potential_norm(grid, w, req);
  if (ks.value <= 0.0) throw std::invalid_argument("weight has zero cube norm");

  // Dense matrix of f -> w^{1/2} I_alpha(w^{1/2} f).
  const int d = grid.d;
  const double h = cubic_cell_side(grid);
  const double vol = grid.cell_volume;
  const double self = std::pow(h, alpha) * centered_cell_corner_integral(d, alpha);
  const RadialKernel ker(d, alpha);
  const std::size_t n = grid.size();
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = std::sqrt(w[i]);
  CMatrix m(n, n);
  parallel_for_blocks(n, resolve_threads(threads), [&](int, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double kij = (i == j) ? self : ker(dist2(grid, i, j)) * vol;
        m(i, j) = cplx(sq[i] * kij * sq[j], 0.0);
      }
  });
  StatsOptions opt;
  opt.threads = threads;
  const SpectralStats st = spectral_stats(m, opt);
  return st.op_norm / ks.value;
}

}  // namespace specenc
