// Dyadic cube-supremum norm, companion norms (Kato, pair-energy,
// ball-average, Lp), and the discrete fractional integral, checked against
// closed forms, Monte-Carlo, and exact scaling laws.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "specenc/cell_integrals.hpp"
#include "specenc/ks_norms.hpp"
#include "specenc/prng.hpp"

using namespace specenc;

namespace {

Box cube_box(int d, double half) {
  Box b;
  b.d = d;
  for (int a = 0; a < d; ++a) {
    b.lo[a] = -half;
    b.hi[a] = half;
  }
  return b;
}

// Three positive Gaussian bumps, the standard irregular test weight.
std::vector<double> three_bumps(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng = make_rng(seed);
  std::uniform_real_distribution<double> pos(-0.6, 0.6), amp(0.4, 2.0), wid(0.15, 0.5);
  std::array<std::array<double, 3>, 3> c;
  std::array<double, 3> a, s;
  for (int b = 0; b < 3; ++b) {
    c[b] = {pos(rng), pos(rng), pos(rng)};
    a[b] = amp(rng);
    s[b] = wid(rng);
  }
  std::vector<double> w(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.node(i);
    double v = 0.0;
    for (int b = 0; b < 3; ++b) {
      double r2 = 0.0;
      for (int ax = 0; ax < 3; ++ax) r2 += (x[ax] - c[b][ax]) * (x[ax] - c[b][ax]);
      v += a[b] * std::exp(-r2 / (s[b] * s[b]));
    }
    w[i] = v;
  }
  return w;
}

double cube_mass(const Grid& g, const std::vector<double>& w, const DyadicCube& q) {
  double m = 0.0;
  const double side = q.side();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.node(i);
    bool inside = true;
    for (int a = 0; a < g.d; ++a) {
      const double lo = static_cast<double>(q.m[a]) * side;
      if (x[a] < lo || x[a] >= lo + side) {
        inside = false;
        break;
      }
    }
    if (inside) m += w[i];
  }
  return m * g.cell_volume;
}

}  // namespace

TEST_CASE("cube pair integral matches Monte-Carlo on a Gaussian weight") {
  // Every dyadic cube has the origin on its corner lattice, so the natural
  // shared window is the unit cube [0,1)^3 itself; the grid step 1/12 puts
  // its faces exactly on cell boundaries.
  const Grid g = make_grid(cube_box(3, 1.0), 24);
  const auto wfun = [](const std::array<double, 3>& x) {
    const double dx = x[0] - 0.3, dy = x[1] - 0.45, dz = x[2] - 0.6;
    return 1.3 * std::exp(-(dx * dx + dy * dy + dz * dz) / 0.36);
  };
  std::vector<double> w(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) w[i] = wfun(g.node(i));

  DyadicCube q;  // [0,1)^3
  q.k = 0;
  q.m = {0, 0, 0};
  for (double alpha : {2.0, 2.5}) {
    double se = 0.0;
    const double mc = oracle::mc_pair_integral(3, 0.0, 1.0, wfun, alpha,
                                               kDefaultSeed + 61, 4'000'000, &se);
    const double got = cube_double_integral(g, w, q, alpha);
    CHECK_MESSAGE(std::abs(got - mc) < 5.0 * se + 0.008 * std::abs(mc),
                  "alpha=", alpha, " got=", got, " mc=", mc, " se=", se);
  }
}

TEST_CASE("cube norm: exact dyadic dilation scaling and amplitude homogeneity") {
  // Doubling the box (grid nodes map exactly under x -> 2x) and shifting the
  // cube ladder by one generation multiplies the norm by exactly 2^alpha.
  const Grid g1 = make_grid(cube_box(3, 1.0), 16);
  const Grid g2 = make_grid(cube_box(3, 2.0), 16);
  std::vector<double> w1 = three_bumps(g1, kDefaultSeed + 62);
  std::vector<double> w2(g2.size());
  for (std::size_t i = 0; i < g2.size(); ++i) {
    const auto x = g2.node(i);
    const auto half = std::array<double, 3>{x[0] / 2, x[1] / 2, x[2] / 2};
    std::size_t j = 0;
    // Recover the matching g1 node index from coordinates.
    for (int a = 0; a < 3; ++a) {
      const int ia = static_cast<int>(std::floor((half[a] - g1.box.lo[a]) / g1.h[a]));
      j = j * 16 + static_cast<std::size_t>(ia);
    }
    w2[i] = w1[j];
  }

  NormRequest req;
  req.kind = NormKind::KS;
  req.beta = 1.0;
  for (double alpha : {1.5, 2.0, 2.7}) {
    req.alpha = alpha;
    req.k_min = -2;
    req.k_max = 4;
    const NormResult r1 = potential_norm(g1, w1, req);
    req.k_min = -3;
    req.k_max = 3;
    const NormResult r2 = potential_norm(g2, w2, req);
    CHECK(r2.value == doctest::Approx(std::pow(2.0, alpha) * r1.value).epsilon(1e-10));
    // The maximizing cube must be the dilated witness.
    REQUIRE(r1.witness);
    REQUIRE(r2.witness);
    CHECK(r2.witness->k == r1.witness->k - 1);
    CHECK(r2.witness->m == r1.witness->m);
  }

  // Amplitude homogeneity: the norm of (c|V|)^beta is c^beta times the norm.
  req.alpha = 2.0;
  req.beta = 1.5;
  req.k_min = -2;
  req.k_max = 4;
  const NormResult base = potential_norm(g1, w1, req);
  std::vector<double> w3(w1);
  for (double& x : w3) x *= 3.0;
  const NormResult scaled = potential_norm(g1, w3, req);
  CHECK(scaled.value ==
        doctest::Approx(std::pow(3.0, 1.5) * base.value).epsilon(1e-12));
}

TEST_CASE("cube norm: witness reproduces the value; trace is a running maximum") {
  const Grid g = make_grid(cube_box(3, 1.0), 16);
  const std::vector<double> absv = three_bumps(g, kDefaultSeed + 63);
  NormRequest req;
  req.kind = NormKind::KS;
  req.alpha = 2.0;
  req.beta = 1.5;
  req.k_min = -2;
  req.k_max = 4;
  const NormResult r = potential_norm(g, absv, req);
  REQUIRE(r.witness);
  CHECK(!r.zero_potential);

  std::vector<double> w(absv.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::pow(absv[i], 1.5);
  const double pair = cube_double_integral(g, w, *r.witness, 2.0);
  const double mass = cube_mass(g, w, *r.witness);
  REQUIRE(mass > 0.0);
  CHECK(r.value == doctest::Approx(pair / mass).epsilon(1e-10));

  REQUIRE(!r.trace.empty());
  // The scan walks fine-to-coarse; the running maximum never decreases.
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    CHECK(r.trace[i].value >= r.trace[i - 1].value);
    CHECK(r.trace[i].k == r.trace[i - 1].k - 1);
  }
  CHECK(r.trace.back().value == doctest::Approx(r.value).epsilon(1e-14));

  // All-zero input reports the zero flag and no witness.
  const std::vector<double> zeros(g.size(), 0.0);
  const NormResult rz = potential_norm(g, zeros, req);
  CHECK(rz.zero_potential);
  CHECK(rz.value == 0.0);
}

TEST_CASE("Kato norm of a ball indicator attains 2 pi R^2 at the center") {
  const Grid g = make_grid(cube_box(3, 1.0), 24);
  const double R = 0.75;
  std::vector<double> ind(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.node(i);
    ind[i] = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] <= R * R) ? 1.0 : 0.0;
  }
  NormRequest req;
  req.kind = NormKind::Kato;
  const NormResult r = potential_norm(g, ind, req);
  const double want = 2.0 * kPi * R * R;
  CHECK(r.value == doctest::Approx(want).epsilon(0.025));
  REQUIRE(r.witness_point);
  // The supremum sits at (near) the ball center.
  const auto& xw = *r.witness_point;
  CHECK(std::sqrt(xw[0] * xw[0] + xw[1] * xw[1] + xw[2] * xw[2]) < 0.15);
}

TEST_CASE("pair-energy norm of a ball indicator matches 4 pi^2 R^4") {
  // E[|x-y|^-2] over a ball of radius R has the closed form 9/(4 R^2),
  // giving int int |x-y|^{-2} = (4 pi R^3/3)^2 * 9/(4 R^2) = 4 pi^2 R^4.
  const Grid g = make_grid(cube_box(3, 1.0), 24);
  const double R = 0.75;
  std::vector<double> ind(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.node(i);
    ind[i] = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] <= R * R) ? 1.0 : 0.0;
  }
  NormRequest req;
  req.kind = NormKind::PairEnergy;
  const NormResult r = potential_norm(g, ind, req);
  CHECK(r.value == doctest::Approx(4.0 * kPi * kPi * std::pow(R, 4)).epsilon(0.025));
}

TEST_CASE("ball-average norm of a ball indicator peaks at its own radius") {
  // For f = 1_{B(0,R)} and p = 1 the profile r^(a-3) |B(0,r) cap B(0,R)|
  // increases as r^a up to r = R and decays beyond, so the supremum is
  // (4 pi / 3) R^a at radius exactly R.  R = 0.5 sits on the dyadic ladder
  // and the odd grid puts a node at the origin.
  const Grid g = make_grid(cube_box(3, 1.0625), 17);
  const double R = 0.5;
  std::vector<double> ind(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.node(i);
    ind[i] = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] <= R * R) ? 1.0 : 0.0;
  }
  NormRequest req;
  req.kind = NormKind::BallAverage;
  req.alpha = 1.5;
  req.p = 1.0;
  req.k_min = -1;
  req.k_max = 3;
  const NormResult r = potential_norm(g, ind, req);
  CHECK(r.value ==
        doctest::Approx(4.0 * kPi / 3.0 * std::pow(R, 1.5)).epsilon(0.08));
  REQUIRE(r.witness_radius);
  CHECK(*r.witness_radius == doctest::Approx(R).epsilon(1e-14));
  REQUIRE(r.witness_point);
  const auto& xw = *r.witness_point;
  CHECK(std::sqrt(xw[0] * xw[0] + xw[1] * xw[1] + xw[2] * xw[2]) < 1.5 * g.h[0]);
}

TEST_CASE("Lp norm of a Gaussian matches its closed form") {
  const Grid g = make_grid(cube_box(3, 1.5), 32);
  const double A = 1.7, width = 0.4;
  std::vector<double> w(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.node(i);
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    w[i] = A * std::exp(-r2 / (width * width));
  }
  NormRequest req;
  req.kind = NormKind::Lp;
  for (double p : {1.0, 2.0, 3.5}) {
    req.p = p;
    const NormResult r = potential_norm(g, w, req);
    const double want = A * std::pow(kPi * width * width / p, 1.5 / p);
    CHECK(r.value == doctest::Approx(want).epsilon(0.005));
  }
}

TEST_CASE("request validation rejects out-of-range parameters") {
  const Grid g = make_grid(cube_box(3, 1.0), 4);
  const std::vector<double> w(g.size(), 1.0);
  NormRequest req;

  req.kind = NormKind::KS;
  req.alpha = 3.0;  // must be < d
  CHECK_THROWS_AS((void)potential_norm(g, w, req), std::invalid_argument);
  req.alpha = 2.0;
  req.beta = 0.0;
  CHECK_THROWS_AS((void)potential_norm(g, w, req), std::invalid_argument);
  req.beta = 1.0;

  req.kind = NormKind::BallAverage;
  req.alpha = 2.0;
  req.p = 2.0;  // p must be <= d / alpha = 1.5
  CHECK_THROWS_AS((void)potential_norm(g, w, req), std::invalid_argument);

  req.kind = NormKind::Lp;
  req.p = 0.5;
  CHECK_THROWS_AS((void)potential_norm(g, w, req), std::invalid_argument);

  const Grid g2 = make_grid(cube_box(2, 1.0), 4);
  const std::vector<double> w2(g2.size(), 1.0);
  req.kind = NormKind::PairEnergy;
  CHECK_THROWS_AS((void)potential_norm(g2, w2, req), std::invalid_argument);
}

TEST_CASE("discrete fractional integral: symmetry, positivity, monotonicity") {
  const Grid g = make_grid(cube_box(3, 1.0), 12);
  std::mt19937_64 rng = make_rng(kDefaultSeed + 64);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cplx> f(g.size()), h(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    f[i] = cplx(u(rng), 0.0);
    h[i] = cplx(u(rng), 0.0);
  }
  const std::vector<cplx> If = apply_riesz(g, f, 2.0);
  const std::vector<cplx> Ih = apply_riesz(g, h, 2.0);

  // <h, I f> = <I h, f>: the kernel matrix is symmetric with uniform
  // quadrature weights.
  cplx lhs = 0.0, rhs = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    lhs += std::conj(h[i]) * If[i];
    rhs += std::conj(Ih[i]) * f[i];
  }
  CHECK(std::abs(lhs - rhs) < 1e-11 * std::abs(lhs));

  // Positive kernel: nonnegative input gives strictly positive output, and
  // raising the input pointwise raises the output pointwise.
  std::vector<cplx> f2(f);
  for (auto& x : f2) x += 0.25;
  const std::vector<cplx> If2 = apply_riesz(g, f2, 2.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(If[i].real() >= 0.0);
    CHECK(If2[i].real() > If[i].real());
  }

  CHECK_THROWS_AS((void)apply_riesz(g, f, 3.5), std::invalid_argument);
}

TEST_CASE("weighted fractional-integral ratio stays bounded over a corpus") {
  // The operator norm of w^{1/2} I_alpha w^{1/2}, divided by the cube norm
  // of w, must stay below a dimensional constant for every weight; this is
  // the comparison that powers the operator bounds.
  const Grid g = make_grid(cube_box(3, 1.0), 10);
  for (int member = 0; member < 6; ++member) {
    const std::vector<double> w = three_bumps(g, kDefaultSeed + 70 + member);
    for (double alpha : {1.5, 2.0}) {
      const double ratio = weighted_riesz_ratio(g, w, alpha);
      CHECK(ratio > 0.0);
      CHECK_MESSAGE(ratio < 50.0, "member=", member, " alpha=", alpha,
                    " ratio=", ratio);
    }
  }
}
