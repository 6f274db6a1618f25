#include "specenc/enclosure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "specenc/cell_integrals.hpp"
#include "specenc/detail/fnv.hpp"
#include "specenc/parallel.hpp"

namespace specenc {

using json = nlohmann::ordered_json;

namespace {

// Exponent arithmetic for the enclosure radius, d >= 2.
double beta_of(double alpha, int d) { return 0.5 * (2.0 * alpha - d + 1.0); }
double exponent_of(double alpha, int d) {
  return (alpha - d + 1.0) / (2.0 * alpha - d + 1.0);
}

void validate_alpha(int d, double alpha) {
  const double lo = d == 2 ? 1.5 : d - 1.0;
  if (!(alpha >= lo && alpha < d)) {
    std::ostringstream os;
    os << "alpha = " << alpha << " outside [" << lo << ", " << d << ") for d = " << d;
    throw std::invalid_argument(os.str());
  }
}

std::vector<double> sample_abs(const PotentialSpec& pot, const Grid& grid) {
  std::vector<double> absv(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    absv[i] = std::abs(pot(grid.node(i)));
  return absv;
}

// Midpoint quadrature of |V| over the potential's box (1D).  Exact for a
// square well whose support equals the box; O(1/n) worst case otherwise.
double integral_abs_1d(const PotentialSpec& pot, int n = 1 << 17) {
  const double lo = pot.box.lo[0], hi = pot.box.hi[0];
  const double h = (hi - lo) / n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const std::array<double, 3> x{lo + (i + 0.5) * h, 0.0, 0.0};
    sum += std::abs(pot(x));
  }
  return sum * h;
}

NormResult cube_norm(const PotentialSpec& pot, double alpha, double beta,
                     const EnclosureOptions& opt) {
  const Grid grid = make_grid(pot.box, opt.grid_n);
  NormRequest req;
  req.kind = NormKind::KS;
  req.alpha = alpha;
  req.beta = beta;
  req.k_min = opt.k_min;
  req.k_max = opt.k_max;
  req.threads = opt.threads;
  return potential_norm(grid, sample_abs(pot, grid), req);
}

std::string convention_note(int d, double beta) {
  if (d == 3 && std::abs(beta - 1.0) < 1e-12) {
    return "alpha = 2 is the unique cube-norm exponent with "
           "beta = (2*alpha - d + 1)/2 = 1 in d = 3; displays quoting this "
           "scale-free case with exponent 3/2 or 3 are inconsistent with that "
           "relation and are evaluated as alpha = 2 here.";
  }
  return "";
}

long long ledger_timestamp(const EnclosureOptions& opt) {
  return opt.zero_timestamp ? 0LL : static_cast<long long>(std::time(nullptr));
}

}  // namespace

EnclosureReport enclosure_report(const PotentialSpec& pot, double alpha,
                                 const std::vector<cplx>& eigenvalues,
                                 const EnclosureOptions& opt) {
  EnclosureReport rep;
  rep.d = pot.d;

  if (pot.d == 1) {
    // Sharp one-dimensional bound |lambda|^{1/2} <= (1/2) int |V|.
    rep.alpha = 0.0;
    rep.beta = 1.0;
    rep.exponent = 0.5;
    rep.constant = 0.5;
    rep.ks_value = integral_abs_1d(pot);
    const double rhs = rep.constant * rep.ks_value;
    rep.radius = rhs * rhs;
    rep.notes = "one-dimensional mode: the constant 1/2 is sharp and fixed; "
                "ks_value holds int |V|.";
    for (const cplx& ev : eigenvalues) {
      EigenvalueCheck c;
      c.lambda = ev;
      c.lhs = std::sqrt(std::abs(ev));
      c.rhs = rhs;
      c.pass = c.lhs <= c.rhs;
      rep.checks.push_back(c);
    }
    return rep;
  }

  if (pot.d != 2 && pot.d != 3)
    throw std::invalid_argument("enclosure reports cover d = 1, 2, 3");
  validate_alpha(pot.d, alpha);

  rep.alpha = alpha;
  rep.beta = beta_of(alpha, pot.d);
  rep.exponent = exponent_of(alpha, pot.d);
  rep.constant = opt.constant;
  const NormResult nr = cube_norm(pot, alpha, rep.beta, opt);
  rep.ks_value = nr.zero_potential ? 0.0 : std::pow(nr.value, 1.0 / rep.beta);
  const double rhs = rep.constant * rep.ks_value;
  rep.scale_free = std::abs(rep.exponent) < 1e-12;
  rep.notes = convention_note(pot.d, rep.beta);

  if (rep.scale_free) {
    // |lambda|^0 = 1: an eigenvalue can exist only if C * ksValue >= 1.
    rep.radius = rhs;
    rep.criterion_contradiction = !eigenvalues.empty() && rhs < 1.0;
    for (const cplx& ev : eigenvalues) {
      EigenvalueCheck c;
      c.lambda = ev;
      c.lhs = 1.0;
      c.rhs = rhs;
      c.pass = c.lhs <= c.rhs;
      rep.checks.push_back(c);
    }
  } else {
    rep.radius = std::pow(rhs, 1.0 / rep.exponent);
    for (const cplx& ev : eigenvalues) {
      EigenvalueCheck c;
      c.lambda = ev;
      c.lhs = std::pow(std::abs(ev), rep.exponent);
      c.rhs = rhs;
      c.pass = c.lhs <= c.rhs;
      rep.checks.push_back(c);
    }
  }
  return rep;
}

EmpiricalConstant empirical_constant(const std::vector<CorpusMember>& corpus,
                                     double alpha, const std::string& ledger_path,
                                     const EnclosureOptions& opt) {
  if (corpus.empty()) throw std::invalid_argument("empirical constant needs a corpus");
  EmpiricalConstant out;
  out.alpha = alpha;
  out.d = corpus.front().pot.d;

  std::uint64_t h = detail::kFnvOffset;
  double best = 0.0;
  for (const CorpusMember& mem : corpus) {
    if (mem.pot.d != out.d)
      throw std::invalid_argument("corpus members must share a dimension");
    h = detail::fnv1a64(potential_to_json(mem.pot), h);
    EnclosureReport rep = enclosure_report(mem.pot, out.d == 1 ? 0.0 : alpha,
                                           mem.eigenvalues, opt);
    for (const cplx& ev : mem.eigenvalues) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g,%.17g;", ev.real(), ev.imag());
      h = detail::fnv1a64(buf, h);
      if (rep.ks_value <= 0.0)
        throw std::invalid_argument("corpus member has an eigenvalue but zero norm");
      const double lhs = out.d == 1 ? std::sqrt(std::abs(ev))
                                    : std::pow(std::abs(ev), rep.exponent);
      best = std::max(best, lhs / rep.ks_value);
    }
  }
  out.value = best;
  out.corpus_hash = h;

  if (!ledger_path.empty()) {
    // Monotone ledger: a stored value for the same study may only grow.
    double stored = 0.0;
    {
      std::ifstream in(ledger_path);
      if (in) {
        try {
          json j = json::parse(in);
          if (j.value("alpha", -1.0) == alpha && j.value("d", -1) == out.d)
            stored = j.value("value", 0.0);
        } catch (const json::exception&) {
          stored = 0.0;  // unreadable ledger: start over
        }
      }
    }
    out.value = std::max(out.value, stored);
    json j;
    j["schema_version"] = 1;
    j["alpha"] = alpha;
    j["d"] = out.d;
    j["value"] = out.value;
    j["corpus_hash"] = out.corpus_hash;
    j["timestamp"] = ledger_timestamp(opt);
    std::ofstream of(ledger_path);
    if (!of) throw std::runtime_error("cannot write ledger: " + ledger_path);
    of << j.dump(2) << "\n";
  }
  return out;
}

ChainCheck norm_chain_check(const PotentialSpec& pot, double gamma, double p,
                            double slack, const EnclosureOptions& opt) {
  const int d = pot.d;
  if (d < 2) throw std::invalid_argument("norm chain comparison needs d >= 2");
  if (!(gamma > 0.0 && gamma < 0.5))
    throw std::invalid_argument("gamma must lie in (0, 1/2)");
  const double p_lo = (d - 1.0) * (2.0 * gamma + d) / (2.0 * (d - 2.0 * gamma));
  const double p_hi = gamma + 0.5 * d;
  if (!(p > p_lo && p <= p_hi)) {
    std::ostringstream os;
    os << "p = " << p << " outside (" << p_lo << ", " << p_hi << "]";
    throw std::invalid_argument(os.str());
  }

  ChainCheck ck;
  ck.gamma = gamma;
  ck.p = p;
  ck.delta = 2.0 * d / (2.0 * gamma + d);
  ck.beta = (d - 1.0) / (2.0 * ck.delta - 2.0);
  ck.alpha = ck.delta * ck.beta;
  validate_alpha(d, ck.alpha);

  const Grid grid = make_grid(pot.box, opt.grid_n);
  const std::vector<double> absv = sample_abs(pot, grid);

  NormRequest ks;
  ks.kind = NormKind::KS;
  ks.alpha = ck.alpha;
  ks.beta = ck.beta;
  ks.k_min = opt.k_min;
  ks.k_max = opt.k_max;
  ks.threads = opt.threads;
  const NormResult lhs = potential_norm(grid, absv, ks);
  ck.lhs = lhs.zero_potential ? 0.0 : std::pow(lhs.value, 1.0 / ck.beta);

  NormRequest ball;
  ball.kind = NormKind::BallAverage;
  ball.alpha = ck.delta;
  ball.p = p;
  ball.k_min = opt.k_min;
  ball.k_max = opt.k_max;
  ball.threads = opt.threads;
  ck.rhs = potential_norm(grid, absv, ball).value;

  ck.pass = ck.lhs <= ck.rhs * (1.0 + slack);
  return ck;
}

namespace {

// One quadrature cell of the multiscale shell mesh: midpoint, side, average
// of the unit-amplitude truncated weight 1/|x|^2 over the cell, and the
// octave (shell index) the cell belongs to.
struct ShellCell {
  std::array<double, 3> c{0, 0, 0};
  double side = 0.0;
  double w = 0.0;  // window-truncated cell average of 1/|x|^2
  int octave = 0;
};

double cell_min_radius(const std::array<double, 3>& lo, double side) {
  double r2 = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    const double hi = lo[axis] + side;
    double t = 0.0;
    if (lo[axis] > 0.0)
      t = lo[axis];
    else if (hi < 0.0)
      t = hi;
    r2 += t * t;
  }
  return std::sqrt(r2);
}

double cell_max_radius(const std::array<double, 3>& lo, double side) {
  double r2 = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    const double hi = lo[axis] + side;
    const double t = std::max(std::abs(lo[axis]), std::abs(hi));
    r2 += t * t;
  }
  return std::sqrt(r2);
}

// Cell average of 1_{eps <= |x| <= r_cut} / |x|^2.  Interior cells use the
// midpoint value; cells cut by either truncation sphere are subsampled so
// the spheres do not alias onto whole cells.
double truncated_weight(const std::array<double, 3>& lo, double side, double eps,
                        double r_cut) {
  const double rmin = cell_min_radius(lo, side);
  const double rmax = cell_max_radius(lo, side);
  if (rmax <= eps || rmin >= r_cut) return 0.0;
  if (rmin >= eps && rmax <= r_cut) {
    const std::array<double, 3> c{lo[0] + 0.5 * side, lo[1] + 0.5 * side,
                                  lo[2] + 0.5 * side};
    return 1.0 / (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
  }
  constexpr int kSub = 6;
  const double h = side / kSub;
  double acc = 0.0;
  for (int i = 0; i < kSub; ++i)
    for (int j = 0; j < kSub; ++j)
      for (int k = 0; k < kSub; ++k) {
        const double x = lo[0] + (i + 0.5) * h;
        const double y = lo[1] + (j + 0.5) * h;
        const double z = lo[2] + (k + 0.5) * h;
        const double r2 = x * x + y * y + z * z;
        const double r = std::sqrt(r2);
        if (r >= eps && r <= r_cut) acc += 1.0 / r2;
      }
  return acc / (kSub * kSub * kSub);
}

}  // namespace

double inverse_square_criterion(double a, double eps_cut, double r_cut,
                                const EnclosureOptions& opt) {
  if (!(a >= 0.0)) throw std::invalid_argument("amplitude must be >= 0");
  if (!(eps_cut > 0.0) || !(r_cut > 2.0 * eps_cut))
    throw std::invalid_argument("cutoffs need 0 < eps and r_cut > 2 eps");
  if (a == 0.0) return 0.0;

  // Origin-cornered cubes [0, s)^3 carry the dyadic supremum for this
  // radially decreasing weight (the origin is a corner of every dyadic cube
  // meeting the support, and reflections leave the weight invariant).  The
  // cube of side s splits into self-similar L-shells  [0,s)^3 \ [0,s/2)^3,
  // each meshed as seven half-cubes with n0^3 cells; octaves continue until
  // a shell falls entirely below the inner cutoff.
  const int n0 = std::clamp(opt.radial_template_n, 2, 24);
  const double s_top = std::exp2(std::ceil(std::log2(r_cut)));
  const int octaves = std::max(
      1, static_cast<int>(std::ceil(std::log2(s_top * std::sqrt(3.0) / eps_cut))));

  std::vector<ShellCell> cells;
  for (int j = 0; j < octaves; ++j) {
    const double s = std::ldexp(s_top, -j);   // outer side of this shell
    const double half = 0.5 * s;              // half-cube side
    const double h = half / n0;               // cell side
    for (int ox = 0; ox < 2; ++ox)
      for (int oy = 0; oy < 2; ++oy)
        for (int oz = 0; oz < 2; ++oz) {
          if (ox == 0 && oy == 0 && oz == 0) continue;  // inner half-cube
          for (int i = 0; i < n0; ++i)
            for (int jj = 0; jj < n0; ++jj)
              for (int k = 0; k < n0; ++k) {
                const std::array<double, 3> lo{ox * half + i * h,
                                               oy * half + jj * h,
                                               oz * half + k * h};
                const double w = truncated_weight(lo, h, eps_cut, r_cut);
                if (w <= 0.0) continue;
                ShellCell cell;
                cell.c = {lo[0] + 0.5 * h, lo[1] + 0.5 * h, lo[2] + 0.5 * h};
                cell.side = h;
                cell.w = w;
                cell.octave = j;
                cells.push_back(cell);
              }
        }
  }
  if (cells.empty()) return 0.0;

  // Pair sums classified by the outermost octave a pair touches:
  //   pair_by_octave[t] = sum over pairs whose shallower member lies in
  //   octave t of  w_i w_m K(x_i, x_m) vol_i vol_m,
  // so the cube [0, s_top 2^-j)^3 accumulates the suffix t >= j.  Same-cell
  // pairs use the exact unit-cube pair integral of |x-y|^(2-d) scaled to the
  // cell (side^5 J_3), off-cell pairs the midpoint rule.
  const double pair_self = unit_cube_pair_integral(3, 2.0);
  const std::size_t n = cells.size();
  const int threads = resolve_threads(opt.threads);
  const int blocks = std::max(
      1, std::min<int>(threads, static_cast<int>(std::min<std::size_t>(n, 1024))));
  std::vector<std::vector<double>> pair_block(blocks,
                                              std::vector<double>(octaves, 0.0));
  std::vector<std::vector<double>> mass_block(blocks,
                                              std::vector<double>(octaves, 0.0));
  parallel_for_blocks(n, blocks, [&](int b, std::size_t begin, std::size_t end) {
    std::vector<double>& pb = pair_block[b];
    std::vector<double>& mb = mass_block[b];
    for (std::size_t i = begin; i < end; ++i) {
      const ShellCell& ci = cells[i];
      const double vol_i = ci.side * ci.side * ci.side;
      mb[ci.octave] += ci.w * vol_i;
      pb[ci.octave] += ci.w * ci.w * std::pow(ci.side, 5) * pair_self;
      for (std::size_t m = i + 1; m < n; ++m) {
        const ShellCell& cm = cells[m];
        const double dx = ci.c[0] - cm.c[0];
        const double dy = ci.c[1] - cm.c[1];
        const double dz = ci.c[2] - cm.c[2];
        const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
        const double vol_m = cm.side * cm.side * cm.side;
        const int outer = std::min(ci.octave, cm.octave);
        pb[outer] += 2.0 * ci.w * cm.w * vol_i * vol_m / dist;
      }
    }
  });
  std::vector<double> pair_by_octave(octaves, 0.0), mass_by_octave(octaves, 0.0);
  for (int b = 0; b < blocks; ++b)
    for (int t = 0; t < octaves; ++t) {
      pair_by_octave[t] += pair_block[b][t];
      mass_by_octave[t] += mass_block[b][t];
    }

  double best = 0.0, pair_suffix = 0.0, mass_suffix = 0.0;
  for (int j = octaves - 1; j >= 0; --j) {
    pair_suffix += pair_by_octave[j];
    mass_suffix += mass_by_octave[j];
    if (mass_suffix > 0.0) best = std::max(best, pair_suffix / mass_suffix);
  }
  return a * best;
}

std::string enclosure_report_to_json(const EnclosureReport& rep) {
  json j;
  j["schema_version"] = 1;
  j["d"] = rep.d;
  j["alpha"] = rep.alpha;
  j["beta"] = rep.beta;
  j["exponent"] = rep.exponent;
  j["ksValue"] = rep.ks_value;
  j["constant"] = rep.constant;
  j["radius"] = rep.radius;
  j["scaleFree"] = rep.scale_free;
  j["criterionContradiction"] = rep.criterion_contradiction;
  j["checks"] = json::array();
  for (const EigenvalueCheck& c : rep.checks) {
    json e;
    e["lambda"] = {c.lambda.real(), c.lambda.imag()};
    e["lhs"] = c.lhs;
    e["rhs"] = c.rhs;
    e["pass"] = c.pass;
    j["checks"].push_back(e);
  }
  j["notes"] = rep.notes;
  return j.dump(2);
}

}  // namespace specenc
