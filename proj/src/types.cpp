#include "specenc/types.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace specenc {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Grid
// ---------------------------------------------------------------------------
Grid make_grid(const Box& box, int n_per_axis) {
  std::array<int, 3> n{1, 1, 1};
  for (int a = 0; a < box.d; ++a) n[a] = n_per_axis;
  return make_grid(box, n);
}

Grid make_grid(const Box& box, const std::array<int, 3>& n_per_axis) {
  Grid g;
  g.d = box.d;
  g.box = box;
  g.n = {1, 1, 1};
  for (int a = 0; a < box.d; ++a) {
    if (n_per_axis[a] < 1) throw std::invalid_argument("grid: points per axis must be >= 1");
    if (box.side(a) <= 0.0) throw std::invalid_argument("grid: degenerate box");
    g.n[a] = n_per_axis[a];
    g.h[a] = box.side(a) / n_per_axis[a];
  }
  const std::size_t total = static_cast<std::size_t>(g.n[0]) * g.n[1] * g.n[2];
  g.xs.resize(total);
  g.ys.resize(total);
  g.zs.resize(total);
  std::size_t idx = 0;
  for (int i0 = 0; i0 < g.n[0]; ++i0)
    for (int i1 = 0; i1 < g.n[1]; ++i1)
      for (int i2 = 0; i2 < g.n[2]; ++i2, ++idx) {
        g.xs[idx] = box.lo[0] + (i0 + 0.5) * g.h[0];
        g.ys[idx] = g.d >= 2 ? box.lo[1] + (i1 + 0.5) * g.h[1] : 0.0;
        g.zs[idx] = g.d >= 3 ? box.lo[2] + (i2 + 0.5) * g.h[2] : 0.0;
      }
  g.cell_volume = 1.0;
  for (int a = 0; a < box.d; ++a) g.cell_volume *= g.h[a];
  return g;
}

DyadicCube dyadic_cube_containing(int d, int k, const std::array<double, 3>& x) {
  DyadicCube q;
  q.k = k;
  const double scale = std::ldexp(1.0, k);  // 2^k
  for (int a = 0; a < d; ++a)
    q.m[a] = static_cast<std::int64_t>(std::floor(x[a] * scale));
  return q;
}

// ---------------------------------------------------------------------------
// Spectral parameter
// ---------------------------------------------------------------------------
cplx sqrt_branch(cplx lambda) {
  if (lambda.imag() == 0.0 && lambda.real() >= 0.0)
    throw std::domain_error("spectral parameter on the excluded half-axis [0, inf)");
  return std::sqrt(-lambda);  // principal branch => Re > 0 off the cut
}

SpectralPoint::SpectralPoint(cplx lambda_value) : lambda(lambda_value) {
  s = sqrt_branch(lambda_value);
  w_dir = std::sqrt(lambda_value);
  negative_real = (lambda_value.imag() == 0.0 && lambda_value.real() < 0.0);
}

// ---------------------------------------------------------------------------
// Potentials
// ---------------------------------------------------------------------------
cplx PotentialSpec::operator()(const std::array<double, 3>& x) const {
  if (!box.contains(x)) return {0.0, 0.0};
  switch (kind) {
    case PotentialKind::SquareWell: {
      for (int a = 0; a < d; ++a)
        if (std::abs(x[a] - center[a]) > width) return {0.0, 0.0};
      return amplitude;
    }
    case PotentialKind::Gaussian: {
      double r2 = 0.0;
      for (int a = 0; a < d; ++a) {
        const double t = x[a] - center[a];
        r2 += t * t;
      }
      return amplitude * std::exp(-r2 / (width * width));
    }
    case PotentialKind::InverseSquare: {
      double r2 = 0.0;
      for (int a = 0; a < d; ++a) r2 += x[a] * x[a];
      const double r = std::sqrt(r2);
      if (r < eps_cut || r > r_cut || r == 0.0) return {0.0, 0.0};
      return amplitude * std::pow(r, -sigma);
    }
    case PotentialKind::Sampled: {
      std::size_t idx = 0;
      for (int a = 0; a < d; ++a) {
        const double ha = box.side(a) / sample_n[a];
        int ia = static_cast<int>(std::floor((x[a] - box.lo[a]) / ha));
        ia = std::max(0, std::min(sample_n[a] - 1, ia));
        idx = idx * sample_n[a] + static_cast<std::size_t>(ia);
      }
      // Node order is (i0 * n1 + i1) * n2 + i2 with n[a]=1 for a >= d, so the
      // d-fold fold above matches when trailing factors are 1.
      return samples.at(idx);
    }
  }
  return {0.0, 0.0};
}

PotentialSpec square_well(int d, cplx amplitude, const Box& box) {
  PotentialSpec p;
  p.kind = PotentialKind::SquareWell;
  p.d = d;
  p.amplitude = amplitude;
  p.box = box;
  // Support equals the box: center it and use the largest half-width.
  double half = 0.0;
  for (int a = 0; a < d; ++a) {
    p.center[a] = 0.5 * (box.lo[a] + box.hi[a]);
    half = std::max(half, 0.5 * box.side(a));
  }
  p.width = half;
  return p;
}

PotentialSpec gaussian_potential(int d, cplx amplitude, double width,
                                 const std::array<double, 3>& center, const Box& box) {
  PotentialSpec p;
  p.kind = PotentialKind::Gaussian;
  p.d = d;
  p.amplitude = amplitude;
  p.width = width;
  p.center = center;
  p.box = box;
  return p;
}

PotentialSpec inverse_power_potential(int d, cplx amplitude, double sigma,
                                      double eps_cut, double r_cut, const Box& box) {
  if (r_cut <= eps_cut) throw std::invalid_argument("inverse power: outer cutoff must exceed inner");
  PotentialSpec p;
  p.kind = PotentialKind::InverseSquare;
  p.d = d;
  p.amplitude = amplitude;
  p.sigma = sigma;
  p.eps_cut = eps_cut;
  p.r_cut = r_cut;
  p.box = box;
  return p;
}

std::vector<cplx> sample_potential(const PotentialSpec& pot, const Grid& grid) {
  if (pot.d != grid.d) throw std::invalid_argument("potential/grid dimension mismatch");
  std::vector<cplx> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = pot(grid.node(i));
  return out;
}

// ---------------------------------------------------------------------------
// JSON / binary IO
// ---------------------------------------------------------------------------
namespace {

void check_keys(const ordered_json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw std::invalid_argument("unknown key \"" + it.key() + "\" in " + where);
}

ordered_json vec_json(const std::array<double, 3>& v, int d) {
  ordered_json a = ordered_json::array();
  for (int i = 0; i < d; ++i) a.push_back(v[i]);
  return a;
}

std::array<double, 3> vec_from_json(const ordered_json& a, int d, const std::string& where) {
  if (!a.is_array() || static_cast<int>(a.size()) != d)
    throw std::invalid_argument(where + " must be an array of length d");
  std::array<double, 3> v{0.0, 0.0, 0.0};
  for (int i = 0; i < d; ++i) v[i] = a[i].get<double>();
  return v;
}

cplx cplx_from_json(const ordered_json& a, const std::string& where) {
  if (!a.is_array() || a.size() != 2)
    throw std::invalid_argument(where + " must be [re, im]");
  return {a[0].get<double>(), a[1].get<double>()};
}

}  // namespace

std::string potential_to_json(const PotentialSpec& pot) {
  ordered_json j;
  j["schema_version"] = 1;
  j["d"] = pot.d;
  switch (pot.kind) {
    case PotentialKind::SquareWell:
      j["variant"] = "squareWell";
      j["depth"] = {pot.amplitude.real(), pot.amplitude.imag()};
      j["halfWidth"] = pot.width;
      j["center"] = vec_json(pot.center, pot.d);
      break;
    case PotentialKind::Gaussian:
      j["variant"] = "gaussian";
      j["amplitude"] = {pot.amplitude.real(), pot.amplitude.imag()};
      j["width"] = pot.width;
      j["center"] = vec_json(pot.center, pot.d);
      break;
    case PotentialKind::InverseSquare:
      j["variant"] = "inverseSquare";
      j["strength"] = pot.amplitude.real();
      j["exponent"] = pot.sigma;
      j["innerCutoff"] = pot.eps_cut;
      j["outerCutoff"] = pot.r_cut;
      break;
    case PotentialKind::Sampled: {
      j["variant"] = "sampled";
      ordered_json n = ordered_json::array();
      for (int a = 0; a < pot.d; ++a) n.push_back(pot.sample_n[a]);
      j["pointsPerAxis"] = n;
      j["samplesFile"] = "";  // caller fills in after save_samples_binary
      break;
    }
  }
  ordered_json box;
  box["lo"] = vec_json(pot.box.lo, pot.d);
  box["hi"] = vec_json(pot.box.hi, pot.d);
  j["box"] = box;
  return j.dump(2);
}

PotentialSpec potential_from_json(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("potential JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("potential JSON must be an object");
  if (!j.contains("variant")) throw std::invalid_argument("potential JSON missing \"variant\"");
  if (!j.contains("d")) throw std::invalid_argument("potential JSON missing \"d\"");

  PotentialSpec p;
  p.d = j["d"].get<int>();
  if (p.d < 1 || p.d > 3) throw std::invalid_argument("d must be 1, 2, or 3");
  const std::string variant = j["variant"].get<std::string>();

  const std::set<std::string> common = {"schema_version", "d", "variant", "box"};
  auto merged = [&common](std::initializer_list<std::string> extra) {
    std::set<std::string> s = common;
    for (const auto& e : extra) s.insert(e);
    return s;
  };

  if (!j.contains("box")) throw std::invalid_argument("potential JSON missing \"box\"");
  check_keys(j["box"], {"lo", "hi"}, "box");
  p.box.d = p.d;
  p.box.lo = vec_from_json(j["box"]["lo"], p.d, "box.lo");
  p.box.hi = vec_from_json(j["box"]["hi"], p.d, "box.hi");
  for (int a = 0; a < p.d; ++a)
    if (p.box.hi[a] <= p.box.lo[a]) throw std::invalid_argument("degenerate box");

  if (variant == "squareWell") {
    check_keys(j, merged({"depth", "halfWidth", "center"}), "squareWell potential");
    p.kind = PotentialKind::SquareWell;
    p.amplitude = cplx_from_json(j.at("depth"), "depth");
    p.width = j.at("halfWidth").get<double>();
    if (p.width <= 0.0) throw std::invalid_argument("halfWidth must be positive");
    p.center = j.contains("center") ? vec_from_json(j["center"], p.d, "center")
                                    : std::array<double, 3>{0.0, 0.0, 0.0};
  } else if (variant == "gaussian") {
    check_keys(j, merged({"amplitude", "width", "center"}), "gaussian potential");
    p.kind = PotentialKind::Gaussian;
    p.amplitude = cplx_from_json(j.at("amplitude"), "amplitude");
    p.width = j.at("width").get<double>();
    if (p.width <= 0.0) throw std::invalid_argument("width must be positive");
    p.center = j.contains("center") ? vec_from_json(j["center"], p.d, "center")
                                    : std::array<double, 3>{0.0, 0.0, 0.0};
  } else if (variant == "inverseSquare") {
    check_keys(j, merged({"strength", "exponent", "innerCutoff", "outerCutoff"}),
               "inverseSquare potential");
    p.kind = PotentialKind::InverseSquare;
    p.amplitude = cplx(j.at("strength").get<double>(), 0.0);
    p.sigma = j.at("exponent").get<double>();
    if (p.sigma <= 0.0 || p.sigma > 2.0)
      throw std::invalid_argument("exponent must lie in (0, 2]");
    p.eps_cut = j.at("innerCutoff").get<double>();
    p.r_cut = j.at("outerCutoff").get<double>();
    if (p.eps_cut < 0.0 || p.r_cut <= p.eps_cut)
      throw std::invalid_argument("cutoffs must satisfy 0 <= inner < outer");
  } else if (variant == "sampled") {
    check_keys(j, merged({"pointsPerAxis", "samplesFile"}), "sampled potential");
    p.kind = PotentialKind::Sampled;
    const auto& n = j.at("pointsPerAxis");
    if (!n.is_array() || static_cast<int>(n.size()) != p.d)
      throw std::invalid_argument("pointsPerAxis must have d entries");
    std::size_t total = 1;
    for (int a = 0; a < p.d; ++a) {
      p.sample_n[a] = n[a].get<int>();
      if (p.sample_n[a] < 1) throw std::invalid_argument("pointsPerAxis entries must be >= 1");
      total *= static_cast<std::size_t>(p.sample_n[a]);
    }
    p.samples = load_samples_binary(j.at("samplesFile").get<std::string>());
    if (p.samples.size() != total)
      throw std::invalid_argument("sample file length does not match pointsPerAxis");
  } else {
    throw std::invalid_argument("unknown potential variant \"" + variant + "\"");
  }
  return p;
}

PotentialSpec load_potential_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open potential file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return potential_from_json(ss.str());
}

void save_samples_binary(const std::vector<cplx>& samples, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  for (const cplx& z : samples) {
    const double re = z.real(), im = z.imag();
    out.write(reinterpret_cast<const char*>(&re), sizeof(double));
    out.write(reinterpret_cast<const char*>(&im), sizeof(double));
  }
}

std::vector<cplx> load_samples_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open sample file: " + path);
  std::vector<cplx> out;
  double buf[2];
  while (in.read(reinterpret_cast<char*>(buf), 2 * sizeof(double)))
    out.emplace_back(buf[0], buf[1]);
  return out;
}

}  // namespace specenc
