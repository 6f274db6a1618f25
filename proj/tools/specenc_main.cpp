// specenc: command-line front end for the eigenvalue-enclosure library.
//
// Subcommands:
//   norm       evaluate a potential norm (cube / local-average / pair-energy /
//              ball-average / Lp) and emit a JSON record with witness + trace
//   kernel     tabulate the fractional resolvent kernel envelope and its
//              fitted decay slopes (CSV ladder + JSON slope report)
//   bs-scan    scan the sandwiched-resolvent operator norm over a rectangle
//              of spectral parameters and emit a CSV exclusion mask
//   enclosure  evaluate the eigenvalue-enclosure report for a potential
//   verify     run the library's invariant suites
//
// Exit codes: 0 success; 1 a verification/invariant failure; 2 usage or
// config parse error (the offending key is named); 3 environmental error
// (missing or unreadable file).

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "specenc/birman_schwinger.hpp"
#include "specenc/enclosure.hpp"
#include "specenc/ks_norms.hpp"
#include "specenc/parallel.hpp"
#include "specenc/special_functions.hpp"
#include "specenc/types.hpp"
#include "specenc/verify.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace specenc;

constexpr int kExitOk = 0;
constexpr int kExitFailedCheck = 1;
constexpr int kExitUsage = 2;
constexpr int kExitEnvironment = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EnvironmentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int parse_threads(const std::string& text) {
  if (text == "auto") return resolve_threads(0);
  try {
    const int n = std::stoi(text);
    if (n < 0) throw UsageError("--threads must be >= 0 or 'auto'");
    return n;
  } catch (const std::invalid_argument&) {
    throw UsageError("--threads must be an integer or 'auto', got '" + text + "'");
  }
}

// Strict config loader: `allowed` maps config keys to a setter; any key
// outside the map aborts with exit code 2 and the key's name.
using ConfigSetter = std::function<void(const json&)>;

void apply_config(const std::string& path,
                  const std::map<std::string, ConfigSetter>& allowed) {
  std::ifstream in(path);
  if (!in) throw EnvironmentError("config file not found: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("config parse error in " + path + ": " + e.what());
  }
  if (!j.is_object()) throw UsageError("config root must be an object: " + path);
  for (const auto& [key, value] : j.items()) {
    const auto it = allowed.find(key);
    if (it == allowed.end())
      throw UsageError("unknown config key \"" + key + "\" in " + path);
    try {
      it->second(value);
    } catch (const json::exception& e) {
      throw UsageError("config key \"" + key + "\" in " + path + ": " + e.what());
    }
  }
}

PotentialSpec load_potential_or_die(const std::string& path) {
  if (!std::filesystem::exists(path))
    throw EnvironmentError("potential file not found: " + path);
  try {
    return load_potential_file(path);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("potential parse error: ") + e.what());
  }
}

void write_text_or_die(const std::string& path, const std::string& text) {
  std::ofstream of(path, std::ios::binary);
  if (!of) throw EnvironmentError("cannot open for writing: " + path);
  of << text;
  if (!of) throw EnvironmentError("write failed: " + path);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// norm subcommand
// ---------------------------------------------------------------------------
struct NormArgs {
  std::string potential, kind = "KS", out, config;
  double alpha = 2.0, beta = 1.0, p = 2.0;
  int k_min = -4, k_max = 6, grid_n = 32;
  std::string threads = "auto";
};

int run_norm(const NormArgs& args_in) {
  NormArgs args = args_in;
  if (!args.config.empty()) {
    apply_config(args.config,
                 {{"potential", [&](const json& v) { args.potential = v.get<std::string>(); }},
                  {"kind", [&](const json& v) { args.kind = v.get<std::string>(); }},
                  {"alpha", [&](const json& v) { args.alpha = v.get<double>(); }},
                  {"beta", [&](const json& v) { args.beta = v.get<double>(); }},
                  {"p", [&](const json& v) { args.p = v.get<double>(); }},
                  {"kMin", [&](const json& v) { args.k_min = v.get<int>(); }},
                  {"kMax", [&](const json& v) { args.k_max = v.get<int>(); }},
                  {"grid", [&](const json& v) { args.grid_n = v.get<int>(); }},
                  {"out", [&](const json& v) { args.out = v.get<std::string>(); }},
                  {"threads", [&](const json& v) {
                     args.threads = v.is_string() ? v.get<std::string>()
                                                  : std::to_string(v.get<int>());
                   }}});
  }
  if (args.potential.empty()) throw UsageError("norm: --potential is required");

  NormRequest req;
  if (args.kind == "KS")
    req.kind = NormKind::KS;
  else if (args.kind == "Kato")
    req.kind = NormKind::Kato;
  else if (args.kind == "PairEnergy")
    req.kind = NormKind::PairEnergy;
  else if (args.kind == "BallAverage")
    req.kind = NormKind::BallAverage;
  else if (args.kind == "Lp")
    req.kind = NormKind::Lp;
  else
    throw UsageError("unknown norm kind \"" + args.kind +
                     "\" (expected KS, Kato, PairEnergy, BallAverage, Lp)");
  req.alpha = args.alpha;
  req.beta = args.beta;
  req.p = args.p;
  req.k_min = args.k_min;
  req.k_max = args.k_max;
  req.threads = parse_threads(args.threads);

  const PotentialSpec pot = load_potential_or_die(args.potential);
  const Grid grid = make_grid(pot.box, args.grid_n);
  std::vector<double> absv(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) absv[i] = std::abs(pot(grid.node(i)));

  NormResult nr;
  try {
    nr = potential_norm(grid, absv, req);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("norm request rejected: ") + e.what());
  }

  json j;
  j["schema_version"] = 1;
  j["kind"] = args.kind;
  j["alpha"] = req.alpha;
  j["beta"] = req.beta;
  if (req.kind == NormKind::BallAverage || req.kind == NormKind::Lp) j["p"] = req.p;
  j["grid"] = args.grid_n;
  j["value"] = nr.value;
  j["zero_potential"] = nr.zero_potential;
  if (nr.witness) {
    j["witness"] = {{"k", nr.witness->k},
                    {"m", {nr.witness->m[0], nr.witness->m[1], nr.witness->m[2]}}};
  } else if (nr.witness_point) {
    j["witness"] = {{"point", {(*nr.witness_point)[0], (*nr.witness_point)[1],
                               (*nr.witness_point)[2]}}};
    if (nr.witness_radius) j["witness"]["radius"] = *nr.witness_radius;
  } else {
    j["witness"] = nullptr;
  }
  j["trace"] = json::array();
  for (const CubeTraceEntry& t : nr.trace)
    j["trace"].push_back({{"k", t.k}, {"value", t.value}});
  const std::string text = j.dump(2) + "\n";
  if (args.out.empty())
    std::cout << text;
  else
    write_text_or_die(args.out, text);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// kernel subcommand
// ---------------------------------------------------------------------------
struct KernelArgs {
  int d = 3;
  double zeta = 1.0;
  std::string lambda = "-1,0";
  std::string out = "kernel";  // prefix: <out>_ladder.csv, <out>_slopes.json
  std::string config;
};

cplx parse_complex_pair(const std::string& text, const std::string& what) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw UsageError(what + " expects 're,im', got '" + text + "'");
  try {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw UsageError(what + " expects 're,im', got '" + text + "'");
  }
}

int run_kernel(const KernelArgs& args_in) {
  KernelArgs args = args_in;
  if (!args.config.empty()) {
    apply_config(args.config,
                 {{"d", [&](const json& v) { args.d = v.get<int>(); }},
                  {"zeta", [&](const json& v) { args.zeta = v.get<double>(); }},
                  {"lambda",
                   [&](const json& v) {
                     if (v.is_array() && v.size() == 2)
                       args.lambda = std::to_string(v[0].get<double>()) + "," +
                                     std::to_string(v[1].get<double>());
                     else
                       args.lambda = v.get<std::string>();
                   }},
                  {"out", [&](const json& v) { args.out = v.get<std::string>(); }}});
  }
  const cplx lambda = parse_complex_pair(args.lambda, "--lambda");

  KernelBoundReport rep;
  try {
    rep = kernel_bound_report(args.d, args.zeta, lambda);
  } catch (const std::exception& e) {
    throw UsageError(std::string("kernel diagnostics rejected: ") + e.what());
  }

  // Ladder CSV: both regimes, envelope values and the predicted exponent.
  std::ostringstream csv;
  csv << "r,abs_k,arg_k,predicted_exponent\n";
  auto emit = [&](double lo, double hi, int n, double predicted) {
    const double q = std::pow(hi / lo, 1.0 / (n - 1));
    double r = lo;
    for (int i = 0; i < n; ++i, r *= q) {
      cplx k;
      try {
        k = fractional_resolvent_kernel(args.d, args.zeta, lambda, r);
      } catch (const std::domain_error&) {
        k = free_green(args.d, lambda, r);  // degenerate order: free kernel
      }
      csv << format_double(r) << ',' << format_double(std::abs(k)) << ','
          << format_double(std::arg(k)) << ',' << format_double(predicted) << "\n";
    }
  };
  emit(1e-5, 1e-3, 40, rep.small_r_expected);
  emit(3.0, 50.0, 40, rep.large_r_expected);
  write_text_or_die(args.out + "_ladder.csv", csv.str());

  json j;
  j["schema_version"] = 1;
  j["d"] = args.d;
  j["zeta"] = args.zeta;
  j["lambda"] = {lambda.real(), lambda.imag()};
  j["degenerate"] = rep.degenerate;
  j["small_r"] = {{"slope", rep.small_r_slope},
                  {"expected", rep.small_r_expected},
                  {"residual", rep.small_r_residual},
                  {"ok", rep.small_r_ok}};
  j["large_r"] = {{"slope", rep.large_r_slope},
                  {"expected", rep.large_r_expected},
                  {"residual", rep.large_r_residual},
                  {"ok", rep.large_r_ok}};
  write_text_or_die(args.out + "_slopes.json", j.dump(2) + "\n");

  std::cout << "kernel: small-r slope " << format_double(rep.small_r_slope)
            << " (expected " << format_double(rep.small_r_expected) << "), large-r slope "
            << format_double(rep.large_r_slope) << " (expected "
            << format_double(rep.large_r_expected) << ")\n";
  // Slope mismatches are verification failures, not usage errors.
  return (rep.small_r_ok || rep.degenerate) && rep.large_r_ok ? kExitOk
                                                              : kExitFailedCheck;
}

// ---------------------------------------------------------------------------
// bs-scan subcommand
// ---------------------------------------------------------------------------
struct ScanArgs {
  std::string potential, out = "scan.csv", config;
  std::string lambda_rect = "-4,-0.1,0,0";
  std::string res = "8x1";
  int grid_n = 24;
  double tol = 1e-8;
  std::string threads = "auto";
  bool no_warm_start = false;
};

int run_bs_scan(const ScanArgs& args_in) {
  ScanArgs args = args_in;
  if (!args.config.empty()) {
    apply_config(
        args.config,
        {{"potential", [&](const json& v) { args.potential = v.get<std::string>(); }},
         {"lambdaRect", [&](const json& v) { args.lambda_rect = v.get<std::string>(); }},
         {"res", [&](const json& v) { args.res = v.get<std::string>(); }},
         {"grid", [&](const json& v) { args.grid_n = v.get<int>(); }},
         {"tol", [&](const json& v) { args.tol = v.get<double>(); }},
         {"out", [&](const json& v) { args.out = v.get<std::string>(); }},
         {"noWarmStart", [&](const json& v) { args.no_warm_start = v.get<bool>(); }},
         {"threads", [&](const json& v) {
            args.threads = v.is_string() ? v.get<std::string>()
                                         : std::to_string(v.get<int>());
          }}});
  }
  if (args.potential.empty()) throw UsageError("bs-scan: --potential is required");

  // --lambda-rect re0,re1,im0,im1
  std::array<double, 4> rect{};
  {
    std::stringstream ss(args.lambda_rect);
    std::string item;
    int idx = 0;
    while (std::getline(ss, item, ',') && idx < 4) {
      try {
        rect[idx++] = std::stod(item);
      } catch (const std::exception&) {
        throw UsageError("--lambda-rect expects re0,re1,im0,im1");
      }
    }
    if (idx != 4) throw UsageError("--lambda-rect expects re0,re1,im0,im1");
  }
  int n_re = 0, n_im = 0;
  if (std::sscanf(args.res.c_str(), "%dx%d", &n_re, &n_im) != 2 || n_re < 1 || n_im < 1)
    throw UsageError("--res expects NxM with N, M >= 1");

  const PotentialSpec pot = load_potential_or_die(args.potential);
  const Grid grid = make_grid(pot.box, args.grid_n);
  std::vector<cplx> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = pot(grid.node(i));

  ScanRequest req;
  req.lambdas = lambda_rectangle(rect[0], rect[1], n_re, rect[2], rect[3], n_im);
  req.tol = args.tol;
  req.warm_start = !args.no_warm_start;
  req.threads = parse_threads(args.threads);
  const std::vector<ScanPoint> pts = lambda_scan(grid, v, req);

  std::ostringstream csv;
  csv << "re_lambda,im_lambda,op_norm,excluded,iters\n";
  for (const ScanPoint& p : pts) {
    csv << format_double(p.lambda.real()) << ',' << format_double(p.lambda.imag()) << ',';
    if (p.valid)
      csv << format_double(p.op_norm);
    else
      csv << "nan";
    csv << ',' << (p.excluded ? 1 : 0) << ',' << p.iters << "\n";
  }
  write_text_or_die(args.out, csv.str());

  std::size_t excluded = 0, skipped = 0;
  for (const ScanPoint& p : pts) {
    excluded += p.excluded ? 1 : 0;
    skipped += p.valid ? 0 : 1;
  }
  std::cout << "bs-scan: " << pts.size() << " points, " << excluded << " excluded, "
            << skipped << " skipped (on the continuous spectrum); note: exclusion "
            << "certificates are quadrature estimates, not rigorous bounds\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// enclosure subcommand
// ---------------------------------------------------------------------------
struct EnclosureArgs {
  std::string potential, out, ledger, config;
  double alpha = 2.0, constant = 1.0;
  std::string eigenvalues;  // "re,im;re,im;..."
  int grid_n = 48, k_min = -4, k_max = 6;
  bool deterministic = false;
  std::string threads = "auto";
};

int run_enclosure(const EnclosureArgs& args_in) {
  EnclosureArgs args = args_in;
  if (!args.config.empty()) {
    apply_config(
        args.config,
        {{"potential", [&](const json& v) { args.potential = v.get<std::string>(); }},
         {"alpha", [&](const json& v) { args.alpha = v.get<double>(); }},
         {"constant", [&](const json& v) { args.constant = v.get<double>(); }},
         {"eigenvalues", [&](const json& v) { args.eigenvalues = v.get<std::string>(); }},
         {"grid", [&](const json& v) { args.grid_n = v.get<int>(); }},
         {"kMin", [&](const json& v) { args.k_min = v.get<int>(); }},
         {"kMax", [&](const json& v) { args.k_max = v.get<int>(); }},
         {"out", [&](const json& v) { args.out = v.get<std::string>(); }},
         {"ledger", [&](const json& v) { args.ledger = v.get<std::string>(); }},
         {"deterministic", [&](const json& v) { args.deterministic = v.get<bool>(); }},
         {"threads", [&](const json& v) {
            args.threads = v.is_string() ? v.get<std::string>()
                                         : std::to_string(v.get<int>());
          }}});
  }
  if (args.potential.empty()) throw UsageError("enclosure: --potential is required");

  std::vector<cplx> evs;
  if (!args.eigenvalues.empty()) {
    std::stringstream ss(args.eigenvalues);
    std::string item;
    while (std::getline(ss, item, ';'))
      if (!item.empty()) evs.push_back(parse_complex_pair(item, "--eigenvalues"));
  }

  const PotentialSpec pot = load_potential_or_die(args.potential);
  EnclosureOptions opt;
  opt.grid_n = args.grid_n;
  opt.k_min = args.k_min;
  opt.k_max = args.k_max;
  opt.constant = args.constant;
  opt.threads = parse_threads(args.threads);
  opt.zero_timestamp = args.deterministic;

  EnclosureReport rep;
  try {
    rep = enclosure_report(pot, args.alpha, evs, opt);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("enclosure request rejected: ") + e.what());
  }
  const std::string text = enclosure_report_to_json(rep) + "\n";
  if (args.out.empty())
    std::cout << text;
  else
    write_text_or_die(args.out, text);

  if (!args.ledger.empty() && !evs.empty()) {
    CorpusMember mem;
    mem.pot = pot;
    mem.eigenvalues = evs;
    const EmpiricalConstant ec = empirical_constant({mem}, args.alpha, args.ledger, opt);
    std::cout << "empirical constant ledger " << args.ledger << ": value "
              << format_double(ec.value) << "\n";
  }

  // Failed eigenvalue checks mean the claimed point spectrum violates the
  // bound: report it through the exit code.
  for (const EigenvalueCheck& c : rep.checks)
    if (!c.pass) return kExitFailedCheck;
  if (rep.criterion_contradiction) return kExitFailedCheck;
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify subcommand
// ---------------------------------------------------------------------------
struct VerifyArgs {
  std::string suite = "all";
  std::string out = "verify_report.json";
  std::string threads = "auto";
  std::string config;
  bool deterministic = true;
  bool fault_inject = false;
};

int run_verify(const VerifyArgs& args_in) {
  VerifyArgs args = args_in;
  if (!args.config.empty()) {
    apply_config(args.config,
                 {{"suite", [&](const json& v) { args.suite = v.get<std::string>(); }},
                  {"out", [&](const json& v) { args.out = v.get<std::string>(); }},
                  {"deterministic",
                   [&](const json& v) { args.deterministic = v.get<bool>(); }},
                  {"threads", [&](const json& v) {
                     args.threads = v.is_string() ? v.get<std::string>()
                                                  : std::to_string(v.get<int>());
                   }}});
  }
  // Deterministic mode pins the thread count so reductions are reproducible.
  const int threads = args.deterministic ? 1 : parse_threads(args.threads);

  SuiteReport rep;
  try {
    rep = run_suite(args.suite, threads, args.fault_inject);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::cout << suite_report_to_table(rep);
  if (!args.out.empty()) write_text_or_die(args.out, suite_report_to_json(rep) + "\n");
  return rep.all_pass ? kExitOk : kExitFailedCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eigenvalue-enclosure toolkit for Schrodinger operators"};
  app.require_subcommand(1);

  NormArgs norm_args;
  CLI::App* norm = app.add_subcommand("norm", "evaluate a potential norm");
  norm->add_option("--potential", norm_args.potential, "potential JSON file");
  norm->add_option("--kind", norm_args.kind, "KS|Kato|PairEnergy|BallAverage|Lp");
  norm->add_option("--alpha", norm_args.alpha, "kernel exponent");
  norm->add_option("--beta", norm_args.beta, "power applied to |V|");
  norm->add_option("--p", norm_args.p, "integrability power (BallAverage, Lp)");
  norm->add_option("--kmin", norm_args.k_min, "coarsest dyadic generation");
  norm->add_option("--kmax", norm_args.k_max, "finest dyadic generation");
  norm->add_option("--grid", norm_args.grid_n, "samples per axis");
  norm->add_option("--out", norm_args.out, "output JSON path (default stdout)");
  norm->add_option("--threads", norm_args.threads, "worker threads or 'auto'");
  norm->add_option("--config", norm_args.config, "JSON config file");

  KernelArgs kernel_args;
  CLI::App* kernel = app.add_subcommand("kernel", "kernel decay diagnostics");
  kernel->add_option("--d", kernel_args.d, "dimension (1, 2, 3)");
  kernel->add_option("--zeta", kernel_args.zeta, "fractional resolvent power");
  kernel->add_option("--lambda", kernel_args.lambda, "spectral parameter re,im");
  kernel->add_option("--out", kernel_args.out, "output prefix");
  kernel->add_option("--config", kernel_args.config, "JSON config file");

  ScanArgs scan_args;
  CLI::App* scan = app.add_subcommand("bs-scan", "operator-norm exclusion scan");
  scan->add_option("--potential", scan_args.potential, "potential JSON file");
  scan->add_option("--lambda-rect", scan_args.lambda_rect, "re0,re1,im0,im1");
  scan->add_option("--res", scan_args.res, "grid NxM over the rectangle");
  scan->add_option("--grid", scan_args.grid_n, "samples per axis");
  scan->add_option("--tol", scan_args.tol, "power-iteration tolerance");
  scan->add_option("--out", scan_args.out, "output CSV path");
  scan->add_flag("--no-warm-start", scan_args.no_warm_start,
                 "evaluate scan points independently");
  scan->add_option("--threads", scan_args.threads, "worker threads or 'auto'");
  scan->add_option("--config", scan_args.config, "JSON config file");

  EnclosureArgs enc_args;
  CLI::App* enc = app.add_subcommand("enclosure", "eigenvalue-enclosure report");
  enc->add_option("--potential", enc_args.potential, "potential JSON file");
  enc->add_option("--alpha", enc_args.alpha, "norm exponent (ignored for d=1)");
  enc->add_option("--constant", enc_args.constant, "bound constant C");
  enc->add_option("--eigenvalues", enc_args.eigenvalues,
                  "semicolon-separated re,im pairs to check");
  enc->add_option("--grid", enc_args.grid_n, "samples per axis");
  enc->add_option("--kmin", enc_args.k_min, "coarsest dyadic generation");
  enc->add_option("--kmax", enc_args.k_max, "finest dyadic generation");
  enc->add_option("--out", enc_args.out, "report JSON path (default stdout)");
  enc->add_option("--ledger", enc_args.ledger, "empirical-constant ledger JSON");
  enc->add_flag("--deterministic", enc_args.deterministic, "zero ledger timestamps");
  enc->add_option("--threads", enc_args.threads, "worker threads or 'auto'");
  enc->add_option("--config", enc_args.config, "JSON config file");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "run invariant suites");
  verify
      ->add_option("suite", verify_args.suite,
                   "branch|norms|kernel|bs|enclosure|all")
      ->check(CLI::IsMember({"branch", "norms", "kernel", "bs", "enclosure", "all"}));
  verify->add_option("--out", verify_args.out, "report JSON path");
  verify->add_option("--threads", verify_args.threads, "worker threads or 'auto'");
  verify->add_flag("--deterministic,!--no-deterministic", verify_args.deterministic,
                   "byte-reproducible report (default on)");
  verify->add_flag("--fault-inject", verify_args.fault_inject,
                   "perturb a reference constant; the suite must then fail");
  verify->add_option("--config", verify_args.config, "JSON config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion")
      return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (norm->parsed()) return run_norm(norm_args);
    if (kernel->parsed()) return run_kernel(kernel_args);
    if (scan->parsed()) return run_bs_scan(scan_args);
    if (enc->parsed()) return run_enclosure(enc_args);
    if (verify->parsed()) return run_verify(verify_args);
    std::cerr << "error: no subcommand given\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const EnvironmentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEnvironment;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitFailedCheck;
  }
}
