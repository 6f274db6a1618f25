// Enclosure reports (disk bound, one-dimensional sharp bound, scale-free
// criterion), the empirical best-constant ledger, the norm-chain comparison,
// and the multiscale inverse-square criterion evaluator.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "specenc/birman_schwinger.hpp"
#include "specenc/enclosure.hpp"
#include "specenc/types.hpp"

using namespace specenc;
using nlohmann::json;

namespace {

Box sym_box(int d, double half) {
  Box b;
  b.d = d;
  for (int a = 0; a < d; ++a) {
    b.lo[a] = -half;
    b.hi[a] = half;
  }
  return b;
}

const std::filesystem::path kTmp = std::filesystem::temp_directory_path();

}  // namespace

TEST_CASE("one-dimensional sharp bound on the classic well") {
  const PotentialSpec well = square_well(1, cplx(-2.0, 0.0), sym_box(1, 0.5));
  const auto eig = square_well_eigen_1d(cplx(-2.0, 0.0), 0.5);
  REQUIRE(eig.size() == 1);

  EnclosureOptions opt;
  opt.grid_n = 64;
  const EnclosureReport rep =
      enclosure_report(well, 0.0, {eig[0].lambda, cplx(-4.0, 0.0)}, opt);
  CHECK(rep.d == 1);
  CHECK(rep.exponent == doctest::Approx(0.5));
  CHECK(rep.constant == doctest::Approx(0.5));
  CHECK(rep.ks_value == doctest::Approx(2.0).epsilon(1e-9));  // int |V| = 2
  CHECK(rep.radius == doctest::Approx(1.0).epsilon(1e-9));    // (C int|V|)^2
  CHECK(!rep.scale_free);
  REQUIRE(rep.checks.size() == 2);
  // The true bound state satisfies the bound; |lambda| = 4 violates it.
  CHECK(rep.checks[0].pass);
  CHECK(rep.checks[0].lhs ==
        doctest::Approx(std::sqrt(std::abs(eig[0].lambda))).epsilon(1e-12));
  CHECK(!rep.checks[1].pass);
  CHECK(rep.checks[1].lhs == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("three-dimensional disk bound: derived parameters and circle geometry") {
  const PotentialSpec gauss =
      gaussian_potential(3, cplx(-2.0, 0.0), 0.45, {0, 0, 0}, sym_box(3, 1.2));
  EnclosureOptions opt;
  opt.grid_n = 16;

  const EnclosureReport probe = enclosure_report(gauss, 2.5, {}, opt);
  CHECK(probe.beta == doctest::Approx(1.5).epsilon(1e-14));      // (2a-d+1)/2
  CHECK(probe.exponent == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(probe.radius ==
        doctest::Approx(std::pow(probe.constant * probe.ks_value, 6.0)).epsilon(1e-10));
  CHECK(probe.checks.empty());

  // Eigenvalues strictly inside / outside the certified disk.
  const EnclosureReport rep = enclosure_report(
      gauss, 2.5,
      {cplx(-0.9 * probe.radius, 0.0), cplx(0.0, 1.1 * probe.radius)}, opt);
  REQUIRE(rep.checks.size() == 2);
  CHECK(rep.checks[0].pass);
  CHECK(!rep.checks[1].pass);

  // Admissible exponent windows: [d-1, d) in each dimension.
  CHECK_THROWS_AS((void)enclosure_report(gauss, 1.9, {}, opt), std::invalid_argument);
  CHECK_THROWS_AS((void)enclosure_report(gauss, 3.0, {}, opt), std::invalid_argument);
  const PotentialSpec g2 =
      gaussian_potential(2, cplx(-1.0, 0.0), 0.5, {0, 0, 0}, sym_box(2, 1.2));
  CHECK_THROWS_AS((void)enclosure_report(g2, 1.4, {}, opt), std::invalid_argument);
  const EnclosureReport rep2 = enclosure_report(g2, 1.7, {}, opt);
  CHECK(rep2.beta == doctest::Approx(1.2).epsilon(1e-14));
  CHECK(rep2.exponent == doctest::Approx(0.7 / 2.4).epsilon(1e-14));
}

TEST_CASE("scale-free exponent: criterion value and contradiction flag") {
  EnclosureOptions opt;
  opt.grid_n = 16;

  // A weak potential cannot host an eigenvalue at the scale-free exponent;
  // presenting one anyway must raise the contradiction flag.
  const PotentialSpec weak =
      gaussian_potential(3, cplx(-0.05, 0.0), 0.45, {0, 0, 0}, sym_box(3, 1.2));
  const EnclosureReport rep = enclosure_report(weak, 2.0, {cplx(-0.5, 0.0)}, opt);
  CHECK(rep.scale_free);
  CHECK(rep.exponent == doctest::Approx(0.0));
  CHECK(rep.beta == doctest::Approx(1.0));
  CHECK(rep.radius == doctest::Approx(rep.constant * rep.ks_value).epsilon(1e-14));
  CHECK(rep.radius < 1.0);
  CHECK(rep.criterion_contradiction);
  REQUIRE(rep.checks.size() == 1);
  CHECK(!rep.checks[0].pass);

  // Without eigenvalues there is nothing to contradict.
  const EnclosureReport quiet = enclosure_report(weak, 2.0, {}, opt);
  CHECK(!quiet.criterion_contradiction);

  // A strong potential clears the criterion, so no contradiction either.
  const PotentialSpec strong =
      gaussian_potential(3, cplx(-40.0, 0.0), 0.45, {0, 0, 0}, sym_box(3, 1.2));
  const EnclosureReport ok = enclosure_report(strong, 2.0, {cplx(-0.5, 0.0)}, opt);
  CHECK(ok.radius >= 1.0);
  CHECK(!ok.criterion_contradiction);
}

TEST_CASE("report serialization carries every field") {
  const PotentialSpec well = square_well(1, cplx(-2.0, 0.0), sym_box(1, 0.5));
  EnclosureOptions opt;
  opt.grid_n = 32;
  const EnclosureReport rep = enclosure_report(well, 0.0, {cplx(-0.6, 0.1)}, opt);
  const json j = json::parse(enclosure_report_to_json(rep));
  CHECK(j.at("schema_version").get<int>() == 1);
  CHECK(j.at("d").get<int>() == 1);
  CHECK(j.at("exponent").get<double>() == doctest::Approx(0.5));
  CHECK(j.at("ksValue").get<double>() == doctest::Approx(rep.ks_value));
  CHECK(j.at("radius").get<double>() == doctest::Approx(rep.radius));
  CHECK(j.at("scaleFree").get<bool>() == false);
  CHECK(j.at("criterionContradiction").get<bool>() == false);
  REQUIRE(j.at("checks").size() == 1);
  const json& c = j.at("checks")[0];
  CHECK(c.at("lambda")[0].get<double>() == doctest::Approx(-0.6));
  CHECK(c.at("lambda")[1].get<double>() == doctest::Approx(0.1));
  CHECK(c.contains("lhs"));
  CHECK(c.contains("rhs"));
  CHECK(c.contains("pass"));
  CHECK(!j.at("notes").get<std::string>().empty());
}

TEST_CASE("empirical constant: delta-like wells approach one half from below") {
  // For thin deep-at-fixed-area wells the ratio sqrt|lambda| / int|V| climbs
  // toward the sharp constant 1/2 but never reaches it.
  std::vector<CorpusMember> corpus;
  for (const auto& [depth, half] : std::vector<std::pair<double, double>>{
           {-2.0, 0.5}, {-1.0, 0.25}, {-0.4, 0.1}}) {
    CorpusMember m;
    m.pot = square_well(1, cplx(depth, 0.0), sym_box(1, half));
    const auto eig = square_well_eigen_1d(cplx(depth, 0.0), half);
    REQUIRE(!eig.empty());
    m.eigenvalues = {eig[0].lambda};
    corpus.push_back(std::move(m));
  }

  EnclosureOptions opt;
  opt.grid_n = 64;
  opt.zero_timestamp = true;
  const std::string path = (kTmp / "specenc_test_ledger.json").string();
  std::filesystem::remove(path);

  const EmpiricalConstant full = empirical_constant(corpus, 0.0, path, opt);
  CHECK(full.d == 1);
  CHECK(full.value > 0.49);
  CHECK(full.value < 0.5);

  {
    const json j = json::parse(std::ifstream(path));
    CHECK(j.at("value").get<double>() == doctest::Approx(full.value).epsilon(1e-14));
    CHECK(j.at("d").get<int>() == 1);
    CHECK(j.at("timestamp").get<long long>() == 0);
    CHECK(j.at("corpus_hash").get<std::uint64_t>() == full.corpus_hash);
  }

  // A weaker corpus may not lower the stored constant: without the ledger
  // its lone member sits near 0.39, with it the returned value stays merged.
  const std::vector<CorpusMember> weaker(corpus.begin(), corpus.begin() + 1);
  const EmpiricalConstant alone = empirical_constant(weaker, 0.0, "", opt);
  CHECK(alone.value == doctest::Approx(0.392378384155).epsilon(1e-6));
  const EmpiricalConstant partial = empirical_constant(weaker, 0.0, path, opt);
  CHECK(partial.value == doctest::Approx(full.value).epsilon(1e-14));
  {
    const json j = json::parse(std::ifstream(path));
    CHECK(j.at("value").get<double>() == doctest::Approx(full.value).epsilon(1e-14));
  }

  // Re-running the identical corpus reproduces the same hash (determinism).
  const EmpiricalConstant again = empirical_constant(corpus, 0.0, path, opt);
  CHECK(again.corpus_hash == full.corpus_hash);
  CHECK(again.value == doctest::Approx(full.value).epsilon(1e-14));

  // A corrupt ledger is treated as absent, not fatal.
  {
    std::ofstream of(path);
    of << "not json";
  }
  CHECK_NOTHROW((void)empirical_constant(weaker, 0.0, path, opt));
  std::filesystem::remove(path);

  CHECK_THROWS_AS((void)empirical_constant({}, 0.0, "", opt), std::invalid_argument);
  CorpusMember zero;
  zero.pot = square_well(1, cplx(0.0, 0.0), sym_box(1, 0.5));
  zero.eigenvalues = {cplx(-1.0, 0.0)};
  CHECK_THROWS_AS((void)empirical_constant({zero}, 0.0, "", opt), std::invalid_argument);
}

TEST_CASE("norm-chain comparison holds at the admissible corner") {
  const PotentialSpec gauss =
      gaussian_potential(3, cplx(-2.0, 0.0), 0.45, {0, 0, 0}, sym_box(3, 1.2));
  EnclosureOptions opt;
  opt.grid_n = 12;

  const ChainCheck c = norm_chain_check(gauss, 0.48, 1.98, 0.05, opt);
  CHECK(c.pass);
  CHECK(c.lhs <= c.rhs * 1.05);
  CHECK(c.delta == doctest::Approx(6.0 / 3.96).epsilon(1e-14));
  // Internal consistency: alpha = delta * beta and beta = alpha - 1 (d = 3).
  CHECK(c.alpha == doctest::Approx(c.delta * c.beta).epsilon(1e-12));
  CHECK(c.beta == doctest::Approx(c.alpha - 1.0).epsilon(1e-12));
  CHECK(c.alpha < 3.0);

  CHECK_THROWS_AS((void)norm_chain_check(gauss, 0.5, 1.98, 0.05, opt),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)norm_chain_check(gauss, 0.0, 1.98, 0.05, opt),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)norm_chain_check(gauss, 0.48, 1.90, 0.05, opt),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)norm_chain_check(gauss, 0.48, 2.00, 0.05, opt),
                  std::invalid_argument);
}

TEST_CASE("inverse-square criterion: exact linearity and input validation") {
  EnclosureOptions opt;
  opt.radial_template_n = 4;
  const double eps = 0.1, rc = 0.8;
  const double v1 = inverse_square_criterion(0.7, eps, rc, opt);
  const double v2 = inverse_square_criterion(1.4, eps, rc, opt);
  const double v3 = inverse_square_criterion(2.1, eps, rc, opt);
  CHECK(v1 > 0.0);
  CHECK(std::abs(v2 / v1 - 2.0) < 1e-14);
  CHECK(std::abs(v3 / v1 - 3.0) < 1e-14);
  CHECK(inverse_square_criterion(0.0, eps, rc, opt) == 0.0);

  CHECK_THROWS_AS((void)inverse_square_criterion(-1.0, eps, rc, opt),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)inverse_square_criterion(1.0, 0.0, rc, opt),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)inverse_square_criterion(1.0, 0.1, 0.2, opt),
                  std::invalid_argument);
}

TEST_CASE("inverse-square criterion: window deepening converges from below") {
  EnclosureOptions opt;
  opt.radial_template_n = 5;
  // Widening the truncation window in both directions raises the criterion
  // value, with shrinking increments (Cauchy behavior toward the plateau).
  const double a = 1.0;
  const double w1 = inverse_square_criterion(a, 0.08, 0.56, opt);
  const double w2 = inverse_square_criterion(a, 0.04, 1.12, opt);
  const double w3 = inverse_square_criterion(a, 0.02, 2.24, opt);
  CHECK(w1 < w2);
  CHECK(w2 < w3);
  CHECK(w2 - w1 > w3 - w2);

  // The quadrature is stable against the mesh-template resolution.
  EnclosureOptions fine;
  fine.radial_template_n = 8;
  const double f2 = inverse_square_criterion(a, 0.04, 1.12, fine);
  CHECK(std::abs(f2 - w2) < 0.03 * w2);
}
