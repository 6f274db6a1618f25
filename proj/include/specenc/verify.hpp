#pragma once
// Self-check suites runnable from the CLI: each suite exercises the
// invariants of one module family and reports per-case pass/fail with the
// measured values.  Suites: branch, norms, kernel, bs, enclosure, all.

#include <string>
#include <vector>

namespace specenc {

struct CaseResult {
  std::string suite;
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double limit = 0.0;     // bound the measurement is held to
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CaseResult> cases;
  bool all_pass = true;
  int fail_count = 0;
};

// suite in {branch, norms, kernel, bs, enclosure, all}; deterministic mode
// zeroes every environment-dependent field in the emitted report (it holds
// no wall-clock times and a fixed timestamp).  fault_injection perturbs one
// quadrature constant to prove the suite can fail (used by CLI tests only).
SuiteReport run_suite(const std::string& suite, int threads = 0,
                      bool fault_injection = false);

// JSON report (schema_version 1): {"schema_version":1,"suite":...,
// "cases":[{"suite","name","pass","measured","limit","detail"}...],
// "all_pass":...,"fail_count":...,"timestamp":0}
std::string suite_report_to_json(const SuiteReport& rep);

// Plain-text table, one line per case.
std::string suite_report_to_table(const SuiteReport& rep);

}  // namespace specenc
