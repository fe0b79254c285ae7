#pragma once

// Deterministic verification suites driving every module's invariants.
// Each suite aggregates its named checks, keeping the worst case of each
// inequality; identical (seed, config) runs produce identical reports.

#include <string>
#include <vector>

#include "unitj/numeric.hpp"
#include "unitj/report.hpp"

namespace unitj {

struct VerifyConfig {
  mpfr_prec_t precision = 256;
  uint64_t seed = 1;
  long cases = 0;  // 0 = full scale; otherwise shrinks ranges/case counts
};

struct Check {
  std::string name;
  std::string relation;
  std::string lhs, rhs;  // rendered worst case
  long cases = 0;
  bool pass = true;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  bool pass = true;
};

// heights, arith, lattice, ellipse-lemma, hecke, modular, curves, bounds
const std::vector<std::string>& suite_names();

// runs one suite ("all" is not a suite; callers expand it)
SuiteReport run_suite(const std::string& name, const VerifyConfig& cfg);

Json json_suite_report(const SuiteReport& rep);

}  // namespace unitj
