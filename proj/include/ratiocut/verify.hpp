#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ratiocut {

struct VerifyOptions {
  std::size_t seeds = 10;       // seeds 0 .. seeds-1
  std::size_t n_max = 8;        // largest graph in the enumeration checks
  double inner_tol = 1e-10;
  double c = 0.25;
  double descent_slack = 1e-7;  // fixed slack on the energy inequality
};

struct CheckOutcome {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Small-graph battery: tight relaxation, the exact norm identity of the
// explicit step, the energy inequality along descent runs, mean-zero and
// unit-sphere conservation, and the prox against independent references.
std::vector<CheckOutcome> run_verification(const VerifyOptions& opts);

}  // namespace ratiocut
