#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace focklab {

// One acceptance criterion outcome.
struct CriterionResult {
  int index = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  double tolerance_scale = 1.0;    // 0 forces every residual check to fail
  int m_override = -1;             // extra order for the weight-regularity checks
  std::vector<int> criteria = {};  // subset of 1..9; empty runs everything
};

// Runs the full acceptance suite; one line per criterion on `log` when given.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& options = {},
                                            std::ostream* log = nullptr);

}  // namespace focklab
