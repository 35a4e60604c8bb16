#pragma once

#include <cstddef>
#include <vector>

#include "ncpath/report.hpp"

namespace ncpath {

struct VerifyConfig {
  double theta = 1.0;
  double mass = 1.0;
  std::size_t fock_dim = 32;
  double tolerance = 1e-8;     // quadrature and closed-form identities
  double oracle_tolerance = 1e-4;  // truncated superoperator vs closed form
  bool no_star = false;        // replace the star by a pointwise product (negative control)
};

/// Runs every check in a fixed order and returns one row per check instance.
std::vector<CheckRow> run_verify_suite(const VerifyConfig& config);

}  // namespace ncpath
