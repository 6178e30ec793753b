#pragma once

#include <string>
#include <vector>

#include "mvop/report.hpp"
#include "mvop/systems.hpp"
#include "mvop/weight.hpp"

namespace mvop::tools {

struct SuiteOptions {
  int n_max = 5;
  Real h_first = 1e-4L;
  Real h_second = 1e-3L;
  DReading d_reading = DReading::inverse;
  SecondOrderReading second_order = SecondOrderReading::complete;
  /// Multiplies every tolerance (MVOP_TOL_SCALE).
  Real tol_scale = 1;
};

/// structural | discrete | continuous | closed | section-final | all
const std::vector<std::string>& suite_names();

/// Runs one suite at one s. "all" skips section-final for non-DG1 weights.
ResidualReport run_suite(const WeightSpec& spec, const std::string& suite, Real s, const SuiteOptions& opt);

/// Stable digest of the spec's JSON form (FNV-1a, hex).
std::string spec_digest(const WeightSpec& spec);

}  // namespace mvop::tools
