#pragma once

#include <string>
#include <vector>

#include "sqzent/propagator.hpp"

namespace sqzent {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Running maxima of the structural diagnostics over every trajectory the
/// acceptance checks produce.
struct InvariantTracker {
  std::size_t trajectories = 0;
  std::size_t snapshots = 0;
  double trace_drift = 0.0;
  double hermiticity_drift = 0.0;
  double min_eigenvalue = 1.0;

  void record(const Trajectory& traj);
  void record(const DensityMatrix& rho);
};

inline constexpr int kCriterionCount = 9;

/// Runs one acceptance criterion (1..9). Criterion 9 re-runs the
/// trajectories of criteria 2-8 to collect its invariants.
CriterionResult run_criterion(int id, unsigned threads = 0);

/// Runs the listed criteria (all when empty), sharing trajectories.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids = {},
                                            unsigned threads = 0);

/// "[PASS] 3 name: detail (0.12 s)"
std::string format_result(const CriterionResult& r);

}  // namespace sqzent
