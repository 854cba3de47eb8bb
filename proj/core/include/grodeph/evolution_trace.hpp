#pragma once

#include <vector>

namespace grodeph {

struct TracePoint {
  int step = 0;          // number of oracle calls performed, m
  double p_success = 0;  // probability of finding the target at this point
};

/// Success-probability record of one simulated evolution, m = 0..steps.
/// `std_error` is populated only by Monte Carlo simulations (one entry per
/// point); it stays empty for deterministic propagators.
struct EvolutionTrace {
  std::vector<TracePoint> points;
  std::vector<double> std_error;

  double at(int step) const { return points.at(static_cast<std::size_t>(step)).p_success; }
  int last_step() const { return points.empty() ? -1 : points.back().step; }
};

}  // namespace grodeph
