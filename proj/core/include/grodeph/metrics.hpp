#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "grodeph/evolution_trace.hpp"
#include "grodeph/problem.hpp"

namespace grodeph {

/// Success probabilities at or below this floor are unusable for the cost
/// model (the expected-step count would blow up on rounding noise).
inline constexpr double kSuccessFloor = 1e-12;

/// Expected total oracle calls of repeat-until-success with per-attempt
/// length m: (m+1)/p, counting one verification call per attempt.
/// nullopt when p_success is at or below the floor.
std::optional<double> expected_steps(double p_success, int steps);

struct CostCurve {
  struct Point {
    int steps = 0;
    std::optional<double> expected;  // nullopt marks an unusable entry
  };
  std::vector<Point> points;
};

/// Expected-cost curve of a trace, one point per recorded step m >= 1.
CostCurve cost_curve(const EvolutionTrace& trace);

struct OptimalCost {
  int steps = 0;
  double expected = 0.0;
};

/// Scans the trace over m >= 1 and returns the smallest m minimizing the
/// expected cost; nullopt when no usable point exists.
std::optional<OptimalCost> optimal_expected_steps(const EvolutionTrace& trace);

/// Attempt length policy for the scans: stop at the rounded noiseless
/// optimum, or minimize the expected cost over the scanned window.
enum class StoppingMode { FixedM0, Minimized };

/// Noisy-set size as a function of N: a fixed count or ceil(N^exponent).
struct NoisySetRule {
  enum class Kind { Fixed, PowerLaw };
  Kind kind = Kind::Fixed;
  int fixed_count = 0;
  double exponent = 0.0;

  static NoisySetRule fixed(int k) { return {Kind::Fixed, k, 0.0}; }
  static NoisySetRule power_law(double mu) { return {Kind::PowerLaw, 0, mu}; }
  int count_for(int n_elements) const;
};

struct GridConfig {
  std::vector<int> n_values;  // scanned in the given order, e.g. 2^6..2^16
  NoisySetRule k_rule;
  NoiseKind kind = NoiseKind::Decoupled;
  bool target_noisy = false;
  double normal_rate = 0.0;
  double target_rate = 0.0;   // used only when target_noisy
  StoppingMode mode = StoppingMode::FixedM0;
  double scan_cap_factor = 4.0;  // minimize over m <= cap * m0
};

struct ScalingRecord {
  int n_elements = 0;
  int noisy_count = 0;
  double p = 0.0;  // derived dephasing rate on the normal set
  double q = 0.0;  // derived dephasing rate on the target
  NoiseKind kind = NoiseKind::Decoupled;
  StoppingMode mode = StoppingMode::FixedM0;
  int m_used = 0;
  double mbar = 0.0;
};

/// One record per usable grid point, evolved with the reduced propagator.
/// Failed points are skipped (reported via the optional `errors` sink) and
/// records come back sorted by (N, k, p, q) so output is deterministic.
std::vector<ScalingRecord> scaling_scan(const GridConfig& grid,
                                        std::vector<std::string>* errors = nullptr);

struct ExponentFit {
  double beta = 0.0;    // least-squares slope of log(mbar) vs log(N)
  double stderr_ = 0.0;
  int n_min = 0;
  int n_max = 0;
};

/// Ordinary least squares on (log N, log mbar). Needs >= 3 records.
ExponentFit fit_exponent(std::span<const ScalingRecord> records);

}  // namespace grodeph
