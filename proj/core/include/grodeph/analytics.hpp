#pragma once

#include <optional>
#include <string>

#include "grodeph/problem.hpp"
#include "grodeph/reduced.hpp"

namespace grodeph {

/// Noiseless success probability sin^2((2m+1) theta / 2), cos theta = 1-2/N.
double grover_success(int n_elements, int steps);

struct OptimalSteps {
  double exact;  // (pi/4) sqrt(N), the large-N optimum
  int rounded;   // nearest integer
};
OptimalSteps optimal_steps(int n_elements);

enum class Validity { InRegion, OutOfRegion };

/// First-order closed-form success probability together with a flag telling
/// whether the parameters satisfy the formula's stated applicability
/// condition. The asymptotic "much smaller" conditions are checked with a
/// fixed margin constant of 0.1 (see constraint_note).
struct ApproxResult {
  double value = 0.0;
  Validity validity = Validity::InRegion;
  std::string constraint_note;
};

/// All normal elements treated alike; p dephases the normal set, q the
/// target. Valid for p, q << 1/sqrt(N).
ApproxResult approx_equal_treatment(int n_elements, double p, double q, int steps);

/// Coupled block dephasing at rate p on k noisy normals, clean target.
/// Valid for k p << sqrt(N).
ApproxResult approx_coupled(int n_elements, int noisy_count, double p, int steps);

/// Independent dephasing at rate p on k noisy normals plus rate q on the
/// target. Valid for k p << sqrt(N) and q << 1/sqrt(N).
ApproxResult approx_decoupled_general(int n_elements, int noisy_count, double p,
                                      double q, int steps);

/// Dispatches to the closed form matching the scenario encoded in `spec`
/// (coupled noisy-target cases use the block-swap symmetry k -> N-k-1).
ApproxResult approx_for(const ProblemSpec& spec, double base_rate, int steps);

/// Long-time state of the noisy evolution started from the uniform
/// superposition, computed by repeated squaring of the one-step map with a
/// stationarity check. Returns nullopt (no limit) when the powers do not
/// settle, e.g. for zero noise where the evolution keeps rotating.
std::optional<SigmaState> limiting_state(const ProblemSpec& spec,
                                         const NoiseParams& noise);

}  // namespace grodeph
