#pragma once

#include <vector>

#include "grodeph/evolution_trace.hpp"
#include "grodeph/linalg.hpp"
#include "grodeph/problem.hpp"

namespace grodeph {

/// Coefficient vector over the active operator basis (dim 4, 6 or 7).
/// Slot 0 always carries the target population, so success probability is
/// coeffs[0]. Physical states have unit trace under trace_of().
struct SigmaState {
  std::vector<double> coeffs;

  int dim() const { return static_cast<int>(coeffs.size()); }
};

/// One step of the noisy evolution restricted to the invariant operator
/// subspace: first the diagonal dephasing, then the orthogonal matrix of the
/// search unitary's conjugation action.
struct ReducedStep {
  Matrix unitary;                 // dim x dim, orthogonal
  std::vector<double> dephasing;  // dim entries in [0, 1]

  int dim() const { return static_cast<int>(dephasing.size()); }
};

/// Coefficients of the uniform-superposition projector |s><s| in the basis
/// selected by `spec`.
SigmaState initial_state(const ProblemSpec& spec);

/// Builds the reduced propagator pieces for one step. Throws
/// std::invalid_argument when a rate lies outside [0, 1].
ReducedStep build_step(const ProblemSpec& spec, const NoiseParams& noise);

/// Applies dephasing then the unitary action: U * (D .* a).
SigmaState step(const SigmaState& state, const ReducedStep& reduced_step);

/// Iterates `step` from initial_state, recording the success probability
/// after every oracle call (m = 0..steps).
EvolutionTrace evolve(const ProblemSpec& spec, const NoiseParams& noise, int steps);

double success_probability(const SigmaState& state);

/// Trace functional of the basis: weights (1,0,1,0,0,0,sqrt k) for General7,
/// (1,1,1,0,0,0) for Coupled6 and (1,0,0,sqrt(N-1)) for EqualTreatment4.
double trace_of(const SigmaState& state, const ProblemSpec& spec);

/// Row vector of those weights; trace_of is its dot product with the state.
std::vector<double> trace_weights(const ProblemSpec& spec);

}  // namespace grodeph
