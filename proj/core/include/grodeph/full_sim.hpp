#pragma once

#include <vector>

#include "grodeph/evolution_trace.hpp"
#include "grodeph/linalg.hpp"
#include "grodeph/problem.hpp"
#include "grodeph/reduced.hpp"

namespace grodeph {

/// Real N x N density matrix. Every state reachable here (uniform initial
/// projector, orthogonal search step, real dephasing masks) stays real.
using DensityMatrix = Matrix;

/// Dephasing applied to an explicit element set. Labels are 1-based:
/// target = 1, noisy normals = 2..k+1.
struct NoiseConfig {
  NoiseKind kind = NoiseKind::Coupled;
  std::vector<int> noisy_elements;
  double rate = 0.0;
};

/// Noisy set {2..k+1}, plus {1} when the target is noisy.
NoiseConfig make_noise_config(const ProblemSpec& spec, double base_rate);

/// Matrix of the search step G * R_f: the inversion about average composed
/// with the sign flip on element 1. Throws for n < 2.
Matrix grover_unitary(int n);

/// |s><s| with s the equal superposition of all n elements.
DensityMatrix uniform_superposition_density(int n);

/// Block dephasing: entries with exactly one index inside the set are scaled
/// by (1 - rate); everything else is untouched.
DensityMatrix apply_coupled_dephasing(DensityMatrix rho,
                                      const std::vector<int>& noisy_elements,
                                      double rate);

/// Independent dephasing of every set element: one index inside scales by
/// (1 - rate), two distinct indices inside by (1 - rate)^2, diagonal and
/// outside entries are untouched.
DensityMatrix apply_decoupled_dephasing(DensityMatrix rho,
                                        const std::vector<int>& noisy_elements,
                                        double rate);

/// One noisy step: dephasing first, then conjugation by the search unitary.
/// Uses the rank-one structure of the inversion about average, so a step is
/// O(N^2); agrees with explicit conjugation by grover_unitary().
DensityMatrix apply_noisy_step(DensityMatrix rho, const NoiseConfig& noise);

/// Evolves |s><s| for `steps` oracle calls, recording <1|rho|1>.
/// Throws ResourceCapError when n exceeds max_full_dimension().
EvolutionTrace evolve_full(int n, const NoiseConfig& noise, int steps);

/// Size cap for dense N x N simulations; GRODEPH_MAX_FULL_N overrides the
/// default of 512.
int max_full_dimension();

struct SigmaProjection {
  SigmaState state;
  double residual;  // Frobenius norm of the part outside the operator basis
};

/// Coefficients of rho in the operator basis selected by `spec`, together
/// with the out-of-subspace residual.
SigmaProjection project_to_sigma(const DensityMatrix& rho, const ProblemSpec& spec);

}  // namespace grodeph
