#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "grodeph/evolution_trace.hpp"
#include "grodeph/problem.hpp"

namespace grodeph {

/// Probability density of the random per-step phase kick, symmetric around 0
/// and supported on [-a, a].
///
/// Custom densities are tabulated on a uniform grid over [-a, a] with an odd
/// number of samples (>= 3) so composite Simpson applies directly; they must
/// be symmetric, non-negative and integrate to 1 within 1e-9.
struct PhaseDensity {
  enum class Kind { Uniform, PointMass, Custom };

  Kind kind = Kind::PointMass;
  double half_width = 0.0;        // a
  double phase = 0.0;             // point-mass location
  std::vector<double> table;      // density samples over [-a, a]
  std::vector<double> node_cdf;   // cumulative at the table nodes (sampling)

  static PhaseDensity uniform(double half_width);
  static PhaseDensity point_mass(double phase);
  static PhaseDensity custom(double half_width, std::vector<double> samples);
};

/// Star graph with center 0 and spokes 1..N; vertex 1 is marked and the
/// given spoke vertices apply a random phase to their outgoing center edge
/// at every step. The walker lives on the 2N edge states |0,j> and |j,0>.
struct StarWalkSpec {
  int spokes = 0;
  std::vector<int> faulty;  // spoke labels in 2..N
  PhaseDensity density;
};

/// Faulty set {2..k+1}.
StarWalkSpec make_star_walk(int spokes, int faulty_count, PhaseDensity density);

/// Dephasing rate of the phase-averaged channel:
/// 1 - p = integral of pi(phi) e^{i phi} = 2 * integral_0^a pi(phi) cos(phi).
/// Rejects asymmetric densities (including point masses away from 0) and
/// densities whose average factor falls outside [0, 1].
double averaged_dephasing_factor(const PhaseDensity& density);

/// The equivalent search problem: decoupled dephasing at the averaged rate
/// on k = |faulty| normal elements with a clean target. One step of the
/// mapped problem corresponds to two walk steps.
std::pair<ProblemSpec, NoiseParams> map_walk_to_grover(const StarWalkSpec& spec);

/// Deterministic evolution under the phase-averaged channel on the 2N-dim
/// edge density matrix; records the outgoing target-edge probability every
/// two walk steps (trace point m <-> walk step 2m).
EvolutionTrace simulate_walk_averaged(const StarWalkSpec& spec, int grover_steps);

/// Per-shot pure-state evolution with phases drawn independently per faulty
/// vertex per step. Returns the shot mean and its standard error at every
/// recorded step. Identical (seed, spec, steps, shots) inputs give
/// bit-identical results regardless of scheduling.
EvolutionTrace simulate_walk_montecarlo(const StarWalkSpec& spec, int grover_steps,
                                        int shots, std::uint64_t seed);

/// SplitMix64 finalizer applied in counter mode: a pure hash of the key
/// words, no sequential state. uniform01 maps the 53 high bits into [0, 1).
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t shot,
                           std::uint64_t step, std::uint64_t slot);
double counter_uniform01(std::uint64_t seed, std::uint64_t shot,
                         std::uint64_t step, std::uint64_t slot);

/// Phase draw for one (shot, step, faulty-slot) key under the density.
double sample_phase(const PhaseDensity& density, std::uint64_t seed,
                    std::uint64_t shot, std::uint64_t step, std::uint64_t slot);

}  // namespace grodeph
