#pragma once

namespace grodeph {

enum class NoiseKind { Coupled, Decoupled };

/// Which invariant operator basis the reduced propagator runs in.
///
///   General7       - target / noisy normals / clean normals all distinct
///                    (decoupled noise, k >= 2 noisy normals, M >= 1 clean).
///   Coupled6       - noisy-normal diagonal merged into the noisy-normal
///                    block operator; exact for coupled noise with
///                    1 <= k <= N-2 and for decoupled noise with k = 1.
///   EqualTreatment4- every normal element handled identically (k = 0 or
///                    k = N-1); four operators survive.
enum class BasisKind { General7, Coupled6, EqualTreatment4 };

/// A single-target search problem of size N with k noise-affected normal
/// elements. Element labels are 1-based: target = 1, noisy normals = 2..k+1,
/// clean normals = k+2..N.
struct ProblemSpec {
  int n_elements = 0;       // N
  int noisy_count = 0;      // k, noisy *normal* elements (target not counted)
  NoiseKind noise_kind = NoiseKind::Coupled;
  bool target_noisy = false;
  BasisKind basis_kind = BasisKind::EqualTreatment4;

  int clean_count() const { return n_elements - noisy_count - 1; }
  int basis_dim() const;

  bool operator==(const ProblemSpec&) const = default;
};

/// Validates (N, k, kind, target flag) and derives the basis:
/// EqualTreatment4 when k = 0 or k = N-1, Coupled6 for coupled noise with
/// 1 <= k <= N-2 and for decoupled noise with k = 1, General7 otherwise.
/// Throws std::invalid_argument for N < 4 or k outside [0, N-1].
ProblemSpec select_basis(int n_elements, int noisy_count, NoiseKind noise_kind,
                         bool target_noisy);

/// Damping rates of the diagonal dephasing action on the operator basis:
///   p - noisy-normal <-> clean-normal coherences,
///   q - target <-> clean-normal coherences,
///   s - target <-> noisy-normal coherences,
///   w - coherences within the noisy-normal set.
/// Values are stored explicitly rather than recomputed so that combinations
/// outside the standard scenarios stay expressible.
struct NoiseParams {
  double p = 0.0;
  double q = 0.0;
  double s = 0.0;
  double w = 0.0;

  bool operator==(const NoiseParams&) const = default;
};

/// Standard parametrization for a uniform base rate on the noisy set:
///   coupled             w = 0
///   coupled, noisy tgt  s = 0,          q = rate
///   coupled, clean tgt  s = rate,       q = 0
///   decoupled           w = 2r - r^2  (i.e. 1 - w = (1-rate)^2)
///   decoupled, noisy    s = w,          q = rate
///   decoupled, clean    s = rate,       q = 0
/// For the EqualTreatment4 basis the rates are first mapped onto the
/// effective (normal-set rate, target rate) pair of that reduction.
NoiseParams make_noise_params(const ProblemSpec& spec, double base_rate);

/// Two-rate variant: `normal_rate` acts on the noisy normal elements and
/// `target_rate` on the target. Coupled noise admits only a single block
/// rate, so it requires target_rate == (target_noisy ? normal_rate : 0).
NoiseParams make_noise_params(const ProblemSpec& spec, double normal_rate,
                              double target_rate);

}  // namespace grodeph
