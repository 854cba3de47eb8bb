#include "grodeph/problem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace grodeph {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void check_rate(double r, const char* name) {
  require(std::isfinite(r) && r >= 0.0 && r <= 1.0,
          std::string(name) + " must lie in [0, 1]");
}

}  // namespace

int ProblemSpec::basis_dim() const {
  switch (basis_kind) {
    case BasisKind::General7: return 7;
    case BasisKind::Coupled6: return 6;
    case BasisKind::EqualTreatment4: return 4;
  }
  return 0;
}

ProblemSpec select_basis(int n_elements, int noisy_count, NoiseKind noise_kind,
                         bool target_noisy) {
  require(n_elements >= 4, "n_elements must be at least 4");
  require(noisy_count >= 0 && noisy_count <= n_elements - 1,
          "noisy_count must lie in [0, N-1]");

  ProblemSpec spec;
  spec.n_elements = n_elements;
  spec.noisy_count = noisy_count;
  spec.noise_kind = noise_kind;
  spec.target_noisy = target_noisy;

  if (noisy_count == 0 || noisy_count == n_elements - 1) {
    spec.basis_kind = BasisKind::EqualTreatment4;
  } else if (noise_kind == NoiseKind::Coupled || noisy_count == 1) {
    spec.basis_kind = BasisKind::Coupled6;
  } else {
    spec.basis_kind = BasisKind::General7;
  }
  return spec;
}

NoiseParams make_noise_params(const ProblemSpec& spec, double base_rate) {
  return make_noise_params(spec, base_rate,
                           spec.target_noisy ? base_rate : 0.0);
}

NoiseParams make_noise_params(const ProblemSpec& spec, double normal_rate,
                              double target_rate) {
  check_rate(normal_rate, "normal_rate");
  check_rate(target_rate, "target_rate");
  if (!spec.target_noisy) {
    require(target_rate == 0.0, "target_rate must be 0 when the target is clean");
  } else if (spec.noise_kind == NoiseKind::Coupled && spec.noisy_count > 0) {
    require(target_rate == normal_rate,
            "coupled noise has a single block rate; a noisy target must share "
            "the normal rate");
  }

  NoiseParams np;
  switch (spec.basis_kind) {
    case BasisKind::EqualTreatment4: {
      // Reduce to the (normal-set rate, target rate) pair of the 4-dim
      // picture, where all N-1 normal elements are treated alike.
      double p_eff = 0.0;
      double q_eff = 0.0;
      if (spec.noisy_count == 0) {
        p_eff = 0.0;
        q_eff = spec.target_noisy ? target_rate : 0.0;
      } else {  // k = N-1, every normal element noisy
        if (spec.noise_kind == NoiseKind::Coupled) {
          if (spec.target_noisy) {
            // The block is the whole space; the channel is the identity.
            p_eff = 0.0;
            q_eff = 0.0;
          } else {
            // Block split {target} vs {normals}: only the target's
            // coherences are damped.
            p_eff = 0.0;
            q_eff = normal_rate;
          }
        } else {
          p_eff = normal_rate;
          q_eff = spec.target_noisy ? target_rate : 0.0;
        }
      }
      np.p = p_eff;
      np.q = q_eff;
      np.s = q_eff == 0.0 ? p_eff : 1.0 - (1.0 - p_eff) * (1.0 - q_eff);
      np.w = p_eff == 0.0 ? 0.0 : 1.0 - (1.0 - p_eff) * (1.0 - p_eff);
      break;
    }
    case BasisKind::Coupled6:
    case BasisKind::General7: {
      // For Coupled6 the w slot never enters the step (the merged block
      // operator is dephasing-invariant); it is still filled per the table.
      np.p = normal_rate;
      if (spec.noise_kind == NoiseKind::Coupled) {
        np.w = 0.0;
        np.q = spec.target_noisy ? normal_rate : 0.0;
        np.s = spec.target_noisy ? 0.0 : normal_rate;
      } else {
        np.w = 1.0 - (1.0 - normal_rate) * (1.0 - normal_rate);
        if (spec.target_noisy) {
          np.q = target_rate;
          np.s = 1.0 - (1.0 - normal_rate) * (1.0 - target_rate);
        } else {
          np.q = 0.0;
          np.s = normal_rate;
        }
      }
      break;
    }
  }
  return np;
}

}  // namespace grodeph
