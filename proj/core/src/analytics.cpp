#include "grodeph/analytics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "grodeph/linalg.hpp"

namespace grodeph {

namespace {

// Margin constant substituted for the asymptotic "much smaller than"
// conditions: a << b is accepted as a < 0.1 b.
constexpr double kMargin = 0.1;

double theta_of(int n_elements) { return std::acos(1.0 - 2.0 / n_elements); }

std::string note(bool ok, const std::string& condition) {
  return (ok ? "satisfied: " : "violated: ") + condition;
}

}  // namespace

double grover_success(int n_elements, int steps) {
  if (n_elements < 2) throw std::invalid_argument("n_elements must be at least 2");
  if (steps < 0) throw std::invalid_argument("steps must be non-negative");
  const double arg = (2.0 * steps + 1.0) * theta_of(n_elements) / 2.0;
  const double s = std::sin(arg);
  return s * s;
}

OptimalSteps optimal_steps(int n_elements) {
  if (n_elements < 2) throw std::invalid_argument("n_elements must be at least 2");
  const double exact = std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(n_elements));
  return {exact, static_cast<int>(std::lround(exact))};
}

ApproxResult approx_equal_treatment(int n_elements, double p, double q, int steps) {
  const double n = n_elements;
  const double theta = theta_of(n_elements);
  const double stationary = std::pow(1.0 - n / (n - 1.0) * p, steps);
  const double damping =
      std::pow(1.0 - (2 * n - 3) / (2 * (n - 1)) * p - q / 2, steps);
  const double value = 1.0 / n + (n - 2) / (2 * n) * stationary -
                       0.5 * std::cos((2.0 * steps + 1.0) * theta) * damping;

  const double bound = kMargin / std::sqrt(n);
  const bool ok = p < bound && q < bound;
  return {value, ok ? Validity::InRegion : Validity::OutOfRegion,
          note(ok, "p, q < 0.1/sqrt(N)")};
}

ApproxResult approx_coupled(int n_elements, int noisy_count, double p, int steps) {
  const double n = n_elements;
  const double k = noisy_count;
  const double m_clean = n - k - 1;
  const double theta = theta_of(n_elements);
  const double denom = (n - 1) * (n - 1);
  const double stationary = std::pow(1.0 - 3 * k * m_clean / denom * p, steps);
  const double damping = std::pow(1.0 - k * (2 * n - k - 2) / (2 * denom) * p, steps);
  const double value = 1.0 / 3.0 + stationary / 6.0 -
                       0.5 * std::cos((2.0 * steps + 1.0) * theta) * damping;

  const bool ok = k * p < kMargin * std::sqrt(n);
  return {value, ok ? Validity::InRegion : Validity::OutOfRegion,
          note(ok, "k p < 0.1 sqrt(N)")};
}

ApproxResult approx_decoupled_general(int n_elements, int noisy_count, double p,
                                      double q, int steps) {
  const double n = n_elements;
  const double k = noisy_count;
  const double theta = theta_of(n_elements);
  const double denom = (n - 1) * (n - 1);
  const double stationary = std::pow(1.0 - (n - 2) * (k + 2) / denom * p, steps);
  const double damping =
      std::pow(1.0 - k * (2 * n - 3) / (2 * denom) * p - q / 2, steps);
  const double value = 1.0 / (k + 2) + k / (2 * (k + 2)) * stationary -
                       0.5 * std::cos((2.0 * steps + 1.0) * theta) * damping;

  const bool ok = k * p < kMargin * std::sqrt(n) && q < kMargin / std::sqrt(n);
  return {value, ok ? Validity::InRegion : Validity::OutOfRegion,
          note(ok, "k p < 0.1 sqrt(N) and q < 0.1/sqrt(N)")};
}

ApproxResult approx_for(const ProblemSpec& spec, double base_rate, int steps) {
  const int n = spec.n_elements;
  const int k = spec.noisy_count;
  const NoiseParams np = make_noise_params(spec, base_rate);
  switch (spec.basis_kind) {
    case BasisKind::EqualTreatment4:
      return approx_equal_treatment(n, np.p, np.q, steps);
    case BasisKind::Coupled6:
    case BasisKind::General7:
      if (spec.noise_kind == NoiseKind::Coupled) {
        // A noisy target sits in the small block; by the block symmetry of
        // coupled dephasing that is the clean-target problem on N-k-1.
        const int effective_k = spec.target_noisy ? n - k - 1 : k;
        return approx_coupled(n, effective_k, base_rate, steps);
      }
      return approx_decoupled_general(n, k, base_rate,
                                      spec.target_noisy ? base_rate : 0.0, steps);
  }
  throw std::logic_error("unreachable basis kind");
}

std::optional<SigmaState> limiting_state(const ProblemSpec& spec,
                                         const NoiseParams& noise) {
  const ReducedStep rs = build_step(spec, noise);
  const std::size_t dim = static_cast<std::size_t>(rs.dim());

  Matrix one_step = rs.unitary;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) one_step(i, j) *= rs.dephasing[j];

  const SigmaState init = initial_state(spec);
  const std::vector<double> weights = trace_weights(spec);
  const auto trace_after = [&](const Matrix& power) {
    const std::vector<double> v = matvec(power, init.coeffs);
    double tr = 0.0;
    for (std::size_t i = 0; i < dim; ++i) tr += weights[i] * v[i];
    return tr;
  };

  Matrix power = one_step;
  for (int squaring = 0; squaring < 60; ++squaring) {
    const Matrix advanced = matmul(power, one_step);
    const double scale = std::max(1.0, max_abs(power));
    if (max_abs_diff(advanced, power) < 1e-13 * scale) {
      std::vector<double> mu = matvec(power, init.coeffs);
      double tr = 0.0;
      for (std::size_t i = 0; i < dim; ++i) tr += weights[i] * mu[i];
      if (!(std::abs(tr) > 0.5)) return std::nullopt;
      for (double& c : mu) c /= tr;
      return SigmaState{std::move(mu)};
    }
    power = matmul(power, power);
    // Rescale so the trace-carrying component stays at 1; this stops the
    // rounding drift of the unit eigenvalue from compounding over squarings.
    const double tr = trace_after(power);
    if (std::abs(tr) > 0.25) {
      const double inv = 1.0 / tr;
      for (double& v : power.data()) v *= inv;
    }
  }
  return std::nullopt;
}

}  // namespace grodeph
