#include "grodeph/reduced.hpp"

#include <cmath>
#include <stdexcept>

namespace grodeph {

namespace {

void check_spec_basis(const ProblemSpec& spec) {
  const int k = spec.noisy_count;
  const int m = spec.clean_count();
  switch (spec.basis_kind) {
    case BasisKind::General7:
      if (k < 2 || m < 1)
        throw std::invalid_argument("General7 basis needs k >= 2 and M >= 1");
      break;
    case BasisKind::Coupled6:
      if (k < 1 || m < 1)
        throw std::invalid_argument("Coupled6 basis needs k >= 1 and M >= 1");
      break;
    case BasisKind::EqualTreatment4:
      break;
  }
  if (spec.n_elements < 4) throw std::invalid_argument("n_elements must be at least 4");
}

void check_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

Matrix unitary_general7(double n, double k, double m) {
  const double t = 2.0 / n;
  const double r = 1.0 - t;
  Matrix u(7, 7);

  u(0, 0) = r * r;
  u(1, 0) = t * t * std::sqrt(k * (k - 1));
  u(2, 0) = t * t * m;
  u(3, 0) = -r * t * std::sqrt(2 * k);
  u(4, 0) = t * t * std::sqrt(2 * k * m);
  u(5, 0) = -r * t * std::sqrt(2 * m);
  u(6, 0) = t * t * std::sqrt(k);

  u(0, 1) = t * t * std::sqrt(k * (k - 1));
  u(1, 1) = 1 + t * (k - 1) * (t * k - 2);
  u(2, 1) = t * t * m * std::sqrt(k * (k - 1));
  u(3, 1) = t * (t * k - 1) * std::sqrt(2 * (k - 1));
  u(4, 1) = t * (t * k - 1) * std::sqrt(2 * m * (k - 1));
  u(5, 1) = t * t * std::sqrt(2 * m * k * (k - 1));
  u(6, 1) = t * (t * k - 2) * std::sqrt(k - 1);

  u(0, 2) = t * t * m;
  u(1, 2) = t * t * m * std::sqrt(k * (k - 1));
  u(2, 2) = (1 - t * m) * (1 - t * m);
  u(3, 2) = t * t * m * std::sqrt(2 * k);
  u(4, 2) = -t * (1 - t * m) * std::sqrt(2 * m) * std::sqrt(k);
  u(5, 2) = -t * (1 - t * m) * std::sqrt(2 * m);
  u(6, 2) = t * t * m * std::sqrt(k);

  u(0, 3) = t * r * std::sqrt(2 * k);
  u(1, 3) = std::sqrt(2.0) * t * (1 - t * k) * std::sqrt(k - 1);
  u(2, 3) = -t * t * m * std::sqrt(2 * k);
  u(3, 3) = -(r - t * k * (1 - 2 * t));
  u(4, 3) = t * (1 - 2 * t * k) * std::sqrt(m);
  u(5, 3) = t * (1 - 2 * t) * std::sqrt(m * k);
  u(6, 3) = std::sqrt(2.0) * t * (1 - t * k);

  u(0, 4) = t * t * std::sqrt(2 * m * k);
  u(1, 4) = t * (t * k - 1) * std::sqrt(2 * m) * std::sqrt(k - 1);
  u(2, 4) = t * (t * m - 1) * std::sqrt(2 * m * k);
  u(3, 4) = t * (2 * t * k - 1) * std::sqrt(m);
  u(4, 4) = 2 * t * t * m * k - r;
  u(5, 4) = t * (2 * t * m - 1) * std::sqrt(k);
  u(6, 4) = t * (t * k - 1) * std::sqrt(2 * m);

  u(0, 5) = t * r * std::sqrt(2 * m);
  u(1, 5) = -t * t * std::sqrt(2 * m * k) * std::sqrt(k - 1);
  u(2, 5) = -t * (t * m - 1) * std::sqrt(2 * m);
  u(3, 5) = t * (1 - 2 * t) * std::sqrt(m * k);
  u(4, 5) = t * (1 - 2 * t * m) * std::sqrt(k);
  u(5, 5) = 1 - t * k - 2 * t * t * m;
  u(6, 5) = -t * t * std::sqrt(2 * m * k);

  u(0, 6) = t * t * std::sqrt(k);
  u(1, 6) = -t * (2 - t * k) * std::sqrt(k - 1);
  u(2, 6) = t * t * m * std::sqrt(k);
  u(3, 6) = std::sqrt(2.0) * t * (t * k - 1);
  u(4, 6) = std::sqrt(2.0) * t * (t * k - 1) * std::sqrt(m);
  u(5, 6) = t * t * std::sqrt(2 * m * k);
  u(6, 6) = 1 - 2 * t + t * t * k;

  return u;
}

Matrix unitary_coupled6(double n, double k, double m) {
  const double t = 2.0 / n;
  const double r = 1.0 - t;
  Matrix u(6, 6);

  u(0, 0) = r * r;
  u(1, 0) = t * t * k;
  u(2, 0) = t * t * m;
  u(3, 0) = -r * t * std::sqrt(2 * k);
  u(4, 0) = t * t * std::sqrt(2 * k * m);
  u(5, 0) = -r * t * std::sqrt(2 * m);

  u(0, 1) = t * t * k;
  u(1, 1) = (1 - t * k) * (1 - t * k);
  u(2, 1) = t * t * k * m;
  u(3, 1) = -t * std::sqrt(2 * k) * (1 - t * k);
  u(4, 1) = -t * std::sqrt(2 * k * m) * (1 - t * k);
  u(5, 1) = t * t * k * std::sqrt(2 * m);

  u(0, 2) = t * t * m;
  u(1, 2) = t * t * m * k;
  u(2, 2) = (1 - t * m) * (1 - t * m);
  u(3, 2) = t * t * m * std::sqrt(2 * k);
  u(4, 2) = -t * (1 - t * m) * std::sqrt(2 * m * k);
  u(5, 2) = -t * (1 - t * m) * std::sqrt(2 * m);

  u(0, 3) = t * r * std::sqrt(2 * k);
  u(1, 3) = std::sqrt(2.0) * t * (1 - t * k) * std::sqrt(k);
  u(2, 3) = -t * t * m * std::sqrt(2 * k);
  u(3, 3) = -(r - t * k * (1 - 2 * t));
  u(4, 3) = t * (1 - 2 * t * k) * std::sqrt(m);
  u(5, 3) = t * (1 - 2 * t) * std::sqrt(m * k);

  u(0, 4) = t * t * std::sqrt(2 * m * k);
  u(1, 4) = t * (t * k - 1) * std::sqrt(2 * m * k);
  u(2, 4) = t * (t * m - 1) * std::sqrt(2 * m * k);
  u(3, 4) = t * (2 * t * k - 1) * std::sqrt(m);
  u(4, 4) = 2 * t * t * m * k - r;
  u(5, 4) = t * (2 * t * m - 1) * std::sqrt(k);

  u(0, 5) = t * r * std::sqrt(2 * m);
  u(1, 5) = -t * t * std::sqrt(2 * m * k) * std::sqrt(k);
  u(2, 5) = -t * (t * m - 1) * std::sqrt(2 * m);
  u(3, 5) = t * (1 - 2 * t) * std::sqrt(m * k);
  u(4, 5) = t * (1 - 2 * t * m) * std::sqrt(k);
  u(5, 5) = 1 - t * k - 2 * t * t * m;

  return u;
}

Matrix unitary_equal4(double n) {
  const double t = 2.0 / n;
  const double r = 1.0 - t;
  Matrix u(4, 4);

  u(0, 0) = r * r;
  u(1, 0) = t * std::sqrt(2 * r * (1 + r));
  u(2, 0) = -r * std::sqrt(2 * t * (1 + r));
  u(3, 0) = t * std::sqrt(t * (1 + r));

  u(0, 1) = t * std::sqrt(2 * r * (1 + r));
  u(1, 1) = 1 - 2 * r * t;
  u(2, 1) = 2 * r * std::sqrt(r * t);
  u(3, 1) = -t * std::sqrt(2 * r * t);

  u(0, 2) = r * std::sqrt(2 * t * (1 + r));
  u(1, 2) = -2 * r * std::sqrt(r * t);
  u(2, 2) = 2 * r * r - 1;
  u(3, 2) = -std::sqrt(2.0) * r * t;

  // The diagonal-block image: its second coefficient is fixed to -t*sqrt(2rt)
  // by orthonormality (it is the k = N-1 restriction of the general rules).
  u(0, 3) = t * std::sqrt(t * (1 + r));
  u(1, 3) = -t * std::sqrt(2 * r * t);
  u(2, 3) = std::sqrt(2.0) * r * t;
  u(3, 3) = r * (1 + t);

  return u;
}

}  // namespace

SigmaState initial_state(const ProblemSpec& spec) {
  check_spec_basis(spec);
  const double n = spec.n_elements;
  const double k = spec.noisy_count;
  const double m = spec.clean_count();
  const double t = 2.0 / n;
  const double r = 1.0 - t;

  SigmaState state;
  switch (spec.basis_kind) {
    case BasisKind::General7:
      state.coeffs = {1.0, std::sqrt(k * (k - 1)), m, std::sqrt(2 * k),
                      std::sqrt(2 * m * k), std::sqrt(2 * m), std::sqrt(k)};
      for (double& c : state.coeffs) c *= t / 2;
      break;
    case BasisKind::Coupled6:
      state.coeffs = {1.0, k, m, std::sqrt(2 * k), std::sqrt(2 * k * m),
                      std::sqrt(2 * m)};
      for (double& c : state.coeffs) c *= t / 2;
      break;
    case BasisKind::EqualTreatment4:
      state.coeffs = {t, std::sqrt(2 * r * (1 + r)), std::sqrt(2 * t * (1 + r)),
                      std::sqrt(t * (1 + r))};
      for (double& c : state.coeffs) c *= 0.5;
      break;
  }
  return state;
}

ReducedStep build_step(const ProblemSpec& spec, const NoiseParams& noise) {
  check_spec_basis(spec);
  check_unit_interval(noise.p, "p");
  check_unit_interval(noise.q, "q");
  check_unit_interval(noise.s, "s");
  check_unit_interval(noise.w, "w");

  const double n = spec.n_elements;
  const double k = spec.noisy_count;
  const double m = spec.clean_count();

  ReducedStep rs;
  switch (spec.basis_kind) {
    case BasisKind::General7:
      rs.unitary = unitary_general7(n, k, m);
      rs.dephasing = {1.0, 1.0 - noise.w, 1.0, 1.0 - noise.s,
                      1.0 - noise.p, 1.0 - noise.q, 1.0};
      break;
    case BasisKind::Coupled6:
      rs.unitary = unitary_coupled6(n, k, m);
      rs.dephasing = {1.0, 1.0, 1.0, 1.0 - noise.s, 1.0 - noise.p, 1.0 - noise.q};
      break;
    case BasisKind::EqualTreatment4:
      rs.unitary = unitary_equal4(n);
      rs.dephasing = {1.0, (1 - noise.p) * (1 - noise.p),
                      (1 - noise.p) * (1 - noise.q), 1.0};
      break;
  }
  return rs;
}

SigmaState step(const SigmaState& state, const ReducedStep& reduced_step) {
  if (state.dim() != reduced_step.dim())
    throw std::invalid_argument("state / step dimension mismatch");
  std::vector<double> damped(state.coeffs);
  for (int i = 0; i < reduced_step.dim(); ++i) damped[i] *= reduced_step.dephasing[i];
  return SigmaState{matvec(reduced_step.unitary, damped)};
}

EvolutionTrace evolve(const ProblemSpec& spec, const NoiseParams& noise, int steps) {
  if (steps < 0) throw std::invalid_argument("steps must be non-negative");
  const ReducedStep rs = build_step(spec, noise);
  SigmaState state = initial_state(spec);

  EvolutionTrace trace;
  trace.points.reserve(static_cast<std::size_t>(steps) + 1);
  trace.points.push_back({0, success_probability(state)});
  for (int m = 1; m <= steps; ++m) {
    state = step(state, rs);
    trace.points.push_back({m, success_probability(state)});
  }
  return trace;
}

double success_probability(const SigmaState& state) { return state.coeffs.at(0); }

std::vector<double> trace_weights(const ProblemSpec& spec) {
  const double k = spec.noisy_count;
  switch (spec.basis_kind) {
    case BasisKind::General7:
      return {1, 0, 1, 0, 0, 0, std::sqrt(k)};
    case BasisKind::Coupled6:
      return {1, 1, 1, 0, 0, 0};
    case BasisKind::EqualTreatment4:
      return {1, 0, 0, std::sqrt(static_cast<double>(spec.n_elements - 1))};
  }
  return {};
}

double trace_of(const SigmaState& state, const ProblemSpec& spec) {
  const std::vector<double> weights = trace_weights(spec);
  if (state.dim() != static_cast<int>(weights.size()))
    throw std::invalid_argument("state dimension does not match basis");
  double tr = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) tr += weights[i] * state.coeffs[i];
  return tr;
}

}  // namespace grodeph
