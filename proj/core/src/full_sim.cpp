#include "grodeph/full_sim.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "grodeph/errors.hpp"

namespace grodeph {

namespace {

void check_rate(double rate) {
  if (!(rate >= 0.0 && rate <= 1.0))
    throw std::invalid_argument("dephasing rate must lie in [0, 1]");
}

std::vector<char> membership_mask(int n, const std::vector<int>& noisy_elements) {
  std::vector<char> in_set(static_cast<std::size_t>(n), 0);
  for (int label : noisy_elements) {
    if (label < 1 || label > n)
      throw std::invalid_argument("noisy element label out of range 1..N");
    in_set[static_cast<std::size_t>(label - 1)] = 1;
  }
  return in_set;
}

}  // namespace

NoiseConfig make_noise_config(const ProblemSpec& spec, double base_rate) {
  check_rate(base_rate);
  NoiseConfig cfg;
  cfg.kind = spec.noise_kind;
  cfg.rate = base_rate;
  if (spec.target_noisy) cfg.noisy_elements.push_back(1);
  for (int j = 2; j <= spec.noisy_count + 1; ++j) cfg.noisy_elements.push_back(j);
  return cfg;
}

Matrix grover_unitary(int n) {
  if (n < 2) throw std::invalid_argument("grover_unitary needs n >= 2");
  const double t = 2.0 / n;
  Matrix u(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      double g = t - (x == y ? 1.0 : 0.0);
      u(x, y) = (y == 0) ? -g : g;  // sign flip of the marked element first
    }
  }
  return u;
}

DensityMatrix uniform_superposition_density(int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  return DensityMatrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n),
                       1.0 / n);
}

DensityMatrix apply_coupled_dephasing(DensityMatrix rho,
                                      const std::vector<int>& noisy_elements,
                                      double rate) {
  check_rate(rate);
  const int n = static_cast<int>(rho.rows());
  const auto in_set = membership_mask(n, noisy_elements);
  const double keep = 1.0 - rate;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (in_set[x] != in_set[y]) rho(x, y) *= keep;
  return rho;
}

DensityMatrix apply_decoupled_dephasing(DensityMatrix rho,
                                        const std::vector<int>& noisy_elements,
                                        double rate) {
  check_rate(rate);
  const int n = static_cast<int>(rho.rows());
  const auto in_set = membership_mask(n, noisy_elements);
  const double keep = 1.0 - rate;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      const int affected = in_set[x] + in_set[y];
      if (affected == 1)
        rho(x, y) *= keep;
      else if (affected == 2)
        rho(x, y) *= keep * keep;
    }
  }
  return rho;
}

DensityMatrix apply_noisy_step(DensityMatrix rho, const NoiseConfig& noise) {
  const int n = static_cast<int>(rho.rows());
  rho = (noise.kind == NoiseKind::Coupled)
            ? apply_coupled_dephasing(std::move(rho), noise.noisy_elements, noise.rate)
            : apply_decoupled_dephasing(std::move(rho), noise.noisy_elements, noise.rate);

  // Oracle sign flip: rho <- R rho R with R = diag(-1, 1, ..., 1).
  for (int y = 1; y < n; ++y) rho(0, y) = -rho(0, y);
  for (int x = 1; x < n; ++x) rho(x, 0) = -rho(x, 0);

  // Conjugation by the inversion about average G = tJ - I expands to
  // t^2 (sum rho) J - t (row sums + column sums) + rho. The sums are
  // compensated so thousands of steps stay inside the 1e-12 budget.
  const double t = 2.0 / n;
  std::vector<double> row_sum(static_cast<std::size_t>(n), 0.0);
  std::vector<double> col_sum(static_cast<std::size_t>(n), 0.0);
  std::vector<double> col_comp(static_cast<std::size_t>(n), 0.0);
  for (int x = 0; x < n; ++x) {
    double acc = 0.0, comp = 0.0;
    for (int y = 0; y < n; ++y) {
      const double v = rho(x, y);
      double delta = v - comp;
      double next = acc + delta;
      comp = (next - acc) - delta;
      acc = next;

      delta = v - col_comp[y];
      next = col_sum[y] + delta;
      col_comp[y] = (next - col_sum[y]) - delta;
      col_sum[y] = next;
    }
    row_sum[x] = acc;
  }
  double total = 0.0, total_comp = 0.0;
  for (int x = 0; x < n; ++x) {
    const double delta = row_sum[x] - total_comp;
    const double next = total + delta;
    total_comp = (next - total) - delta;
    total = next;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      rho(x, y) += t * t * total - t * (row_sum[x] + col_sum[y]);
  return rho;
}

int max_full_dimension() {
  static const int cap = [] {
    if (const char* env = std::getenv("GRODEPH_MAX_FULL_N")) {
      const int v = std::atoi(env);
      if (v > 0) return v;
    }
    return 512;
  }();
  return cap;
}

EvolutionTrace evolve_full(int n, const NoiseConfig& noise, int steps) {
  if (n < 4) throw std::invalid_argument("n must be at least 4");
  if (steps < 0) throw std::invalid_argument("steps must be non-negative");
  if (n > max_full_dimension())
    throw ResourceCapError("full simulation of N = " + std::to_string(n) +
                           " exceeds the cap of " + std::to_string(max_full_dimension()) +
                           " (raise GRODEPH_MAX_FULL_N to override)");

  DensityMatrix rho = uniform_superposition_density(n);
  EvolutionTrace trace;
  trace.points.reserve(static_cast<std::size_t>(steps) + 1);
  trace.points.push_back({0, rho(0, 0)});
  for (int m = 1; m <= steps; ++m) {
    rho = apply_noisy_step(std::move(rho), noise);
    trace.points.push_back({m, rho(0, 0)});
  }
  return trace;
}

namespace {

// Basis-operator entry at (x, y) given the coefficient slot it belongs to,
// encoded as (slot index, entry value). 0-based indices; target = 0.
struct RegionTable {
  int dim;
  // classify returns slot index and writes the operator entry magnitude.
  int (*classify)(const ProblemSpec&, int, int, double&);
};

int classify_general7(const ProblemSpec& spec, int x, int y, double& entry) {
  const int k = spec.noisy_count;
  const double kd = k, md = spec.clean_count();
  const auto zone = [&](int i) { return i == 0 ? 0 : (i <= k ? 1 : 2); };
  const int zx = zone(x), zy = zone(y);
  if (zx == 0 && zy == 0) { entry = 1.0; return 0; }
  if ((zx == 0 && zy == 1) || (zx == 1 && zy == 0)) { entry = 1.0 / std::sqrt(2 * kd); return 3; }
  if ((zx == 0 && zy == 2) || (zx == 2 && zy == 0)) { entry = 1.0 / std::sqrt(2 * md); return 5; }
  if (zx == 1 && zy == 1) {
    if (x == y) { entry = 1.0 / std::sqrt(kd); return 6; }
    entry = 1.0 / std::sqrt(kd * (kd - 1)); return 1;
  }
  if ((zx == 1 && zy == 2) || (zx == 2 && zy == 1)) { entry = 1.0 / std::sqrt(2 * kd * md); return 4; }
  entry = 1.0 / md; return 2;  // both clean, diagonal included
}

int classify_coupled6(const ProblemSpec& spec, int x, int y, double& entry) {
  const int k = spec.noisy_count;
  const double kd = k, md = spec.clean_count();
  const auto zone = [&](int i) { return i == 0 ? 0 : (i <= k ? 1 : 2); };
  const int zx = zone(x), zy = zone(y);
  if (zx == 0 && zy == 0) { entry = 1.0; return 0; }
  if ((zx == 0 && zy == 1) || (zx == 1 && zy == 0)) { entry = 1.0 / std::sqrt(2 * kd); return 3; }
  if ((zx == 0 && zy == 2) || (zx == 2 && zy == 0)) { entry = 1.0 / std::sqrt(2 * md); return 5; }
  if (zx == 1 && zy == 1) { entry = 1.0 / kd; return 1; }  // merged block operator
  if ((zx == 1 && zy == 2) || (zx == 2 && zy == 1)) { entry = 1.0 / std::sqrt(2 * kd * md); return 4; }
  entry = 1.0 / md; return 2;
}

int classify_equal4(const ProblemSpec& spec, int x, int y, double& entry) {
  // All N-1 normal elements form the block, no clean zone.
  const double kb = spec.n_elements - 1;
  const bool tx = (x == 0), ty = (y == 0);
  if (tx && ty) { entry = 1.0; return 0; }
  if (tx != ty) { entry = 1.0 / std::sqrt(2 * kb); return 2; }
  if (x == y) { entry = 1.0 / std::sqrt(kb); return 3; }
  entry = 1.0 / std::sqrt(kb * (kb - 1)); return 1;
}

}  // namespace

SigmaProjection project_to_sigma(const DensityMatrix& rho, const ProblemSpec& spec) {
  const int n = spec.n_elements;
  if (static_cast<int>(rho.rows()) != n || static_cast<int>(rho.cols()) != n)
    throw std::invalid_argument("density matrix dimension does not match spec");

  int (*classify)(const ProblemSpec&, int, int, double&) = nullptr;
  switch (spec.basis_kind) {
    case BasisKind::General7: classify = classify_general7; break;
    case BasisKind::Coupled6: classify = classify_coupled6; break;
    case BasisKind::EqualTreatment4: classify = classify_equal4; break;
  }

  SigmaProjection out;
  out.state.coeffs.assign(static_cast<std::size_t>(spec.basis_dim()), 0.0);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      double entry = 0.0;
      const int slot = classify(spec, x, y, entry);
      out.state.coeffs[static_cast<std::size_t>(slot)] += entry * rho(x, y);
    }
  }

  double residual_sq = 0.0;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      double entry = 0.0;
      const int slot = classify(spec, x, y, entry);
      const double reconstructed = out.state.coeffs[static_cast<std::size_t>(slot)] * entry;
      const double d = rho(x, y) - reconstructed;
      residual_sq += d * d;
    }
  }
  out.residual = std::sqrt(residual_sq);
  return out;
}

}  // namespace grodeph
