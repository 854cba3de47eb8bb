#include "grodeph/walk.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "grodeph/errors.hpp"
#include "grodeph/full_sim.hpp"
#include "grodeph/linalg.hpp"

namespace grodeph {

namespace {

constexpr double kDensityTolerance = 1e-9;

double simpson(const std::vector<double>& values, double step_width) {
  // Composite Simpson; the table layout guarantees an odd sample count.
  double acc = values.front() + values.back();
  for (std::size_t i = 1; i + 1 < values.size(); ++i)
    acc += values[i] * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * step_width / 3.0;
}

void check_walk_spec(const StarWalkSpec& spec) {
  if (spec.spokes < 4) throw std::invalid_argument("walk needs at least 4 spokes");
  for (int label : spec.faulty) {
    if (label < 2 || label > spec.spokes)
      throw std::invalid_argument(
          "faulty vertices must be unmarked spokes (labels 2..N)");
  }
}

}  // namespace

PhaseDensity PhaseDensity::uniform(double half_width) {
  if (!(half_width > 0.0 && half_width <= std::numbers::pi))
    throw std::invalid_argument("uniform phase density needs a in (0, pi]");
  PhaseDensity d;
  d.kind = Kind::Uniform;
  d.half_width = half_width;
  return d;
}

PhaseDensity PhaseDensity::point_mass(double phase) {
  PhaseDensity d;
  d.kind = Kind::PointMass;
  d.phase = phase;
  d.half_width = std::abs(phase);
  return d;
}

PhaseDensity PhaseDensity::custom(double half_width, std::vector<double> samples) {
  if (!(half_width > 0.0 && half_width <= std::numbers::pi))
    throw std::invalid_argument("custom phase density needs a in (0, pi]");
  if (samples.size() < 3 || samples.size() % 2 == 0)
    throw std::invalid_argument(
        "custom phase density needs an odd number of samples (>= 3)");
  for (double v : samples)
    if (!(v >= 0.0)) throw std::invalid_argument("density samples must be >= 0");

  const double h = 2 * half_width / static_cast<double>(samples.size() - 1);
  const double total = simpson(samples, h);
  if (std::abs(total - 1.0) > kDensityTolerance)
    throw std::invalid_argument("custom phase density must integrate to 1");

  PhaseDensity d;
  d.kind = Kind::Custom;
  d.half_width = half_width;
  d.table = std::move(samples);

  // Node CDF by trapezoid for inverse sampling; normalized to end exactly
  // at 1 so draws near u = 1 stay inside the support.
  d.node_cdf.assign(d.table.size(), 0.0);
  for (std::size_t i = 1; i < d.table.size(); ++i)
    d.node_cdf[i] = d.node_cdf[i - 1] + 0.5 * (d.table[i - 1] + d.table[i]) * h;
  const double norm = d.node_cdf.back();
  if (!(norm > 0.0)) throw std::invalid_argument("custom phase density is empty");
  for (double& c : d.node_cdf) c /= norm;
  return d;
}

double averaged_dephasing_factor(const PhaseDensity& density) {
  double keep = 0.0;
  switch (density.kind) {
    case PhaseDensity::Kind::Uniform:
      keep = std::sin(density.half_width) / density.half_width;
      break;
    case PhaseDensity::Kind::PointMass:
      if (density.phase != 0.0)
        throw std::invalid_argument(
            "point mass away from 0 is not symmetric around 0");
      keep = 1.0;
      break;
    case PhaseDensity::Kind::Custom: {
      const std::size_t count = density.table.size();
      for (std::size_t i = 0; i < count / 2; ++i) {
        if (std::abs(density.table[i] - density.table[count - 1 - i]) >
            kDensityTolerance)
          throw std::invalid_argument("custom phase density is not symmetric");
      }
      const double h = 2 * density.half_width / static_cast<double>(count - 1);
      std::vector<double> weighted(count);
      for (std::size_t i = 0; i < count; ++i) {
        const double phi = -density.half_width + h * static_cast<double>(i);
        weighted[i] = density.table[i] * std::cos(phi);
      }
      keep = simpson(weighted, h);
      break;
    }
  }
  if (keep > 1.0 + kDensityTolerance || keep < -kDensityTolerance)
    throw std::invalid_argument(
        "phase density average factor lies outside [0, 1]");
  return std::clamp(1.0 - keep, 0.0, 1.0);
}

StarWalkSpec make_star_walk(int spokes, int faulty_count, PhaseDensity density) {
  StarWalkSpec spec;
  spec.spokes = spokes;
  spec.density = std::move(density);
  if (faulty_count < 0 || faulty_count > spokes - 1)
    throw std::invalid_argument("faulty_count must lie in [0, N-1]");
  for (int j = 2; j <= faulty_count + 1; ++j) spec.faulty.push_back(j);
  check_walk_spec(spec);
  return spec;
}

std::pair<ProblemSpec, NoiseParams> map_walk_to_grover(const StarWalkSpec& spec) {
  check_walk_spec(spec);
  const ProblemSpec problem =
      select_basis(spec.spokes, static_cast<int>(spec.faulty.size()),
                   NoiseKind::Decoupled, false);
  const double rate = spec.faulty.empty() ? 0.0 : averaged_dephasing_factor(spec.density);
  return {problem, make_noise_params(problem, rate)};
}

namespace {

// Left and right application of the inversion about average G = tJ - I.
Matrix g_left(const Matrix& x, double t) {
  const std::size_t n = x.rows();
  std::vector<double> col_sum(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) col_sum[j] += x(i, j);
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = t * col_sum[j] - x(i, j);
  return out;
}

Matrix g_right(const Matrix& x, double t) {
  const std::size_t n = x.rows();
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) row_sum += x(i, j);
    for (std::size_t j = 0; j < n; ++j) out(i, j) = t * row_sum - x(i, j);
  }
  return out;
}

void negate_row0(Matrix& x) {
  for (std::size_t j = 0; j < x.cols(); ++j) x(0, j) = -x(0, j);
}

void negate_col0(Matrix& x) {
  for (std::size_t i = 0; i < x.rows(); ++i) x(i, 0) = -x(i, 0);
}

}  // namespace

EvolutionTrace simulate_walk_averaged(const StarWalkSpec& spec, int grover_steps) {
  check_walk_spec(spec);
  if (grover_steps < 0) throw std::invalid_argument("steps must be non-negative");
  const int n = spec.spokes;
  if (n > max_full_dimension())
    throw ResourceCapError("walk of N = " + std::to_string(n) +
                           " spokes exceeds the cap of " +
                           std::to_string(max_full_dimension()) +
                           " (raise GRODEPH_MAX_FULL_N to override)");

  const double t = 2.0 / n;
  const double keep =
      spec.faulty.empty() ? 1.0 : 1.0 - averaged_dephasing_factor(spec.density);
  std::vector<char> faulty_mask(static_cast<std::size_t>(n), 0);
  for (int label : spec.faulty) faulty_mask[static_cast<std::size_t>(label - 1)] = 1;

  // Block layout of the edge-state density matrix:
  //   out_out  out_in      outgoing = |0,j>, incoming = |j,0>
  //   in_out   in_in
  Matrix out_out(static_cast<std::size_t>(n), static_cast<std::size_t>(n), 1.0 / n);
  Matrix out_in(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  Matrix in_out(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  Matrix in_in(static_cast<std::size_t>(n), static_cast<std::size_t>(n));

  const auto dephase = [&](Matrix& block, bool rows_outgoing, bool cols_outgoing) {
    for (std::size_t x = 0; x < block.rows(); ++x) {
      for (std::size_t y = 0; y < block.cols(); ++y) {
        const bool fx = rows_outgoing && faulty_mask[x];
        const bool fy = cols_outgoing && faulty_mask[y];
        if (rows_outgoing && cols_outgoing && x == y) continue;  // diagonal
        if (fx && fy)
          block(x, y) *= keep * keep;
        else if (fx || fy)
          block(x, y) *= keep;
      }
    }
  };

  const auto walk_step = [&]() {
    dephase(out_out, true, true);
    dephase(out_in, true, false);
    dephase(in_out, false, true);
    // in_in is untouched: the noise acts on outgoing center edges only.

    // Conjugation by U = [[0, G], [P, 0]] with P the target sign flip:
    // new blocks are (G in_in G, G in_out P; P out_in G, P out_out P).
    Matrix new_out_out = g_left(g_right(in_in, t), t);
    Matrix new_out_in = g_left(in_out, t);
    negate_col0(new_out_in);
    Matrix new_in_out = g_right(out_in, t);
    negate_row0(new_in_out);
    Matrix new_in_in = out_out;
    negate_row0(new_in_in);
    negate_col0(new_in_in);
    out_out = std::move(new_out_out);
    out_in = std::move(new_out_in);
    in_out = std::move(new_in_out);
    in_in = std::move(new_in_in);
  };

  EvolutionTrace trace;
  trace.points.reserve(static_cast<std::size_t>(grover_steps) + 1);
  trace.points.push_back({0, out_out(0, 0)});
  for (int m = 1; m <= grover_steps; ++m) {
    walk_step();
    walk_step();
    trace.points.push_back({m, out_out(0, 0)});
  }
  return trace;
}

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t shot,
                           std::uint64_t step, std::uint64_t slot) {
  const auto mix = [](std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  };
  std::uint64_t h = mix(seed);
  h = mix(h ^ shot);
  h = mix(h ^ step);
  h = mix(h ^ slot);
  return h;
}

double counter_uniform01(std::uint64_t seed, std::uint64_t shot,
                         std::uint64_t step, std::uint64_t slot) {
  return static_cast<double>(counter_hash(seed, shot, step, slot) >> 11) *
         0x1.0p-53;
}

double sample_phase(const PhaseDensity& density, std::uint64_t seed,
                    std::uint64_t shot, std::uint64_t step, std::uint64_t slot) {
  switch (density.kind) {
    case PhaseDensity::Kind::PointMass:
      return density.phase;
    case PhaseDensity::Kind::Uniform: {
      const double u = counter_uniform01(seed, shot, step, slot);
      return density.half_width * (2.0 * u - 1.0);
    }
    case PhaseDensity::Kind::Custom: {
      const double u = counter_uniform01(seed, shot, step, slot);
      const auto& cdf = density.node_cdf;
      const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      const std::size_t hi = std::min(
          static_cast<std::size_t>(std::distance(cdf.begin(), it)), cdf.size() - 1);
      if (hi == 0) return -density.half_width;
      const std::size_t lo = hi - 1;

      const double h =
          2 * density.half_width / static_cast<double>(density.table.size() - 1);
      const double phi_lo = -density.half_width + h * static_cast<double>(lo);
      const double cell_mass = cdf[hi] - cdf[lo];
      if (cell_mass <= 0.0) return phi_lo;

      // Invert the quadratic CDF of the linearly interpolated density cell:
      // solve y0 dx + slope dx^2 / 2 = mass for dx in [0, h].
      const double y0 = density.table[lo];
      const double y1 = density.table[hi];
      const double mass = (u - cdf[lo]) * (0.5 * (y0 + y1) * h) / cell_mass;
      const double slope = (y1 - y0) / h;
      double dx;
      if (std::abs(slope) * h < 1e-14 * (y0 + y1)) {
        dx = y0 > 0 ? mass / y0 : 0.0;
      } else {
        const double disc = y0 * y0 + 2.0 * slope * mass;
        dx = (-y0 + std::sqrt(std::max(0.0, disc))) / slope;
      }
      return phi_lo + std::clamp(dx, 0.0, h);
    }
  }
  return 0.0;
}

EvolutionTrace simulate_walk_montecarlo(const StarWalkSpec& spec, int grover_steps,
                                        int shots, std::uint64_t seed) {
  check_walk_spec(spec);
  if (grover_steps < 0) throw std::invalid_argument("steps must be non-negative");
  if (shots < 1) throw std::invalid_argument("shots must be at least 1");
  const int n = spec.spokes;
  if (n > max_full_dimension())
    throw ResourceCapError("walk of N = " + std::to_string(n) +
                           " spokes exceeds the cap of " +
                           std::to_string(max_full_dimension()) +
                           " (raise GRODEPH_MAX_FULL_N to override)");

  using Cx = std::complex<double>;
  const double t = 2.0 / n;
  std::vector<std::size_t> faulty0;
  faulty0.reserve(spec.faulty.size());
  for (int label : spec.faulty) faulty0.push_back(static_cast<std::size_t>(label - 1));

  // Welford running statistics per recorded step; exact zero variance when
  // every shot lands on the same value (e.g. a point mass at zero phase).
  const std::size_t record_count = static_cast<std::size_t>(grover_steps) + 1;
  std::vector<double> mean(record_count, 0.0);
  std::vector<double> m2(record_count, 0.0);

  std::vector<Cx> outgoing(static_cast<std::size_t>(n));
  std::vector<Cx> incoming(static_cast<std::size_t>(n));
  for (int shot = 0; shot < shots; ++shot) {
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    std::fill(outgoing.begin(), outgoing.end(), Cx(amp, 0.0));
    std::fill(incoming.begin(), incoming.end(), Cx(0.0, 0.0));

    const auto record = [&, shot](std::size_t index) {
      const double p = std::norm(outgoing[0]);
      const double delta = p - mean[index];
      mean[index] += delta / (shot + 1);
      m2[index] += delta * (p - mean[index]);
    };
    record(0);

    for (int m = 1; m <= grover_steps; ++m) {
      const std::uint64_t step_a = static_cast<std::uint64_t>(2 * m - 1);
      // Phase kicks hit outgoing center edges; after the odd half-step the
      // walker sits on incoming edges, so that application is a no-op and
      // is skipped outright.
      for (std::size_t slot = 0; slot < faulty0.size(); ++slot) {
        const double phi = sample_phase(spec.density, seed,
                                        static_cast<std::uint64_t>(shot), step_a,
                                        static_cast<std::uint64_t>(slot));
        outgoing[faulty0[slot]] *= Cx(std::cos(phi), std::sin(phi));
      }
      // U, twice: outgoing -> incoming (sign flip on the target), then the
      // central inversion about average sends incoming -> outgoing.
      incoming[0] = -outgoing[0];
      for (std::size_t j = 1; j < outgoing.size(); ++j) incoming[j] = outgoing[j];

      Cx total(0.0, 0.0);
      for (const Cx& c : incoming) total += c;
      for (std::size_t j = 0; j < outgoing.size(); ++j)
        outgoing[j] = t * total - incoming[j];

      record(static_cast<std::size_t>(m));
    }
  }

  EvolutionTrace trace;
  trace.points.reserve(record_count);
  trace.std_error.reserve(record_count);
  for (std::size_t i = 0; i < record_count; ++i) {
    double se = 0.0;
    if (shots > 1) se = std::sqrt(m2[i] / (shots - 1) / shots);
    trace.points.push_back({static_cast<int>(i), mean[i]});
    trace.std_error.push_back(se);
  }
  return trace;
}

}  // namespace grodeph
