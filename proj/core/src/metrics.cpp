#include "grodeph/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "grodeph/analytics.hpp"
#include "grodeph/reduced.hpp"

namespace grodeph {

std::optional<double> expected_steps(double p_success, int steps) {
  if (steps < 0) throw std::invalid_argument("steps must be non-negative");
  if (!(p_success > kSuccessFloor)) return std::nullopt;
  return (steps + 1.0) / p_success;
}

CostCurve cost_curve(const EvolutionTrace& trace) {
  CostCurve curve;
  for (const TracePoint& pt : trace.points) {
    if (pt.step < 1) continue;
    curve.points.push_back({pt.step, expected_steps(pt.p_success, pt.step)});
  }
  return curve;
}

std::optional<OptimalCost> optimal_expected_steps(const EvolutionTrace& trace) {
  std::optional<OptimalCost> best;
  for (const TracePoint& pt : trace.points) {
    if (pt.step < 1) continue;
    const auto cost = expected_steps(pt.p_success, pt.step);
    if (!cost) continue;
    if (!best || *cost < best->expected) best = OptimalCost{pt.step, *cost};
  }
  return best;
}

int NoisySetRule::count_for(int n_elements) const {
  switch (kind) {
    case Kind::Fixed: return fixed_count;
    case Kind::PowerLaw:
      return static_cast<int>(std::ceil(std::pow(n_elements, exponent)));
  }
  return 0;
}

std::vector<ScalingRecord> scaling_scan(const GridConfig& grid,
                                        std::vector<std::string>* errors) {
  std::vector<ScalingRecord> records;
  records.reserve(grid.n_values.size());

  for (int n : grid.n_values) {
    try {
      const int k = grid.k_rule.count_for(n);
      const ProblemSpec spec = select_basis(n, k, grid.kind, grid.target_noisy);
      // A noisy target without an explicit rate shares the normal rate.
      const NoiseParams noise =
          (grid.target_noisy && grid.target_rate > 0.0)
              ? make_noise_params(spec, grid.normal_rate, grid.target_rate)
              : make_noise_params(spec, grid.normal_rate);

      const OptimalSteps m0 = optimal_steps(n);
      const int window = std::max(
          m0.rounded, static_cast<int>(std::ceil(grid.scan_cap_factor * m0.exact)));
      const EvolutionTrace trace = evolve(spec, noise, window);

      ScalingRecord rec;
      rec.n_elements = n;
      rec.noisy_count = k;
      rec.p = noise.p;
      rec.q = noise.q;
      rec.kind = grid.kind;
      rec.mode = grid.mode;
      if (grid.mode == StoppingMode::FixedM0) {
        const auto cost = expected_steps(trace.at(m0.rounded), m0.rounded);
        if (!cost) throw std::runtime_error("success probability at m0 below floor");
        rec.m_used = m0.rounded;
        rec.mbar = *cost;
      } else {
        const auto best = optimal_expected_steps(trace);
        if (!best) throw std::runtime_error("no usable point in the scan window");
        rec.m_used = best->steps;
        rec.mbar = best->expected;
      }
      records.push_back(rec);
    } catch (const std::exception& e) {
      if (errors)
        errors->push_back("N=" + std::to_string(n) + ": " + e.what());
    }
  }

  std::sort(records.begin(), records.end(), [](const ScalingRecord& lhs,
                                               const ScalingRecord& rhs) {
    if (lhs.n_elements != rhs.n_elements) return lhs.n_elements < rhs.n_elements;
    if (lhs.noisy_count != rhs.noisy_count) return lhs.noisy_count < rhs.noisy_count;
    if (lhs.p != rhs.p) return lhs.p < rhs.p;
    return lhs.q < rhs.q;
  });
  return records;
}

ExponentFit fit_exponent(std::span<const ScalingRecord> records) {
  if (records.size() < 3)
    throw std::invalid_argument("fit_exponent needs at least 3 records");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double count = static_cast<double>(records.size());
  for (const ScalingRecord& rec : records) {
    if (!(rec.mbar > 0))
      throw std::invalid_argument("fit_exponent needs positive mbar values");
    const double x = std::log(static_cast<double>(rec.n_elements));
    const double y = std::log(rec.mbar);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = sxx - sx * sx / count;
  if (denom <= 0) throw std::invalid_argument("fit_exponent needs spread in N");
  const double beta = (sxy - sx * sy / count) / denom;
  const double intercept = (sy - beta * sx) / count;

  double rss = 0;
  int n_min = records.front().n_elements;
  int n_max = records.front().n_elements;
  for (const ScalingRecord& rec : records) {
    const double x = std::log(static_cast<double>(rec.n_elements));
    const double resid = std::log(rec.mbar) - (intercept + beta * x);
    rss += resid * resid;
    n_min = std::min(n_min, rec.n_elements);
    n_max = std::max(n_max, rec.n_elements);
  }
  ExponentFit fit;
  fit.beta = beta;
  fit.stderr_ = records.size() > 2
                    ? std::sqrt(rss / (count - 2.0) / denom)
                    : 0.0;
  fit.n_min = n_min;
  fit.n_max = n_max;
  return fit;
}

}  // namespace grodeph
