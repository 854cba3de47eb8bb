#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "grodeph/linalg.hpp"
#include "grodeph/problem.hpp"

namespace grodeph::testing {

inline std::mt19937& rng() {
  static std::mt19937 engine(0x5eed);
  return engine;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline std::vector<double> random_vector(int dim, double lo = -1.0, double hi = 1.0) {
  std::vector<double> v(static_cast<std::size_t>(dim));
  for (double& x : v) x = uniform(lo, hi);
  return v;
}

inline Matrix random_matrix(int dim, double lo = -1.0, double hi = 1.0) {
  Matrix m(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
  for (double& x : m.data()) x = uniform(lo, hi);
  return m;
}

/// Random density matrix: A A^T normalized to unit trace.
inline Matrix random_density(int dim) {
  const Matrix a = random_matrix(dim);
  Matrix rho = matmul(a, a.transposed());
  double tr = trace(rho);
  for (double& x : rho.data()) x /= tr;
  return rho;
}

struct Scenario {
  int n;
  int k;
  NoiseKind kind;
  bool target_noisy;
};

/// A spread of problem shapes hitting all three reductions.
inline std::vector<Scenario> representative_scenarios() {
  return {
      {16, 0, NoiseKind::Decoupled, true},   {16, 0, NoiseKind::Coupled, false},
      {16, 1, NoiseKind::Decoupled, false},  {16, 1, NoiseKind::Decoupled, true},
      {16, 1, NoiseKind::Coupled, true},     {16, 4, NoiseKind::Coupled, false},
      {16, 4, NoiseKind::Coupled, true},     {16, 4, NoiseKind::Decoupled, false},
      {16, 4, NoiseKind::Decoupled, true},   {16, 15, NoiseKind::Decoupled, false},
      {16, 15, NoiseKind::Decoupled, true},  {16, 15, NoiseKind::Coupled, false},
      {16, 15, NoiseKind::Coupled, true},    {64, 5, NoiseKind::Decoupled, false},
      {64, 5, NoiseKind::Coupled, true},     {64, 62, NoiseKind::Coupled, false},
      {500, 10, NoiseKind::Coupled, false},  {500, 10, NoiseKind::Decoupled, true},
  };
}

}  // namespace grodeph::testing
