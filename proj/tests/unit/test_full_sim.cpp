#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "grodeph/analytics.hpp"
#include "grodeph/errors.hpp"
#include "grodeph/full_sim.hpp"
#include "grodeph/spectral.hpp"
#include "helpers.hpp"

using namespace grodeph;
namespace gt = grodeph::testing;

TEST_SUITE_BEGIN("full_sim");

TEST_CASE("search unitary at N=2") {
  const Matrix u = grover_unitary(2);
  CHECK(u(0, 0) == 0.0);
  CHECK(u(0, 1) == 1.0);
  CHECK(u(1, 0) == -1.0);
  CHECK(u(1, 1) == 0.0);
  CHECK_THROWS_AS(grover_unitary(1), std::invalid_argument);
}

TEST_CASE("search unitary columns follow the inversion-about-average rule") {
  const int n = 9;
  const Matrix u = grover_unitary(n);
  const double t = 2.0 / n, r = 1.0 - t;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      double expected = (x == y) ? -r : t;
      if (y == 0) expected = -expected;
      CHECK(u(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) ==
            doctest::Approx(expected).epsilon(1e-15));
    }
  }
}

TEST_CASE("search unitary is orthogonal") {
  for (int n : {2, 5, 16, 33}) CHECK(orthogonality_defect(grover_unitary(n)) < 1e-12);
}

TEST_CASE("coupled dephasing damps only cross-set entries") {
  SUBCASE("rate zero is the identity") {
    const DensityMatrix rho = gt::random_density(6);
    CHECK(max_abs_diff(apply_coupled_dephasing(rho, {1, 3}, 0.0), rho) == 0.0);
  }
  SUBCASE("full rate projects onto the block diagonal, idempotently") {
    const DensityMatrix rho = gt::random_density(6);
    const DensityMatrix once = apply_coupled_dephasing(rho, {1, 3}, 1.0);
    const DensityMatrix twice = apply_coupled_dephasing(once, {1, 3}, 1.0);
    CHECK(max_abs_diff(once, twice) == 0.0);
  }
  SUBCASE("two-dimensional off-diagonal case") {
    DensityMatrix rho(2, 2);
    rho(0, 0) = 0.5;
    rho(1, 1) = 0.5;
    rho(0, 1) = rho(1, 0) = 0.3;
    const DensityMatrix out = apply_coupled_dephasing(rho, {1}, 0.25);
    CHECK(out(0, 1) == doctest::Approx(0.3 * 0.75));
    CHECK(out(0, 0) == 0.5);
  }
  SUBCASE("rate outside [0,1] rejected") {
    CHECK_THROWS_AS(apply_coupled_dephasing(gt::random_density(4), {1}, 1.5),
                    std::invalid_argument);
  }
}

TEST_CASE("decoupled dephasing composes canonical dephasings") {
  const DensityMatrix rho = gt::random_density(7);
  const double rate = 0.35;
  SUBCASE("singleton set equals the coupled channel") {
    CHECK(max_abs_diff(apply_decoupled_dephasing(rho, {3}, rate),
                       apply_coupled_dephasing(rho, {3}, rate)) == 0.0);
  }
  SUBCASE("order of composition is irrelevant") {
    const DensityMatrix ab = apply_decoupled_dephasing(
        apply_decoupled_dephasing(rho, {2}, rate), {5}, rate);
    const DensityMatrix ba = apply_decoupled_dephasing(
        apply_decoupled_dephasing(rho, {5}, rate), {2}, rate);
    const DensityMatrix joint = apply_decoupled_dephasing(rho, {2, 5}, rate);
    CHECK(max_abs_diff(ab, ba) == 0.0);
    CHECK(max_abs_diff(ab, joint) < 1e-15);
  }
  SUBCASE("diagonal preserved exactly") {
    const DensityMatrix out = apply_decoupled_dephasing(rho, {1, 2, 3}, rate);
    for (std::size_t i = 0; i < rho.rows(); ++i) CHECK(out(i, i) == rho(i, i));
  }
  SUBCASE("within-set coherences damped twice") {
    const DensityMatrix out = apply_decoupled_dephasing(rho, {1, 2}, rate);
    CHECK(out(0, 1) == doctest::Approx(rho(0, 1) * (1 - rate) * (1 - rate)));
    CHECK(out(0, 3) == doctest::Approx(rho(0, 3) * (1 - rate)));
    CHECK(out(3, 4) == rho(3, 4));
  }
}

TEST_CASE("dephasing preserves trace, symmetry and positivity") {
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix rho = gt::random_density(6);
    for (auto apply : {apply_coupled_dephasing, apply_decoupled_dephasing}) {
      const DensityMatrix out = apply(rho, {1, 2, 4}, 0.4);
      CHECK(trace(out) == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(max_abs_diff(out, out.transposed()) == 0.0);
      for (const Complex& lambda : eigenvalues(out)) {
        CHECK(lambda.real() > -1e-9);
        CHECK(std::abs(lambda.imag()) < 1e-9);
      }
    }
  }
}

TEST_CASE("structured step equals explicit conjugation") {
  const int n = 8;
  const ProblemSpec spec = select_basis(n, 2, NoiseKind::Decoupled, true);
  const NoiseConfig noise = make_noise_config(spec, 0.3);
  const Matrix u = grover_unitary(n);
  DensityMatrix rho = gt::random_density(n);
  const DensityMatrix direct = apply_noisy_step(rho, noise);
  const DensityMatrix explicit_conj = matmul(
      matmul(u, apply_decoupled_dephasing(rho, noise.noisy_elements, noise.rate)),
      u.transposed());
  CHECK(max_abs_diff(direct, explicit_conj) < 1e-14);
}

TEST_CASE("noiseless dense evolution matches the closed form") {
  const NoiseConfig no_noise{NoiseKind::Decoupled, {}, 0.0};
  const EvolutionTrace trace = evolve_full(16, no_noise, 9);
  for (const TracePoint& pt : trace.points)
    CHECK(std::abs(pt.p_success - grover_success(16, pt.step)) < 1e-12);
}

TEST_CASE("dense trace stays normalized") {
  const ProblemSpec spec = select_basis(32, 3, NoiseKind::Decoupled, true);
  const NoiseConfig noise = make_noise_config(spec, 0.3);
  DensityMatrix rho = uniform_superposition_density(32);
  for (int m = 0; m < 50; ++m) {
    rho = apply_noisy_step(std::move(rho), noise);
    CHECK(trace(rho) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("dense oracle agrees with the reduced propagator") {
  // Spot checks here; the acceptance suite runs the full grid.
  for (const auto& sc : {gt::Scenario{64, 5, NoiseKind::Decoupled, false},
                         gt::Scenario{64, 5, NoiseKind::Coupled, true},
                         gt::Scenario{32, 1, NoiseKind::Decoupled, true},
                         gt::Scenario{16, 15, NoiseKind::Decoupled, false},
                         gt::Scenario{16, 0, NoiseKind::Decoupled, true}}) {
    const ProblemSpec spec = select_basis(sc.n, sc.k, sc.kind, sc.target_noisy);
    const double rate = 0.3;
    const EvolutionTrace full = evolve_full(sc.n, make_noise_config(spec, rate), 200);
    const EvolutionTrace reduced = evolve(spec, make_noise_params(spec, rate), 200);
    for (std::size_t i = 0; i < full.points.size(); ++i)
      CHECK(std::abs(full.points[i].p_success - reduced.points[i].p_success) < 1e-10);
  }
}

TEST_CASE("oversized dense problems hit the resource cap") {
  const NoiseConfig no_noise{NoiseKind::Decoupled, {}, 0.0};
  if (std::getenv("GRODEPH_MAX_FULL_N") == nullptr) CHECK(max_full_dimension() == 512);
  CHECK_THROWS_AS(evolve_full(max_full_dimension() + 1, no_noise, 1),
                  ResourceCapError);
}

TEST_CASE("projection recovers the initial state exactly") {
  for (const auto& sc : gt::representative_scenarios()) {
    if (sc.n > 64) continue;
    const ProblemSpec spec = select_basis(sc.n, sc.k, sc.kind, sc.target_noisy);
    const auto projection =
        project_to_sigma(uniform_superposition_density(sc.n), spec);
    const SigmaState expected = initial_state(spec);
    for (int i = 0; i < spec.basis_dim(); ++i)
      CHECK(projection.state.coeffs[static_cast<std::size_t>(i)] ==
            doctest::Approx(expected.coeffs[static_cast<std::size_t>(i)]).epsilon(1e-13));
    CHECK(projection.residual < 1e-12);
  }
}

TEST_CASE("projection of a bare noisy-normal coherence") {
  const int n = 16, k = 5;
  const ProblemSpec spec = select_basis(n, k, NoiseKind::Decoupled, false);
  DensityMatrix rho(16, 16);
  rho(1, 2) = 1.0;  // |2><3| in 1-based element labels
  const auto projection = project_to_sigma(rho, spec);
  CHECK(projection.state.coeffs[1] ==
        doctest::Approx(1.0 / std::sqrt(double(k) * (k - 1))).epsilon(1e-14));
  for (int i : {0, 2, 3, 4, 5, 6})
    CHECK(projection.state.coeffs[static_cast<std::size_t>(i)] == 0.0);
}

TEST_CASE("trajectories stay inside the operator subspace") {
  for (const auto& sc : {gt::Scenario{32, 4, NoiseKind::Decoupled, true},
                         gt::Scenario{32, 4, NoiseKind::Coupled, false},
                         gt::Scenario{32, 1, NoiseKind::Decoupled, false}}) {
    const ProblemSpec spec = select_basis(sc.n, sc.k, sc.kind, sc.target_noisy);
    const NoiseConfig noise = make_noise_config(spec, 0.3);
    DensityMatrix rho = uniform_superposition_density(sc.n);
    for (int m = 0; m < 100; ++m) {
      rho = apply_noisy_step(std::move(rho), noise);
      CHECK(project_to_sigma(rho, spec).residual < 1e-10);
    }
  }
}

TEST_CASE("projection validates dimensions") {
  const ProblemSpec spec = select_basis(16, 4, NoiseKind::Decoupled, false);
  CHECK_THROWS_AS(project_to_sigma(uniform_superposition_density(8), spec),
                  std::invalid_argument);
}

TEST_SUITE_END();
