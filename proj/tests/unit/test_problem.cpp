#include <doctest.h>

#include <stdexcept>

#include "grodeph/problem.hpp"

using namespace grodeph;

TEST_SUITE_BEGIN("problem");

TEST_CASE("basis selection by scenario") {
  CHECK(select_basis(500, 10, NoiseKind::Coupled, false).basis_kind ==
        BasisKind::Coupled6);
  CHECK(select_basis(500, 0, NoiseKind::Decoupled, true).basis_kind ==
        BasisKind::EqualTreatment4);
  CHECK(select_basis(100, 5, NoiseKind::Decoupled, false).basis_kind ==
        BasisKind::General7);
  // All normals noisy collapses to the equal-treatment picture.
  CHECK(select_basis(100, 99, NoiseKind::Decoupled, false).basis_kind ==
        BasisKind::EqualTreatment4);
  // A single decoupled-noisy normal fits the merged-block reduction.
  CHECK(select_basis(100, 1, NoiseKind::Decoupled, true).basis_kind ==
        BasisKind::Coupled6);
  CHECK(select_basis(100, 98, NoiseKind::Coupled, false).basis_kind ==
        BasisKind::Coupled6);
}

TEST_CASE("basis selection rejects bad shapes") {
  CHECK_THROWS_AS(select_basis(3, 0, NoiseKind::Coupled, false), std::invalid_argument);
  CHECK_THROWS_AS(select_basis(8, -1, NoiseKind::Coupled, false), std::invalid_argument);
  CHECK_THROWS_AS(select_basis(8, 8, NoiseKind::Coupled, false), std::invalid_argument);
}

TEST_CASE("noise parametrization table") {
  const double rate = 0.2;
  const double sq = 1.0 - (1 - rate) * (1 - rate);  // 2r - r^2

  SUBCASE("coupled, noisy target") {
    const auto spec = select_basis(100, 5, NoiseKind::Coupled, true);
    const auto np = make_noise_params(spec, rate);
    CHECK(np.p == rate);
    CHECK(np.q == rate);
    CHECK(np.s == 0.0);
    CHECK(np.w == 0.0);
  }
  SUBCASE("coupled, clean target") {
    const auto spec = select_basis(100, 5, NoiseKind::Coupled, false);
    const auto np = make_noise_params(spec, rate);
    CHECK(np.p == rate);
    CHECK(np.q == 0.0);
    CHECK(np.s == rate);
    CHECK(np.w == 0.0);
  }
  SUBCASE("decoupled, noisy target") {
    const auto spec = select_basis(100, 5, NoiseKind::Decoupled, true);
    const auto np = make_noise_params(spec, rate);
    CHECK(np.p == rate);
    CHECK(np.q == rate);
    CHECK(np.s == doctest::Approx(sq).epsilon(1e-15));
    CHECK(np.w == doctest::Approx(sq).epsilon(1e-15));
  }
  SUBCASE("decoupled, clean target") {
    const auto spec = select_basis(100, 5, NoiseKind::Decoupled, false);
    const auto np = make_noise_params(spec, rate);
    CHECK(np.p == rate);
    CHECK(np.q == 0.0);
    CHECK(np.s == rate);
    CHECK(np.w == doctest::Approx(sq).epsilon(1e-15));
  }
  SUBCASE("decoupled with one noisy normal keeps the merged-block slots") {
    const auto spec = select_basis(100, 1, NoiseKind::Decoupled, true);
    const auto np = make_noise_params(spec, rate);
    CHECK(np.q == rate);
    CHECK(np.s == doctest::Approx(sq).epsilon(1e-15));  // both ends in the set
  }
  SUBCASE("decoupled single noisy normal, clean target, damps once") {
    const auto spec = select_basis(100, 1, NoiseKind::Decoupled, false);
    const auto np = make_noise_params(spec, rate);
    CHECK(np.q == 0.0);
    CHECK(np.s == rate);
  }
}

TEST_CASE("equal-treatment reparametrization") {
  const double rate = 0.3;
  SUBCASE("only the target is noisy") {
    const auto spec = select_basis(16, 0, NoiseKind::Decoupled, true);
    const auto np = make_noise_params(spec, rate);
    CHECK(np.p == 0.0);
    CHECK(np.q == rate);
  }
  SUBCASE("no noise at all") {
    const auto spec = select_basis(16, 0, NoiseKind::Decoupled, false);
    const auto np = make_noise_params(spec, rate);
    CHECK(np.p == 0.0);
    CHECK(np.q == 0.0);
  }
  SUBCASE("coupled block over the whole space is the identity") {
    const auto spec = select_basis(16, 15, NoiseKind::Coupled, true);
    const auto np = make_noise_params(spec, rate);
    CHECK(np.p == 0.0);
    CHECK(np.q == 0.0);
  }
  SUBCASE("coupled split target-vs-normals acts as a broken target") {
    const auto spec = select_basis(16, 15, NoiseKind::Coupled, false);
    const auto np = make_noise_params(spec, rate);
    CHECK(np.p == 0.0);
    CHECK(np.q == rate);
  }
}

TEST_CASE("noise parameter validation") {
  const auto spec = select_basis(100, 5, NoiseKind::Coupled, true);
  CHECK_THROWS_AS(make_noise_params(spec, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(make_noise_params(spec, -0.1), std::invalid_argument);
  // Coupled noise has one block rate.
  CHECK_THROWS_AS(make_noise_params(spec, 0.2, 0.1), std::invalid_argument);
  const auto clean = select_basis(100, 5, NoiseKind::Decoupled, false);
  CHECK_THROWS_AS(make_noise_params(clean, 0.2, 0.1), std::invalid_argument);
}

TEST_SUITE_END();
