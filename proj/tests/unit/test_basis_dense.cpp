#include <doctest.h>

#include <cmath>
#include <vector>

#include "grodeph/full_sim.hpp"
#include "grodeph/linalg.hpp"
#include "grodeph/reduced.hpp"

// Column-by-column validation of every reduced propagator against dense
// first principles: each basis operator is rebuilt as an N x N matrix from
// its definition, pushed through the dense conjugation / dephasing, and the
// result re-expanded in the basis. This checks each matrix entry of the
// reductions, the closure of the subspace, and the diagonal form of the
// dephasing, independently of the success-probability path.

using namespace grodeph;

namespace {

// Basis operators as dense matrices, 0-based indices, target = 0, noisy
// normals 1..k, clean normals k+1..N-1.
std::vector<Matrix> dense_basis(const ProblemSpec& spec) {
  const int n = spec.n_elements;
  const int k_problem = spec.noisy_count;
  const bool equal4 = spec.basis_kind == BasisKind::EqualTreatment4;
  const int k = equal4 ? n - 1 : k_problem;  // the 4-dim picture merges normals
  const int m = n - k - 1;
  const auto mat = [n]() { return Matrix(static_cast<std::size_t>(n),
                                         static_cast<std::size_t>(n)); };
  const auto noisy = [&](int j) { return j >= 1 && j <= k; };
  const auto clean = [&](int j) { return j > k; };

  Matrix target_pop = mat();
  target_pop(0, 0) = 1.0;

  Matrix noisy_offdiag = mat();
  if (k >= 2) {
    for (int x = 1; x <= k; ++x)
      for (int y = 1; y <= k; ++y)
        if (x != y)
          noisy_offdiag(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) =
              1.0 / std::sqrt(double(k) * (k - 1));
  }

  Matrix noisy_block = mat();  // merged block, diagonal included
  for (int x = 1; x <= k; ++x)
    for (int y = 1; y <= k; ++y)
      noisy_block(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = 1.0 / k;

  Matrix clean_block = mat();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (clean(x) && clean(y))
        clean_block(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = 1.0 / m;

  Matrix target_noisy_coh = mat();
  for (int y = 1; y <= k; ++y) {
    target_noisy_coh(0, static_cast<std::size_t>(y)) = 1.0 / std::sqrt(2.0 * k);
    target_noisy_coh(static_cast<std::size_t>(y), 0) = 1.0 / std::sqrt(2.0 * k);
  }

  Matrix noisy_clean_coh = mat();
  for (int x = 1; x <= k; ++x)
    for (int y = k + 1; y < n; ++y) {
      noisy_clean_coh(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) =
          1.0 / std::sqrt(2.0 * k * m);
      noisy_clean_coh(static_cast<std::size_t>(y), static_cast<std::size_t>(x)) =
          1.0 / std::sqrt(2.0 * k * m);
    }

  Matrix target_clean_coh = mat();
  for (int y = k + 1; y < n; ++y) {
    target_clean_coh(0, static_cast<std::size_t>(y)) = 1.0 / std::sqrt(2.0 * m);
    target_clean_coh(static_cast<std::size_t>(y), 0) = 1.0 / std::sqrt(2.0 * m);
  }

  Matrix noisy_diag = mat();
  for (int x = 1; x <= k; ++x)
    noisy_diag(static_cast<std::size_t>(x), static_cast<std::size_t>(x)) =
        1.0 / std::sqrt(double(k));

  (void)noisy;
  switch (spec.basis_kind) {
    case BasisKind::General7:
      return {target_pop,      noisy_offdiag,  clean_block, target_noisy_coh,
              noisy_clean_coh, target_clean_coh, noisy_diag};
    case BasisKind::Coupled6:
      return {target_pop,      noisy_block,    clean_block,
              target_noisy_coh, noisy_clean_coh, target_clean_coh};
    case BasisKind::EqualTreatment4:
      return {target_pop, noisy_offdiag, target_noisy_coh, noisy_diag};
  }
  return {};
}

double hs_inner(const Matrix& a, const Matrix& b) {
  double acc = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) acc += da[i] * db[i];
  return acc;
}

void check_reduction(const ProblemSpec& spec, const NoiseParams& noise,
                     const NoiseConfig& dense_noise) {
  const int n = spec.n_elements;
  const std::vector<Matrix> basis = dense_basis(spec);
  const int dim = spec.basis_dim();
  REQUIRE(static_cast<int>(basis.size()) == dim);

  // The operators are orthonormal under the Hilbert-Schmidt inner product.
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      CHECK(std::abs(hs_inner(basis[static_cast<std::size_t>(i)],
                              basis[static_cast<std::size_t>(j)]) -
                     (i == j ? 1.0 : 0.0)) < 1e-13);

  const ReducedStep rs = build_step(spec, noise);
  const Matrix w = grover_unitary(n);

  for (int j = 0; j < dim; ++j) {
    // Unitary action: expand W sigma_j W^T back in the basis.
    const Matrix image = matmul(matmul(w, basis[static_cast<std::size_t>(j)]),
                                w.transposed());
    Matrix reconstructed(image.rows(), image.cols());
    for (int i = 0; i < dim; ++i) {
      const double coeff = hs_inner(basis[static_cast<std::size_t>(i)], image);
      CHECK(std::abs(coeff - rs.unitary(static_cast<std::size_t>(i),
                                        static_cast<std::size_t>(j))) < 1e-13);
      const auto bd = basis[static_cast<std::size_t>(i)].data();
      auto rd = reconstructed.data();
      for (std::size_t e = 0; e < rd.size(); ++e) rd[e] += coeff * bd[e];
    }
    CHECK(max_abs_diff(reconstructed, image) < 1e-13);  // closure

    // Dephasing action: diagonal on the basis, entry by entry.
    const Matrix damped =
        dense_noise.kind == NoiseKind::Coupled
            ? apply_coupled_dephasing(basis[static_cast<std::size_t>(j)],
                                      dense_noise.noisy_elements, dense_noise.rate)
            : apply_decoupled_dephasing(basis[static_cast<std::size_t>(j)],
                                        dense_noise.noisy_elements,
                                        dense_noise.rate);
    Matrix scaled = basis[static_cast<std::size_t>(j)];
    for (double& v : scaled.data()) v *= rs.dephasing[static_cast<std::size_t>(j)];
    CHECK(max_abs_diff(damped, scaled) < 1e-14);
  }
}

}  // namespace

TEST_SUITE_BEGIN("basis_dense");

TEST_CASE("general reduction matches dense first principles") {
  for (bool target_noisy : {false, true}) {
    const ProblemSpec spec = select_basis(12, 4, NoiseKind::Decoupled, target_noisy);
    REQUIRE(spec.basis_kind == BasisKind::General7);
    check_reduction(spec, make_noise_params(spec, 0.3), make_noise_config(spec, 0.3));
  }
}

TEST_CASE("merged-block reduction matches dense first principles") {
  for (bool target_noisy : {false, true}) {
    const ProblemSpec spec = select_basis(12, 4, NoiseKind::Coupled, target_noisy);
    REQUIRE(spec.basis_kind == BasisKind::Coupled6);
    check_reduction(spec, make_noise_params(spec, 0.3), make_noise_config(spec, 0.3));
  }
  // One decoupled-noisy normal element also lives in this reduction.
  for (bool target_noisy : {false, true}) {
    const ProblemSpec spec = select_basis(12, 1, NoiseKind::Decoupled, target_noisy);
    REQUIRE(spec.basis_kind == BasisKind::Coupled6);
    check_reduction(spec, make_noise_params(spec, 0.3), make_noise_config(spec, 0.3));
  }
}

TEST_CASE("equal-treatment reduction matches dense first principles") {
  for (int k : {0, 11}) {
    for (NoiseKind kind : {NoiseKind::Coupled, NoiseKind::Decoupled}) {
      for (bool target_noisy : {false, true}) {
        const ProblemSpec spec = select_basis(12, k, kind, target_noisy);
        REQUIRE(spec.basis_kind == BasisKind::EqualTreatment4);
        check_reduction(spec, make_noise_params(spec, 0.3),
                        make_noise_config(spec, 0.3));
      }
    }
  }
}

TEST_SUITE_END();
