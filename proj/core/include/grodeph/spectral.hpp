#pragma once

#include <array>
#include <complex>
#include <vector>

#include "grodeph/linalg.hpp"
#include "grodeph/problem.hpp"

namespace grodeph {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// All eigenvalues (with multiplicity) of a real square matrix of dimension
/// at most 8. Balanced Householder-Hessenberg reduction followed by Francis
/// double-shift QR; Durand-Kerner on the characteristic polynomial as a
/// fallback for dim <= 4. Throws NumericError with iteration diagnostics if
/// neither converges.
std::vector<Complex> eigenvalues(const Matrix& a);

/// Monic characteristic polynomial coefficients by the Faddeev-LeVerrier
/// recursion: index i holds the coefficient of lambda^i, leading coefficient
/// (index n) is 1.
std::vector<double> characteristic_polynomial(const Matrix& a);

/// Roots of a monic polynomial by Durand-Kerner iteration, polished to a
/// residual of ~1e-13 relative to the coefficient scale.
std::vector<Complex> durand_kerner_roots(const std::vector<double>& monic_coeffs);

ComplexVector complex_matvec(const Matrix& a, const ComplexVector& x);

/// Inner product with conjugation on the first argument.
Complex complex_inner(const ComplexVector& a, const ComplexVector& b);

/// Eigenvectors of the noiseless 4-dim reduced search step, in the order
/// (stationary traceful, stationary traceless, rotating +, rotating -), i.e.
/// eigenvalues (1, 1, e^{+2 i theta}, e^{-2 i theta}) with cos theta = 1-2/N.
/// They are orthonormal under complex_inner.
std::array<ComplexVector, 4> unperturbed_eigenvectors(int n_elements);

/// First-order eigenvalue predictions for the 4-dim step with normal-set
/// rate p and target rate q: {1, 1 - Np/(N-1),
/// e^{+-2 i theta} (1 - (2N-3)p/(2(N-1)) - q/2)}.
std::vector<Complex> predicted_perturbed(int n_elements, double p, double q);

struct SpectrumReport {
  std::vector<Complex> eigenvalues;  // computed spectrum, sorted by (re, im)
  std::vector<Complex> predicted;
  std::vector<int> pairing;          // predicted[i] <-> eigenvalues[pairing[i]]
  double max_abs_error = 0.0;
};

/// Computes the spectrum of the noisy 4-dim step (dephasing then unitary)
/// and pairs it against predicted_perturbed by a minimum-total-distance
/// assignment with lexicographic tie-breaking.
SpectrumReport verify_perturbation(int n_elements, double p, double q);

}  // namespace grodeph
