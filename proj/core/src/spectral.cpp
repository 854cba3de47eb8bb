#include "grodeph/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "grodeph/errors.hpp"
#include "grodeph/reduced.hpp"

namespace grodeph {

namespace {

double sign_of(double magnitude, double sign_source) {
  return sign_source >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude);
}

// Parlett-Reinsch balancing: radix-2 similarity scaling until every row /
// column pair of off-diagonal 1-norms is roughly even.
void balance(Matrix& a) {
  const std::size_t n = a.rows();
  constexpr double radix = 2.0;
  constexpr double radix_sq = radix * radix;
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      const double s = c + r;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= radix_sq;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix_sq;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        const double inv = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= inv;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

// Householder reduction to upper Hessenberg form (in place).
void to_hessenberg(Matrix& a) {
  const std::size_t n = a.rows();
  std::vector<double> v(n, 0.0);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double scale = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) scale += std::abs(a(i, k));
    if (scale == 0.0) continue;

    double norm_sq = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = a(i, k) / scale;
      norm_sq += v[i] * v[i];
    }
    const double alpha = -sign_of(std::sqrt(norm_sq), v[k + 1]);
    v[k + 1] -= alpha;
    double vtv = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vtv += v[i] * v[i];
    if (vtv == 0.0) continue;

    // Left: A <- (I - 2 v v^T / v^T v) A
    for (std::size_t j = k; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) dot += v[i] * a(i, j);
      const double beta = 2.0 * dot / vtv;
      for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= beta * v[i];
    }
    // Right: A <- A (I - 2 v v^T / v^T v)
    for (std::size_t i = 0; i < n; ++i) {
      double dot = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) dot += v[j] * a(i, j);
      const double beta = 2.0 * dot / vtv;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= beta * v[j];
    }
    a(k + 1, k) = alpha * scale;
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
}

struct QrFailure {
  int iterations;
  int active_index;
};

// Francis double-shift QR on an upper Hessenberg matrix; eigenvalues only.
// Classic HQR scheme (EISPACK lineage) with exceptional shifts at iteration
// 10 and 20 of each deflation window and a hard stop at 30.
std::vector<Complex> hessenberg_qr(Matrix& a, QrFailure& failure) {
  const int n = static_cast<int>(a.rows());
  auto h = [&a](int i, int j) -> double& { return a(static_cast<std::size_t>(i - 1),
                                                    static_cast<std::size_t>(j - 1)); };
  std::vector<Complex> eig(static_cast<std::size_t>(n));

  double anorm = 0.0;
  for (int i = 1; i <= n; ++i)
    for (int j = std::max(i - 1, 1); j <= n; ++j) anorm += std::abs(h(i, j));

  int nn = n;
  double t = 0.0;
  double p = 0, q = 0, r = 0, x = 0, y = 0, z = 0, w = 0, s = 0, u = 0, v = 0;
  while (nn >= 1) {
    int its = 0;
    int l = 0;
    do {
      for (l = nn; l >= 2; --l) {
        s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(h(l, l - 1)) + s == s) {
          h(l, l - 1) = 0.0;
          break;
        }
      }
      if (l < 2) l = 1;
      x = h(nn, nn);
      if (l == nn) {
        eig[static_cast<std::size_t>(nn - 1)] = Complex(x + t, 0.0);
        --nn;
      } else {
        y = h(nn - 1, nn - 1);
        w = h(nn, nn - 1) * h(nn - 1, nn);
        if (l == nn - 1) {
          p = 0.5 * (y - x);
          q = p * p + w;
          z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + sign_of(z, p);
            double lam1 = x + z;
            double lam2 = (z != 0.0) ? x - w / z : lam1;
            eig[static_cast<std::size_t>(nn - 2)] = Complex(lam1, 0.0);
            eig[static_cast<std::size_t>(nn - 1)] = Complex(lam2, 0.0);
          } else {
            eig[static_cast<std::size_t>(nn - 2)] = Complex(x + p, z);
            eig[static_cast<std::size_t>(nn - 1)] = Complex(x + p, -z);
          }
          nn -= 2;
        } else {
          if (its == 30) {
            failure = {its, nn};
            return {};
          }
          if (its == 10 || its == 20) {
            t += x;
            for (int i = 1; i <= nn; ++i) h(i, i) -= x;
            s = std::abs(h(nn, nn - 1)) + std::abs(h(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          int m = 0;
          for (m = nn - 2; m >= l; --m) {
            z = h(m, m);
            r = x - z;
            s = y - z;
            p = (r * s - w) / h(m + 1, m) + h(m, m + 1);
            q = h(m + 1, m + 1) - z - r - s;
            r = h(m + 2, m + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            u = std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r));
            v = std::abs(p) *
                (std::abs(h(m - 1, m - 1)) + std::abs(z) + std::abs(h(m + 1, m + 1)));
            if (u + v == v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            h(i, i - 2) = 0.0;
            if (i != m + 2) h(i, i - 3) = 0.0;
          }
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = h(k, k - 1);
              q = h(k + 1, k - 1);
              r = (k != nn - 1) ? h(k + 2, k - 1) : 0.0;
              x = std::abs(p) + std::abs(q) + std::abs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            s = sign_of(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0.0) continue;
            if (k == m) {
              if (l != m) h(k, k - 1) = -h(k, k - 1);
            } else {
              h(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            y = q / s;
            z = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) {
              p = h(k, j) + q * h(k + 1, j);
              if (k != nn - 1) {
                p += r * h(k + 2, j);
                h(k + 2, j) -= p * z;
              }
              h(k + 1, j) -= p * y;
              h(k, j) -= p * x;
            }
            const int mmin = std::min(nn, k + 3);
            for (int i = l; i <= mmin; ++i) {
              p = x * h(i, k) + y * h(i, k + 1);
              if (k != nn - 1) {
                p += z * h(i, k + 2);
                h(i, k + 2) -= p * r;
              }
              h(i, k + 1) -= p * q;
              h(i, k) -= p;
            }
          }
        }
      }
    } while (l < nn - 1 && nn >= 1);
  }
  failure = {0, 0};
  return eig;
}

bool lexicographic_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

std::vector<double> characteristic_polynomial(const Matrix& a) {
  const std::size_t n = a.rows();
  if (n == 0 || n != a.cols())
    throw std::invalid_argument("characteristic_polynomial needs a square matrix");
  // Faddeev-LeVerrier: M_1 = A, c_k = -tr(M_k)/k, M_{k+1} = A (M_k + c_k I).
  std::vector<double> coeffs(n + 1, 0.0);
  coeffs[n] = 1.0;
  Matrix m = a;
  for (std::size_t k = 1; k <= n; ++k) {
    const double c = -trace(m) / static_cast<double>(k);
    coeffs[n - k] = c;
    if (k == n) break;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c;
    m = matmul(a, m);
  }
  return coeffs;
}

std::vector<Complex> durand_kerner_roots(const std::vector<double>& monic_coeffs) {
  const std::size_t degree = monic_coeffs.size() - 1;
  if (monic_coeffs.empty() || monic_coeffs.back() != 1.0)
    throw std::invalid_argument("durand_kerner_roots expects monic coefficients");
  if (degree == 0) return {};

  double coeff_scale = 1.0;
  for (double c : monic_coeffs) coeff_scale = std::max(coeff_scale, std::abs(c));

  auto eval = [&](Complex zv) {
    Complex acc(0.0, 0.0);
    for (std::size_t i = monic_coeffs.size(); i-- > 0;) acc = acc * zv + monic_coeffs[i];
    return acc;
  };

  std::vector<Complex> roots(degree);
  const Complex seed(0.4, 0.9);
  Complex power(1.0, 0.0);
  for (auto& root : roots) {
    power *= seed;
    root = power * (1.0 + coeff_scale);
  }

  const int max_iters = 500;
  for (int iter = 0; iter < max_iters; ++iter) {
    double max_step = 0.0;
    for (std::size_t i = 0; i < degree; ++i) {
      Complex denom(1.0, 0.0);
      for (std::size_t j = 0; j < degree; ++j)
        if (j != i) denom *= roots[i] - roots[j];
      if (denom == Complex(0.0, 0.0)) {
        roots[i] += Complex(1e-8, 1e-8);
        continue;
      }
      const Complex delta = eval(roots[i]) / denom;
      roots[i] -= delta;
      max_step = std::max(max_step, std::abs(delta));
    }
    if (max_step < 1e-15 * (1.0 + coeff_scale)) break;
  }

  double max_residual = 0.0;
  for (const auto& root : roots) max_residual = std::max(max_residual, std::abs(eval(root)));
  if (max_residual > 1e-13 * coeff_scale)
    throw NumericError("Durand-Kerner residual " + std::to_string(max_residual) +
                       " exceeds tolerance after " + std::to_string(max_iters) +
                       " iterations");
  return roots;
}

std::vector<Complex> eigenvalues(const Matrix& a) {
  const std::size_t n = a.rows();
  if (n == 0 || n != a.cols()) throw std::invalid_argument("eigenvalues needs a square matrix");
  if (n > 8) throw std::invalid_argument("eigensolver is specialized for dim <= 8");
  if (n == 1) return {Complex(a(0, 0), 0.0)};

  Matrix work = a;
  balance(work);
  to_hessenberg(work);
  QrFailure failure{};
  std::vector<Complex> eig = hessenberg_qr(work, failure);
  if (!eig.empty()) return eig;

  if (n <= 4) return durand_kerner_roots(characteristic_polynomial(a));
  throw NumericError("QR iteration failed to converge after " +
                     std::to_string(failure.iterations) +
                     " sweeps while deflating index " + std::to_string(failure.active_index));
}

ComplexVector complex_matvec(const Matrix& a, const ComplexVector& x) {
  if (a.cols() != x.size()) throw std::invalid_argument("complex_matvec shape mismatch");
  ComplexVector y(a.rows(), Complex(0.0, 0.0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex acc(0.0, 0.0);
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

Complex complex_inner(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("complex_inner shape mismatch");
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

std::array<ComplexVector, 4> unperturbed_eigenvectors(int n_elements) {
  if (n_elements < 4) throw std::invalid_argument("n_elements must be at least 4");
  const double t = 2.0 / n_elements;
  const double r = 1.0 - t;

  std::array<ComplexVector, 4> modes;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  modes[0] = {Complex(inv_sqrt2 * std::sqrt(t), 0), Complex(0, 0), Complex(0, 0),
              Complex(inv_sqrt2 * std::sqrt(1 + r), 0)};

  const double n2 = 1.0 / std::sqrt(2 * (1 + r));
  modes[1] = {Complex(n2 * std::sqrt(r * (1 + r)), 0), Complex(n2 * std::sqrt(2.0), 0),
              Complex(0, 0), Complex(-n2 * std::sqrt(r * t), 0)};

  const double n3 = 1.0 / (2 * std::sqrt(1 + r));
  modes[2] = {Complex(n3 * std::sqrt(1 + r), 0), Complex(-n3 * std::sqrt(2 * r), 0),
              Complex(0, n3 * std::sqrt(2 * (1 + r))), Complex(-n3 * std::sqrt(t), 0)};
  modes[3] = modes[2];
  for (auto& c : modes[3]) c = std::conj(c);
  return modes;
}

std::vector<Complex> predicted_perturbed(int n_elements, double p, double q) {
  if (n_elements < 4) throw std::invalid_argument("n_elements must be at least 4");
  const double n = n_elements;
  const double theta = std::acos(1.0 - 2.0 / n);
  const double stationary = 1.0 - n / (n - 1.0) * p;
  const double damping = 1.0 - (2 * n - 3) / (2 * (n - 1)) * p - q / 2;
  const Complex rot = std::polar(1.0, 2 * theta);
  return {Complex(1.0, 0.0), Complex(stationary, 0.0), rot * damping,
          std::conj(rot) * damping};
}

SpectrumReport verify_perturbation(int n_elements, double p, double q) {
  const ProblemSpec spec =
      select_basis(n_elements, n_elements - 1, NoiseKind::Decoupled, q > 0.0);
  const NoiseParams noise = make_noise_params(spec, p, q > 0.0 ? q : 0.0);
  const ReducedStep rs = build_step(spec, noise);

  Matrix evolution = rs.unitary;
  for (std::size_t i = 0; i < evolution.rows(); ++i)
    for (std::size_t j = 0; j < evolution.cols(); ++j)
      evolution(i, j) *= rs.dephasing[j];

  SpectrumReport report;
  report.predicted = predicted_perturbed(n_elements, p, q);
  report.eigenvalues = eigenvalues(evolution);
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end(), lexicographic_less);

  // Exact minimum-total-distance assignment over all permutations (dim 4).
  // The sorted spectrum makes the first minimizing permutation the
  // lexicographic tie-break.
  std::vector<int> perm(report.eigenvalues.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best = perm;
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      cost += std::abs(report.predicted[i] -
                       report.eigenvalues[static_cast<std::size_t>(perm[i])]);
    if (cost < best_cost - 1e-15) {
      best_cost = cost;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  report.pairing = best;
  report.max_abs_error = 0.0;
  for (std::size_t i = 0; i < best.size(); ++i) {
    const Complex matched = report.eigenvalues[static_cast<std::size_t>(best[i])];
    report.max_abs_error =
        std::max(report.max_abs_error, std::abs(report.predicted[i] - matched));
  }
  return report;
}

}  // namespace grodeph
