// Shared helpers for the test suites: random generators and oracles that
// stay independent of the library code paths they check.
#pragma once

#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include "biunitary/cmatrix.hpp"
#include "biunitary/hadamard.hpp"

namespace biunitary::testing {

inline ComplexMatrix random_complex(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

inline ComplexMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  const ComplexMatrix x = random_complex(n, n, rng);
  return 0.5 * (x + x.adjoint());
}

inline ComplexMatrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<ComplexMatrix> qr(random_complex(n, n, rng));
  return qr.householderQ() * ComplexMatrix::Identity(n, n);
}

/// Δ1 P1 F P2 Δ2 for the Fourier matrix F of order n.
inline ComplexMatrix random_fourier_biunitary(std::size_t n, std::mt19937_64& rng) {
  return EquivalenceMoves::random(n, rng).apply(fourier(n));
}

/// Kernel dimension of (c_kl) -> sum c_kl [D_k, S_l] for the Fourier matrix:
/// c is constant on the orbits of i -> i + s (mod n), giving gcd(s, n)
/// free values per shift s (n for s = 0).
inline int fourier_kernel_dimension_by_orbits(int n) {
  int dim = 0;
  for (int s = 0; s < n; ++s) dim += std::gcd(s, n);
  return dim;
}

/// |det| by Gaussian elimination with partial pivoting in long double.
inline long double abs_det_long_double(const ComplexMatrix& m) {
  using C = std::complex<long double>;
  const auto n = static_cast<std::size_t>(m.rows());
  std::vector<C> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a[i * n + j] = C(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)).real(),
                       m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)).imag());
  long double det = 1.0L;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::abs(a[r * n + k]) > std::abs(a[piv * n + k])) piv = r;
    if (std::abs(a[piv * n + k]) == 0.0L) return 0.0L;
    if (piv != k)
      for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[piv * n + c]);
    det *= std::abs(a[k * n + k]);
    for (std::size_t r = k + 1; r < n; ++r) {
      const C f = a[r * n + k] / a[k * n + k];
      for (std::size_t c = k; c < n; ++c) a[r * n + c] -= f * a[k * n + c];
    }
  }
  return det;
}

/// Entry (k,l) of [D_i, U^* D_j U], computed from the matrix products.
inline ComplexMatrix span_matrix_by_products(const ComplexMatrix& u) {
  const auto n = u.rows();
  ComplexMatrix a(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const ComplexMatrix di = matrix_unit(static_cast<std::size_t>(n), static_cast<std::size_t>(i),
                                           static_cast<std::size_t>(i));
      const ComplexMatrix dj = matrix_unit(static_cast<std::size_t>(n), static_cast<std::size_t>(j),
                                           static_cast<std::size_t>(j));
      const ComplexMatrix c = commutator(di, u.adjoint() * dj * u);
      for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index l = 0; l < n; ++l) a(i * n + j, k * n + l) = c(k, l);
    }
  }
  return a;
}

}  // namespace biunitary::testing
