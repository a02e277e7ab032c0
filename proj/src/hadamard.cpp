#include "biunitary/hadamard.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/tools/roots.hpp>

namespace biunitary {

ComplexMatrix fourier(std::size_t n) {
  if (n < 1) throw Error("order must be >= 1");
  const auto m = static_cast<Eigen::Index>(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  ComplexMatrix f(m, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // Reduce the exponent mod n first so the angle stays in [0, 2 pi).
      const auto k = (i * j) % n;
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      f(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = std::polar(scale, angle);
    }
  }
  return f;
}

BiunitaryVerdict verify_biunitary(const ComplexMatrix& u, const NumericPolicy& policy) {
  require_square(u, "verify_biunitary");
  const auto n = u.rows();
  const double root_n = std::sqrt(static_cast<double>(n));
  BiunitaryVerdict v;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      v.max_modulus_deviation =
          std::max(v.max_modulus_deviation, std::abs(std::abs(u(i, j)) * root_n - 1.0));
    }
  }
  v.max_unitarity_residual = (u * u.adjoint() - ComplexMatrix::Identity(n, n)).norm();
  v.is_biunitary = v.max_modulus_deviation <= policy.tol_entry &&
                   v.max_unitarity_residual <= policy.tol_unitary;
  return v;
}

ComplexMatrix circulant(const CirculantRow& row) {
  const std::size_t n = row.order();
  if (n < 1) throw Error("circulant: empty row");
  const auto m = static_cast<Eigen::Index>(n);
  ComplexMatrix s(m, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row.row[(j + n - i) % n];
    }
  }
  return s;
}

CirculantRow first_row(const ComplexMatrix& s) {
  CirculantRow r;
  r.row.assign(s.row(0).begin(), s.row(0).end());
  return r;
}

Complex bjorck7_value() { return {-0.75, std::sqrt(7.0) / 4.0}; }

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<bool> quadratic_residue_pattern(std::size_t n) {
  std::vector<bool> ones(n, false);
  if (n == 0) return ones;
  ones[0] = true;
  for (std::size_t x = 1; x < n; ++x) ones[(x * x) % n] = true;
  return ones;
}

namespace {

CirculantRow qr_row(std::size_t n, Complex a) {
  const auto pattern = quadratic_residue_pattern(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  CirculantRow r;
  r.row.reserve(n);
  for (std::size_t i = 0; i < n; ++i) r.row.push_back(pattern[i] ? Complex(scale) : a * scale);
  return r;
}

// Inner product of rows 0 and 1 of the unnormalized QR circulant, as a
// function of the phase of a. For a two-valued cyclic row the 1->a and a->1
// transitions are equally frequent, so this is c0 + 2c cos(phi): real.
double row_overlap(std::size_t n, double phi) {
  const auto s = circulant(qr_row(n, std::polar(1.0, phi)));
  return (s.row(0) * s.row(1).adjoint())(0, 0).real() * static_cast<double>(n);
}

}  // namespace

ComplexMatrix qr_circulant(std::size_t n, Complex a) {
  if (!is_prime(n)) throw Error("qr_circulant: n = " + std::to_string(n) + " is not prime");
  return circulant(qr_row(n, a));
}

ComplexMatrix bjorck7() { return qr_circulant(7, bjorck7_value()); }

ComplexMatrix qr_circulant_solve(std::size_t n, const NumericPolicy& policy) {
  if (!is_prime(n)) throw Error("qr_circulant: n = " + std::to_string(n) + " is not prime");
  constexpr int kBrackets = 256;
  const double pi = std::numbers::pi;
  double best_residual = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kBrackets; ++k) {
    const double lo = pi * k / kBrackets;
    const double hi = pi * (k + 1) / kBrackets;
    const double flo = row_overlap(n, lo);
    const double fhi = row_overlap(n, hi);
    best_residual = std::min({best_residual, std::abs(flo), std::abs(fhi)});
    if (flo == 0.0 || fhi == 0.0 || (flo < 0) != (fhi < 0)) {
      std::uintmax_t iters = 200;
      auto [a, b] = boost::math::tools::toms748_solve(
          [n](double phi) { return row_overlap(n, phi); }, lo, hi, flo, fhi,
          boost::math::tools::eps_tolerance<double>(52), iters);
      const double phi = 0.5 * (a + b);
      ComplexMatrix u = qr_circulant(n, std::polar(1.0, phi));
      const auto verdict = verify_biunitary(u, policy);
      if (verdict.is_biunitary) return u;
      throw Error("qr_circulant: root a = exp(" + std::to_string(phi) +
                  "i) does not give a biunitary (unitarity residual " +
                  std::to_string(verdict.max_unitarity_residual) + ")");
    }
  }
  throw Error("qr_circulant: no unimodular solution for n = " + std::to_string(n) +
              " (smallest |row overlap| " + std::to_string(best_residual) + ")");
}

ComplexMatrix petrescu(Complex lambda, const NumericPolicy& policy) {
  if (std::abs(std::abs(lambda) - 1.0) > policy.tol_entry) {
    throw Error("petrescu: |lambda| must be 1");
  }
  const Complex w = std::polar(1.0, std::numbers::pi / 3.0);
  const Complex lb = std::conj(lambda);
  auto wp = [&](int k) { return std::pow(w, k); };
  const Complex one = 1.0;
  ComplexMatrix u(7, 7);
  // clang-format off
  u << lambda * wp(1), lambda * wp(4), wp(5),      wp(3),      wp(3), wp(1), one,
       lambda * wp(4), lambda * wp(1), wp(3),      wp(5),      wp(3), wp(1), one,
       wp(5),          wp(3),          lb * wp(1), lb * wp(4), wp(1), wp(3), one,
       wp(3),          wp(5),          lb * wp(4), lb * wp(1), wp(1), wp(3), one,
       wp(3),          wp(3),          wp(1),      wp(1),      wp(4), wp(5), one,
       wp(1),          wp(1),          wp(3),      wp(3),      wp(5), wp(4), one,
       one,            one,            one,        one,        one,   one,   one;
  // clang-format on
  return u / std::sqrt(7.0);
}

namespace {

Complex unit_phase(Complex z) { return z / std::abs(z); }

}  // namespace

ComplexMatrix dephase(const ComplexMatrix& u, const NumericPolicy& policy) {
  const auto verdict = verify_biunitary(u, policy);
  if (!verdict.is_biunitary) throw Error("dephase: input is not biunitary");
  const auto n = u.rows();
  std::vector<Complex> col_fix(static_cast<std::size_t>(n));
  std::vector<Complex> row_fix(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) col_fix[static_cast<std::size_t>(j)] = std::conj(unit_phase(u(0, j)));
  for (Eigen::Index i = 0; i < n; ++i) {
    row_fix[static_cast<std::size_t>(i)] = std::conj(unit_phase(u(i, 0) * col_fix[0]));
  }
  ComplexMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == 0 || j == 0) {
        out(i, j) = std::abs(u(i, j));
      } else {
        out(i, j) = row_fix[static_cast<std::size_t>(i)] * u(i, j) * col_fix[static_cast<std::size_t>(j)];
      }
    }
  }
  return out;
}

ComplexMatrix EquivalenceMoves::apply(const ComplexMatrix& u) const {
  const auto n = static_cast<std::size_t>(u.rows());
  if (left.size() != n || right.size() != n || row_perm.size() != n || col_perm.size() != n) {
    throw Error("equivalence moves: order mismatch");
  }
  ComplexMatrix v(u.rows(), u.cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          left[i] * u(static_cast<Eigen::Index>(row_perm[i]), static_cast<Eigen::Index>(col_perm[j])) *
          right[j];
    }
  }
  return v;
}

EquivalenceMoves EquivalenceMoves::random(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  EquivalenceMoves m;
  for (std::size_t i = 0; i < n; ++i) {
    m.left.push_back(std::polar(1.0, angle(rng)));
    m.right.push_back(std::polar(1.0, angle(rng)));
  }
  m.row_perm.resize(n);
  m.col_perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) m.row_perm[i] = m.col_perm[i] = i;
  std::shuffle(m.row_perm.begin(), m.row_perm.end(), rng);
  std::shuffle(m.col_perm.begin(), m.col_perm.end(), rng);
  return m;
}

}  // namespace biunitary
