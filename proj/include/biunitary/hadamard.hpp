// Biunitary (complex Hadamard) matrices: constructors, verification,
// dephasing and equivalence.
//
// A unitary U of order n is biunitary when every entry has modulus 1/sqrt(n);
// these are exactly the U for which D, U^* D U (D = diagonal matrices) form a
// commuting square.
#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "biunitary/cmatrix.hpp"

namespace biunitary {

struct BiunitaryVerdict {
  bool is_biunitary = false;
  double max_modulus_deviation = 0.0;   // max | |u_ij| sqrt(n) - 1 |
  double max_unitarity_residual = 0.0;  // ||U U^* - I||_F
};

/// First row of a circulant, S_ij = row[(j - i) mod n].
struct CirculantRow {
  std::vector<Complex> row;
  std::size_t order() const { return row.size(); }
};

/// (1/sqrt(n)) eps^{ij}, eps = exp(2 pi i / n).
ComplexMatrix fourier(std::size_t n);

/// Throws Error if u is not square; never throws on a failed verdict.
BiunitaryVerdict verify_biunitary(const ComplexMatrix& u, const NumericPolicy& policy = {});

ComplexMatrix circulant(const CirculantRow& row);
CirculantRow first_row(const ComplexMatrix& s);

/// Off-pattern value of the order-7 quadratic-residue circulant.
Complex bjorck7_value();

/// (1/sqrt 7) circulant [1,1,1,a,1,a,a], a = -3/4 + i sqrt(7)/4.
ComplexMatrix bjorck7();

bool is_prime(std::size_t n);

/// Indicator of {0} U QR(n): the positions holding 1 in the quadratic-residue
/// circulant row.
std::vector<bool> quadratic_residue_pattern(std::size_t n);

/// (1/sqrt n) circulant with 1 at {0} U QR(n) and `a` elsewhere. Throws Error
/// if n is not prime.
ComplexMatrix qr_circulant(std::size_t n, Complex a);

/// As above, with `a` found as a unimodular root of the orthogonality of
/// rows 0 and 1 (root with Im a >= 0). Throws Error if no root exists or the
/// resulting circulant fails verify_biunitary.
ComplexMatrix qr_circulant_solve(std::size_t n, const NumericPolicy& policy = {});

/// The order-7 one-parameter family with
/// lambda multiplying the rows {0,1} x cols {0,1} block and conj(lambda)
/// the rows {2,3} x cols {2,3} block. Throws Error unless |lambda| = 1
/// within policy.tol_entry.
ComplexMatrix petrescu(Complex lambda, const NumericPolicy& policy = {});

/// D1 u D2 with unimodular diagonals such that row 0 and column 0 are real
/// positive. Throws Error on non-biunitary input.
ComplexMatrix dephase(const ComplexMatrix& u, const NumericPolicy& policy = {});

/// Row/column permutations and unimodular diagonal factors:
/// v = diag(left) P_rows u P_cols diag(right), with
/// v_ij = left_i u_{row_perm[i], col_perm[j]} right_j.
struct EquivalenceMoves {
  std::vector<Complex> left;
  std::vector<std::size_t> row_perm;
  std::vector<std::size_t> col_perm;
  std::vector<Complex> right;

  ComplexMatrix apply(const ComplexMatrix& u) const;
  static EquivalenceMoves random(std::size_t n, std::mt19937_64& rng);
};

/// Whether v = Δ1 P1 u P2 Δ2 for some permutations and unimodular diagonals,
/// within policy.tol_entry (entrywise, scaled by sqrt(n)). Decided exactly by
/// backtracking over row matchings of dephased forms, after a quick rejection
/// on the sorted Haagerup invariant set. Throws Error for order > n_limit or
/// non-biunitary input.
bool equivalent(const ComplexMatrix& u, const ComplexMatrix& v,
                const NumericPolicy& policy = {}, std::size_t n_limit = 8,
                bool use_invariant_filter = true);

}  // namespace biunitary
