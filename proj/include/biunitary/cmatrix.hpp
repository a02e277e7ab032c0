// Dense complex matrix kernel.
//
// Indexing is 0-based throughout: the matrix unit A_{i,j} of 1-based
// notation is matrix_unit(n, i-1, j-1) here, and D_k is matrix_unit(n, k-1, k-1).
#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace biunitary {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

/// Raised for violated preconditions (order mismatch, non-biunitary input,
/// search caps exceeded, ...).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tolerances shared by every verification and certification routine.
struct NumericPolicy {
  double tol_entry = 1e-9;     // | |u_ij| sqrt(n) - 1 |
  double tol_unitary = 1e-9;   // ||U U^* - I||_F
  double rank_rel_cut = 1e-8;  // sigma_k <= cut * sigma_max counts as zero
  double cert_gap_min = 1e4;   // sigma_rank / sigma_{rank+1} needed to certify

  /// Throws Error unless all fields are positive and rank_rel_cut < 1.
  void validate() const;
};

/// Diagonal 0/1 projection of order n.
class DiagProjection {
 public:
  DiagProjection() = default;
  explicit DiagProjection(std::vector<bool> mask);

  static DiagProjection zeros(std::size_t n);
  static DiagProjection from_indices(std::size_t n, std::span<const int> indices);

  std::size_t order() const { return mask_.size(); }
  bool contains(std::size_t i) const { return mask_[i]; }
  const std::vector<bool>& mask() const { return mask_; }

  /// Sorted list of indices where the mask is set.
  std::vector<int> indices() const;
  std::size_t count() const;
  /// All-zero or all-one.
  bool is_trivial() const;
  bool disjoint_from(const DiagProjection& other) const;
  DiagProjection complement() const;

  ComplexMatrix matrix() const;
  Eigen::VectorXd diagonal() const;

  friend bool operator==(const DiagProjection&, const DiagProjection&) = default;
  friend auto operator<=>(const DiagProjection& a, const DiagProjection& b) {
    return a.indices() <=> b.indices();
  }

 private:
  std::vector<bool> mask_;
};

ComplexMatrix identity(std::size_t n);
ComplexMatrix matrix_unit(std::size_t n, std::size_t i, std::size_t j);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
Complex normalized_trace(const ComplexMatrix& a);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& a);

/// Conditional expectation onto the diagonal subalgebra: keeps the diagonal,
/// zeroes everything else.
ComplexMatrix conditional_expect_diag(const ComplexMatrix& a);

/// ||h - h^*||_F.
double hermitian_defect(const ComplexMatrix& h);

/// exp(i t h) for Hermitian h, computed from the spectral decomposition
/// h = V diag(e) V^*, so the result V diag(exp(i t e)) V^* is unitary to
/// rounding. Throws Error when ||h - h^*||_F > policy.tol_unitary.
ComplexMatrix expi_hermitian(const ComplexMatrix& h, double t,
                             const NumericPolicy& policy = {});

struct RankResult {
  int rank = 0;
  /// sigma_rank / sigma_{rank+1} (1-based); +inf when there is no
  /// nonzero singular value beyond the rank.
  double gap = std::numeric_limits<double>::infinity();
  /// Descending.
  std::vector<double> singular_values;
};

/// Numerical rank from the full singular spectrum. Accepts rectangular input.
RankResult numerical_rank(const ComplexMatrix& a, const NumericPolicy& policy = {});

/// Throws Error if a is not square or has non-finite entries.
void require_square(const ComplexMatrix& a, const char* what);

}  // namespace biunitary
