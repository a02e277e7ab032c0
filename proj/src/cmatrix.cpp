#include "biunitary/cmatrix.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace biunitary {

void NumericPolicy::validate() const {
  if (!(tol_entry > 0) || !(tol_unitary > 0) || !(rank_rel_cut > 0) ||
      !(cert_gap_min > 0)) {
    throw Error("numeric policy: all tolerances must be strictly positive");
  }
  if (!(rank_rel_cut < 1)) {
    throw Error("numeric policy: rank_rel_cut must be < 1");
  }
}

DiagProjection::DiagProjection(std::vector<bool> mask) : mask_(std::move(mask)) {}

DiagProjection DiagProjection::zeros(std::size_t n) {
  return DiagProjection(std::vector<bool>(n, false));
}

DiagProjection DiagProjection::from_indices(std::size_t n, std::span<const int> indices) {
  std::vector<bool> mask(n, false);
  for (int i : indices) {
    if (i < 0 || static_cast<std::size_t>(i) >= n) {
      throw Error("projection index " + std::to_string(i) + " out of range for order " +
                  std::to_string(n));
    }
    mask[static_cast<std::size_t>(i)] = true;
  }
  return DiagProjection(std::move(mask));
}

std::vector<int> DiagProjection::indices() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::size_t DiagProjection::count() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true));
}

bool DiagProjection::is_trivial() const {
  const auto c = count();
  return c == 0 || c == mask_.size();
}

bool DiagProjection::disjoint_from(const DiagProjection& other) const {
  if (other.order() != order()) throw Error("projection order mismatch");
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i] && other.mask_[i]) return false;
  }
  return true;
}

DiagProjection DiagProjection::complement() const {
  std::vector<bool> m(mask_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = !mask_[i];
  return DiagProjection(std::move(m));
}

ComplexMatrix DiagProjection::matrix() const {
  return diagonal().cast<Complex>().asDiagonal();
}

Eigen::VectorXd DiagProjection::diagonal() const {
  Eigen::VectorXd d(static_cast<Eigen::Index>(mask_.size()));
  for (std::size_t i = 0; i < mask_.size(); ++i) d(static_cast<Eigen::Index>(i)) = mask_[i] ? 1.0 : 0.0;
  return d;
}

ComplexMatrix identity(std::size_t n) {
  const auto m = static_cast<Eigen::Index>(n);
  return ComplexMatrix::Identity(m, m);
}

ComplexMatrix matrix_unit(std::size_t n, std::size_t i, std::size_t j) {
  if (i >= n || j >= n) throw Error("matrix_unit index out of range");
  const auto m = static_cast<Eigen::Index>(n);
  ComplexMatrix e = ComplexMatrix::Zero(m, m);
  e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
  return e;
}

namespace {

void require_same_order(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw Error(std::string(what) + ": order mismatch (" + std::to_string(a.rows()) + "x" +
                std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                std::to_string(b.cols()) + ")");
  }
}

}  // namespace

void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() < 1 || a.rows() != a.cols()) {
    throw Error(std::string(what) + ": expected a square matrix of order >= 1");
  }
  if (!a.allFinite()) throw Error(std::string(what) + ": non-finite entry");
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_order(a, b, "matmul");
  return a * b;
}

ComplexMatrix adjoint(const ComplexMatrix& a) { return a.adjoint(); }

Complex normalized_trace(const ComplexMatrix& a) {
  if (a.rows() == 0) return 0.0;
  return a.trace() / static_cast<double>(a.rows());
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_order(a, b, "commutator");
  return a * b - b * a;
}

double frobenius_norm(const ComplexMatrix& a) { return a.norm(); }

ComplexMatrix conditional_expect_diag(const ComplexMatrix& a) {
  ComplexMatrix out = ComplexMatrix::Zero(a.rows(), a.cols());
  out.diagonal() = a.diagonal();
  return out;
}

double hermitian_defect(const ComplexMatrix& h) { return (h - h.adjoint()).norm(); }

ComplexMatrix expi_hermitian(const ComplexMatrix& h, double t, const NumericPolicy& policy) {
  require_square(h, "expi_hermitian");
  const double defect = hermitian_defect(h);
  if (defect > policy.tol_unitary) {
    throw Error("expi_hermitian: input is not Hermitian (||h - h*||_F = " +
                std::to_string(defect) + ")");
  }
  if (t == 0.0) return identity(static_cast<std::size_t>(h.rows()));

  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(sym);
  if (eig.info() != Eigen::Success) throw Error("expi_hermitian: eigensolver failed");
  const Eigen::VectorXd& evals = eig.eigenvalues();
  Eigen::VectorXcd phases(evals.size());
  for (Eigen::Index k = 0; k < evals.size(); ++k) phases(k) = std::polar(1.0, t * evals(k));
  const ComplexMatrix& v = eig.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

RankResult numerical_rank(const ComplexMatrix& a, const NumericPolicy& policy) {
  if (!a.allFinite()) throw Error("numerical_rank: non-finite entry");
  RankResult out;
  if (a.size() == 0) return out;

  // LAPACK divide and conquer; Eigen's BDCSVD loses small singular values on
  // these structured matrices.
  ComplexMatrix work = a;
  const auto m = static_cast<lapack_int>(a.rows());
  const auto k = static_cast<lapack_int>(a.cols());
  out.singular_values.resize(static_cast<std::size_t>(std::min(m, k)));
  const lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, k, work.data(), m,
                                         out.singular_values.data(), nullptr, 1, nullptr, 1);
  if (info != 0) throw Error("numerical_rank: SVD failed (info " + std::to_string(info) + ")");
  const double smax = out.singular_values.empty() ? 0.0 : out.singular_values.front();
  if (!(smax > 0.0)) return out;

  const double cut = policy.rank_rel_cut * smax;
  int rank = 0;
  for (double s : out.singular_values) {
    if (s > cut) ++rank;
  }
  out.rank = rank;
  const auto r = static_cast<std::size_t>(rank);
  if (r < out.singular_values.size() && out.singular_values[r] > 0.0) {
    out.gap = out.singular_values[r - 1] / out.singular_values[r];
  }
  return out;
}

}  // namespace biunitary
