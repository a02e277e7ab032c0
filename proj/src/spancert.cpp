#include "biunitary/spancert.hpp"

#include <cmath>
#include <string>

#include <Eigen/LU>

#include "biunitary/hadamard.hpp"

namespace biunitary {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Isolated:
      return "Isolated";
    case Verdict::SpanFails:
      return "SpanFails";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

ComplexMatrix span_matrix(const ComplexMatrix& u) {
  require_square(u, "span_matrix");
  const Eigen::Index n = u.rows();
  ComplexMatrix a = ComplexMatrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Eigen::Index row = i * n + j;
      // Only k == i or l == i contribute, and the diagonal k == l == i cancels.
      for (Eigen::Index l = 0; l < n; ++l) {
        if (l != i) a(row, i * n + l) = std::conj(u(j, i)) * u(j, l);
      }
      for (Eigen::Index k = 0; k < n; ++k) {
        if (k != i) a(row, k * n + i) = -std::conj(u(j, k)) * u(j, i);
      }
    }
  }
  return a;
}

std::vector<Eigen::Index> reduced_minor_rows(std::size_t n) {
  const auto m = static_cast<Eigen::Index>(n);
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 1; i < m; ++i)
    for (Eigen::Index j = 1; j < m; ++j) rows.push_back(i * m + j);
  return rows;
}

std::vector<Eigen::Index> reduced_minor_cols(std::size_t n) {
  const auto m = static_cast<Eigen::Index>(n);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index k = 1; k < m; ++k)
    for (Eigen::Index l = 0; l < m; ++l)
      if (l != k) cols.push_back(k * m + l);
  return cols;
}

ComplexMatrix reduced_minor(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw Error("reduced_minor: span matrix must be square");
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(a.rows()))));
  if (static_cast<Eigen::Index>(n * n) != a.rows() || n < 1) {
    throw Error("reduced_minor: size is not a perfect square");
  }
  const auto rows = reduced_minor_rows(n);
  const auto cols = reduced_minor_cols(n);
  return a(rows, cols);
}

MinorReport minor_report(const ComplexMatrix& u, const NumericPolicy& policy) {
  const ComplexMatrix m = reduced_minor(span_matrix(u));
  MinorReport r;
  if (m.size() == 0) {
    // Order 1: the empty minor has determinant 1.
    r.abs_det = 1.0;
    r.nonsingular = true;
    return r;
  }
  r.abs_det = std::abs(m.partialPivLu().determinant());
  r.rank = numerical_rank(m, policy);
  r.nonsingular = r.rank.rank == m.rows() && r.rank.gap >= policy.cert_gap_min;
  return r;
}

SpanCertificate certify_isolation(const ComplexMatrix& u, const NumericPolicy& policy) {
  policy.validate();
  const auto verdict = verify_biunitary(u, policy);
  if (!verdict.is_biunitary) {
    throw Error("certify_isolation: input is not biunitary (modulus deviation " +
                std::to_string(verdict.max_modulus_deviation) + ", unitarity residual " +
                std::to_string(verdict.max_unitarity_residual) + ")");
  }
  const auto n = static_cast<int>(u.rows());
  const RankResult rank = numerical_rank(span_matrix(u), policy);

  SpanCertificate cert;
  cert.n = static_cast<std::size_t>(n);
  cert.rank = rank.rank;
  cert.expected = n * n - 2 * n + 1;
  cert.singular_values = rank.singular_values;
  cert.gap = rank.gap;
  cert.policy = policy;
  const bool clean = rank.gap >= policy.cert_gap_min;
  if (clean && cert.rank == cert.expected) {
    cert.verdict = Verdict::Isolated;
  } else if (clean && cert.rank < cert.expected) {
    cert.verdict = Verdict::SpanFails;
  } else {
    cert.verdict = Verdict::Inconclusive;
  }
  return cert;
}

int kernel_dimension(const ComplexMatrix& u, const NumericPolicy& policy) {
  const auto cert = certify_isolation(u, policy);
  return static_cast<int>(cert.n * cert.n) - cert.rank;
}

}  // namespace biunitary
