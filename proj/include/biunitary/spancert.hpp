// Isolation certificates from the commutator span [D, U^* D U].
//
// For a biunitary U of order n the span has dimension at most n^2 - 2n + 1;
// reaching that bound (the span condition) certifies that U is isolated among
// biunitaries up to equivalence. Falling short does not prove the converse.
#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "biunitary/cmatrix.hpp"

namespace biunitary {

enum class Verdict { Isolated, SpanFails, Inconclusive };

std::string_view to_string(Verdict v);

struct SpanCertificate {
  std::size_t n = 0;
  int rank = 0;
  int expected = 0;  // n^2 - 2n + 1
  std::vector<double> singular_values;
  double gap = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  NumericPolicy policy;
};

/// The n^2 x n^2 matrix A[(i,j),(k,l)] = (δ_ik - δ_il) conj(u_jk) u_jl, i.e.
/// entry (k,l) of [D_i, U^* D_j U]. Row (i,j) is i*n + j, column (k,l) is k*n + l.
ComplexMatrix span_matrix(const ComplexMatrix& u);

/// Row indices kept by reduced_minor: (i,j) with i != 0 and j != 0.
std::vector<Eigen::Index> reduced_minor_rows(std::size_t n);
/// Column indices kept by reduced_minor: (k,l) with k != l and k != 0.
std::vector<Eigen::Index> reduced_minor_cols(std::size_t n);

/// Drops rows {(i,0)} U {(0,j)} and columns {(k,k)} U {(0,l)} from a span
/// matrix of order n, leaving a square (n-1)^2 matrix.
ComplexMatrix reduced_minor(const ComplexMatrix& a);

struct MinorReport {
  double abs_det = 0.0;
  RankResult rank;
  /// Full rank with a certified gap.
  bool nonsingular = false;
};

/// Determinant and rank of reduced_minor(span_matrix(u)).
MinorReport minor_report(const ComplexMatrix& u, const NumericPolicy& policy = {});

/// Throws Error if u is not biunitary under `policy`.
SpanCertificate certify_isolation(const ComplexMatrix& u, const NumericPolicy& policy = {});

/// n^2 - rank(span_matrix(u)).
int kernel_dimension(const ComplexMatrix& u, const NumericPolicy& policy = {});

}  // namespace biunitary
