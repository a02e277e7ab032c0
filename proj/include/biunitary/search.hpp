// Local search for base matrices that admit a block-pair family.
//
// Matrices are parametrized by phases, U = exp(i θ) / sqrt(n) entrywise, so
// every candidate has entries of modulus 1/sqrt(n) and only unitarity and the
// block condition remain to be driven to zero.
#pragma once

#include <cstdint>
#include <vector>

#include "biunitary/cmatrix.hpp"
#include "biunitary/families.hpp"

namespace biunitary {

struct SearchConfig {
  std::size_t n = 0;
  DiagProjection p1, p2, p3, p4;
  /// n x n starting phases; when empty the start is drawn uniformly from
  /// [0, 2 pi) with rng_seed.
  RealMatrix seed_phases;
  int max_iters = 10000;
  double step0 = 0.1;
  double tol_obj = 1e-10;
  std::uint64_t rng_seed = 0;

  /// Throws Error on order mismatches or overlapping (p1,p2), (p3,p4).
  void validate() const;
};

struct SearchResult {
  RealMatrix phases;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Objective after each accepted step, starting with the initial point.
  std::vector<double> trace;
};

ComplexMatrix phases_to_matrix(const RealMatrix& theta);
/// Entrywise argument of u.
RealMatrix matrix_to_phases(const ComplexMatrix& u);

/// ||U U^* - I||_F + ||[p1, U p3 U^*] - [p2, U p4 U^*]||_F.
double objective(const RealMatrix& theta, const SearchConfig& cfg);

/// Squared variant of objective(); same zero set, smooth everywhere.
double smoothed_objective(const RealMatrix& theta, const SearchConfig& cfg);

/// Gradient of smoothed_objective with respect to θ.
RealMatrix gradient(const RealMatrix& theta, const SearchConfig& cfg);

/// Gradient descent on smoothed_objective with Barzilai-Borwein trial steps
/// and Armijo backtracking; only decreasing steps are accepted. Deterministic
/// for a given config.
SearchResult local_search(const SearchConfig& cfg);

/// Certifies (p1, p2 | p3, p4) on the converged matrix as a block pair
/// (d1 = p3, d2 = p4). Throws Error if the result did not converge, a mask
/// is trivial, or the residual exceeds policy.tol_unitary.
BlockPairSpec promote(const SearchResult& result, const SearchConfig& cfg,
                      const NumericPolicy& policy = {});

}  // namespace biunitary
