// Witnesses that break the span condition and the one-parameter families
// they generate.
//
// Convention: for a base biunitary U and a diagonal mask d the conjugated
// projection is q = U diag(d) U^*. With this choice the block construction
// (I + (λ-1) p1 q1 + (conj λ - 1) p2 q2) U multiplies the rows(p1) x cols(d1)
// block of U by λ and the rows(p2) x cols(d2) block by conj λ.
#pragma once

#include <cstddef>
#include <vector>

#include "biunitary/cmatrix.hpp"

namespace biunitary {

/// Commuting pair p0 = diag(p), q0 = U diag(d) U^* with [p0, q0] = 0.
struct CommutingPairSpec {
  ComplexMatrix base;
  DiagProjection p_mask;
  DiagProjection d_mask;
  double residual = 0.0;  // ||[p0, q0]||_F
};

/// Block quadruple with p1 p2 = 0, d1 d2 = 0 and [p1,q1] - [p2,q2] = 0.
struct BlockPairSpec {
  ComplexMatrix base;
  DiagProjection p1_mask, p2_mask;
  DiagProjection d1_mask, d2_mask;
  double residual = 0.0;  // ||[p1,q1] - [p2,q2]||_F
};

inline constexpr std::size_t kCommutingSearchMaxOrder = 14;
inline constexpr std::size_t kBlockSearchMaxOrder = 10;

/// U diag(d) U^*.
ComplexMatrix conjugated_projection(const ComplexMatrix& u, const DiagProjection& d);

double commuting_residual(const ComplexMatrix& u, const DiagProjection& p, const DiagProjection& d);
double block_residual(const ComplexMatrix& u, const DiagProjection& p1, const DiagProjection& p2,
                      const DiagProjection& d1, const DiagProjection& d2);

/// Builds a spec with its residual. Throws Error on order mismatch or
/// trivial masks; does not check the residual (see is_certified).
CommutingPairSpec make_commuting_pair(const ComplexMatrix& u, const DiagProjection& p,
                                      const DiagProjection& d);
/// As above; additionally throws Error when p1,p2 or d1,d2 overlap.
BlockPairSpec make_block_pair(const ComplexMatrix& u, const DiagProjection& p1,
                              const DiagProjection& p2, const DiagProjection& d1,
                              const DiagProjection& d2);

bool is_certified(const CommutingPairSpec& spec, const NumericPolicy& policy = {});
bool is_certified(const BlockPairSpec& spec, const NumericPolicy& policy = {});

/// All commuting pairs with nontrivial 0/1 masks, one representative per
/// complementation class (index 0 is never in p_mask or d_mask). For each p
/// the real solutions x of [diag(p), U diag(x) U^*] = 0 are computed as a
/// null space and its 0/1 points enumerated. Sorted by (p, d).
/// Throws Error for non-biunitary u or order > kCommutingSearchMaxOrder.
std::vector<CommutingPairSpec> find_commuting_pairs(const ComplexMatrix& u,
                                                    const NumericPolicy& policy = {});

/// All certified block quadruples with nontrivial masks, one representative
/// per (1 <-> 2) swap (p1 sorts before p2). Quadruples with p1 + p2 = 1 and
/// d1 + d2 = 1 are skipped: they only rephase rows and columns. Sorted by
/// (p1, p2, d1, d2).
/// Throws Error for non-biunitary u or order > kBlockSearchMaxOrder.
std::vector<BlockPairSpec> find_block_pairs(const ComplexMatrix& u,
                                            const NumericPolicy& policy = {});

/// exp(i t p0 q0) U. Returns the base unchanged at t = 0.
ComplexMatrix constr1_family(const CommutingPairSpec& spec, double t,
                             const NumericPolicy& policy = {});

/// (I + (λ-1) p1 q1 + (conj λ - 1) p2 q2) U, evaluated entrywise as block
/// phase multiplication. Returns the base unchanged at λ = 1.
ComplexMatrix constr2_family(const BlockPairSpec& spec, Complex lambda,
                             const NumericPolicy& policy = {});

/// The same member evaluated through the matrix formula, for cross-checks.
ComplexMatrix constr2_family_by_formula(const BlockPairSpec& spec, Complex lambda);

/// ||p1 q1 p1 + p2 q2 p2 - q1 p1 - p2 q2||_F.
double verify_unitarity_identity(const BlockPairSpec& spec);

}  // namespace biunitary
