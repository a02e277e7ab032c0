#include "biunitary/families.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "biunitary/hadamard.hpp"

namespace biunitary {

ComplexMatrix conjugated_projection(const ComplexMatrix& u, const DiagProjection& d) {
  if (static_cast<Eigen::Index>(d.order()) != u.rows()) throw Error("mask order mismatch");
  return u * d.diagonal().cast<Complex>().asDiagonal() * u.adjoint();
}

namespace {

// [diag(p), q]_ij = (p_i - p_j) q_ij
ComplexMatrix diag_commutator(const DiagProjection& p, const ComplexMatrix& q) {
  const auto n = q.rows();
  ComplexMatrix c(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double w = (p.contains(static_cast<std::size_t>(i)) ? 1.0 : 0.0) -
                       (p.contains(static_cast<std::size_t>(j)) ? 1.0 : 0.0);
      c(i, j) = w * q(i, j);
    }
  }
  return c;
}

void require_order(const ComplexMatrix& u, const DiagProjection& m) {
  if (static_cast<Eigen::Index>(m.order()) != u.rows()) throw Error("mask order mismatch");
}

void require_biunitary(const ComplexMatrix& u, const NumericPolicy& policy, const char* what) {
  const auto v = verify_biunitary(u, policy);
  if (!v.is_biunitary) throw Error(std::string(what) + ": base matrix is not biunitary");
}

// All 0/1 vectors in the null space of a symmetric PSD Gram matrix, found by
// reducing a null-space basis to row echelon form and branching on the pivot
// coordinates, which determine every other coordinate.
class BinaryNullspace {
 public:
  static constexpr double kBinaryTol = 1e-6;

  explicit BinaryNullspace(const RealMatrix& gram) : dim_(gram.rows()) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> eig(gram);
    const Eigen::VectorXd& ev = eig.eigenvalues();
    const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1.0);
    std::vector<Eigen::Index> null_cols;
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
      if (ev(k) <= 1e-10 * scale) null_cols.push_back(k);
    }
    RealMatrix basis(static_cast<Eigen::Index>(null_cols.size()), dim_);
    for (std::size_t r = 0; r < null_cols.size(); ++r) {
      basis.row(static_cast<Eigen::Index>(r)) = eig.eigenvectors().col(null_cols[r]).transpose();
    }
    reduce(basis);
  }

  void enumerate(const std::function<void(const Eigen::VectorXd&)>& visit) const {
    if (rows_.rows() == 0) return;
    Eigen::VectorXd partial = Eigen::VectorXd::Zero(dim_);
    descend(0, partial, visit);
  }

 private:
  // Gauss-Jordan elimination with partial pivoting; keeps rows_ in reduced
  // row echelon form with pivot columns pivots_.
  void reduce(RealMatrix m) {
    const Eigen::Index k = m.rows();
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < dim_ && row < k; ++col) {
      Eigen::Index best;
      const double mag = m.col(col).segment(row, k - row).cwiseAbs().maxCoeff(&best);
      if (mag < 1e-8) continue;
      best += row;
      m.row(row).swap(m.row(best));
      m.row(row) /= m(row, col);
      for (Eigen::Index r = 0; r < k; ++r) {
        if (r != row) m.row(r) -= m(r, col) * m.row(row);
      }
      pivots_.push_back(col);
      ++row;
    }
    rows_ = m.topRows(row);
    // Per-coordinate suffix bounds on the contribution of rows j.. with 0/1 weights.
    const Eigen::Index r = rows_.rows();
    lo_suffix_ = RealMatrix::Zero(r + 1, dim_);
    hi_suffix_ = RealMatrix::Zero(r + 1, dim_);
    for (Eigen::Index j = r - 1; j >= 0; --j) {
      lo_suffix_.row(j) = lo_suffix_.row(j + 1) + rows_.row(j).cwiseMin(0.0);
      hi_suffix_.row(j) = hi_suffix_.row(j + 1) + rows_.row(j).cwiseMax(0.0);
    }
  }

  void descend(Eigen::Index j, Eigen::VectorXd& partial,
               const std::function<void(const Eigen::VectorXd&)>& visit) const {
    if (j == rows_.rows()) {
      for (Eigen::Index t = 0; t < dim_; ++t) {
        const double x = partial(t);
        if (std::abs(x) > kBinaryTol && std::abs(x - 1.0) > kBinaryTol) return;
      }
      Eigen::VectorXd rounded = partial.array().round();
      visit(rounded);
      return;
    }
    for (int bit = 0; bit <= 1; ++bit) {
      if (bit) partial += rows_.row(j).transpose();
      if (feasible(j + 1, partial)) descend(j + 1, partial, visit);
      if (bit) partial -= rows_.row(j).transpose();
    }
  }

  bool feasible(Eigen::Index next, const Eigen::VectorXd& partial) const {
    for (Eigen::Index t = 0; t < dim_; ++t) {
      const double lo = partial(t) + lo_suffix_(next, t) - kBinaryTol;
      const double hi = partial(t) + hi_suffix_(next, t) + kBinaryTol;
      const bool zero_ok = lo <= 0.0 && 0.0 <= hi;
      const bool one_ok = lo <= 1.0 && 1.0 <= hi;
      if (!zero_ok && !one_ok) return false;
    }
    return true;
  }

  Eigen::Index dim_;
  RealMatrix rows_;
  std::vector<Eigen::Index> pivots_;
  RealMatrix lo_suffix_, hi_suffix_;
};

DiagProjection mask_from(const Eigen::VectorXd& x, Eigen::Index offset, Eigen::Index n) {
  std::vector<bool> m(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) m[static_cast<std::size_t>(i)] = x(offset + i) > 0.5;
  return DiagProjection(std::move(m));
}

// Gram matrix Re(R^* R) of the real-linear map x -> [diag(p), U diag(x) U^*],
// optionally stacked with a second block for -[diag(p2), U diag(y) U^*].
RealMatrix commutator_gram(const ComplexMatrix& u, const DiagProjection& p1,
                           const DiagProjection* p2) {
  const Eigen::Index n = u.rows();
  const Eigen::Index blocks = p2 ? 2 : 1;
  ComplexMatrix r = ComplexMatrix::Zero(n * n, blocks * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto si = static_cast<std::size_t>(i);
      const auto sj = static_cast<std::size_t>(j);
      const double w1 = (p1.contains(si) ? 1.0 : 0.0) - (p1.contains(sj) ? 1.0 : 0.0);
      const double w2 = p2 ? (p2->contains(si) ? 1.0 : 0.0) - (p2->contains(sj) ? 1.0 : 0.0) : 0.0;
      if (w1 == 0.0 && w2 == 0.0) continue;
      for (Eigen::Index k = 0; k < n; ++k) {
        const Complex coeff = u(i, k) * std::conj(u(j, k));
        r(i * n + j, k) = w1 * coeff;
        if (p2) r(i * n + j, n + k) = -w2 * coeff;
      }
    }
  }
  return (r.adjoint() * r).real();
}

// Every mask of order n except all-zero and all-one.
std::vector<DiagProjection> nontrivial_masks(std::size_t n, bool exclude_index0) {
  std::vector<DiagProjection> out;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t bits = 1; bits + 1 < total; ++bits) {
    if (exclude_index0 && (bits & 1u)) continue;
    std::vector<bool> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = (bits >> i) & 1u;
    out.emplace_back(std::move(m));
  }
  return out;
}

}  // namespace

double commuting_residual(const ComplexMatrix& u, const DiagProjection& p, const DiagProjection& d) {
  require_order(u, p);
  return diag_commutator(p, conjugated_projection(u, d)).norm();
}

double block_residual(const ComplexMatrix& u, const DiagProjection& p1, const DiagProjection& p2,
                      const DiagProjection& d1, const DiagProjection& d2) {
  require_order(u, p1);
  require_order(u, p2);
  return (diag_commutator(p1, conjugated_projection(u, d1)) -
          diag_commutator(p2, conjugated_projection(u, d2)))
      .norm();
}

CommutingPairSpec make_commuting_pair(const ComplexMatrix& u, const DiagProjection& p,
                                      const DiagProjection& d) {
  require_square(u, "commuting pair");
  require_order(u, p);
  require_order(u, d);
  if (p.is_trivial() || d.is_trivial()) throw Error("commuting pair: masks must be nontrivial");
  return CommutingPairSpec{u, p, d, commuting_residual(u, p, d)};
}

BlockPairSpec make_block_pair(const ComplexMatrix& u, const DiagProjection& p1,
                              const DiagProjection& p2, const DiagProjection& d1,
                              const DiagProjection& d2) {
  require_square(u, "block pair");
  for (const auto* m : {&p1, &p2, &d1, &d2}) {
    require_order(u, *m);
    if (m->is_trivial()) throw Error("block pair: masks must be nontrivial");
  }
  if (!p1.disjoint_from(p2) || !d1.disjoint_from(d2)) {
    throw Error("block pair: p1,p2 and d1,d2 must be disjoint");
  }
  return BlockPairSpec{u, p1, p2, d1, d2, block_residual(u, p1, p2, d1, d2)};
}

bool is_certified(const CommutingPairSpec& spec, const NumericPolicy& policy) {
  if (spec.p_mask.is_trivial() || spec.d_mask.is_trivial()) return false;
  return commuting_residual(spec.base, spec.p_mask, spec.d_mask) <= policy.tol_unitary;
}

bool is_certified(const BlockPairSpec& spec, const NumericPolicy& policy) {
  for (const auto* m : {&spec.p1_mask, &spec.p2_mask, &spec.d1_mask, &spec.d2_mask}) {
    if (m->is_trivial()) return false;
  }
  if (!spec.p1_mask.disjoint_from(spec.p2_mask) || !spec.d1_mask.disjoint_from(spec.d2_mask)) {
    return false;
  }
  return block_residual(spec.base, spec.p1_mask, spec.p2_mask, spec.d1_mask, spec.d2_mask) <=
         policy.tol_unitary;
}

std::vector<CommutingPairSpec> find_commuting_pairs(const ComplexMatrix& u,
                                                    const NumericPolicy& policy) {
  require_square(u, "find_commuting_pairs");
  const auto n = static_cast<std::size_t>(u.rows());
  if (n > kCommutingSearchMaxOrder) {
    throw Error("find_commuting_pairs: order " + std::to_string(n) + " exceeds the cap of " +
                std::to_string(kCommutingSearchMaxOrder));
  }
  require_biunitary(u, policy, "find_commuting_pairs");

  std::vector<CommutingPairSpec> out;
  for (const auto& p : nontrivial_masks(n, true)) {
    RealMatrix gram = commutator_gram(u, p, nullptr);
    // Pin d_0 = 0 to pick one representative of {d, 1 - d}.
    gram(0, 0) += gram.diagonal().maxCoeff() + 1.0;
    BinaryNullspace space(gram);
    space.enumerate([&](const Eigen::VectorXd& x) {
      const auto d = mask_from(x, 0, static_cast<Eigen::Index>(n));
      if (d.is_trivial() || d.contains(0)) return;
      auto spec = make_commuting_pair(u, p, d);
      if (spec.residual <= policy.tol_unitary) out.push_back(std::move(spec));
    });
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.p_mask, a.d_mask) < std::tie(b.p_mask, b.d_mask);
  });
  return out;
}

std::vector<BlockPairSpec> find_block_pairs(const ComplexMatrix& u, const NumericPolicy& policy) {
  require_square(u, "find_block_pairs");
  const auto n = static_cast<std::size_t>(u.rows());
  if (n > kBlockSearchMaxOrder) {
    throw Error("find_block_pairs: order " + std::to_string(n) + " exceeds the cap of " +
                std::to_string(kBlockSearchMaxOrder));
  }
  require_biunitary(u, policy, "find_block_pairs");

  const auto masks = nontrivial_masks(n, false);
  std::vector<BlockPairSpec> out;
  for (const auto& p1 : masks) {
    for (const auto& p2 : masks) {
      if (!(p1 < p2) || !p1.disjoint_from(p2)) continue;
      const bool p_splits = p2 == p1.complement();
      BinaryNullspace space(commutator_gram(u, p1, &p2));
      const auto m = static_cast<Eigen::Index>(n);
      space.enumerate([&](const Eigen::VectorXd& xy) {
        const auto d1 = mask_from(xy, 0, m);
        const auto d2 = mask_from(xy, m, m);
        if (d1.is_trivial() || d2.is_trivial() || !d1.disjoint_from(d2)) return;
        // Complementary on both sides: the family is a row/column rephasing of u.
        if (p_splits && d2 == d1.complement()) return;
        auto spec = make_block_pair(u, p1, p2, d1, d2);
        if (spec.residual <= policy.tol_unitary) out.push_back(std::move(spec));
      });
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.p1_mask, a.p2_mask, a.d1_mask, a.d2_mask) <
           std::tie(b.p1_mask, b.p2_mask, b.d1_mask, b.d2_mask);
  });
  return out;
}

ComplexMatrix constr1_family(const CommutingPairSpec& spec, double t, const NumericPolicy& policy) {
  if (!is_certified(spec, policy)) throw Error("constr1_family: spec is not certified");
  if (t == 0.0) return spec.base;
  const ComplexMatrix pq = spec.p_mask.matrix() * conjugated_projection(spec.base, spec.d_mask);
  ComplexMatrix v = expi_hermitian(pq, t, policy) * spec.base;
  if (!verify_biunitary(v, policy).is_biunitary) {
    throw Error("constr1_family: family member fails biunitarity");
  }
  return v;
}

ComplexMatrix constr2_family(const BlockPairSpec& spec, Complex lambda, const NumericPolicy& policy) {
  if (std::abs(std::abs(lambda) - 1.0) > policy.tol_entry) {
    throw Error("constr2_family: |lambda| must be 1");
  }
  if (!is_certified(spec, policy)) throw Error("constr2_family: spec is not certified");
  if (lambda == Complex(1.0)) return spec.base;
  ComplexMatrix v = spec.base;
  const auto n = static_cast<std::size_t>(v.rows());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto& e = v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (spec.p1_mask.contains(i) && spec.d1_mask.contains(j)) e *= lambda;
      if (spec.p2_mask.contains(i) && spec.d2_mask.contains(j)) e *= std::conj(lambda);
    }
  }
  if (!verify_biunitary(v, policy).is_biunitary) {
    throw Error("constr2_family: family member fails biunitarity");
  }
  return v;
}

ComplexMatrix constr2_family_by_formula(const BlockPairSpec& spec, Complex lambda) {
  const auto n = static_cast<std::size_t>(spec.base.rows());
  const ComplexMatrix q1 = conjugated_projection(spec.base, spec.d1_mask);
  const ComplexMatrix q2 = conjugated_projection(spec.base, spec.d2_mask);
  const ComplexMatrix m = identity(n) + (lambda - 1.0) * spec.p1_mask.matrix() * q1 +
                          (std::conj(lambda) - 1.0) * spec.p2_mask.matrix() * q2;
  return m * spec.base;
}

double verify_unitarity_identity(const BlockPairSpec& spec) {
  const ComplexMatrix p1 = spec.p1_mask.matrix();
  const ComplexMatrix p2 = spec.p2_mask.matrix();
  const ComplexMatrix q1 = conjugated_projection(spec.base, spec.d1_mask);
  const ComplexMatrix q2 = conjugated_projection(spec.base, spec.d2_mask);
  return (p1 * q1 * p1 + p2 * q2 * p2 - q1 * p1 - p2 * q2).norm();
}

}  // namespace biunitary
