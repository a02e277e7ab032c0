#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "biunitary/hadamard.hpp"

namespace biunitary {

namespace {

// Sorted multiset of u_ij conj(u_kj) u_kl conj(u_il) over all i,j,k,l, for
// unimodular u. Diagonal phases cancel and permutations only reorder it.
std::vector<Complex> haagerup_invariant(const ComplexMatrix& w) {
  const auto n = w.rows();
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(n * n * n * n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index l = 0; l < n; ++l)
          out.push_back(w(i, j) * std::conj(w(k, j)) * w(k, l) * std::conj(w(i, l)));
  auto key = [](Complex z) {
    double a = std::arg(z);
    if (a > std::numbers::pi - 1e-6) a -= 2.0 * std::numbers::pi;
    return a;
  };
  std::sort(out.begin(), out.end(), [&](Complex a, Complex b) { return key(a) < key(b); });
  return out;
}

// Unimodular matrix normalized so that row r and column c are all ones.
ComplexMatrix dephase_at(const ComplexMatrix& w, Eigen::Index r, Eigen::Index c) {
  const auto n = w.rows();
  ComplexMatrix out(n, n);
  const Complex pivot = w(r, c) / std::abs(w(r, c));
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex ri = std::conj(w(i, c) / std::abs(w(i, c)));
    for (Eigen::Index j = 0; j < n; ++j) {
      const Complex cj = std::conj(w(r, j) / std::abs(w(r, j)));
      out(i, j) = (i == r || j == c) ? Complex(1.0) : ri * w(i, j) * cj * pivot;
    }
  }
  return out;
}

class PermutationMatcher {
 public:
  PermutationMatcher(const ComplexMatrix& a, const ComplexMatrix& b, double tol)
      : a_(a), b_(b), tol_(tol), n_(a.rows()) {}

  // Find sigma with sigma(0) = r such that the rows of b match rows sigma(i)
  // of a up to a column permutation tau with tau(0) = c.
  bool match(Eigen::Index r, Eigen::Index c) {
    c_ = c;
    sigma_.assign(static_cast<std::size_t>(n_), -1);
    used_.assign(static_cast<std::size_t>(n_), false);
    sigma_[0] = r;
    used_[static_cast<std::size_t>(r)] = true;
    if (!columns_compatible(1)) return false;
    return extend(1);
  }

 private:
  bool close(Complex x, Complex y) const { return std::abs(x - y) <= tol_; }

  // Column prefixes over the first `depth` rows must match as multisets,
  // with column 0 of b pinned to column c of a.
  bool columns_compatible(Eigen::Index depth) const {
    auto col_eq = [&](Eigen::Index ja, Eigen::Index jb) {
      for (Eigen::Index i = 0; i < depth; ++i) {
        if (!close(a_(sigma_[static_cast<std::size_t>(i)], ja), b_(i, jb))) return false;
      }
      return true;
    };
    if (!col_eq(c_, 0)) return false;
    std::vector<bool> taken(static_cast<std::size_t>(n_), false);
    taken[static_cast<std::size_t>(c_)] = true;
    for (Eigen::Index jb = 1; jb < n_; ++jb) {
      bool found = false;
      for (Eigen::Index ja = 0; ja < n_ && !found; ++ja) {
        if (taken[static_cast<std::size_t>(ja)] || !col_eq(ja, jb)) continue;
        taken[static_cast<std::size_t>(ja)] = true;
        found = true;
      }
      if (!found) return false;
    }
    return true;
  }

  bool extend(Eigen::Index depth) {
    if (depth == n_) return true;
    for (Eigen::Index ra = 0; ra < n_; ++ra) {
      if (used_[static_cast<std::size_t>(ra)]) continue;
      sigma_[static_cast<std::size_t>(depth)] = ra;
      used_[static_cast<std::size_t>(ra)] = true;
      if (columns_compatible(depth + 1) && extend(depth + 1)) return true;
      used_[static_cast<std::size_t>(ra)] = false;
    }
    sigma_[static_cast<std::size_t>(depth)] = -1;
    return false;
  }

  const ComplexMatrix& a_;
  const ComplexMatrix& b_;
  double tol_;
  Eigen::Index n_;
  Eigen::Index c_ = 0;
  std::vector<Eigen::Index> sigma_;
  std::vector<bool> used_;
};

}  // namespace

bool equivalent(const ComplexMatrix& u, const ComplexMatrix& v, const NumericPolicy& policy,
                std::size_t n_limit, bool use_invariant_filter) {
  require_square(u, "equivalent");
  require_square(v, "equivalent");
  if (u.rows() != v.rows()) throw Error("equivalent: order mismatch");
  const auto n = static_cast<std::size_t>(u.rows());
  if (n > n_limit) {
    throw Error("equivalent: order " + std::to_string(n) + " exceeds the exact-search limit " +
                std::to_string(n_limit));
  }
  if (!verify_biunitary(u, policy).is_biunitary || !verify_biunitary(v, policy).is_biunitary) {
    throw Error("equivalent: inputs must be biunitary");
  }

  const double root_n = std::sqrt(static_cast<double>(n));
  const ComplexMatrix wu = u * root_n;
  const ComplexMatrix wv = v * root_n;
  const double tol = std::max(8.0 * policy.tol_entry, 1e-12);

  if (use_invariant_filter) {
    const auto iu = haagerup_invariant(wu);
    const auto iv = haagerup_invariant(wv);
    for (std::size_t k = 0; k < iu.size(); ++k) {
      if (std::abs(iu[k] - iv[k]) > 4.0 * tol) return false;
    }
  }

  const ComplexMatrix b = dephase_at(wv, 0, 0);
  const auto m = static_cast<Eigen::Index>(n);
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index c = 0; c < m; ++c) {
      const ComplexMatrix a = dephase_at(wu, r, c);
      PermutationMatcher matcher(a, b, tol);
      if (matcher.match(r, c)) return true;
    }
  }
  return false;
}

}  // namespace biunitary
