#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "biunitary/hadamard.hpp"
#include "test_support.hpp"

namespace biunitary {
namespace {

// Exhaustive oracle: try every row and column permutation and test whether the
// remainder is a pure diagonal rescaling, reading the phases off row 0 and
// column 0. Exponential; only for tiny orders.
bool equivalent_by_enumeration(const ComplexMatrix& u, const ComplexMatrix& v) {
  const auto n = static_cast<std::size_t>(u.rows());
  std::vector<std::size_t> rp(n), cp(n);
  std::iota(rp.begin(), rp.end(), 0);
  do {
    std::iota(cp.begin(), cp.end(), 0);
    do {
      // v_ij = l_i u_{rp[i], cp[j]} r_j
      std::vector<Complex> l(n), r(n);
      r[0] = 1.0;
      for (std::size_t i = 0; i < n; ++i) l[i] = v(i, 0) / u(rp[i], cp[0]);
      for (std::size_t j = 0; j < n; ++j) r[j] = v(0, j) / (l[0] * u(rp[0], cp[j]));
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i)
        for (std::size_t j = 0; j < n && ok; ++j)
          ok = std::abs(v(i, j) - l[i] * u(rp[i], cp[j]) * r[j]) < 1e-9;
      if (ok) return true;
    } while (std::next_permutation(cp.begin(), cp.end()));
  } while (std::next_permutation(rp.begin(), rp.end()));
  return false;
}

TEST(Equivalent, Reflexive) {
  EXPECT_TRUE(equivalent(fourier(7), fourier(7)));
  EXPECT_TRUE(equivalent(bjorck7(), bjorck7()));
  EXPECT_TRUE(equivalent(petrescu(std::polar(1.0, 0.5)), petrescu(std::polar(1.0, 0.5))));
}

TEST(Equivalent, RecoversRandomMoves) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const auto moved = EquivalenceMoves::random(7, rng).apply(fourier(7));
    EXPECT_TRUE(equivalent(fourier(7), moved));
    EXPECT_TRUE(equivalent(moved, fourier(7)));
    EXPECT_TRUE(equivalent(fourier(7), moved, {}, 8, /*use_invariant_filter=*/false));
  }
  for (int trial = 0; trial < 5; ++trial) {
    const auto u = petrescu(std::polar(1.0, 0.9));
    EXPECT_TRUE(equivalent(u, EquivalenceMoves::random(7, rng).apply(u)));
  }
}

TEST(Equivalent, DistinguishesInequivalentMatrices) {
  EXPECT_FALSE(equivalent(fourier(7), petrescu(1.0)));
  EXPECT_FALSE(equivalent(fourier(7), petrescu(1.0), {}, 8, false));
  EXPECT_FALSE(equivalent(fourier(7), bjorck7(), {}, 8, false));
  EXPECT_FALSE(equivalent(petrescu(1.0), petrescu(std::polar(1.0, 0.6)), {}, 8, false));
}

TEST(Equivalent, Symmetric) {
  std::mt19937_64 rng(22);
  const std::vector<ComplexMatrix> pool{fourier(7), bjorck7(), petrescu(1.0),
                                        EquivalenceMoves::random(7, rng).apply(bjorck7())};
  for (const auto& a : pool)
    for (const auto& b : pool) EXPECT_EQ(equivalent(a, b), equivalent(b, a));
}

TEST(Equivalent, AgreesWithEnumerationOracleAtOrderFour) {
  std::mt19937_64 rng(23);
  // Order 4 has a one-parameter family F4(a); members with different a are
  // inequivalent except for the symmetries a <-> -a, conj.
  auto f4 = [](double a) {
    ComplexMatrix u = fourier(4);
    u(1, 1) *= std::polar(1.0, a);
    u(1, 3) *= std::polar(1.0, a);
    u(3, 1) *= std::polar(1.0, a);
    u(3, 3) *= std::polar(1.0, a);
    return u;
  };
  const std::vector<ComplexMatrix> pool{fourier(4), f4(0.4), f4(1.1),
                                        EquivalenceMoves::random(4, rng).apply(f4(0.4))};
  for (const auto& a : pool) {
    ASSERT_TRUE(verify_biunitary(a).is_biunitary);
    for (const auto& b : pool) {
      EXPECT_EQ(equivalent(a, b, {}, 8, false), equivalent_by_enumeration(a, b));
    }
  }
}

TEST(Equivalent, OrderLimit) {
  EXPECT_THROW(equivalent(fourier(9), fourier(9)), Error);
  EXPECT_NO_THROW(equivalent(fourier(9), fourier(9), {}, 9));
  EXPECT_THROW(equivalent(fourier(3), fourier(4)), Error);
  EXPECT_THROW(equivalent(identity(3), fourier(3)), Error);
}

}  // namespace
}  // namespace biunitary
