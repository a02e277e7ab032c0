#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "biunitary/families.hpp"
#include "biunitary/hadamard.hpp"
#include "biunitary/search.hpp"
#include "test_support.hpp"

namespace biunitary {
namespace {

DiagProjection mask(std::size_t n, std::vector<int> idx) { return DiagProjection::from_indices(n, idx); }

SearchConfig petrescu_config() {
  SearchConfig cfg;
  cfg.n = 7;
  cfg.p1 = mask(7, {0, 1});
  cfg.p2 = mask(7, {2, 3});
  cfg.p3 = mask(7, {0, 1});
  cfg.p4 = mask(7, {2, 3});
  return cfg;
}

RealMatrix noisy(const RealMatrix& theta, double scale, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, scale);
  RealMatrix out = theta;
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) += g(rng);
  return out;
}

TEST(SearchObjective, ZeroOnPetrescuFamily) {
  const auto cfg = petrescu_config();
  for (double a : {0.0, 0.7, 2.1}) {
    const auto theta = matrix_to_phases(petrescu(std::polar(1.0, a)));
    EXPECT_LT(objective(theta, cfg), 1e-12);
    EXPECT_LT(gradient(theta, cfg).norm(), 1e-8);
  }
  const auto f7 = matrix_to_phases(fourier(7));
  EXPECT_GT(objective(f7, cfg), 1e-3);
}

TEST(SearchObjective, PhaseRoundTrip) {
  const auto u = petrescu(std::polar(1.0, 0.4));
  EXPECT_LT((phases_to_matrix(matrix_to_phases(u)) - u).norm(), 1e-14);
}

TEST(SearchGradient, MatchesCentralDifferences) {
  SearchConfig cfg;
  cfg.n = 5;
  cfg.p1 = mask(5, {0});
  cfg.p2 = mask(5, {1, 2});
  cfg.p3 = mask(5, {3});
  cfg.p4 = mask(5, {0, 4});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uni(0.0, 2.0 * std::numbers::pi);
  const double h = 1e-6;
  for (int point = 0; point < 10; ++point) {
    RealMatrix theta(5, 5);
    for (Eigen::Index i = 0; i < theta.size(); ++i) theta(i) = uni(rng);
    const RealMatrix g = gradient(theta, cfg);
    RealMatrix fd(5, 5);
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
      RealMatrix a = theta, b = theta;
      a(i) += h;
      b(i) -= h;
      fd(i) = (smoothed_objective(a, cfg) - smoothed_objective(b, cfg)) / (2.0 * h);
    }
    EXPECT_LT((g - fd).norm() / fd.norm(), 1e-5) << "point " << point;
  }
}

TEST(LocalSearch, RecoversFromPerturbedSolution) {
  auto cfg = petrescu_config();
  const RealMatrix exact = matrix_to_phases(petrescu(1.0));
  cfg.seed_phases = noisy(exact, 1e-3, 11);
  const auto result = local_search(cfg);
  EXPECT_TRUE(result.converged);
  EXPECT_LT(result.objective, 1e-10);
  EXPECT_TRUE(verify_biunitary(phases_to_matrix(result.phases)).is_biunitary);
  for (std::size_t k = 1; k < result.trace.size(); ++k) EXPECT_LE(result.trace[k], result.trace[k - 1]);
}

TEST(LocalSearch, ExactStartStopsImmediately) {
  auto cfg = petrescu_config();
  cfg.seed_phases = matrix_to_phases(petrescu(std::polar(1.0, 1.3)));
  const auto result = local_search(cfg);
  EXPECT_TRUE(result.converged);
  EXPECT_LE(result.iterations, 2);
}

TEST(LocalSearch, ZeroMasksFindSomeBiunitary) {
  SearchConfig cfg;
  cfg.n = 4;
  cfg.p1 = cfg.p2 = cfg.p3 = cfg.p4 = DiagProjection::zeros(4);
  cfg.seed_phases = noisy(matrix_to_phases(fourier(4)), 0.05, 5);
  const auto result = local_search(cfg);
  EXPECT_TRUE(result.converged);
  EXPECT_TRUE(verify_biunitary(phases_to_matrix(result.phases)).is_biunitary);
}

TEST(LocalSearch, Deterministic) {
  auto cfg = petrescu_config();
  cfg.rng_seed = 17;
  cfg.max_iters = 300;
  const auto a = local_search(cfg);
  const auto b = local_search(cfg);
  EXPECT_EQ(a.phases, b.phases);
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(LocalSearch, ValidatesConfig) {
  auto cfg = petrescu_config();
  cfg.p2 = mask(7, {1, 2});
  EXPECT_THROW(local_search(cfg), Error);
  cfg = petrescu_config();
  cfg.p4 = mask(6, {2});
  EXPECT_THROW(local_search(cfg), Error);
}

TEST(Promote, CertifiedSpecGivesFamily) {
  auto cfg = petrescu_config();
  cfg.seed_phases = noisy(matrix_to_phases(petrescu(1.0)), 1e-3, 23);
  const auto result = local_search(cfg);
  ASSERT_TRUE(result.converged);
  const auto spec = promote(result, cfg);
  EXPECT_TRUE(is_certified(spec));
  // The converged point lies on the known family up to equivalence.
  const auto base = dephase(spec.base);
  double best = 1e9;
  for (int k = 0; k < 3600; ++k) {
    const Complex lam = std::polar(1.0, 2.0 * std::numbers::pi * k / 3600.0);
    best = std::min(best, (dephase(petrescu(lam)) - base).norm());
  }
  EXPECT_LT(best, 1e-2);
  for (int k = 0; k < 8; ++k) {
    const auto member = constr2_family(spec, std::polar(1.0, 0.25 + 0.8 * k));
    EXPECT_TRUE(verify_biunitary(member).is_biunitary);
  }
}

TEST(Promote, RejectsUnconverged) {
  auto cfg = petrescu_config();
  cfg.rng_seed = 2;
  cfg.max_iters = 1;
  const auto result = local_search(cfg);
  ASSERT_FALSE(result.converged);
  EXPECT_THROW(promote(result, cfg), Error);
}

}  // namespace
}  // namespace biunitary
