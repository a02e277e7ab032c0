#include "biunitary/search.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "biunitary/hadamard.hpp"

namespace biunitary {

void SearchConfig::validate() const {
  if (n < 1) throw Error("search: order must be >= 1");
  for (const auto* p : {&p1, &p2, &p3, &p4}) {
    if (p->order() != n) throw Error("search: mask order does not match n");
  }
  if (!p1.disjoint_from(p2) || !p3.disjoint_from(p4)) {
    throw Error("search: masks must satisfy p1 p2 = 0 and p3 p4 = 0");
  }
  if (seed_phases.size() != 0 &&
      (seed_phases.rows() != static_cast<Eigen::Index>(n) || seed_phases.cols() != seed_phases.rows())) {
    throw Error("search: seed phases must be n x n");
  }
  if (max_iters < 0 || !(step0 > 0) || !(tol_obj > 0)) throw Error("search: invalid iteration settings");
}

ComplexMatrix phases_to_matrix(const RealMatrix& theta) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(theta.rows()));
  return theta.unaryExpr([scale](double t) { return std::polar(scale, t); });
}

RealMatrix matrix_to_phases(const ComplexMatrix& u) {
  return u.unaryExpr([](Complex z) { return std::arg(z); });
}

namespace {

struct Residuals {
  ComplexMatrix u;
  ComplexMatrix unitarity;  // U U^* - I
  ComplexMatrix block;      // [p1, U p3 U^*] - [p2, U p4 U^*]
};

Residuals residuals(const RealMatrix& theta, const SearchConfig& cfg) {
  if (theta.rows() != static_cast<Eigen::Index>(cfg.n) || theta.cols() != theta.rows()) {
    throw Error("search: phase matrix shape does not match n");
  }
  Residuals r;
  r.u = phases_to_matrix(theta);
  const auto n = r.u.rows();
  r.unitarity = r.u * r.u.adjoint() - ComplexMatrix::Identity(n, n);
  const ComplexMatrix p1 = cfg.p1.matrix();
  const ComplexMatrix p2 = cfg.p2.matrix();
  const ComplexMatrix q3 = r.u * cfg.p3.matrix() * r.u.adjoint();
  const ComplexMatrix q4 = r.u * cfg.p4.matrix() * r.u.adjoint();
  r.block = (p1 * q3 - q3 * p1) - (p2 * q4 - q4 * p2);
  return r;
}

}  // namespace

double objective(const RealMatrix& theta, const SearchConfig& cfg) {
  const auto r = residuals(theta, cfg);
  return r.unitarity.norm() + r.block.norm();
}

double smoothed_objective(const RealMatrix& theta, const SearchConfig& cfg) {
  const auto r = residuals(theta, cfg);
  return r.unitarity.squaredNorm() + r.block.squaredNorm();
}

RealMatrix gradient(const RealMatrix& theta, const SearchConfig& cfg) {
  const auto r = residuals(theta, cfg);
  const ComplexMatrix p1 = cfg.p1.matrix();
  const ComplexMatrix p2 = cfg.p2.matrix();
  const ComplexMatrix p3 = cfg.p3.matrix();
  const ComplexMatrix p4 = cfg.p4.matrix();

  // Wirtinger gradient G with d f = Re tr(G^* dU).
  const ComplexMatrix cs = r.block.adjoint();
  const ComplexMatrix k1 = cs * p1 - p1 * cs;
  const ComplexMatrix k2 = p2 * cs - cs * p2;
  const ComplexMatrix h1 = k1 + k1.adjoint();
  const ComplexMatrix h2 = k2 + k2.adjoint();
  const ComplexMatrix g = 4.0 * r.unitarity * r.u + 2.0 * h1 * r.u * p3 + 2.0 * h2 * r.u * p4;

  // dU_ij / dθ_ij = i U_ij.
  const ComplexMatrix prod = g.conjugate().cwiseProduct(r.u);
  return -prod.imag();
}

SearchResult local_search(const SearchConfig& cfg) {
  cfg.validate();
  constexpr double kArmijo = 1e-4;
  constexpr double kMinStep = 1e-20;

  RealMatrix theta = cfg.seed_phases;
  if (theta.size() == 0) {
    std::mt19937_64 rng(cfg.rng_seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    const auto m = static_cast<Eigen::Index>(cfg.n);
    theta.resize(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) theta(i, j) = angle(rng);
  }

  SearchResult res;
  double f = smoothed_objective(theta, cfg);
  res.trace.push_back(f);
  double obj = objective(theta, cfg);

  RealMatrix prev_theta, prev_grad;
  double step = cfg.step0;
  while (obj > cfg.tol_obj && res.iterations < cfg.max_iters) {
    const RealMatrix g = gradient(theta, cfg);
    const double gg = g.squaredNorm();
    if (!(gg > 0.0)) break;

    if (prev_theta.size() != 0) {
      const RealMatrix s = theta - prev_theta;
      const RealMatrix y = g - prev_grad;
      const double sy = (s.array() * y.array()).sum();
      if (sy > 0.0) step = s.squaredNorm() / sy;
    }

    double t = step;
    RealMatrix trial = theta - t * g;
    double f_trial = smoothed_objective(trial, cfg);
    while (f_trial > f - kArmijo * t * gg && t > kMinStep) {
      t *= 0.5;
      trial = theta - t * g;
      f_trial = smoothed_objective(trial, cfg);
    }
    if (!(f_trial < f)) break;  // line search stalled

    prev_theta = std::move(theta);
    prev_grad = g;
    theta = std::move(trial);
    f = f_trial;
    step = t;
    res.trace.push_back(f);
    ++res.iterations;
    obj = objective(theta, cfg);
  }

  res.phases = std::move(theta);
  res.objective = obj;
  res.converged = obj <= cfg.tol_obj;
  return res;
}

BlockPairSpec promote(const SearchResult& result, const SearchConfig& cfg, const NumericPolicy& policy) {
  if (!result.converged) throw Error("promote: search result did not converge");
  const ComplexMatrix u = phases_to_matrix(result.phases);
  const auto verdict = verify_biunitary(u, policy);
  if (!verdict.is_biunitary) {
    throw Error("promote: converged matrix is not biunitary (unitarity residual " +
                std::to_string(verdict.max_unitarity_residual) + ")");
  }
  auto spec = make_block_pair(u, cfg.p1, cfg.p2, cfg.p3, cfg.p4);
  if (spec.residual > policy.tol_unitary) {
    throw Error("promote: block residual " + std::to_string(spec.residual) + " exceeds tolerance");
  }
  return spec;
}

}  // namespace biunitary
