#include "cvxcluster/alm.hpp"

#include <cmath>
#include <random>
#include <string>

#include "cvxcluster/linalg.hpp"
#include "cvxcluster/random.hpp"

namespace cvxcluster {

namespace {

constexpr int kOversample = 10;
constexpr int kPowerIterations = 2;

Matrix shrink_symmetric(const linalg::SymmetricEigen& eig, double eps) {
  const Eigen::VectorXd& lam = eig.values;
  Eigen::VectorXd shrunk(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    const double mag = std::max(std::abs(lam(i)) - eps, 0.0);
    shrunk(i) = lam(i) < 0.0 ? -mag : mag;
  }
  // Only surviving components contribute.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < shrunk.size(); ++i) {
    if (shrunk(i) != 0.0) keep.push_back(i);
  }
  const Eigen::Index n = eig.vectors.rows();
  Matrix u(n, static_cast<Eigen::Index>(keep.size()));
  Eigen::VectorXd d(static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    u.col(static_cast<Eigen::Index>(k)) = eig.vectors.col(keep[k]);
    d(static_cast<Eigen::Index>(k)) = shrunk(keep[k]);
  }
  Matrix out = u * d.asDiagonal() * u.transpose();
  return 0.5 * (out + out.transpose());
}

Matrix orthonormalize(const Matrix& x) {
  Eigen::HouseholderQR<Matrix> qr(x);
  return qr.householderQ() * Matrix::Identity(x.rows(), x.cols());
}

}  // namespace

void SolverConfig::validate() const {
  if (mu0 && !(*mu0 > 0.0)) throw std::invalid_argument("mu0 must be positive");
  if (!(alpha > 1.0)) throw std::invalid_argument("alpha must exceed 1");
  if (!(tol_primal > 0.0)) throw std::invalid_argument("tol_primal must be positive");
  if (!(tol_dual > 0.0)) throw std::invalid_argument("tol_dual must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  if (svd_rank_hint && *svd_rank_hint < 1) throw std::invalid_argument("svd_rank_hint must be >= 1");
}

SolverConfig SolverConfig::with_weights(const Weights& w) {
  SolverConfig cfg;
  cfg.weights = w;
  return cfg;
}

Matrix svt(const Matrix& x, double eps) {
  if (eps < 0.0) throw std::invalid_argument("svt: eps must be non-negative");
  if (x.size() == 0) return x;
  if (linalg::is_symmetric(x)) return shrink_symmetric(linalg::symmetric_eigen(x), eps);
  Eigen::BDCSVD<Matrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd s = (svd.singularValues().array() - eps).max(0.0).matrix();
  return svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
}

std::optional<Matrix> svt_truncated(const Matrix& x, double eps, int rank) {
  if (eps < 0.0) throw std::invalid_argument("svt: eps must be non-negative");
  const Eigen::Index n = x.rows();
  const Eigen::Index width = std::min<Eigen::Index>(rank + kOversample, n);
  if (!linalg::is_symmetric(x) || width >= n) return std::nullopt;

  // Fixed seed keeps solves deterministic.
  std::mt19937_64 rng(0x5eedULL + static_cast<std::uint64_t>(n));
  std::normal_distribution<double> gauss;
  Matrix omega(n, width);
  for (Eigen::Index j = 0; j < width; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) omega(i, j) = gauss(rng);
  }
  Matrix q = orthonormalize(x * omega);
  for (int it = 0; it < kPowerIterations; ++it) q = orthonormalize(x * q);

  Matrix small = q.transpose() * x * q;
  small = 0.5 * (small + small.transpose());
  linalg::SymmetricEigen eig = linalg::symmetric_eigen(small);
  int surviving = 0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (std::abs(eig.values(i)) > eps) ++surviving;
  }
  if (surviving > rank) return std::nullopt;
  eig.vectors = q * eig.vectors;
  return shrink_symmetric(eig, eps);
}

Matrix soft_threshold_weighted(const Matrix& x, double eps, const Matrix& c) {
  if (eps < 0.0) throw std::invalid_argument("soft threshold: eps must be non-negative");
  if (x.rows() != c.rows() || x.cols() != c.cols()) {
    throw std::invalid_argument("soft threshold: dimension mismatch");
  }
  const auto level = (eps * c.array());
  return (x.array() > level)
      .select(x.array() - level, (x.array() < -level).select(x.array() + level, 0.0))
      .matrix();
}

SolveResult solve_weighted(const Adjacency& a, const Matrix& c, double lambda,
                           const SolverConfig& cfg) {
  cfg.validate();
  const int n = a.n();
  if (c.rows() != n || c.cols() != n) throw std::invalid_argument("solve: weight matrix mismatch");
  if (!(lambda > 0.0)) throw std::invalid_argument("solve: lambda must be positive");

  const Matrix& am = a.matrix();
  const double a_norm = am.norm();
  double mu = cfg.mu0 ? *cfg.mu0 : 1.25 / linalg::spectral_norm(am);

  // Y carries the nuclear norm, S the weighted l1 term and Z the box; the
  // constraints are Y + S = A (multiplier M) and Z = Y (multiplier N).
  Matrix y = Matrix::Zero(n, n);
  Matrix s = Matrix::Zero(n, n);
  Matrix z = Matrix::Zero(n, n);
  Matrix m = Matrix::Zero(n, n);
  Matrix box_multiplier = Matrix::Zero(n, n);

  SolveResult res;
  res.primal_residual = 1.0;
  for (int k = 0; k < cfg.max_iter; ++k) {
    const double inv_mu = 1.0 / mu;
    const Matrix target = 0.5 * ((am - s + inv_mu * m) + (z + inv_mu * box_multiplier));
    std::optional<Matrix> y_next;
    if (cfg.svd_rank_hint) y_next = svt_truncated(target, 0.5 * inv_mu, *cfg.svd_rank_hint);
    if (!y_next) y_next = svt(target, 0.5 * inv_mu);
    y = std::move(*y_next);

    const Matrix s_prev = s;
    const Matrix z_prev = z;
    s = soft_threshold_weighted(am - y + inv_mu * m, lambda * inv_mu, c);
    z = (y - inv_mu * box_multiplier).cwiseMax(0.0).cwiseMin(1.0);

    const Matrix split_gap = am - y - s;
    const Matrix box_gap = z - y;
    m += mu * split_gap;
    box_multiplier += mu * box_gap;

    const double primal = std::sqrt(split_gap.squaredNorm() + box_gap.squaredNorm()) / a_norm;
    const double dual = mu * std::sqrt((s - s_prev).squaredNorm() + (z - z_prev).squaredNorm()) / a_norm;
    res.iterations = k + 1;
    res.primal_residual = (am - z - s).norm() / a_norm;
    res.dual_residual = dual;

    if (!std::isfinite(primal) || !std::isfinite(dual) || !m.allFinite()) {
      throw SolverDivergence(k + 1, "ALM iterate became non-finite at iteration " + std::to_string(k + 1));
    }
    if (std::max(primal, res.primal_residual) <= cfg.tol_primal && dual <= cfg.tol_dual) {
      res.converged = true;
      break;
    }
    // Residual balancing keeps primal and dual progress within a factor of 10.
    if (primal > 10.0 * dual) {
      mu *= cfg.alpha;
    } else if (dual > 10.0 * primal) {
      mu /= cfg.alpha;
    }
  }
  res.y_hat = std::move(z);
  res.s_hat = std::move(s);
  res.multiplier = std::move(m);
  res.final_mu = mu;
  res.objective = relaxed_objective(a, res.y_hat, c, lambda);
  return res;
}

SolveResult solve(const Adjacency& a, const SolverConfig& cfg) {
  if (cfg.weights.n != a.n()) throw std::invalid_argument("solve: weights built for a different n");
  return solve_weighted(a, weight_matrix(a, cfg.weights), cfg.weights.lambda(), cfg);
}

SolveResult solve_heterophily(const Adjacency& a, const SolverConfig& cfg) {
  return solve(complement_graph(a), cfg);
}

}  // namespace cvxcluster
