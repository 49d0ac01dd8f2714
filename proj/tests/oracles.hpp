#pragma once

// Independent reference computations. Nothing here calls into the solver
// code under test: decompositions go through Eigen's JacobiSVD directly.

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Matrix = Eigen::MatrixXd;

inline Matrix svt(const Matrix& x, double eps) {
  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd s = (svd.singularValues().array() - eps).max(0.0).matrix();
  return svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
}

inline double nuclear_norm(const Matrix& x) {
  return Eigen::JacobiSVD<Matrix>(x).singularValues().sum();
}

inline Matrix weights(const Matrix& a, double t) {
  const double ca = std::sqrt((1.0 - t) / t);
  const double cac = std::sqrt(t / (1.0 - t));
  return a.unaryExpr([&](double v) { return v != 0.0 ? ca : cac; });
}

/// lambda * sum c_ij |a_ij - y_ij| + ||Y||_*.
inline double relaxed_objective(const Matrix& a, const Matrix& y, const Matrix& c, double lambda) {
  return lambda * (c.array() * (a - y).array().abs()).sum() + nuclear_norm(y);
}

struct Reference {
  Matrix y;
  int iterations = 0;
  double change = 0.0;
};

/// Two-block ADMM for min ||Y||_* - lambda <G, Z> + box(Z) s.t. Y = Z, with
/// G = C o (2A - 1). On the box, the linear term equals the weighted L1 data
/// term up to a constant, so the minimizers coincide with those of the
/// relaxed objective.
inline Reference solve(const Matrix& a, const Matrix& c, double lambda, double step = 1.0,
                       int max_iter = 200000, double tol = 1e-12) {
  const auto n = a.rows();
  const Matrix g = lambda * (c.array() * (2.0 * a.array() - 1.0)).matrix();
  Matrix y = Matrix::Zero(n, n);
  Matrix z = y;
  Matrix u = y;
  Reference ref;
  for (int k = 0; k < max_iter; ++k) {
    y = svt(z - u, 1.0 / step);
    const Matrix z_old = z;
    z = (y + u + g / step).cwiseMax(0.0).cwiseMin(1.0);
    u += y - z;
    ref.iterations = k + 1;
    ref.change = std::max((y - z).cwiseAbs().maxCoeff(), (z - z_old).cwiseAbs().maxCoeff());
    if (ref.change < tol) break;
  }
  ref.y = z;
  return ref;
}

/// E[A] for r equal clusters of size k plus outliers: p inside clusters, q
/// elsewhere, ones on the diagonal.
inline Matrix expected_adjacency(int r, int k, int outliers, double p, double q) {
  const int n = r * k + outliers;
  Matrix e = Matrix::Constant(n, n, q);
  for (int b = 0; b < r; ++b) e.block(b * k, b * k, k, k).setConstant(p);
  e.diagonal().setOnes();
  return e;
}

}  // namespace oracle

namespace oracle {

/// How far Z is from satisfying (X - Z)/eps in the subdifferential of the
/// nuclear norm at Z: with Z = U S V^T (nonzero part), the scaled residual
/// G must satisfy U^T G V = I, U^T G (I - VV^T) = 0, (I - UU^T) G V = 0 and
/// ||(I - UU^T) G (I - VV^T)|| <= 1. Returned value is eps times the largest
/// violation, so it is on the scale of the entries of X.
inline double svt_optimality_residual(const Matrix& x, const Matrix& z, double eps, double rank_tol = 1e-9) {
  const auto n = x.rows();
  Eigen::JacobiSVD<Matrix> svd(z, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > rank_tol) ++rank;
  const Matrix u = svd.matrixU().leftCols(rank);
  const Matrix v = svd.matrixV().leftCols(rank);
  const Matrix g = x - z;  // should equal eps * (U V^T + W)
  const Matrix pu = Matrix::Identity(n, n) - u * u.transpose();
  const Matrix pv = Matrix::Identity(x.cols(), x.cols()) - v * v.transpose();
  double worst = 0.0;
  if (rank > 0) {
    worst = std::max(worst, (u.transpose() * g * v - eps * Matrix::Identity(rank, rank)).cwiseAbs().maxCoeff());
    worst = std::max(worst, (u.transpose() * g * pv).cwiseAbs().maxCoeff());
    worst = std::max(worst, (pu * g * v).cwiseAbs().maxCoeff());
  }
  const double tail = Eigen::JacobiSVD<Matrix>(pu * g * pv).singularValues()(0);
  return std::max(worst, std::max(0.0, tail - eps));
}

/// Largest violation of the scalar optimality condition of
/// min_z eps*c*|z| + (z - x)^2 / 2, taken entrywise.
inline double soft_threshold_optimality_residual(const Matrix& x, const Matrix& z, double eps, const Matrix& c) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const double tau = eps * c(i, j);
      const double r = x(i, j) - z(i, j);
      if (z(i, j) > 0.0) {
        worst = std::max(worst, std::abs(r - tau));
      } else if (z(i, j) < 0.0) {
        worst = std::max(worst, std::abs(r + tau));
      } else {
        worst = std::max(worst, std::max(0.0, std::abs(r) - tau));
      }
    }
  }
  return worst;
}

}  // namespace oracle
