#pragma once

#include "cvxcluster/graph_model.hpp"

namespace cvxcluster {

/// Likelihood weights and the nuclear-norm scale of the convex program.
///
/// Edges inside the candidate clustering are rewarded by c_a, non-edges are
/// penalized by c_ac, and the nuclear norm enters with coefficient rho*sqrt(n).
/// In the equivalent low-rank-plus-sparse form the sparse term carries
/// lambda = 1/(rho*sqrt(n)).
struct Weights {
  double t = 0.5;
  double c_a = 1.0;
  double c_ac = 1.0;
  double rho = 48.0;
  int n = 0;

  double nuclear_coefficient() const;
  double lambda() const;
};

inline constexpr double kDefaultRho = 48.0;
inline constexpr double kBoxTolerance = 1e-6;

/// c_a = sqrt((1-t)/t), c_ac = sqrt(t/(1-t)). Throws std::invalid_argument
/// unless 0 < t < 1, n >= 1 and rho > 0.
Weights make_weights(double t, int n, double rho = kDefaultRho);

/// Weights for running on the complement graph of a heterophilous instance:
/// `t` is the threshold on the original density scale and the weights use 1 - t.
Weights make_heterophily_weights(double t, int n, double rho = kDefaultRho);

/// c_ij = c_a where a_ij = 1, c_ac elsewhere.
Matrix weight_matrix(const Adjacency& a, const Weights& w);

double nuclear_norm(const Matrix& y);

/// Maximization objective: c_a * sum_{a=1} y - c_ac * sum_{a=0} y - rho*sqrt(n)*||Y||_*.
/// Throws std::invalid_argument if y leaves [0, 1] by more than kBoxTolerance.
double objective_value(const Adjacency& a, const Matrix& y, const Weights& w);

/// Minimization form lambda*||C o (A - Y)||_1 + ||Y||_*. For feasible Y,
/// objective_value + relaxed_objective / lambda = c_a * |support(A)|.
double relaxed_objective(const Adjacency& a, const Matrix& y, const Weights& w);

/// Same as above for an arbitrary weight matrix and sparse-term scale.
double relaxed_objective(const Adjacency& a, const Matrix& y, const Matrix& c, double lambda);

}  // namespace cvxcluster
