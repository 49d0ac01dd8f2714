#pragma once

#include <vector>

#include "cvxcluster/graph_model.hpp"

namespace cvxcluster {

struct EstimationResult {
  std::vector<double> eigenvalues;  // descending
  int r_hat = 0;
  double k_hat = 0.0;
  double p_hat = 0.0;  // clamped to [0, 1]
  double q_hat = 0.0;  // clamped to [0, 1]
  double p_raw = 0.0;
  double q_raw = 0.0;
  double t = 0.5;      // (p_hat + q_hat) / 2, clamped to [kMinT, 1 - kMinT]
};

inline constexpr double kMinT = 1e-6;

/// Spectral estimate of the standard blockmodel parameters.
///
/// With eigenvalues l_1 >= ... >= l_n of A, the number of clusters is the
/// position i in 2..n-1 of the largest gap l_i - l_{i+1} (ties go to the
/// smallest i), K = n / r, q = (l_1 - l_2) / n and
/// p = (K l_1 + (n - K) l_2 - n) / (n (K - 1)). These invert the three
/// eigenvalue tiers of E[A] = K(p-q)+nq+(1-p), K(p-q)+(1-p) and 1-p.
///
/// Throws std::invalid_argument for n < 3 or when every candidate gap is
/// zero (a single community has no gap past the first eigenvalue), and
/// std::domain_error when K <= 1.
EstimationResult estimate_parameters(const Adjacency& a);

/// Same computation on an explicit spectrum (any order).
EstimationResult estimate_from_eigenvalues(std::vector<double> eigenvalues);

struct ConditionReport {
  double lhs = 0.0;               // (p - q) / sqrt(p (1 - q))
  double sufficient_bound = 0.0;  // max{sqrt(n)/K, log^2(n)/sqrt(K)}
  double margin = 0.0;            // lhs / sufficient_bound
  double necessary_bound = 0.0;   // 1/sqrt(n)
  /// Necessary condition for any estimator (up to its unknown constant):
  /// lhs >= necessary_bound.
  bool meets_necessary_condition() const { return lhs >= necessary_bound; }
};

/// Unscaled recovery-condition quantities. The absolute constants in front of
/// the bounds are unknown, so thresholding the margin is left to callers.
/// Requires 0 <= q < p <= 1; heterophilous callers pass 1 - p and 1 - q.
ConditionReport condition_report(double p, double q, int n, double k);

/// Planted-clique form (p = 1): returns (1 - q) / max{n/K^2, log^4(n)/K}.
double clique_margin(double q, int n, double k);

}  // namespace cvxcluster
