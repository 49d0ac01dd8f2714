#pragma once

#include <optional>

#include "cvxcluster/graph_model.hpp"
#include "cvxcluster/objective.hpp"

namespace cvxcluster {

/// Dual certificate W = W1 + W2 + W3 + W4 for the optimality of the true
/// cluster matrix Y*, together with the sets it is built on.
struct Certificate {
  Matrix w;
  Matrix w1, w2, w3, w4;
  double epsilon = 0.0;
  /// Orthonormal basis of the column space of Y* (one column per cluster).
  Matrix basis;
  /// basis * basis^T = sum over clusters of (1/k_m) * block indicator.
  Matrix projection;
  /// Support of Y* (R) and of A (edge set, diagonal included).
  Matrix truth;
  Matrix edges;
};

struct CertificateReport {
  double epsilon = 0.0;
  double norm_w = 0.0;
  double pt_w_inf = 0.0;
  double pt_w_bound = 0.0;
  bool epsilon_in_range = false;  // 0 < epsilon < 1
  bool condition_a_pass = false;  // ||W|| <= 1
  bool condition_b_pass = false;  // ||P_T(W)||_inf <= (eps/2) lambda min{c_a, c_ac}
  bool condition_c_pass = false;  // equalities to 1e-9 and non-negative slacks
  double c_equalities_max_violation = 0.0;
  double c_inequalities_min_slack = 0.0;

  bool all_pass() const {
    return epsilon_in_range && condition_a_pass && condition_b_pass && condition_c_pass;
  }
};

inline constexpr double kEqualityTolerance = 1e-9;

/// P_T(M) = P M + M P - P M P with P = U0 U0^T.
Matrix project_t(const Matrix& m, const Matrix& basis);

/// 48 / sqrt(t(1-t)) * max{sqrt(n)/K, sqrt(log^4(n)/K)}.
double default_certificate_epsilon(double t, int n, int k);

/// Builds the four-part certificate for the homogeneous parameters (p, q).
/// Throws std::invalid_argument if p <= q, p == 0, q == 1, or dimensions
/// disagree.
Certificate build_certificate(const Adjacency& a, const ClusterMatrix& truth, const Weights& w,
                              double p, double q,
                              std::optional<double> epsilon_override = std::nullopt);

CertificateReport check_certificate(const Certificate& cert, const Weights& w);

}  // namespace cvxcluster
