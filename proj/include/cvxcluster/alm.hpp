#pragma once

#include <optional>
#include <stdexcept>

#include "cvxcluster/graph_model.hpp"
#include "cvxcluster/objective.hpp"

namespace cvxcluster {

struct SolverConfig {
  Weights weights;
  /// Initial penalty; defaults to 1.25 / ||A||_2 when unset.
  std::optional<double> mu0;
  /// Factor by which the penalty is raised (or lowered) when the primal
  /// residual exceeds the dual residual tenfold (or the reverse).
  double alpha = 1.6;
  double tol_primal = 1e-7;
  double tol_dual = 1e-7;
  int max_iter = 500;
  /// When set, singular value thresholding tries a randomized rank-limited
  /// decomposition first and falls back to the full one if it is too small.
  std::optional<int> svd_rank_hint;

  /// Throws std::invalid_argument on mu0 <= 0, alpha <= 1, non-positive
  /// tolerances or max_iter < 1.
  void validate() const;

  static SolverConfig with_weights(const Weights& w);
};

struct SolveResult {
  Matrix y_hat;
  Matrix s_hat;
  Matrix multiplier;
  int iterations = 0;
  /// ||A - y_hat - s_hat||_F / ||A||_F.
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double final_mu = 0.0;
  /// lambda*||C o (A - Y)||_1 + ||Y||_* at the returned Y (minimization form).
  double objective = 0.0;
  bool converged = false;
};

/// Raised when an iterate stops being finite.
class SolverDivergence : public std::runtime_error {
 public:
  SolverDivergence(int iteration, const std::string& what)
      : std::runtime_error(what), iteration_(iteration) {}
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

/// Proximal map of eps*||.||_*: singular values shrunk by eps and floored at 0.
Matrix svt(const Matrix& x, double eps);

/// Rank-limited variant used when a rank hint is available. Returns nullopt
/// if more than `rank` singular values survive the threshold.
std::optional<Matrix> svt_truncated(const Matrix& x, double eps, int rank);

/// Entrywise shrinkage of x_ij toward zero by eps*c_ij.
Matrix soft_threshold_weighted(const Matrix& x, double eps, const Matrix& c);

/// Augmented Lagrange multiplier iteration for
///   min lambda*||C o S||_1 + ||Y||_*  s.t.  Y + S = A, 0 <= Y <= 1
/// with an arbitrary weight matrix C.
///
/// The box is carried by a copy Z = Y with its own multiplier, so each step
/// is an exact proximal map: singular value thresholding for Y, weighted
/// soft-thresholding for S and clipping for Z. y_hat is the clipped copy and
/// therefore satisfies the box exactly. Converged means the primal and dual
/// residuals are both below their tolerances.
SolveResult solve_weighted(const Adjacency& a, const Matrix& c, double lambda,
                           const SolverConfig& cfg);

/// The weighted program with C and lambda taken from cfg.weights.
SolveResult solve(const Adjacency& a, const SolverConfig& cfg);

/// solve() on the complement graph; cfg.weights should come from
/// make_heterophily_weights.
SolveResult solve_heterophily(const Adjacency& a, const SolverConfig& cfg);

}  // namespace cvxcluster
