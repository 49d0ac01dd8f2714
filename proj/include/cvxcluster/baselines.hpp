#pragma once

#include <string>

#include "cvxcluster/alm.hpp"
#include "cvxcluster/graph_model.hpp"

namespace cvxcluster {

enum class BaselineMethod { kSlink, kSpectral, kLrps };

struct BaselineConfig {
  BaselineMethod method = BaselineMethod::kSlink;
  int r = 1;
  double lrps_lambda_scale = 1.0;
};

std::string to_string(BaselineMethod method);
BaselineMethod parse_baseline_method(const std::string& name);

/// Single-linkage clustering of the given points under the L1 metric,
/// stopped at exactly r clusters. Among equally close pairs the
/// lexicographically smallest (i, j) merges first. Labels are numbered by
/// first appearance in node order.
ClusterAssignment single_linkage_l1(const Matrix& points, int r);

/// Single linkage over adjacency rows with distance ||A_i. - A_j.||_1
/// (all n coordinates, diagonal included).
ClusterAssignment slink(const Adjacency& a, int r);

/// Single linkage on the rows of the top-r singular vectors of A.
ClusterAssignment spectral_cluster(const Adjacency& a, int r);

/// Unweighted low-rank-plus-sparse decomposition: the ALM solver with C = 1
/// and lambda = scale / sqrt(n). Only the iteration controls of `solver` are
/// used; its weights are ignored.
SolveResult lrps(const Adjacency& a, double scale, const SolverConfig& solver = {});

}  // namespace cvxcluster
