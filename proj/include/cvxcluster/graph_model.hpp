#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace cvxcluster {

using Matrix = Eigen::MatrixXd;

/// Symmetric 0/1 adjacency matrix with unit diagonal.
class Adjacency {
 public:
  Adjacency() = default;

  /// Validates symmetry, binary entries and a_ii = 1; throws std::invalid_argument.
  explicit Adjacency(Matrix entries);

  /// n isolated nodes (identity matrix).
  static Adjacency empty(int n);

  int n() const { return static_cast<int>(a_.rows()); }
  const Matrix& matrix() const { return a_; }
  bool has_edge(int i, int j) const { return a_(i, j) != 0.0; }

  /// Number of off-diagonal edges (unordered pairs).
  std::int64_t edge_count() const;

  bool operator==(const Adjacency& other) const { return a_ == other.a_; }

 private:
  Matrix a_;
};

/// Per-node cluster labels. Label 0 marks an outlier; clusters are 1..r.
struct ClusterAssignment {
  std::vector<int> labels;
  int r = 0;

  /// Validates contiguity of 1..r and that no cluster is empty.
  static ClusterAssignment from_labels(std::vector<int> labels);

  int n() const { return static_cast<int>(labels.size()); }
  std::vector<int> cluster_sizes() const;
  int outlier_count() const;

  /// True when both assignments describe the same partition up to relabeling
  /// of clusters (outliers must coincide exactly).
  bool same_partition(const ClusterAssignment& other) const;
};

/// Block-structured 0/1 matrix: y_ij = 1 iff i and j share a cluster.
class ClusterMatrix {
 public:
  ClusterMatrix() = default;

  static ClusterMatrix from_assignment(const ClusterAssignment& assignment);

  int n() const { return static_cast<int>(y_.rows()); }
  const Matrix& matrix() const { return y_; }
  bool in_cluster(int i, int j) const { return y_(i, j) != 0.0; }
  std::int64_t support_size() const;

 private:
  Matrix y_;
};

struct GsbmParams {
  std::vector<int> cluster_sizes;
  int n2 = 0;
  double p = 0.0;
  double q = 0.0;

  int n1() const;
  int n() const { return n1() + n2; }
  int min_cluster_size() const;
  bool homophily() const { return p > q; }

  /// Throws std::invalid_argument on empty clusters, p == q or probabilities
  /// outside [0, 1].
  void validate() const;

  /// r clusters of size k with no outliers.
  static GsbmParams standard(int r, int k, double p, double q);
};

struct AdversarySpec {
  double add_fraction = 0.0;
  double remove_fraction = 0.0;
  std::uint64_t seed = 0;
};

struct GsbmInstance {
  Adjacency adjacency;
  ClusterAssignment assignment;
  ClusterMatrix truth;
};

/// Draws a graph: in-cluster pairs with probability p, all other pairs with
/// probability q. Clustered nodes come first (cluster by cluster), outliers
/// last. Deterministic in `seed`.
GsbmInstance generate_gsbm(const GsbmParams& params, std::uint64_t seed);

/// Edits edges only in the direction aligned with `truth`. For homophily,
/// additions go to in-cluster non-edges and removals to cross-cluster edges;
/// the roles swap for heterophily. Per direction, floor(fraction * |eligible|)
/// pairs are chosen from a seeded permutation of the eligible pairs.
Adjacency apply_adversary(const Adjacency& a, const ClusterMatrix& truth,
                          const AdversarySpec& spec, bool homophily);

/// 11^T - A off the diagonal; the diagonal stays 1.
Adjacency complement_graph(const Adjacency& a);

/// Recovers the assignment if `y` is entrywise within `tol` of a cluster
/// matrix. Cluster labels follow first appearance in node order.
std::optional<ClusterAssignment> is_cluster_matrix(const Matrix& y, double tol);

/// Entry (i, j) is 1 iff y_ij is strictly greater than the mean of all entries.
Matrix round_by_mean(const Matrix& y);

/// Entrywise L1 distance over all n^2 entries.
std::int64_t misclassified_pairs(const Matrix& truth, const Matrix& estimate);
std::int64_t misclassified_pairs(const ClusterMatrix& truth, const Matrix& estimate);

/// Fewer than `threshold` * n^2 misclassified entries (0.1% by default).
bool recovery_succeeded(std::int64_t misclassified, int n, double threshold = 1e-3);

}  // namespace cvxcluster
