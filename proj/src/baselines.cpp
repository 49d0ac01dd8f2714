#include "cvxcluster/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "cvxcluster/linalg.hpp"

namespace cvxcluster {

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& p = parent[static_cast<std::size_t>(x)];
      p = parent[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }
};

struct Link {
  double distance;
  int i;
  int j;
  bool operator<(const Link& o) const { return std::tie(distance, i, j) < std::tie(o.distance, o.i, o.j); }
};

// Kruskal on the complete graph: processing pairs in (distance, i, j) order
// reproduces single-linkage merges with lexicographic tie-breaking.
ClusterAssignment cluster_from_distances(const Matrix& dist, int r) {
  const int n = static_cast<int>(dist.rows());
  if (r < 1 || r > n) throw std::invalid_argument("single linkage needs 1 <= r <= n");
  std::vector<Link> links;
  links.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) links.push_back({dist(i, j), i, j});
  }
  std::sort(links.begin(), links.end());

  DisjointSets sets(n);
  int clusters = n;
  for (const Link& link : links) {
    if (clusters == r) break;
    if (sets.unite(link.i, link.j)) --clusters;
  }

  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  std::vector<int> label_of_root(static_cast<std::size_t>(n), 0);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    auto& label = label_of_root[static_cast<std::size_t>(sets.find(i))];
    if (label == 0) label = ++next;
    labels[static_cast<std::size_t>(i)] = label;
  }
  return ClusterAssignment::from_labels(std::move(labels));
}

}  // namespace

std::string to_string(BaselineMethod method) {
  switch (method) {
    case BaselineMethod::kSlink: return "slink";
    case BaselineMethod::kSpectral: return "spectral";
    case BaselineMethod::kLrps: return "lrps";
  }
  return "unknown";
}

BaselineMethod parse_baseline_method(const std::string& name) {
  if (name == "slink") return BaselineMethod::kSlink;
  if (name == "spectral") return BaselineMethod::kSpectral;
  if (name == "lrps") return BaselineMethod::kLrps;
  throw std::invalid_argument("unknown baseline method: " + name);
}

ClusterAssignment single_linkage_l1(const Matrix& points, int r) {
  const auto n = points.rows();
  Matrix dist = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double d = (points.row(i) - points.row(j)).cwiseAbs().sum();
      dist(i, j) = d;
      dist(j, i) = d;
    }
  }
  return cluster_from_distances(dist, r);
}

ClusterAssignment slink(const Adjacency& a, int r) {
  // For 0/1 rows, ||a_i - a_j||_1 = |a_i| + |a_j| - 2 <a_i, a_j>, exact in
  // floating point since every term is a small integer.
  const Matrix& am = a.matrix();
  const Matrix gram = am * am.transpose();
  const Eigen::VectorXd degree = am.rowwise().sum();
  const auto n = am.rows();
  Matrix dist(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) dist(i, j) = degree(i) + degree(j) - 2.0 * gram(i, j);
  }
  return cluster_from_distances(dist, r);
}

ClusterAssignment spectral_cluster(const Adjacency& a, int r) {
  const int n = a.n();
  if (r < 1 || r > n) throw std::invalid_argument("spectral clustering needs 1 <= r <= n");
  // A is symmetric: its singular vectors are the eigenvectors ordered by |eigenvalue|.
  const auto eig = linalg::symmetric_eigen(a.matrix());
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return std::abs(eig.values(x)) > std::abs(eig.values(y));
  });
  Matrix embedding(n, r);
  for (int k = 0; k < r; ++k) embedding.col(k) = eig.vectors.col(order[static_cast<std::size_t>(k)]);
  return single_linkage_l1(embedding, r);
}

SolveResult lrps(const Adjacency& a, double scale, const SolverConfig& solver) {
  if (!(scale > 0.0)) throw std::invalid_argument("lrps: lambda scale must be positive");
  const int n = a.n();
  const double lambda = scale / std::sqrt(static_cast<double>(n));
  return solve_weighted(a, Matrix::Ones(n, n), lambda, solver);
}

}  // namespace cvxcluster
