#include "cvxcluster/graph_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "cvxcluster/random.hpp"

namespace cvxcluster {

Adjacency::Adjacency(Matrix entries) : a_(std::move(entries)) {
  if (a_.rows() != a_.cols()) {
    throw std::invalid_argument("adjacency matrix must be square");
  }
  const int n = static_cast<int>(a_.rows());
  for (int j = 0; j < n; ++j) {
    if (a_(j, j) != 1.0) {
      throw std::invalid_argument("adjacency diagonal must be 1 (node " + std::to_string(j) + ")");
    }
    for (int i = j + 1; i < n; ++i) {
      const double v = a_(i, j);
      if (v != 0.0 && v != 1.0) {
        throw std::invalid_argument("adjacency entries must be 0 or 1");
      }
      if (v != a_(j, i)) {
        throw std::invalid_argument("adjacency matrix must be symmetric");
      }
    }
  }
}

Adjacency Adjacency::empty(int n) {
  if (n < 0) throw std::invalid_argument("node count must be non-negative");
  return Adjacency(Matrix::Identity(n, n));
}

std::int64_t Adjacency::edge_count() const {
  const double total = a_.sum() - static_cast<double>(n());
  return static_cast<std::int64_t>(std::llround(total / 2.0));
}

ClusterAssignment ClusterAssignment::from_labels(std::vector<int> labels) {
  int r = 0;
  for (int label : labels) {
    if (label < 0) throw std::invalid_argument("cluster labels must be non-negative");
    r = std::max(r, label);
  }
  std::vector<int> counts(static_cast<std::size_t>(r) + 1, 0);
  for (int label : labels) ++counts[static_cast<std::size_t>(label)];
  for (int c = 1; c <= r; ++c) {
    if (counts[static_cast<std::size_t>(c)] == 0) {
      throw std::invalid_argument("cluster " + std::to_string(c) + " has no members");
    }
  }
  ClusterAssignment out;
  out.labels = std::move(labels);
  out.r = r;
  return out;
}

std::vector<int> ClusterAssignment::cluster_sizes() const {
  std::vector<int> sizes(static_cast<std::size_t>(r), 0);
  for (int label : labels) {
    if (label > 0) ++sizes[static_cast<std::size_t>(label - 1)];
  }
  return sizes;
}

int ClusterAssignment::outlier_count() const {
  return static_cast<int>(std::count(labels.begin(), labels.end(), 0));
}

bool ClusterAssignment::same_partition(const ClusterAssignment& other) const {
  if (labels.size() != other.labels.size() || r != other.r) return false;
  std::vector<int> forward(static_cast<std::size_t>(r) + 1, -1);
  std::vector<int> backward(static_cast<std::size_t>(r) + 1, -1);
  forward[0] = 0;
  backward[0] = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto a = static_cast<std::size_t>(labels[i]);
    const auto b = static_cast<std::size_t>(other.labels[i]);
    if (forward[a] == -1 && backward[b] == -1) {
      forward[a] = static_cast<int>(b);
      backward[b] = static_cast<int>(a);
    }
    if (forward[a] != static_cast<int>(b) || backward[b] != static_cast<int>(a)) return false;
  }
  return true;
}

ClusterMatrix ClusterMatrix::from_assignment(const ClusterAssignment& assignment) {
  const int n = assignment.n();
  ClusterMatrix out;
  out.y_ = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    const int lj = assignment.labels[static_cast<std::size_t>(j)];
    if (lj == 0) continue;
    for (int i = 0; i < n; ++i) {
      if (assignment.labels[static_cast<std::size_t>(i)] == lj) out.y_(i, j) = 1.0;
    }
  }
  return out;
}

std::int64_t ClusterMatrix::support_size() const {
  return static_cast<std::int64_t>(std::llround(y_.sum()));
}

int GsbmParams::n1() const {
  return std::accumulate(cluster_sizes.begin(), cluster_sizes.end(), 0);
}

int GsbmParams::min_cluster_size() const {
  if (cluster_sizes.empty()) return 0;
  return *std::min_element(cluster_sizes.begin(), cluster_sizes.end());
}

void GsbmParams::validate() const {
  if (cluster_sizes.empty()) throw std::invalid_argument("GSBM needs at least one cluster");
  if (min_cluster_size() < 1) throw std::invalid_argument("GSBM cluster sizes must be >= 1");
  if (n2 < 0) throw std::invalid_argument("outlier count must be non-negative");
  if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("edge probabilities must lie in [0, 1]");
  }
  if (p == q) throw std::invalid_argument("p == q carries no cluster signal");
}

GsbmParams GsbmParams::standard(int r, int k, double p, double q) {
  GsbmParams params;
  params.cluster_sizes.assign(static_cast<std::size_t>(std::max(r, 0)), k);
  params.p = p;
  params.q = q;
  return params;
}

GsbmInstance generate_gsbm(const GsbmParams& params, std::uint64_t seed) {
  params.validate();
  const int n = params.n();
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (std::size_t c = 0; c < params.cluster_sizes.size(); ++c) {
    labels.insert(labels.end(), static_cast<std::size_t>(params.cluster_sizes[c]),
                  static_cast<int>(c) + 1);
  }
  labels.insert(labels.end(), static_cast<std::size_t>(params.n2), 0);

  std::mt19937_64 rng(seed);
  Matrix a = Matrix::Identity(n, n);
  for (int j = 0; j < n; ++j) {
    const int lj = labels[static_cast<std::size_t>(j)];
    for (int i = j + 1; i < n; ++i) {
      const int li = labels[static_cast<std::size_t>(i)];
      const double prob = (lj != 0 && li == lj) ? params.p : params.q;
      if (uniform01(rng) < prob) {
        a(i, j) = 1.0;
        a(j, i) = 1.0;
      }
    }
  }
  auto assignment = ClusterAssignment::from_labels(std::move(labels));
  auto truth = ClusterMatrix::from_assignment(assignment);
  return {Adjacency(std::move(a)), std::move(assignment), std::move(truth)};
}

Adjacency apply_adversary(const Adjacency& a, const ClusterMatrix& truth,
                          const AdversarySpec& spec, bool homophily) {
  if (a.n() != truth.n()) throw std::invalid_argument("adversary: dimension mismatch");
  const auto in_unit = [](double f) { return f >= 0.0 && f <= 1.0; };
  if (!in_unit(spec.add_fraction) || !in_unit(spec.remove_fraction)) {
    throw std::invalid_argument("adversary fractions must lie in [0, 1]");
  }
  const int n = a.n();
  // Homophily: add inside clusters, remove across. Heterophily: the reverse.
  const bool add_inside = homophily;
  std::vector<std::pair<int, int>> additions;
  std::vector<std::pair<int, int>> removals;
  for (int j = 0; j < n; ++j) {
    for (int i = j + 1; i < n; ++i) {
      const bool inside = truth.in_cluster(i, j);
      const bool edge = a.has_edge(i, j);
      if (!edge && inside == add_inside) additions.emplace_back(i, j);
      if (edge && inside != add_inside) removals.emplace_back(i, j);
    }
  }

  std::mt19937_64 rng(spec.seed);
  Matrix out = a.matrix();
  const auto edit = [&](std::vector<std::pair<int, int>>& pairs, double fraction, double value) {
    const auto count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(pairs.size())));
    std::shuffle(pairs.begin(), pairs.end(), rng);
    for (std::size_t k = 0; k < count; ++k) {
      out(pairs[k].first, pairs[k].second) = value;
      out(pairs[k].second, pairs[k].first) = value;
    }
  };
  edit(additions, spec.add_fraction, 1.0);
  edit(removals, spec.remove_fraction, 0.0);
  return Adjacency(std::move(out));
}

Adjacency complement_graph(const Adjacency& a) {
  const int n = a.n();
  Matrix out = Matrix::Ones(n, n) - a.matrix();
  out.diagonal().setOnes();
  return Adjacency(std::move(out));
}

std::optional<ClusterAssignment> is_cluster_matrix(const Matrix& y, double tol) {
  if (y.rows() != y.cols()) return std::nullopt;
  const int n = static_cast<int>(y.rows());
  const auto support = [&](int i, int j) { return y(i, j) > 0.5; };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double target = support(i, j) ? 1.0 : 0.0;
      if (std::abs(y(i, j) - target) > tol) return std::nullopt;
    }
  }

  // Clustered nodes carry a unit diagonal; each must be linked to exactly the
  // members of its block, so the first node of a block defines it.
  std::vector<int> labels(static_cast<std::size_t>(n), -1);
  int r = 0;
  for (int i = 0; i < n; ++i) {
    if (labels[static_cast<std::size_t>(i)] != -1) continue;
    if (!support(i, i)) {
      for (int j = 0; j < n; ++j) {
        if (support(i, j) || support(j, i)) return std::nullopt;
      }
      labels[static_cast<std::size_t>(i)] = 0;
      continue;
    }
    ++r;
    for (int j = i; j < n; ++j) {
      if (support(i, j)) {
        if (labels[static_cast<std::size_t>(j)] != -1) return std::nullopt;
        labels[static_cast<std::size_t>(j)] = r;
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int li = labels[static_cast<std::size_t>(i)];
      const bool same = li != 0 && li == labels[static_cast<std::size_t>(j)];
      if (support(i, j) != same) return std::nullopt;
    }
  }
  return ClusterAssignment::from_labels(std::move(labels));
}

Matrix round_by_mean(const Matrix& y) {
  if (y.size() == 0) return y;
  const double mean = y.mean();
  return (y.array() > mean).cast<double>().matrix();
}

std::int64_t misclassified_pairs(const Matrix& truth, const Matrix& estimate) {
  if (truth.rows() != estimate.rows() || truth.cols() != estimate.cols()) {
    throw std::invalid_argument("misclassified_pairs: dimension mismatch");
  }
  return static_cast<std::int64_t>(std::llround((truth - estimate).cwiseAbs().sum()));
}

std::int64_t misclassified_pairs(const ClusterMatrix& truth, const Matrix& estimate) {
  return misclassified_pairs(truth.matrix(), estimate);
}

bool recovery_succeeded(std::int64_t misclassified, int n, double threshold) {
  return static_cast<double>(misclassified) < threshold * static_cast<double>(n) * static_cast<double>(n);
}

}  // namespace cvxcluster
