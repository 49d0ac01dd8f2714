#include "cvxcluster/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "cvxcluster/linalg.hpp"

namespace cvxcluster {

EstimationResult estimate_from_eigenvalues(std::vector<double> eigenvalues) {
  const auto n = static_cast<int>(eigenvalues.size());
  if (n < 3) throw std::invalid_argument("parameter estimation needs n >= 3");
  std::sort(eigenvalues.begin(), eigenvalues.end(), std::greater<>());

  // 1-based i in 2..n-1 compares eigenvalues[i-1] and eigenvalues[i].
  int r_hat = 0;
  double best_gap = -1.0;
  for (int i = 2; i <= n - 1; ++i) {
    const double gap = eigenvalues[static_cast<std::size_t>(i - 1)] - eigenvalues[static_cast<std::size_t>(i)];
    if (gap > best_gap) {
      best_gap = gap;
      r_hat = i;
    }
  }
  const double scale = std::max(1.0, std::abs(eigenvalues.front()));
  if (best_gap <= 1e-12 * scale) {
    throw std::invalid_argument("no eigenvalue gap beyond the leading eigenvalue (single community?)");
  }

  const double nd = static_cast<double>(n);
  const double k_hat = nd / static_cast<double>(r_hat);
  if (k_hat <= 1.0) throw std::domain_error("estimated cluster size must exceed 1");
  const double l1 = eigenvalues[0];
  const double l2 = eigenvalues[1];

  EstimationResult out;
  out.r_hat = r_hat;
  out.k_hat = k_hat;
  out.p_raw = (k_hat * l1 + (nd - k_hat) * l2 - nd) / (nd * (k_hat - 1.0));
  out.q_raw = (l1 - l2) / nd;
  out.p_hat = std::clamp(out.p_raw, 0.0, 1.0);
  out.q_hat = std::clamp(out.q_raw, 0.0, 1.0);
  out.t = std::clamp(0.5 * (out.p_hat + out.q_hat), kMinT, 1.0 - kMinT);
  out.eigenvalues = std::move(eigenvalues);
  return out;
}

EstimationResult estimate_parameters(const Adjacency& a) {
  if (a.n() < 3) throw std::invalid_argument("parameter estimation needs n >= 3");
  const Eigen::VectorXd values = linalg::symmetric_eigen(a.matrix(), false).values;
  return estimate_from_eigenvalues(std::vector<double>(values.data(), values.data() + values.size()));
}

ConditionReport condition_report(double p, double q, int n, double k) {
  if (!(q >= 0.0 && p <= 1.0 && q < p)) throw std::invalid_argument("condition_report needs 0 <= q < p <= 1");
  if (n < 2 || !(k > 0.0)) throw std::invalid_argument("condition_report needs n >= 2 and K > 0");
  const double nd = static_cast<double>(n);
  const double log_n = std::log(nd);
  ConditionReport out;
  out.lhs = (p - q) / std::sqrt(p * (1.0 - q));
  out.sufficient_bound = std::max(std::sqrt(nd) / k, log_n * log_n / std::sqrt(k));
  out.margin = out.lhs / out.sufficient_bound;
  out.necessary_bound = 1.0 / std::sqrt(nd);
  return out;
}

double clique_margin(double q, int n, double k) {
  if (!(q >= 0.0 && q < 1.0)) throw std::invalid_argument("clique_margin needs 0 <= q < 1");
  const double nd = static_cast<double>(n);
  const double log_n = std::log(nd);
  return (1.0 - q) / std::max(nd / (k * k), std::pow(log_n, 4) / k);
}

}  // namespace cvxcluster
