#include "cvxcluster/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cvxcluster/linalg.hpp"

namespace cvxcluster {

Matrix project_t(const Matrix& m, const Matrix& basis) {
  const Matrix pm = basis * (basis.transpose() * m);
  const Matrix mp = (m * basis) * basis.transpose();
  const Matrix pmp = basis * (basis.transpose() * mp);
  return pm + mp - pmp;
}

double default_certificate_epsilon(double t, int n, int k) {
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  const double log_n = std::log(nd);
  const double scale = std::max(std::sqrt(nd) / kd, std::sqrt(std::pow(log_n, 4) / kd));
  return 48.0 / std::sqrt(t * (1.0 - t)) * scale;
}

Certificate build_certificate(const Adjacency& a, const ClusterMatrix& truth, const Weights& w,
                              double p, double q, std::optional<double> epsilon_override) {
  if (a.n() != truth.n() || a.n() != w.n) throw std::invalid_argument("certificate: dimension mismatch");
  if (!(p > q)) throw std::invalid_argument("certificate: requires p > q");
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("certificate: requires 0 < p <= 1");
  if (!(q >= 0.0 && q < 1.0)) throw std::invalid_argument("certificate: requires 0 <= q < 1");

  const auto assignment = is_cluster_matrix(truth.matrix(), 0.0);
  if (!assignment) throw std::invalid_argument("certificate: truth is not a cluster matrix");
  const int n = a.n();

  Certificate cert;
  cert.truth = truth.matrix();
  cert.edges = a.matrix();
  cert.basis = Matrix::Zero(n, assignment->r);
  const auto sizes = assignment->cluster_sizes();
  for (int i = 0; i < n; ++i) {
    const int label = assignment->labels[static_cast<std::size_t>(i)];
    if (label > 0) {
      cert.basis(i, label - 1) = 1.0 / std::sqrt(static_cast<double>(sizes[static_cast<std::size_t>(label - 1)]));
    }
  }
  cert.projection = cert.basis * cert.basis.transpose();

  const int k_min = sizes.empty() ? n : *std::min_element(sizes.begin(), sizes.end());
  cert.epsilon = epsilon_override ? *epsilon_override : default_certificate_epsilon(w.t, n, k_min);

  const double lambda = w.lambda();
  const double ratio_in = (1.0 - p) / p;
  const double ratio_out = q / (1.0 - q);
  const double scale_ac = (1.0 + cert.epsilon) * lambda * w.c_ac;
  const double scale_a = (1.0 + cert.epsilon) * lambda * w.c_a;

  cert.w1 = Matrix::Zero(n, n);
  cert.w2 = Matrix::Zero(n, n);
  cert.w3 = Matrix::Zero(n, n);
  cert.w4 = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const bool in_r = cert.truth(i, j) != 0.0;
      const bool edge = cert.edges(i, j) != 0.0;
      if (in_r) {
        cert.w1(i, j) = edge ? ratio_in * cert.projection(i, j) : -cert.projection(i, j);
        cert.w2(i, j) = edge ? scale_ac * ratio_in : -scale_ac;
      } else if (i != j) {
        cert.w3(i, j) = edge ? scale_a : -scale_a * ratio_out;
      } else {
        cert.w4(i, j) = scale_a;
      }
    }
  }
  cert.w = cert.w1 + cert.w2 + cert.w3 + cert.w4;
  return cert;
}

CertificateReport check_certificate(const Certificate& cert, const Weights& w) {
  const double lambda = w.lambda();
  const double eps = cert.epsilon;
  CertificateReport rep;
  rep.epsilon = eps;
  rep.epsilon_in_range = eps > 0.0 && eps < 1.0;
  rep.norm_w = linalg::spectral_norm(cert.w);
  rep.condition_a_pass = rep.norm_w <= 1.0;

  rep.pt_w_inf = cert.basis.cols() == 0 ? 0.0 : project_t(cert.w, cert.basis).cwiseAbs().maxCoeff();
  rep.pt_w_bound = 0.5 * eps * lambda * std::min(w.c_a, w.c_ac);
  rep.condition_b_pass = rep.pt_w_inf <= rep.pt_w_bound;

  double violation = 0.0;
  double slack = std::numeric_limits<double>::infinity();
  const Eigen::Index n = cert.w.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const bool in_r = cert.truth(i, j) != 0.0;
      const bool edge = cert.edges(i, j) != 0.0;
      const double wij = cert.w(i, j);
      const double dual = cert.projection(i, j) + wij;
      if (in_r && !edge) {
        violation = std::max(violation, std::abs(-(1.0 + eps) * lambda * w.c_ac - dual));
      } else if (!in_r && edge) {
        violation = std::max(violation, std::abs(-(1.0 + eps) * lambda * w.c_a + wij));
      } else if (in_r && edge) {
        slack = std::min(slack, (1.0 - eps) * lambda * w.c_a - dual);
      } else {
        slack = std::min(slack, (1.0 - eps) * lambda * w.c_ac + wij);
      }
    }
  }
  rep.c_equalities_max_violation = violation;
  rep.c_inequalities_min_slack = std::isinf(slack) ? 0.0 : slack;
  rep.condition_c_pass = violation <= kEqualityTolerance && rep.c_inequalities_min_slack >= 0.0;
  return rep;
}

}  // namespace cvxcluster
