#include "cvxcluster/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace cvxcluster::linalg {

SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& x, bool with_vectors) {
  if (x.rows() != x.cols()) throw std::invalid_argument("symmetric_eigen: matrix must be square");
  SymmetricEigen out;
  if (x.rows() == 0) return out;
  const int options = with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(x, options);
  // The QR sweep can stall on exactly repeated eigenvalues; a diagonal shift
  // changes the rounding without changing the eigenvectors.
  const double scale = std::max(x.cwiseAbs().maxCoeff(), 1.0);
  double shift = 0.0;
  for (int attempt = 1; solver.info() != Eigen::Success && attempt <= 4; ++attempt) {
    shift = scale * (0.0625 * attempt + 0.0123);
    solver.compute(x + shift * Eigen::MatrixXd::Identity(x.rows(), x.cols()), options);
  }
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("symmetric eigendecomposition did not converge");
  }
  out.values = solver.eigenvalues().array() - shift;
  if (with_vectors) out.vectors = solver.eigenvectors();
  return out;
}

bool is_symmetric(const Eigen::MatrixXd& x, double tol) {
  if (x.rows() != x.cols()) return false;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = j + 1; i < x.rows(); ++i) {
      if (std::abs(x(i, j) - x(j, i)) > tol) return false;
    }
  }
  return true;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& x) {
  if (is_symmetric(x)) {
    Eigen::VectorXd s = symmetric_eigen(x, false).values.cwiseAbs();
    std::sort(s.data(), s.data() + s.size(), std::greater<>());
    return s;
  }
  return Eigen::BDCSVD<Eigen::MatrixXd>(x).singularValues();
}

double spectral_norm(const Eigen::MatrixXd& x) {
  if (x.size() == 0) return 0.0;
  return singular_values(x)(0);
}

}  // namespace cvxcluster::linalg
