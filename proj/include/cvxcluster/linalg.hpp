#pragma once

#include <Eigen/Dense>

namespace cvxcluster::linalg {

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns, empty when only values were requested
};

/// LAPACK divide-and-conquer eigensolver (dsyevd) on the lower triangle.
SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& x, bool with_vectors = true);

bool is_symmetric(const Eigen::MatrixXd& x, double tol = 0.0);

/// Singular values in descending order.
Eigen::VectorXd singular_values(const Eigen::MatrixXd& x);

/// Largest singular value.
double spectral_norm(const Eigen::MatrixXd& x);

}  // namespace cvxcluster::linalg
