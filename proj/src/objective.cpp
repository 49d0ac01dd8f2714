#include "cvxcluster/objective.hpp"

#include <cmath>
#include <stdexcept>

#include "cvxcluster/linalg.hpp"

namespace cvxcluster {

double Weights::nuclear_coefficient() const { return rho * std::sqrt(static_cast<double>(n)); }

double Weights::lambda() const { return 1.0 / nuclear_coefficient(); }

Weights make_weights(double t, int n, double rho) {
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("threshold t must lie in (0, 1)");
  if (n < 1) throw std::invalid_argument("node count must be >= 1");
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  Weights w;
  w.t = t;
  w.c_a = std::sqrt((1.0 - t) / t);
  w.c_ac = std::sqrt(t / (1.0 - t));
  w.rho = rho;
  w.n = n;
  return w;
}

Weights make_heterophily_weights(double t, int n, double rho) {
  return make_weights(1.0 - t, n, rho);
}

Matrix weight_matrix(const Adjacency& a, const Weights& w) {
  if (a.n() != w.n) throw std::invalid_argument("weight_matrix: node count mismatch");
  return (a.matrix().array() != 0.0).select(w.c_a, Matrix::Constant(a.n(), a.n(), w.c_ac));
}

double nuclear_norm(const Matrix& y) { return linalg::singular_values(y).sum(); }

double objective_value(const Adjacency& a, const Matrix& y, const Weights& w) {
  if (y.rows() != a.n() || y.cols() != a.n()) {
    throw std::invalid_argument("objective_value: dimension mismatch");
  }
  if (y.size() > 0 && (y.minCoeff() < -kBoxTolerance || y.maxCoeff() > 1.0 + kBoxTolerance)) {
    throw std::invalid_argument("objective_value: y violates 0 <= y <= 1");
  }
  const auto edges = a.matrix().array();
  const double on_edges = (edges * y.array()).sum();
  const double off_edges = ((1.0 - edges) * y.array()).sum();
  return w.c_a * on_edges - w.c_ac * off_edges - w.nuclear_coefficient() * nuclear_norm(y);
}

double relaxed_objective(const Adjacency& a, const Matrix& y, const Matrix& c, double lambda) {
  const double sparse = (c.array() * (a.matrix() - y).array().abs()).sum();
  return lambda * sparse + nuclear_norm(y);
}

double relaxed_objective(const Adjacency& a, const Matrix& y, const Weights& w) {
  return relaxed_objective(a, y, weight_matrix(a, w), w.lambda());
}

}  // namespace cvxcluster
