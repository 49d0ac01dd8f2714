#include <random>

#include "doctest.h"

#include "cvxcluster/objective.hpp"
#include "oracles.hpp"

using namespace cvxcluster;

namespace {

Matrix random_box_matrix(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix y(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) y(i, j) = u(rng);
  }
  return y;
}

Adjacency random_graph(std::mt19937_64& rng, int n, double density) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix a = Matrix::Identity(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < j; ++i) a(i, j) = a(j, i) = u(rng) < density ? 1.0 : 0.0;
  }
  return Adjacency(a);
}

}  // namespace

TEST_CASE("weights closed forms") {
  const auto half = make_weights(0.5, 10, 1.0);
  CHECK(half.c_a == doctest::Approx(1.0));
  CHECK(half.c_ac == doctest::Approx(1.0));

  const auto clique = make_weights(0.75, 10, 1.0);
  CHECK(clique.c_a == doctest::Approx(0.5773502692).epsilon(1e-9));
  CHECK(clique.c_ac == doctest::Approx(1.7320508076).epsilon(1e-9));

  const auto w = make_weights(0.3, 1024, 48.0);
  CHECK(w.lambda() == doctest::Approx(1.0 / 1536.0).epsilon(1e-12));
  CHECK(w.nuclear_coefficient() == doctest::Approx(1536.0));
  CHECK(w.c_a * w.c_ac == doctest::Approx(1.0).epsilon(1e-12));

  const auto swapped = make_weights(0.7, 1024, 48.0);
  CHECK(swapped.c_a == doctest::Approx(w.c_ac).epsilon(1e-15));
  CHECK(swapped.c_ac == doctest::Approx(w.c_a).epsilon(1e-15));

  const auto het = make_heterophily_weights(0.3, 50, 2.0);
  CHECK(het.t == doctest::Approx(0.7));
}

TEST_CASE("weights reject invalid input") {
  CHECK_THROWS_AS(make_weights(0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(make_weights(1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(make_weights(0.5, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_weights(0.5, 10, 0.0), std::invalid_argument);
}

TEST_CASE("weight matrix") {
  CHECK(weight_matrix(Adjacency(Matrix::Ones(4, 4)), make_weights(0.5, 4)) == Matrix::Ones(4, 4));
  const auto w = make_weights(0.75, 5);
  const Matrix c = weight_matrix(Adjacency::empty(5), w);
  for (int j = 0; j < 5; ++j) {
    for (int i = 0; i < 5; ++i) CHECK(c(i, j) == (i == j ? w.c_a : w.c_ac));
  }
  std::mt19937_64 rng(3);
  const auto a = random_graph(rng, 12, 0.4);
  const Matrix cr = weight_matrix(a, make_weights(0.2, 12));
  CHECK(cr == cr.transpose());
}

TEST_CASE("objective value closed forms") {
  std::mt19937_64 rng(9);
  const auto a = random_graph(rng, 6, 0.5);
  CHECK(objective_value(a, Matrix::Zero(6, 6), make_weights(0.4, 6, 2.0)) == 0.0);

  const int k = 7;
  const Adjacency clique(Matrix::Ones(k, k));
  const auto w = make_weights(0.3, k, 1.5);
  const double expected = w.c_a * k * k - 1.5 * std::sqrt(static_cast<double>(k)) * k;
  CHECK(objective_value(clique, Matrix::Ones(k, k), w) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("objective rejects box violations") {
  const auto w = make_weights(0.5, 3);
  Matrix y = Matrix::Zero(3, 3);
  y(0, 0) = 1.0 + 2e-6;
  CHECK_THROWS_AS(objective_value(Adjacency::empty(3), y, w), std::invalid_argument);
  y(0, 0) = 1.0 + 5e-7;
  CHECK_NOTHROW(objective_value(Adjacency::empty(3), y, w));
  y(0, 0) = -2e-6;
  CHECK_THROWS_AS(objective_value(Adjacency::empty(3), y, w), std::invalid_argument);
}

TEST_CASE("maximization and low-rank-plus-sparse forms differ by a constant") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 19);
    const auto a = random_graph(rng, n, 0.5);
    const double t = 0.1 + 0.8 * static_cast<double>(rng() % 1000) / 1000.0;
    const auto w = make_weights(t, n, 0.5 + static_cast<double>(rng() % 4));
    const double support = a.matrix().sum();
    const double constant = w.c_a * support;
    for (int k = 0; k < 3; ++k) {
      const Matrix y = random_box_matrix(rng, n);
      const double lhs = objective_value(a, y, w) + relaxed_objective(a, y, w) / w.lambda();
      CHECK(std::abs(lhs - constant) <= 1e-8 * std::max(1.0, std::abs(constant)));
      // Independent evaluation of the minimization form.
      const double ref = oracle::relaxed_objective(a.matrix(), y, oracle::weights(a.matrix(), t), w.lambda());
      CHECK(relaxed_objective(a, y, w) == doctest::Approx(ref).epsilon(1e-10));
    }
  }
}

TEST_CASE("objective is concave on the box") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 12);
    const auto a = random_graph(rng, n, 0.4);
    const auto w = make_weights(0.2 + 0.6 * u(rng), n, 1.0);
    const Matrix y1 = random_box_matrix(rng, n);
    const Matrix y2 = random_box_matrix(rng, n);
    const double theta = u(rng);
    const double mid = objective_value(a, theta * y1 + (1 - theta) * y2, w);
    const double chord = theta * objective_value(a, y1, w) + (1 - theta) * objective_value(a, y2, w);
    CHECK(mid >= chord - 1e-8);
  }
}

TEST_CASE("nuclear norm") {
  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 3.0, -2.0, 0.5;
  CHECK(nuclear_norm(d) == doctest::Approx(5.5));
  CHECK(nuclear_norm(Matrix::Ones(5, 5)) == doctest::Approx(5.0));
  Matrix r(2, 3);
  r << 1, 0, 0, 0, 0, 2;
  CHECK(nuclear_norm(r) == doctest::Approx(3.0));
}
