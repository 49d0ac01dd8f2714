#include <random>

#include "doctest.h"

#include "cvxcluster/alm.hpp"
#include "cvxcluster/certificate.hpp"
#include "oracles.hpp"

using namespace cvxcluster;

namespace {

Matrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) m(i, j) = g(rng);
  }
  return m;
}

Adjacency two_cliques(int k) {
  Matrix a = Matrix::Zero(2 * k, 2 * k);
  a.block(0, 0, k, k).setOnes();
  a.block(k, k, k, k).setOnes();
  return Adjacency(a);
}

SolverConfig tight_config(const Weights& w, int max_iter = 20000) {
  auto cfg = SolverConfig::with_weights(w);
  cfg.max_iter = max_iter;
  return cfg;
}

}  // namespace

TEST_CASE("svt closed forms") {
  std::mt19937_64 rng(1);
  const Matrix x = random_matrix(rng, 6, 6);
  CHECK((svt(x, 0.0) - x).cwiseAbs().maxCoeff() < 1e-10);

  Matrix d = Matrix::Zero(2, 2);
  d.diagonal() << 3.0, 1.0;
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = 1.0;
  CHECK((svt(d, 2.0) - expected).cwiseAbs().maxCoeff() < 1e-12);

  CHECK(svt(x, 1e6).isZero(0.0));
  CHECK_THROWS_AS(svt(x, -1.0), std::invalid_argument);
}

TEST_CASE("svt is the nuclear-norm proximal map") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 10);
    Matrix x = random_matrix(rng, n, n);
    if (trial % 2 == 0) x = 0.5 * (x + x.transpose()).eval();  // symmetric path
    const double eps = 0.5;
    const Matrix z = svt(x, eps);
    CHECK(oracle::svt_optimality_residual(x, z, eps) < 1e-6);
    CHECK((z - oracle::svt(x, eps)).cwiseAbs().maxCoeff() < 1e-9);
  }
  const Matrix rect = random_matrix(rng, 5, 8);
  CHECK((svt(rect, 0.7) - oracle::svt(rect, 0.7)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("truncated svt matches the full one when the rank fits") {
  std::mt19937_64 rng(3);
  const int n = 80;
  const Matrix low = random_matrix(rng, n, 3);
  Matrix x = low * low.transpose();
  x += 0.01 * random_matrix(rng, n, n);
  x = 0.5 * (x + x.transpose()).eval();
  const auto truncated = svt_truncated(x, 1.0, 10);
  REQUIRE(truncated);
  CHECK((*truncated - svt(x, 1.0)).cwiseAbs().maxCoeff() < 1e-7);
  // Too many survivors for the requested rank.
  CHECK_FALSE(svt_truncated(x, 1e-6, 2));
}

TEST_CASE("weighted soft thresholding") {
  Matrix x(1, 3);
  x << 1.2, -0.3, -0.9;
  const Matrix c = Matrix::Ones(1, 3);
  const Matrix z = soft_threshold_weighted(x, 0.5, c);
  CHECK(z(0, 0) == doctest::Approx(0.7));
  CHECK(z(0, 1) == 0.0);
  CHECK(z(0, 2) == doctest::Approx(-0.4));

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix xr = random_matrix(rng, 7, 7);
    Matrix cr(7, 7);
    for (int j = 0; j < 7; ++j) {
      for (int i = 0; i < 7; ++i) cr(i, j) = u(rng);
    }
    const Matrix zr = soft_threshold_weighted(xr, 0.4, cr);
    CHECK(oracle::soft_threshold_optimality_residual(xr, zr, 0.4, cr) < 1e-12);
  }
}

TEST_CASE("solver config validation") {
  auto cfg = SolverConfig::with_weights(make_weights(0.5, 4, 1.0));
  CHECK_NOTHROW(cfg.validate());
  cfg.alpha = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.alpha = 1.6;
  cfg.mu0 = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.mu0.reset();
  cfg.max_iter = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.max_iter = 10;
  CHECK_THROWS_AS(solve(Adjacency::empty(5), cfg), std::invalid_argument);  // weights built for n = 4
}

TEST_CASE("two disjoint cliques are recovered exactly") {
  const auto a = two_cliques(30);
  const auto w = make_weights(0.5, 60, 1.0);
  const auto res = solve(a, SolverConfig::with_weights(w));
  CHECK(res.converged);
  CHECK(misclassified_pairs(a.matrix(), round_by_mean(res.y_hat)) == 0);
  CHECK((res.y_hat - a.matrix()).cwiseAbs().maxCoeff() < 1e-4);

  // Y* is certified optimal for this input.
  const auto cert = build_certificate(a, ClusterMatrix::from_assignment(*is_cluster_matrix(a.matrix(), 0.0)), w,
                                      1.0, 0.0, 0.3);
  CHECK(check_certificate(cert, w).condition_c_pass);
}

TEST_CASE("solver output invariants") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 6; ++trial) {
    const auto inst = generate_gsbm({{8, 8, 8}, 2, 0.8, 0.2}, rng());
    const auto w = make_weights(0.5, inst.adjacency.n(), 1.0);
    const auto res = solve(inst.adjacency, SolverConfig::with_weights(w));
    CHECK(res.y_hat.minCoeff() >= 0.0);
    CHECK(res.y_hat.maxCoeff() <= 1.0);
    const double primal = (inst.adjacency.matrix() - res.y_hat - res.s_hat).norm() / inst.adjacency.matrix().norm();
    CHECK(res.primal_residual == doctest::Approx(primal).epsilon(1e-9));
    if (res.converged) CHECK(res.primal_residual <= 1e-7);
    CHECK(res.objective == doctest::Approx(relaxed_objective(inst.adjacency, res.y_hat, w)));
    const auto again = solve(inst.adjacency, SolverConfig::with_weights(w));
    CHECK(again.y_hat == res.y_hat);
  }
}

TEST_CASE("solver agrees with the reference on small instances") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 8; ++trial) {
    const int k = 3 + static_cast<int>(rng() % 6);
    const auto inst = generate_gsbm({{k, k + 1}, static_cast<int>(rng() % 3), 0.7, 0.3}, rng());
    const int n = inst.adjacency.n();
    const double t = std::array<double, 3>{0.3, 0.5, 0.7}[trial % 3];
    const auto w = make_weights(t, n, 1.0);
    const auto res = solve(inst.adjacency, tight_config(w));
    const Matrix c = oracle::weights(inst.adjacency.matrix(), t);
    const auto ref = oracle::solve(inst.adjacency.matrix(), c, w.lambda());
    const double f_ref = oracle::relaxed_objective(inst.adjacency.matrix(), ref.y, c, w.lambda());
    const double f = oracle::relaxed_objective(inst.adjacency.matrix(), res.y_hat, c, w.lambda());
    CHECK(std::abs(f - f_ref) <= 1e-3 * std::abs(f_ref));
  }
}

TEST_CASE("heterophily solve is a solve on the complement") {
  const auto inst = generate_gsbm({{10, 10}, 0, 0.2, 0.8}, 3);
  const auto w = make_heterophily_weights(0.5, 20, 1.0);
  const auto cfg = SolverConfig::with_weights(w);
  const auto het = solve_heterophily(inst.adjacency, cfg);
  const auto direct = solve(complement_graph(inst.adjacency), cfg);
  CHECK(het.y_hat == direct.y_hat);
  CHECK(het.iterations == direct.iterations);
}

TEST_CASE("unit weights reduce to the unweighted program") {
  // t = 1/2 gives C = 1, the plain low-rank-plus-sparse program.
  const auto inst = generate_gsbm({{6, 6}, 0, 0.9, 0.1}, 8);
  const auto w = make_weights(0.5, 12, 1.0);
  const auto a = solve(inst.adjacency, SolverConfig::with_weights(w));
  const auto b = solve_weighted(inst.adjacency, Matrix::Ones(12, 12), w.lambda(), SolverConfig::with_weights(w));
  CHECK((a.y_hat - b.y_hat).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("aligned adversary edits keep a recovered optimum") {
  const auto w = make_weights(0.5, 60, 1.0);
  int recovered = 0;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto inst = generate_gsbm({{30, 30}, 0, 0.8, 0.2}, seed);
    const auto base = solve(inst.adjacency, SolverConfig::with_weights(w));
    if (misclassified_pairs(inst.truth, round_by_mean(base.y_hat)) != 0) continue;
    ++recovered;
    for (double f : {0.01, 0.05, 0.2}) {
      const auto edited = apply_adversary(inst.adjacency, inst.truth, {f, f, seed + 100}, true);
      const auto res = solve(edited, SolverConfig::with_weights(w));
      CHECK(misclassified_pairs(inst.truth, round_by_mean(res.y_hat)) == 0);
    }
  }
  CHECK(recovered >= 5);
}

TEST_CASE("raising in-cluster density does not break recovery") {
  const auto w = make_weights(0.45, 60, 1.0);
  int base_ok = 0;
  int kept = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = generate_gsbm({{30, 30}, 0, 0.7, 0.2}, 50 + seed);
    const auto base = solve(inst.adjacency, SolverConfig::with_weights(w));
    if (misclassified_pairs(inst.truth, round_by_mean(base.y_hat)) != 0) continue;
    ++base_ok;
    const auto denser = apply_adversary(inst.adjacency, inst.truth, {0.3, 0.0, seed}, true);
    const auto res = solve(denser, SolverConfig::with_weights(w));
    if (misclassified_pairs(inst.truth, round_by_mean(res.y_hat)) == 0) ++kept;
  }
  REQUIRE(base_ok > 0);
  CHECK(kept * 20 >= base_ok * 19);
}
