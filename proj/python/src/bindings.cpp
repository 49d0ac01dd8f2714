#include <optional>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cvxcluster/alm.hpp"
#include "cvxcluster/baselines.hpp"
#include "cvxcluster/certificate.hpp"
#include "cvxcluster/estimation.hpp"
#include "cvxcluster/graph_model.hpp"
#include "cvxcluster/harness.hpp"
#include "cvxcluster/objective.hpp"

namespace py = pybind11;
using namespace cvxcluster;

namespace {

struct PySolveResult {
  Matrix y_hat;
  int iterations = 0;
  bool converged = false;
  double objective = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double t = 0.0;
};

PySolveResult wrap(const SolveResult& r, double t) {
  return {r.y_hat, r.iterations, r.converged, r.objective, r.primal_residual, r.dual_residual, t};
}

SolverConfig tolerances(SolverConfig cfg, double tol, int max_iter) {
  cfg.tol_primal = tol;
  cfg.tol_dual = tol;
  cfg.max_iter = max_iter;
  return cfg;
}

PySolveResult py_solve(const Matrix& a, std::optional<double> t, double rho, bool heterophily, double tol,
                       int max_iter) {
  const Adjacency adj(a);
  py::gil_scoped_release release;
  const Adjacency graph = heterophily ? complement_graph(adj) : adj;
  // t is on the scale of the graph as given; the complement uses 1 - t.
  const double t_solve = t ? (heterophily ? 1.0 - *t : *t) : estimate_parameters(graph).t;
  const auto cfg = tolerances(SolverConfig::with_weights(make_weights(t_solve, adj.n(), rho)), tol, max_iter);
  return wrap(solve(graph, cfg), heterophily ? 1.0 - t_solve : t_solve);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Convexified maximum-likelihood clustering";

  py::class_<GsbmInstance>(m, "Instance")
      .def_property_readonly("adjacency", [](const GsbmInstance& g) { return g.adjacency.matrix(); })
      .def_property_readonly("labels", [](const GsbmInstance& g) { return g.assignment.labels; })
      .def_property_readonly("truth", [](const GsbmInstance& g) { return g.truth.matrix(); });

  m.def(
      "generate_gsbm",
      [](std::vector<int> sizes, int n2, double p, double q, std::uint64_t seed, double add_fraction,
         double remove_fraction, std::uint64_t adversary_seed) {
        const GsbmParams params{std::move(sizes), n2, p, q};
        auto inst = generate_gsbm(params, seed);
        if (add_fraction > 0.0 || remove_fraction > 0.0) {
          inst.adjacency = apply_adversary(inst.adjacency, inst.truth,
                                           {add_fraction, remove_fraction, adversary_seed}, params.homophily());
        }
        return inst;
      },
      py::arg("cluster_sizes"), py::arg("n2"), py::arg("p"), py::arg("q"), py::arg("seed"),
      py::arg("add_fraction") = 0.0, py::arg("remove_fraction") = 0.0, py::arg("adversary_seed") = 0);

  py::class_<PySolveResult>(m, "SolveResult")
      .def_readonly("y_hat", &PySolveResult::y_hat)
      .def_readonly("iterations", &PySolveResult::iterations)
      .def_readonly("converged", &PySolveResult::converged)
      .def_readonly("objective", &PySolveResult::objective)
      .def_readonly("primal_residual", &PySolveResult::primal_residual)
      .def_readonly("dual_residual", &PySolveResult::dual_residual)
      .def_readonly("t", &PySolveResult::t);

  m.def("solve", &py_solve, py::arg("adjacency"), py::arg("t") = std::nullopt, py::arg("rho") = kDefaultRho,
        py::arg("heterophily") = false, py::arg("tol") = 1e-7, py::arg("max_iter") = 500,
        "Solves the convex program. Without t, t comes from the spectral estimator.");

  py::class_<EstimationResult>(m, "EstimationResult")
      .def_readonly("eigenvalues", &EstimationResult::eigenvalues)
      .def_readonly("r_hat", &EstimationResult::r_hat)
      .def_readonly("k_hat", &EstimationResult::k_hat)
      .def_readonly("p_hat", &EstimationResult::p_hat)
      .def_readonly("q_hat", &EstimationResult::q_hat)
      .def_readonly("p_raw", &EstimationResult::p_raw)
      .def_readonly("q_raw", &EstimationResult::q_raw)
      .def_readonly("t", &EstimationResult::t);

  m.def(
      "estimate_parameters", [](const Matrix& a) { return estimate_parameters(Adjacency(a)); }, py::arg("adjacency"));

  m.def(
      "condition_report",
      [](double p, double q, int n, double k) {
        const auto r = condition_report(p, q, n, k);
        py::dict d;
        d["lhs"] = r.lhs;
        d["sufficient_bound"] = r.sufficient_bound;
        d["margin"] = r.margin;
        d["necessary_bound"] = r.necessary_bound;
        d["meets_necessary_condition"] = r.meets_necessary_condition();
        return d;
      },
      py::arg("p"), py::arg("q"), py::arg("n"), py::arg("k"));

  py::class_<CertificateReport>(m, "CertificateReport")
      .def_readonly("epsilon", &CertificateReport::epsilon)
      .def_readonly("norm_w", &CertificateReport::norm_w)
      .def_readonly("pt_w_inf", &CertificateReport::pt_w_inf)
      .def_readonly("pt_w_bound", &CertificateReport::pt_w_bound)
      .def_readonly("condition_a_pass", &CertificateReport::condition_a_pass)
      .def_readonly("condition_b_pass", &CertificateReport::condition_b_pass)
      .def_readonly("condition_c_pass", &CertificateReport::condition_c_pass)
      .def_readonly("c_equalities_max_violation", &CertificateReport::c_equalities_max_violation)
      .def_readonly("c_inequalities_min_slack", &CertificateReport::c_inequalities_min_slack)
      .def("all_pass", &CertificateReport::all_pass);

  m.def(
      "build_and_check_certificate",
      [](const Matrix& a, std::vector<int> labels, double p, double q, double t, double rho,
         std::optional<double> epsilon) {
        const Adjacency adj(a);
        const auto truth = ClusterMatrix::from_assignment(ClusterAssignment::from_labels(std::move(labels)));
        const auto w = make_weights(t, adj.n(), rho);
        py::gil_scoped_release release;
        return check_certificate(build_certificate(adj, truth, w, p, q, epsilon), w);
      },
      py::arg("adjacency"), py::arg("labels"), py::arg("p"), py::arg("q"), py::arg("t"),
      py::arg("rho") = kDefaultRho, py::arg("epsilon") = std::nullopt);

  m.def(
      "slink", [](const Matrix& a, int r) { return slink(Adjacency(a), r).labels; }, py::arg("adjacency"),
      py::arg("r"));
  m.def(
      "spectral_cluster", [](const Matrix& a, int r) { return spectral_cluster(Adjacency(a), r).labels; },
      py::arg("adjacency"), py::arg("r"));
  m.def(
      "lrps",
      [](const Matrix& a, double scale, double tol, int max_iter) {
        const Adjacency adj(a);
        py::gil_scoped_release release;
        return wrap(lrps(adj, scale, tolerances({}, tol, max_iter)), 0.5);
      },
      py::arg("adjacency"), py::arg("scale") = 1.0, py::arg("tol") = 1e-7, py::arg("max_iter") = 500);

  m.def("round_by_mean", &round_by_mean, py::arg("y"));
  m.def(
      "misclassified_pairs",
      [](const Matrix& truth, const Matrix& estimate) { return misclassified_pairs(truth, estimate); },
      py::arg("truth"), py::arg("estimate"));
  m.def(
      "is_cluster_matrix",
      [](const Matrix& y, double tol) -> std::optional<std::vector<int>> {
        const auto a = is_cluster_matrix(y, tol);
        if (!a) return std::nullopt;
        return a->labels;
      },
      py::arg("y"), py::arg("tol") = 0.0);

  m.def(
      "_run_sweep",
      [](const std::string& config) {
        const auto spec = sweep_spec_from_json(config);
        SweepResult result;
        {
          py::gil_scoped_release release;
          result = run_sweep(spec);
        }
        py::list rows;
        for (const auto& row : result.rows) {
          py::dict d;
          d["method"] = to_string(row.method);
          d["q"] = row.q;
          d["p_min_success"] = row.p_min_success ? py::cast(*row.p_min_success) : py::none();
          d["success_rate"] = row.success_rate;
          d["mean_misclassified"] = row.mean_misclassified;
          rows.append(d);
        }
        return rows;
      },
      py::arg("config"));
}
