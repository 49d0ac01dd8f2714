#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cvxcluster/alm.hpp"
#include "cvxcluster/baselines.hpp"
#include "cvxcluster/certificate.hpp"
#include "cvxcluster/estimation.hpp"
#include "cvxcluster/graph_model.hpp"
#include "cvxcluster/harness.hpp"
#include "cvxcluster/io.hpp"
#include "cvxcluster/objective.hpp"

namespace cc = cvxcluster;

namespace {

constexpr int kConfigError = 2;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = 0;
  double rho = cc::kDefaultRho;
  std::string out;
};

void add_common(CLI::App* cmd, Common& common, const std::string& out_help) {
  cmd->add_option("--seed", common.seed, "Random seed")->capture_default_str();
  cmd->add_option("--rho", common.rho, "Nuclear-norm weight multiplier rho")->capture_default_str();
  cmd->add_option("--out", common.out, out_help);
}

// Flat "key=value" lines, echoed to stdout and to `path` when given.
class Report {
 public:
  template <class T>
  void add(const std::string& key, const T& value) {
    std::ostringstream line;
    line << std::setprecision(10) << std::boolalpha << key << '=' << value;
    lines_.push_back(line.str());
  }
  void emit(const std::string& path) const {
    for (const auto& l : lines_) std::cout << l << '\n';
    if (!path.empty()) {
      std::ofstream f(path);
      if (!f) throw ConfigError("cannot write " + path);
      for (const auto& l : lines_) f << l << '\n';
    }
  }

 private:
  std::vector<std::string> lines_;
};

cc::Adjacency load_graph(const std::string& path) {
  try {
    return cc::io::read_graph(path);
  } catch (const std::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

cc::ClusterAssignment load_assignment(const std::string& path) {
  try {
    return cc::io::read_assignment(path);
  } catch (const std::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void check_truth(const cc::Adjacency& a, const cc::ClusterAssignment& truth) {
  if (static_cast<int>(truth.labels.size()) != a.n()) {
    throw ConfigError("truth has " + std::to_string(truth.labels.size()) + " labels but the graph has " +
                      std::to_string(a.n()) + " nodes");
  }
}

void report_solution(Report& report, const cc::Matrix& rounded, const std::optional<cc::ClusterAssignment>& truth,
                     const std::string& labels_out) {
  const auto found = cc::is_cluster_matrix(rounded, 0.0);
  report.add("cluster_matrix", found.has_value());
  if (found) report.add("clusters", found->r);
  if (truth) {
    const auto mis = cc::misclassified_pairs(cc::ClusterMatrix::from_assignment(*truth), rounded);
    report.add("misclassified", mis);
    report.add("recovered", cc::recovery_succeeded(mis, static_cast<int>(rounded.rows())));
  }
  if (!labels_out.empty()) {
    if (found) {
      cc::io::write_assignment(*found, labels_out);
    } else {
      std::cerr << "warning: rounded solution is not a cluster matrix; no labels written\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convexified maximum-likelihood clustering for the semi-random blockmodel"};
  app.require_subcommand(1);

  // generate
  Common gen_common;
  std::vector<int> sizes;
  int gen_r = 0;
  int gen_k = 0;
  int outliers = 0;
  double gen_p = 0.0;
  double gen_q = 0.0;
  double add_fraction = 0.0;
  double remove_fraction = 0.0;
  auto* gen = app.add_subcommand("generate", "Sample a blockmodel graph; writes <out>.edges and <out>.labels");
  add_common(gen, gen_common, "Output path prefix");
  gen->add_option("--sizes", sizes, "Cluster sizes (alternative to --r/--k)")->delimiter(',');
  gen->add_option("--r", gen_r, "Number of equal clusters");
  gen->add_option("--k", gen_k, "Size of each cluster");
  gen->add_option("--outliers", outliers, "Number of outlier nodes")->capture_default_str();
  gen->add_option("--p", gen_p, "Within-cluster edge probability")->required();
  gen->add_option("--q", gen_q, "Other edge probability")->required();
  gen->add_option("--add-fraction", add_fraction, "Adversary: fraction of helpful non-edges to add");
  gen->add_option("--remove-fraction", remove_fraction, "Adversary: fraction of harmful edges to remove");

  // solve
  Common solve_common;
  std::string graph_path;
  std::string truth_path;
  std::optional<double> fixed_t;
  bool heterophily = false;
  double tol = 1e-7;
  int max_iter = 500;
  auto* solve = app.add_subcommand("solve", "Solve the convex program and round the result");
  add_common(solve, solve_common, "Write recovered labels here");
  solve->add_option("--graph", graph_path, "Edge-list file")->required();
  solve->add_option("--truth", truth_path, "Label file to score against");
  solve->add_option("--fixed-t", fixed_t, "Use this t instead of the spectral estimate");
  solve->add_flag("--heterophily", heterophily, "Treat the graph as heterophilous (p < q)");
  solve->add_option("--tol", tol, "Primal and dual residual tolerance")->capture_default_str();
  solve->add_option("--max-iter", max_iter, "Iteration limit")->capture_default_str();

  // estimate
  Common est_common;
  std::string est_graph;
  auto* estimate = app.add_subcommand("estimate", "Spectral estimate of r, K, p, q and t");
  add_common(estimate, est_common, "Also write the report here");
  estimate->add_option("--graph", est_graph, "Edge-list file")->required();

  // certify
  Common cert_common;
  std::string cert_graph;
  std::string cert_truth;
  std::optional<double> cert_p;
  std::optional<double> cert_q;
  std::optional<double> cert_t;
  std::optional<double> cert_eps;
  auto* certify = app.add_subcommand("certify", "Build and check the dual certificate for a labelling");
  add_common(certify, cert_common, "Also write the report here");
  certify->add_option("--graph", cert_graph, "Edge-list file")->required();
  certify->add_option("--truth", cert_truth, "Label file of the candidate clustering")->required();
  certify->add_option("--p", cert_p, "Within-cluster probability (estimated when omitted)");
  certify->add_option("--q", cert_q, "Other probability (estimated when omitted)");
  certify->add_option("--fixed-t", cert_t, "Weight parameter t (default (p+q)/2)");
  certify->add_option("--epsilon", cert_eps, "Certificate epsilon (default from n, K, t)");

  // sweep
  Common sweep_common;
  std::string config_path;
  int threads = 0;
  auto* sweep = app.add_subcommand("sweep", "Phase-transition sweep over (q, p); writes CSV");
  add_common(sweep, sweep_common, "CSV output path (stdout when omitted)");
  sweep->add_option("--config", config_path, "JSON sweep configuration");
  sweep->add_option("--threads", threads, "Worker threads");

  // baselines
  Common base_common;
  std::string base_graph;
  std::string base_truth;
  std::string method_name = "slink";
  int base_r = 0;
  double lrps_scale = 1.0;
  auto* baselines = app.add_subcommand("baselines", "Run a comparison method");
  add_common(baselines, base_common, "Write recovered labels here");
  baselines->add_option("--graph", base_graph, "Edge-list file")->required();
  baselines->add_option("--method", method_name, "slink, spectral or lrps")->capture_default_str();
  baselines->add_option("--r", base_r, "Number of clusters (slink, spectral)");
  baselines->add_option("--lrps-scale", lrps_scale, "lrps: lambda = scale / sqrt(n)")->capture_default_str();
  baselines->add_option("--truth", base_truth, "Label file to score against");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      if (gen_common.out.empty()) throw ConfigError("generate: --out is required");
      cc::GsbmParams params;
      if (!sizes.empty()) {
        params.cluster_sizes = sizes;
      } else if (gen_r > 0 && gen_k > 0) {
        params.cluster_sizes.assign(static_cast<std::size_t>(gen_r), gen_k);
      } else {
        throw ConfigError("generate: give --sizes or both --r and --k");
      }
      params.n2 = outliers;
      params.p = gen_p;
      params.q = gen_q;
      try {
        params.validate();
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      cc::GsbmInstance inst = cc::generate_gsbm(params, gen_common.seed);
      if (add_fraction > 0.0 || remove_fraction > 0.0) {
        cc::AdversarySpec adv{add_fraction, remove_fraction, gen_common.seed};
        inst.adjacency = cc::apply_adversary(inst.adjacency, inst.truth, adv, params.homophily());
      }
      cc::io::write_graph(inst.adjacency, gen_common.out + ".edges");
      cc::io::write_assignment(inst.assignment, gen_common.out + ".labels");
      Report report;
      report.add("n", params.n());
      report.add("edges", inst.adjacency.edge_count());
      report.add("graph", gen_common.out + ".edges");
      report.add("labels", gen_common.out + ".labels");
      report.emit("");
    } else if (*solve) {
      const cc::Adjacency a = load_graph(graph_path);
      std::optional<cc::ClusterAssignment> truth;
      if (!truth_path.empty()) {
        truth = load_assignment(truth_path);
        check_truth(a, *truth);
      }
      if (fixed_t && !(*fixed_t > 0.0 && *fixed_t < 1.0)) throw ConfigError("--fixed-t must lie in (0, 1)");
      const cc::Adjacency graph = heterophily ? cc::complement_graph(a) : a;
      Report report;
      double t;
      if (fixed_t) {
        t = heterophily ? 1.0 - *fixed_t : *fixed_t;
      } else {
        const auto est = cc::estimate_parameters(graph);
        t = est.t;
        report.add("r_hat", est.r_hat);
      }
      cc::SolverConfig cfg;
      try {
        cfg = cc::SolverConfig::with_weights(cc::make_weights(t, a.n(), solve_common.rho));
        cfg.tol_primal = tol;
        cfg.tol_dual = tol;
        cfg.max_iter = max_iter;
        cfg.validate();
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      const cc::SolveResult res = cc::solve(graph, cfg);
      report.add("n", a.n());
      report.add("t", heterophily ? 1.0 - t : t);
      report.add("iterations", res.iterations);
      report.add("converged", res.converged);
      report.add("primal_residual", res.primal_residual);
      report.add("dual_residual", res.dual_residual);
      report.add("objective", res.objective);
      report_solution(report, cc::round_by_mean(res.y_hat), truth, solve_common.out);
      report.emit("");
    } else if (*estimate) {
      const cc::Adjacency a = load_graph(est_graph);
      const auto est = cc::estimate_parameters(a);
      Report report;
      report.add("n", a.n());
      report.add("r_hat", est.r_hat);
      report.add("k_hat", est.k_hat);
      report.add("p_hat", est.p_hat);
      report.add("q_hat", est.q_hat);
      report.add("p_raw", est.p_raw);
      report.add("q_raw", est.q_raw);
      report.add("t", est.t);
      report.add("lambda", 1.0 / (est_common.rho * std::sqrt(static_cast<double>(a.n()))));
      if (est.p_hat > est.q_hat) {
        const auto cond = cc::condition_report(est.p_hat, est.q_hat, a.n(), est.k_hat);
        report.add("condition_lhs", cond.lhs);
        report.add("condition_bound", cond.sufficient_bound);
        report.add("condition_margin", cond.margin);
        report.add("necessary_bound", cond.necessary_bound);
      }
      report.emit(est_common.out);
    } else if (*certify) {
      const cc::Adjacency a = load_graph(cert_graph);
      const cc::ClusterAssignment truth = load_assignment(cert_truth);
      check_truth(a, truth);
      double p;
      double q;
      if (cert_p && cert_q) {
        p = *cert_p;
        q = *cert_q;
      } else {
        const auto est = cc::estimate_parameters(a);
        p = cert_p.value_or(est.p_hat);
        q = cert_q.value_or(est.q_hat);
      }
      const double t = cert_t.value_or(0.5 * (p + q));
      cc::Weights w;
      cc::Certificate cert;
      try {
        w = cc::make_weights(t, a.n(), cert_common.rho);
        cert = cc::build_certificate(a, cc::ClusterMatrix::from_assignment(truth), w, p, q, cert_eps);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      const cc::CertificateReport rep = cc::check_certificate(cert, w);
      Report report;
      report.add("p", p);
      report.add("q", q);
      report.add("t", t);
      report.add("lambda", w.lambda());
      report.add("epsilon", rep.epsilon);
      report.add("epsilon_in_range", rep.epsilon_in_range);
      report.add("norm_w", rep.norm_w);
      report.add("condition_a_pass", rep.condition_a_pass);
      report.add("pt_w_inf", rep.pt_w_inf);
      report.add("pt_w_bound", rep.pt_w_bound);
      report.add("condition_b_pass", rep.condition_b_pass);
      report.add("c_equalities_max_violation", rep.c_equalities_max_violation);
      report.add("c_inequalities_min_slack", rep.c_inequalities_min_slack);
      report.add("condition_c_pass", rep.condition_c_pass);
      report.add("all_pass", rep.all_pass());
      report.emit(cert_common.out);
    } else if (*sweep) {
      cc::SweepSpec spec;
      try {
        if (!config_path.empty()) {
          std::ifstream f(config_path);
          if (!f) throw ConfigError("cannot open " + config_path);
          std::stringstream text;
          text << f.rdbuf();
          spec = cc::sweep_spec_from_json(text.str());
        }
        if (sweep->count("--seed")) spec.seed = sweep_common.seed;
        if (sweep->count("--rho")) spec.rho = sweep_common.rho;
        if (threads > 0) spec.threads = threads;
        spec.validate();
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      const cc::SweepResult result = cc::run_sweep(spec);
      if (sweep_common.out.empty()) {
        cc::write_sweep_csv(result.rows, std::cout);
      } else {
        std::ofstream f(sweep_common.out);
        if (!f) throw ConfigError("cannot write " + sweep_common.out);
        cc::write_sweep_csv(result.rows, f);
      }
      std::cerr << "sweep finished in " << result.wall_seconds << " s\n";
    } else if (*baselines) {
      cc::BaselineMethod method;
      try {
        method = cc::parse_baseline_method(method_name);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      const cc::Adjacency a = load_graph(base_graph);
      std::optional<cc::ClusterAssignment> truth;
      if (!base_truth.empty()) {
        truth = load_assignment(base_truth);
        check_truth(a, *truth);
      }
      Report report;
      report.add("method", method_name);
      if (method == cc::BaselineMethod::kLrps) {
        if (!(lrps_scale > 0.0)) throw ConfigError("--lrps-scale must be positive");
        const cc::SolveResult res = cc::lrps(a, lrps_scale);
        report.add("iterations", res.iterations);
        report.add("converged", res.converged);
        report_solution(report, cc::round_by_mean(res.y_hat), truth, base_common.out);
      } else {
        if (base_r < 1 || base_r > a.n()) throw ConfigError("--r must lie in [1, n]");
        const cc::ClusterAssignment found =
            method == cc::BaselineMethod::kSlink ? cc::slink(a, base_r) : cc::spectral_cluster(a, base_r);
        report_solution(report, cc::ClusterMatrix::from_assignment(found).matrix(), truth, base_common.out);
      }
      report.emit("");
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
