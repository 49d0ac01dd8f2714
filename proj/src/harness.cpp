#include "cvxcluster/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <set>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "cvxcluster/alm.hpp"
#include "cvxcluster/baselines.hpp"
#include "cvxcluster/random.hpp"

namespace cvxcluster {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Grid values are identified by their rounding to 1e-9 so that 0.1 and
// 0.1000000000001 hash alike.
std::uint64_t grid_key(double x) { return static_cast<std::uint64_t>(std::llround(x * 1e9)); }

SolverConfig solver_config(const Weights& w, const TrialConfig& cfg) {
  SolverConfig s = SolverConfig::with_weights(w);
  s.tol_primal = cfg.tol;
  s.tol_dual = cfg.tol;
  s.max_iter = cfg.max_iter;
  return s;
}

void score(TrialRecord& rec, const GsbmInstance& instance, const Matrix& estimate, double threshold) {
  rec.misclassified = misclassified_pairs(instance.truth, estimate);
  rec.success = recovery_succeeded(rec.misclassified, instance.adjacency.n(), threshold);
  rec.ok = true;
}

void run_convex(TrialRecord& rec, const GsbmInstance& instance, bool homophily, const TrialConfig& cfg) {
  // Heterophilous instances are solved on the complement, where they are homophilous.
  const Adjacency graph = homophily ? instance.adjacency : complement_graph(instance.adjacency);
  const int n = graph.n();
  double t;
  if (cfg.fixed_t) {
    t = homophily ? *cfg.fixed_t : 1.0 - *cfg.fixed_t;
  } else {
    rec.estimate = estimate_parameters(graph);
    t = rec.estimate->t;
  }
  rec.t_used = homophily ? t : 1.0 - t;
  const SolveResult sol = solve(graph, solver_config(make_weights(t, n, cfg.rho), cfg));
  rec.iterations = sol.iterations;
  rec.converged = sol.converged;
  score(rec, instance, round_by_mean(sol.y_hat), cfg.success_threshold);
}

void run_lrps(TrialRecord& rec, const GsbmInstance& instance, bool homophily, const TrialConfig& cfg) {
  const Adjacency graph = homophily ? instance.adjacency : complement_graph(instance.adjacency);
  SolverConfig s;
  s.tol_primal = cfg.tol;
  s.tol_dual = cfg.tol;
  s.max_iter = cfg.max_iter;
  const SolveResult sol = lrps(graph, cfg.lrps_lambda_scale, s);
  rec.iterations = sol.iterations;
  rec.converged = sol.converged;
  score(rec, instance, round_by_mean(sol.y_hat), cfg.success_threshold);
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::kConvex: return "convex";
    case Method::kSlink: return "slink";
    case Method::kSpectral: return "spectral";
    case Method::kLrps: return "lrps";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "convex") return Method::kConvex;
  if (name == "slink") return Method::kSlink;
  if (name == "spectral") return Method::kSpectral;
  if (name == "lrps") return Method::kLrps;
  throw std::invalid_argument("unknown method: " + name + " (expected convex, slink, spectral or lrps)");
}

TrialRecord run_on_instance(const GsbmInstance& instance, bool homophily, Method method,
                            const TrialConfig& cfg) {
  TrialRecord rec;
  rec.method = method;
  const auto start = Clock::now();
  try {
    switch (method) {
      case Method::kConvex:
        run_convex(rec, instance, homophily, cfg);
        break;
      case Method::kLrps:
        run_lrps(rec, instance, homophily, cfg);
        break;
      case Method::kSlink:
      case Method::kSpectral: {
        const int r = std::max(instance.assignment.r, 1);
        const ClusterAssignment found = method == Method::kSlink
                                            ? slink(instance.adjacency, r)
                                            : spectral_cluster(instance.adjacency, r);
        score(rec, instance, ClusterMatrix::from_assignment(found).matrix(), cfg.success_threshold);
        break;
      }
    }
  } catch (const std::exception& e) {
    rec.ok = false;
    rec.success = false;
    rec.error = e.what();
  }
  rec.wall_seconds = seconds_since(start);
  return rec;
}

TrialRecord run_single(const GsbmParams& params, const std::optional<AdversarySpec>& adversary,
                       Method method, const TrialConfig& cfg, std::uint64_t seed) {
  TrialRecord rec;
  rec.method = method;
  rec.seed = seed;
  try {
    params.validate();
    GsbmInstance instance = generate_gsbm(params, seed);
    if (adversary) {
      instance.adjacency = apply_adversary(instance.adjacency, instance.truth, *adversary, params.homophily());
    }
    rec = run_on_instance(instance, params.homophily(), method, cfg);
    rec.seed = seed;
  } catch (const std::exception& e) {
    rec.ok = false;
    rec.error = e.what();
  }
  return rec;
}

void SweepSpec::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("sweep: " + what); };
  if (r < 1 || k < 1) fail("r and k must be positive");
  if (n < r * k) fail("n must be at least r*k");
  if (q_grid.empty()) fail("q_grid is empty");
  for (double q : q_grid) {
    if (!(q >= 0.0 && q < 1.0)) fail("q values must lie in [0, 1)");
  }
  if (!(p_search.step > 0.0)) fail("p_search.step must be positive");
  if (!(p_search.min >= 0.0 && p_search.max <= 1.0)) fail("p_search needs 0 <= min and max <= 1");
  if (trials < 1) fail("trials must be positive");
  if (!(success_threshold > 0.0)) fail("success_threshold must be positive");
  if (methods.empty()) fail("methods is empty");
  if (!(rho > 0.0)) fail("rho must be positive");
  if (fixed_t && !(*fixed_t > 0.0 && *fixed_t < 1.0)) fail("fixed_t must lie in (0, 1)");
  if (!(tol > 0.0) || max_iter < 1) fail("tol must be positive and max_iter at least 1");
  if (!(lrps_lambda_scale > 0.0)) fail("lrps_lambda_scale must be positive");
  if (threads < 1) fail("threads must be at least 1");
}

std::vector<double> SweepSpec::p_values() const {
  std::vector<double> ps;
  for (int i = 0;; ++i) {
    const double p = std::round((p_search.min + i * p_search.step) * 1e9) / 1e9;
    if (p > p_search.max + 1e-12) break;
    ps.push_back(p);
  }
  return ps;
}

std::uint64_t cell_seed(std::uint64_t seed, Method method, double q, double p, int trial) {
  std::uint64_t h = combine_seed(seed, static_cast<std::uint64_t>(method));
  h = combine_seed(h, grid_key(q));
  h = combine_seed(h, grid_key(p));
  return combine_seed(h, static_cast<std::uint64_t>(trial));
}

namespace {

SweepRow sweep_row(const SweepSpec& spec, Method method, double q) {
  SweepRow row;
  row.method = method;
  row.q = q;
  row.mean_misclassified = std::numeric_limits<double>::quiet_NaN();

  TrialConfig cfg;
  cfg.rho = spec.rho;
  cfg.fixed_t = spec.fixed_t;
  cfg.tol = spec.tol;
  cfg.max_iter = spec.max_iter;
  cfg.lrps_lambda_scale = spec.lrps_lambda_scale;
  cfg.success_threshold = spec.success_threshold;

  const int needed = (spec.trials + 1) / 2;
  const int n2 = spec.n - spec.r * spec.k;
  for (double p : spec.p_values()) {
    if (p <= q) continue;
    GsbmParams params = GsbmParams::standard(spec.r, spec.k, p, q);
    params.n2 = n2;

    int successes = 0;
    int failures = 0;
    int ok = 0;
    double mis_sum = 0.0;
    for (int trial = 0; trial < spec.trials; ++trial) {
      const TrialRecord rec = run_single(params, std::nullopt, method, cfg, cell_seed(spec.seed, method, q, p, trial));
      ++row.trials_run;
      if (rec.success) ++successes; else ++failures;
      if (rec.ok) {
        ++ok;
        mis_sum += static_cast<double>(rec.misclassified);
      }
      if (failures > spec.trials - needed) break;
    }
    ++row.cells_evaluated;
    const int ran = successes + failures;
    row.success_rate = static_cast<double>(successes) / ran;
    row.mean_misclassified = ok > 0 ? mis_sum / ok : std::numeric_limits<double>::quiet_NaN();
    if (successes >= needed) {
      row.p_min_success = p;
      break;
    }
  }
  return row;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  const auto start = Clock::now();
  std::vector<std::pair<Method, double>> keys;
  for (Method m : spec.methods) {
    for (double q : spec.q_grid) keys.emplace_back(m, q);
  }
  SweepResult result;
  if (spec.p_values().empty()) keys.clear();
  result.rows.resize(keys.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < keys.size(); i = next++) {
      result.rows[i] = sweep_row(spec, keys[i].first, keys[i].second);
    }
  };
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(spec.threads), keys.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  result.wall_seconds = seconds_since(start);
  return result;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  auto num = [](double x) {
    if (std::isnan(x)) return std::string("nan");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return std::string(buf);
  };
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& row : rows) {
    out << to_string(row.method) << ',' << num(row.q) << ','
        << num(row.p_min_success.value_or(std::numeric_limits<double>::quiet_NaN())) << ','
        << num(row.success_rate) << ',' << num(row.mean_misclassified) << '\n';
  }
}

SweepSpec sweep_spec_from_json(const std::string& text) {
  using nlohmann::json;
  SweepSpec spec;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw std::invalid_argument("sweep config must be a JSON object");
    static const std::set<std::string> known{
        "n", "r", "k", "K", "q_grid", "p_search", "trials", "success_threshold", "methods", "rho",
        "seed", "fixed_t", "tol", "max_iter", "lrps_lambda_scale", "threads"};
    for (const auto& item : j.items()) {
      if (!known.count(item.key())) throw std::invalid_argument("unknown sweep config field: " + item.key());
    }
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) j.at(key).get_to(field);
    };
    get("n", spec.n);
    get("r", spec.r);
    get("k", spec.k);
    get("K", spec.k);
    get("q_grid", spec.q_grid);
    if (j.contains("p_search")) {
      const json& ps = j.at("p_search");
      for (const auto& item : ps.items()) {
        if (item.key() != "min" && item.key() != "max" && item.key() != "step") {
          throw std::invalid_argument("unknown p_search field: " + item.key());
        }
      }
      if (ps.contains("min")) ps.at("min").get_to(spec.p_search.min);
      if (ps.contains("max")) ps.at("max").get_to(spec.p_search.max);
      if (ps.contains("step")) ps.at("step").get_to(spec.p_search.step);
    }
    get("trials", spec.trials);
    get("success_threshold", spec.success_threshold);
    if (j.contains("methods")) {
      spec.methods.clear();
      for (const auto& m : j.at("methods")) spec.methods.push_back(parse_method(m.get<std::string>()));
    }
    get("rho", spec.rho);
    get("seed", spec.seed);
    if (j.contains("fixed_t") && !j.at("fixed_t").is_null()) spec.fixed_t = j.at("fixed_t").get<double>();
    get("tol", spec.tol);
    get("max_iter", spec.max_iter);
    get("lrps_lambda_scale", spec.lrps_lambda_scale);
    get("threads", spec.threads);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("sweep config: ") + e.what());
  }
  spec.validate();
  return spec;
}

std::string sweep_spec_to_json(const SweepSpec& spec) {
  nlohmann::json j;
  j["n"] = spec.n;
  j["r"] = spec.r;
  j["k"] = spec.k;
  j["q_grid"] = spec.q_grid;
  j["p_search"] = {{"min", spec.p_search.min}, {"max", spec.p_search.max}, {"step", spec.p_search.step}};
  j["trials"] = spec.trials;
  j["success_threshold"] = spec.success_threshold;
  std::vector<std::string> methods;
  for (Method m : spec.methods) methods.push_back(to_string(m));
  j["methods"] = methods;
  j["rho"] = spec.rho;
  j["seed"] = spec.seed;
  j["fixed_t"] = spec.fixed_t ? nlohmann::json(*spec.fixed_t) : nlohmann::json(nullptr);
  j["tol"] = spec.tol;
  j["max_iter"] = spec.max_iter;
  j["lrps_lambda_scale"] = spec.lrps_lambda_scale;
  j["threads"] = spec.threads;
  return j.dump(2);
}

}  // namespace cvxcluster
