#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cvxcluster/estimation.hpp"
#include "cvxcluster/graph_model.hpp"

namespace cvxcluster {

enum class Method { kConvex, kSlink, kSpectral, kLrps };

std::string to_string(Method method);
Method parse_method(const std::string& name);

struct TrialConfig {
  double rho = 48.0;
  /// Use this t instead of the spectral estimate. For heterophilous
  /// instances it is the t of the original graph.
  std::optional<double> fixed_t;
  double tol = 1e-7;
  int max_iter = 500;
  double lrps_lambda_scale = 1.0;
  double success_threshold = 1e-3;
};

struct TrialRecord {
  Method method = Method::kConvex;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  std::int64_t misclassified = 0;
  bool success = false;
  double wall_seconds = 0.0;
  int iterations = 0;
  bool converged = false;
  double t_used = 0.0;
  std::optional<EstimationResult> estimate;
};

/// Runs `method` on an already generated instance. Never throws: failures
/// (including solver divergence) come back as ok == false with a message,
/// and count as unsuccessful.
TrialRecord run_on_instance(const GsbmInstance& instance, bool homophily, Method method,
                            const TrialConfig& cfg);

/// Generates an instance from `seed`, optionally perturbs it, and runs `method`.
TrialRecord run_single(const GsbmParams& params, const std::optional<AdversarySpec>& adversary,
                       Method method, const TrialConfig& cfg, std::uint64_t seed);

struct PSearch {
  double min = 0.05;
  double max = 1.0;
  double step = 0.05;
};

struct SweepSpec {
  int n = 400;
  int r = 4;
  int k = 100;
  std::vector<double> q_grid{0.05, 0.10, 0.15, 0.20};
  PSearch p_search;
  int trials = 20;
  double success_threshold = 1e-3;
  std::vector<Method> methods{Method::kConvex, Method::kSlink, Method::kSpectral, Method::kLrps};
  double rho = 48.0;
  std::uint64_t seed = 0;
  std::optional<double> fixed_t;
  double tol = 1e-7;
  int max_iter = 500;
  double lrps_lambda_scale = 1.0;
  int threads = 1;

  /// Throws std::invalid_argument when the sweep cannot be run.
  void validate() const;
  std::vector<double> p_values() const;
};

struct SweepRow {
  Method method = Method::kConvex;
  double q = 0.0;
  /// Smallest p whose cell succeeded in at least half the trials.
  std::optional<double> p_min_success;
  /// Statistics of that cell, or of the last cell scanned when none succeeded.
  double success_rate = 0.0;
  double mean_misclassified = 0.0;
  int cells_evaluated = 0;
  int trials_run = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double wall_seconds = 0.0;
};

/// Per-trial seed: a hash of (seed, method, q, p, trial).
std::uint64_t cell_seed(std::uint64_t seed, Method method, double q, double p, int trial);

/// For each (method, q), scans p upward from p_search.min and stops at the
/// first cell where at least half of the trials recover the truth. Cells with
/// p <= q are skipped. A cell stops drawing trials once a majority can no
/// longer be reached. Rows come out in (method, q) order of the grid and are
/// independent of `threads`. An empty p grid (max < min) gives no rows.
SweepResult run_sweep(const SweepSpec& spec);

inline constexpr const char* kSweepCsvHeader = "method,q,p_min_success,success_rate,mean_misclassified";

/// Writes the header and one line per row; "nan" marks a row that never succeeded.
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

/// Parses a JSON object with the SweepSpec field names ("k" may also be
/// spelled "K"). Missing fields keep their defaults; unknown fields and
/// wrong types throw std::invalid_argument.
SweepSpec sweep_spec_from_json(const std::string& text);
std::string sweep_spec_to_json(const SweepSpec& spec);

}  // namespace cvxcluster
