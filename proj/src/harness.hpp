// Monte Carlo recovery experiments: grid expansion, per-trial seeding,
// parallel trial execution with order-independent aggregation, Wilson
// intervals, and CSV/JSON/SVG emission.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "estimators.hpp"
#include "model.hpp"

namespace palign {

struct SweepConfig {
  ModelKind model = ModelKind::ErdosRenyi;
  std::optional<ScoreKind> score;  // absent: per-model default
  std::vector<int> n, m;
  std::vector<double> p, rho;  // p stays empty for the Gaussian model
  long trials = 100;
  double delta = 0.5;
  std::uint64_t master_seed = 0;
  double budget = 1e8;
  int jobs = 1;
  bool use_penalized = false;
  double lambda = 0.0;
  std::optional<int> m_max;  // penalized search cap; defaults to the point's n
};

// Strict parser: unknown keys are rejected so typos cannot silently change
// an experiment.
SweepConfig sweep_config_from_json(const std::string& text);

// ER defaults to the product score. Gaussian uses the product score in the
// weak-signal regime rho <= 1-e^{-12} and the squared-difference score above.
ScoreKind default_score(ModelKind model, double rho);

struct GridPoint {
  long point_id = 0;
  ModelParams params;
  ScoreKind score = ScoreKind::Product;
  double delta = 0.5;
};

// Cartesian product of the value lists, validated point by point.
std::vector<GridPoint> expand_grid(const SweepConfig& cfg);

struct TrialRecord {
  long point_id = 0;
  long trial_index = 0;
  double overlap = 0.0;
  long distance = 0;
  bool exact_success = false;
  bool partial_success = false;
  double score = 0.0;
  double wall_time = 0.0;  // seconds; never aggregated into summaries
  bool skipped = false;    // trial hit the enumeration budget
};

// Hash of the instance-distribution parameters only, so a point keeps its
// random stream when the surrounding grid is rearranged.
std::uint64_t point_hash(const ModelParams& params);

std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t point_hash_value,
                                long trial_index);

struct TrialOptions {
  double budget = 1e8;
  bool use_penalized = false;
  double lambda = 0.0;
  std::optional<int> m_max;
};

// Samples an instance from the trial seed, aligns with the true m known
// (or the penalized estimator when configured), and scores the recovery.
TrialRecord run_trial(const GridPoint& point, std::uint64_t trial_seed,
                      const TrialOptions& opt);

struct SummaryRow {
  long point_id = 0;
  ModelKind model = ModelKind::ErdosRenyi;
  ScoreKind score = ScoreKind::Product;
  int n = 0, m = 0;
  double p = 0.0, rho = 0.0, delta = 0.0;
  long trials = 0, skipped = 0;
  long partial_successes = 0, exact_successes = 0;
  double partial_rate = 0.0, partial_lo = 0.0, partial_hi = 0.0;
  double exact_rate = 0.0, exact_lo = 0.0, exact_hi = 0.0;
  double mean_overlap = 0.0;
  double threshold_ratio = 0.0;  // m over the model's recovery threshold
};

// (lo, hi), clamped to [0, 1]. z is the normal quantile, e.g. 1.96 for 95%.
std::pair<double, double> wilson_interval(long successes, long trials, double z);

// Runs the whole grid; resource-limited trials are counted as skipped, any
// other per-trial failure aborts. Identical configs give identical rows for
// every worker count.
std::vector<SummaryRow> sweep(const SweepConfig& cfg);

enum class EmitFormat { Csv, Json, Svg };

EmitFormat parse_emit_format(const std::string& name);

std::string emit_summary(const std::vector<SummaryRow>& rows, EmitFormat format);

// Inverse of the CSV emitter, for roundtrip checks and downstream tooling.
std::vector<SummaryRow> summary_rows_from_csv(const std::string& text);

// Convenience wrapper reproducing the phase-transition picture: a sweep over
// (m, rho) at fixed n, emitted as CSV.
std::string phase_transition_csv(ModelKind model, int n, std::optional<double> p,
                                 const std::vector<double>& rho_list,
                                 const std::vector<int>& m_list, long trials, double delta,
                                 std::uint64_t seed, double budget, int jobs);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace palign
