#pragma once

#include "ocrep/dataset.hpp"
#include "ocrep/gamma.hpp"
#include "ocrep/metrics.hpp"
#include "ocrep/network.hpp"

#include <json.hpp>

#include <chrono>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ocrep {

using Clock = std::chrono::steady_clock;

/// Hidden-layer sizes used for the fixed-M comparison of each benchmark.
std::vector<Index> default_hidden_units(const std::string& dataset_id);

/// Common protocol knobs shared by every driver.
struct Protocol {
  Index repetitions = 50;
  double train_fraction = 0.7;
  Index folds = 3;
  std::uint64_t base_seed = 0;
  FeatureScaling feature_scaling = FeatureScaling::MinMax;
  TargetScaling target_scaling = TargetScaling::None;
  double confidence = 0.99;
  bool pooled_ttest = false;
  std::optional<Clock::time_point> deadline;

  /// One split per base seed; only the input weights vary across repetitions.
  std::uint64_t split_seed() const;
  std::uint64_t fold_seed() const;
  std::uint64_t repetition_seed(Index r) const { return base_seed + static_cast<std::uint64_t>(r); }
  bool expired() const { return deadline && Clock::now() >= *deadline; }
};

/// Train/test rows after the split, with feature (and optionally target)
/// normalizers fitted on the training rows only.
struct PreparedSplit {
  TaskKind task = TaskKind::Regression;
  Mat train_x;
  Mat train_t;  // normalized when a target normalizer is present
  Mat test_x;
  Mat test_t;   // raw scale
  Normalizer feature_normalizer;
  std::optional<Normalizer> target_normalizer;
  Partition rows;
};

PreparedSplit prepare_split(const Dataset& data, const Protocol& protocol);

/// Test error on the raw target scale.
double test_error(const PreparedSplit& split, const TrainedModel& model);

struct ExperimentPlan {
  std::vector<GammaStrategy> strategies;
  std::vector<Index> hidden_units;
  Protocol protocol;
};

/// Err/Std of one (dataset, strategy, M) cell plus per-repetition diagnostics.
struct CellResult {
  std::string dataset;
  std::string strategy;
  Index hidden_units = 0;
  TaskKind task = TaskKind::Regression;
  std::vector<double> errors;
  SampleStats stats;
  std::vector<double> gammas;            // NaN for unregularized repetitions
  std::vector<double> mu_unregularized;  // mu(H) at the rank threshold
  std::vector<double> mu_regularized;    // mu(H^reg); empty when unregularized
  std::vector<std::string> notes;
  std::optional<std::string> failure;

  bool ok() const { return !failure && !errors.empty(); }
  /// Mean of mu(H^reg), or of mu(H) for the unregularized strategy.
  double mean_condition() const;
};

/// mean condition number of `a` over mean condition number of `b`.
double condition_ratio(const CellResult& a, const CellResult& b);

struct SignificanceEntry {
  std::string dataset;
  Index hidden_units = 0;
  std::string strategy_a;
  std::string strategy_b;
  Verdict verdict = Verdict::Indistinguishable;
};

struct ConditionRatios {
  std::string dataset;
  Index hidden_units = 0;
  std::optional<double> ratio_unreg;  // mean mu(H^reg, OCReP) / mean mu(H^+)
  std::optional<double> ratio_cv;     // mean mu(H^reg, OCReP) / mean mu(H^CV)
};

struct SweepPoint {
  Index hidden_units = 0;
  SampleStats test;
  SampleStats validation;
};

struct SweepCurve {
  std::string dataset;
  std::string strategy;
  std::vector<SweepPoint> points;
  Index best_hidden_units = 0;  // argmin of the mean cross-validation error
  std::vector<double> errors_at_best;
  SampleStats at_best;

  const SweepPoint& at(Index hidden_units) const;
  double min_test_mean() const;
};

struct ExperimentReport {
  std::vector<CellResult> cells;
  std::vector<SignificanceEntry> significance;
  std::vector<ConditionRatios> ratios;
  std::vector<SweepCurve> sweeps;
  std::vector<std::string> skipped;
  std::vector<std::string> warnings;

  void append(ExperimentReport other);
  const CellResult* find(const std::string& dataset, const std::string& strategy, Index hidden_units) const;
};

/// Fixed-M protocol: every (M, strategy) cell over `repetitions` input-weight
/// draws, pairwise significance per M, and condition ratios whenever ocrep
/// runs next to unreg/cv (mu(H^+) is taken from the same hidden layers).
ExperimentReport run_fixed_hidden(const Dataset& data, const ExperimentPlan& plan);

/// Runs repetitions of {ocrep, cv} at M and returns the two ratios.
ConditionRatios condition_ratio_report(const Dataset& data, Index hidden_units, const Protocol& protocol,
                                       const GammaGrid& grid = GammaGrid::decades());

/// Hidden-unit sweep: for each M in [first, last] (step 1 by default) the mean
/// test error per strategy and the 3-fold CV error used to pick M-bar.
struct SweepPlan {
  std::vector<GammaStrategy> strategies;
  Index first = 1;
  Index last = 1;
  Index step = 1;
  Index ceiling = 5000;
  Protocol protocol;
};

ExperimentReport sweep_hidden_units(const Dataset& data, const SweepPlan& plan);

/// Test error as a function of gamma at fixed M (the grid), plus marker rows
/// at the OCReP gamma and the CV-selected gamma of each repetition.
struct GammaSweepRow {
  std::string kind;  // grid | ocrep | cv
  double gamma = 0.0;  // grid value, or geometric mean of the per-repetition markers
  SampleStats error;
  double mu_regularized_mean = 0.0;
  std::vector<double> errors;
};

struct GammaSweep {
  std::string dataset;
  Index hidden_units = 0;
  std::vector<GammaSweepRow> rows;

  const GammaSweepRow& marker(const std::string& kind) const;
  /// Grid row with the smallest mean error (ties: smaller gamma).
  const GammaSweepRow& grid_minimum() const;
  const GammaSweepRow& grid_row(double gamma) const;
};

GammaSweep sweep_gamma(const Dataset& data, Index hidden_units, const GammaGrid& grid, const Protocol& protocol);

// Serialization. Column layouts are listed by `report_schema()`.
void write_cells_csv(const ExperimentReport& report, std::ostream& out);
void write_sweep_csv(const ExperimentReport& report, std::ostream& out);
void write_ratios_csv(const ExperimentReport& report, std::ostream& out);
void write_significance_csv(const ExperimentReport& report, std::ostream& out);
void write_gamma_sweep_csv(const GammaSweep& sweep, std::ostream& out);
nlohmann::json to_json(const ExperimentReport& report);
nlohmann::json to_json(const GammaSweep& sweep);
std::string report_schema();

}  // namespace ocrep
