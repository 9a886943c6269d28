#pragma once

#include "ocrep/dataset.hpp"
#include "ocrep/projection.hpp"
#include "ocrep/spectral.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ocrep {

/// Candidate regularization parameters: strictly positive, strictly increasing.
class GammaGrid {
 public:
  GammaGrid() = default;
  explicit GammaGrid(std::vector<double> values);

  /// 10^lo, 10^(lo+1), ..., 10^hi. The default {1e-25 .. 1e25} has 51 points.
  static GammaGrid decades(int lo = -25, int hi = 25);
  /// 2^lo, ..., 2^hi. The default {2^-24 .. 2^25} has 50 points.
  static GammaGrid powers_of_two(int lo = -24, int hi = 25);
  /// "decades" or "elm" (powers of two).
  static GammaGrid preset(const std::string& name);

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

 private:
  std::vector<double> values_;
};

enum class StrategyKind { Ocrep, FixedValue, CvGrid, Gcv, Kibria, HoerlKennard, Unregularized };

struct GammaStrategy {
  StrategyKind kind = StrategyKind::Ocrep;
  double fixed_gamma = 0.0;
  GammaGrid grid = GammaGrid::decades();
  Index folds = 3;
  std::optional<double> threshold;  // rank cut-off; default_threshold(f) when unset
  bool gcv_raw_lambda = false;      // feed grid values to GCV as lambda instead of gamma / n

  static GammaStrategy ocrep();
  static GammaStrategy fixed(double gamma);
  static GammaStrategy cv_grid(GammaGrid grid = GammaGrid::decades(), Index folds = 3);
  static GammaStrategy gcv(GammaGrid grid = GammaGrid::decades());
  static GammaStrategy kibria();
  static GammaStrategy hoerl_kennard();
  static GammaStrategy unregularized(std::optional<double> threshold = std::nullopt);

  /// Canonical name: ocrep, fixed, cv, gcv, kibria, hoerl-kennard, unreg.
  std::string name() const;
  bool single_output_only() const;
  double resolve_threshold(const SpectralFactorization& f) const;
};

/// Accepts the canonical names plus a few aliases (unregularized, hk, cross-validation).
GammaStrategy parse_strategy(const std::string& name);

/// sigma_1 * sigma_r with sigma_r the smallest singular value above `threshold`.
double ocrep_gamma(const SpectralFactorization& f, double threshold);
double ocrep_gamma(const SpectralFactorization& f);

/// GCV score V(lambda) for the ridge family (H^T H + n lambda I)^-1 H^T y,
/// evaluated from the factorization without forming the influence matrix.
double gcv_score(const SpectralFactorization& f, const Vec& y, double lambda);

/// Grid value minimizing the GCV score; ties go to the smaller gamma.
/// Each grid gamma is scored at lambda = gamma / n unless `raw_lambda`.
double gcv_select(const SpectralFactorization& f, const Vec& y, const GammaGrid& grid, bool raw_lambda = false);

/// OLS quantities in the principal-component basis Z = H V.
struct RidgeEstimatorInputs {
  Vec alpha_hat;
  double sigma_hat_sq = 0.0;
  Index n = 0;
  Index p = 0;
};

RidgeEstimatorInputs ridge_estimator_inputs(const SpectralFactorization& f, const Vec& y);

/// Smallest |alpha_i| the estimators accept before reporting a singular estimate.
inline constexpr double kAlphaFloor = 1e-30;

/// mean_i sigma^2 / alpha_i^2
double kibria_gamma(const RidgeEstimatorInputs& inputs);
/// sigma^2 / max_i alpha_i^2 (largest magnitude)
double hoerl_kennard_gamma(const RidgeEstimatorInputs& inputs);

/// One cross-validation fold, factorized once and reused for every grid value.
struct CvFold {
  SpectralFactorization factorization;
  Mat fit_targets;
  Mat validate_hidden;
  Mat validate_targets;
};

/// Splits the rows of a hidden-layer matrix into folds (stratified for
/// classification) and factorizes each fit part.
std::vector<CvFold> prepare_folds(const Mat& h, const Mat& t, TaskKind task, Index folds, std::uint64_t seed);

/// Mean validation error across folds for every grid value.
std::vector<double> cv_grid_errors(const std::vector<CvFold>& folds, TaskKind task, const GammaGrid& grid);

/// Index of the smallest value; ties go to the lowest index.
std::size_t argmin_first(const std::vector<double>& values);

double cv_grid_select(const std::vector<CvFold>& folds, TaskKind task, const GammaGrid& grid);
double cv_grid_select(const Mat& h, const Mat& t, TaskKind task, const GammaGrid& grid, Index folds,
                      std::uint64_t seed);
/// Builds H = phi([X | 1] C) with the projection held fixed, then selects.
double cv_grid_select(const Mat& x, const Mat& t, TaskKind task, const Mat& projection, Activation activation,
                      const GammaGrid& grid, Index folds, std::uint64_t seed);

/// Outcome of applying a strategy to one factorized hidden layer.
struct GammaChoice {
  std::optional<double> gamma;  // empty: unregularized pseudoinverse
  double threshold = 0.0;
  std::vector<std::string> notes;
};

/// `h` and `t` are only consulted by strategies that need them (cv, gcv,
/// kibria, hoerl-kennard). A Kibria or Hoerl-Kennard estimate of exactly 0
/// falls back to the unregularized path and says so in `notes`.
GammaChoice resolve_gamma(const GammaStrategy& strategy, const SpectralFactorization& f, const Mat& h, const Mat& t,
                          TaskKind task, std::uint64_t fold_seed);

}  // namespace ocrep
