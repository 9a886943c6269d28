#include "ocrep/gamma.hpp"

#include "ocrep/error.hpp"
#include "ocrep/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace ocrep {

GammaGrid::GammaGrid(std::vector<double> values) : values_(std::move(values)) {
  require(!values_.empty(), ErrorKind::Input, "gamma grid is empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    require(values_[i] > 0.0 && std::isfinite(values_[i]), ErrorKind::Input, "gamma grid values must be positive");
    require(i == 0 || values_[i] > values_[i - 1], ErrorKind::Input, "gamma grid must be strictly increasing");
  }
}

GammaGrid GammaGrid::decades(int lo, int hi) {
  std::vector<double> values;
  for (int e = lo; e <= hi; ++e) values.push_back(std::pow(10.0, e));
  return GammaGrid(std::move(values));
}

GammaGrid GammaGrid::powers_of_two(int lo, int hi) {
  std::vector<double> values;
  for (int e = lo; e <= hi; ++e) values.push_back(std::ldexp(1.0, e));
  return GammaGrid(std::move(values));
}

GammaGrid GammaGrid::preset(const std::string& name) {
  if (name == "decades") return decades();
  if (name == "elm") return powers_of_two();
  fail(ErrorKind::Input, "unknown grid preset '" + name + "' (decades, elm)");
}

GammaStrategy GammaStrategy::ocrep() { return {}; }

GammaStrategy GammaStrategy::fixed(double gamma) {
  require(gamma > 0.0 && std::isfinite(gamma), ErrorKind::Domain, "fixed gamma must be positive");
  GammaStrategy s;
  s.kind = StrategyKind::FixedValue;
  s.fixed_gamma = gamma;
  return s;
}

GammaStrategy GammaStrategy::cv_grid(GammaGrid grid, Index folds) {
  require(folds >= 2, ErrorKind::Input, "cross-validation needs at least 2 folds");
  GammaStrategy s;
  s.kind = StrategyKind::CvGrid;
  s.grid = std::move(grid);
  s.folds = folds;
  return s;
}

GammaStrategy GammaStrategy::gcv(GammaGrid grid) {
  GammaStrategy s;
  s.kind = StrategyKind::Gcv;
  s.grid = std::move(grid);
  return s;
}

GammaStrategy GammaStrategy::kibria() {
  GammaStrategy s;
  s.kind = StrategyKind::Kibria;
  return s;
}

GammaStrategy GammaStrategy::hoerl_kennard() {
  GammaStrategy s;
  s.kind = StrategyKind::HoerlKennard;
  return s;
}

GammaStrategy GammaStrategy::unregularized(std::optional<double> threshold) {
  require(!threshold || *threshold >= 0.0, ErrorKind::Domain, "threshold must be non-negative");
  GammaStrategy s;
  s.kind = StrategyKind::Unregularized;
  s.threshold = threshold;
  return s;
}

std::string GammaStrategy::name() const {
  switch (kind) {
    case StrategyKind::Ocrep: return "ocrep";
    case StrategyKind::FixedValue: return "fixed";
    case StrategyKind::CvGrid: return "cv";
    case StrategyKind::Gcv: return "gcv";
    case StrategyKind::Kibria: return "kibria";
    case StrategyKind::HoerlKennard: return "hoerl-kennard";
    case StrategyKind::Unregularized: return "unreg";
  }
  return "unknown";
}

bool GammaStrategy::single_output_only() const {
  return kind == StrategyKind::Gcv || kind == StrategyKind::Kibria || kind == StrategyKind::HoerlKennard;
}

double GammaStrategy::resolve_threshold(const SpectralFactorization& f) const {
  return threshold ? *threshold : default_threshold(f);
}

GammaStrategy parse_strategy(const std::string& name) {
  if (name == "ocrep") return GammaStrategy::ocrep();
  if (name == "cv" || name == "cross-validation") return GammaStrategy::cv_grid();
  if (name == "gcv") return GammaStrategy::gcv();
  if (name == "kibria") return GammaStrategy::kibria();
  if (name == "hoerl-kennard" || name == "hk") return GammaStrategy::hoerl_kennard();
  if (name == "unreg" || name == "unregularized") return GammaStrategy::unregularized();
  if (name == "fixed") {
    GammaStrategy s;
    s.kind = StrategyKind::FixedValue;  // gamma supplied separately
    return s;
  }
  fail(ErrorKind::Input,
       "unknown strategy '" + name + "' (ocrep, fixed, cv, gcv, kibria, hoerl-kennard, unreg)");
}

double ocrep_gamma(const SpectralFactorization& f, double threshold) {
  const Index rank = numerical_rank(f, threshold);
  require(rank > 0, ErrorKind::Degenerate, "all singular values are zero; no OCReP gamma");
  return f.singular_values(0) * f.singular_values(rank - 1);
}

double ocrep_gamma(const SpectralFactorization& f) { return ocrep_gamma(f, default_threshold(f)); }

double gcv_score(const SpectralFactorization& f, const Vec& y, double lambda) {
  require(lambda > 0.0, ErrorKind::Domain, "GCV needs lambda > 0");
  require(y.size() == f.source_rows, ErrorKind::Input, "GCV target length does not match matrix rows");
  const double n = static_cast<double>(f.source_rows);
  const double shift = n * lambda;
  const Vec projection = f.left.transpose() * y;
  const double orthogonal = (y - f.left * projection).squaredNorm();

  // Along u_i, I - A(lambda) has eigenvalue n lambda / (sigma_i^2 + n lambda);
  // on the complement of span(U) it is 1.
  double residual = orthogonal;
  double trace = n - static_cast<double>(f.size());
  for (Index i = 0; i < f.size(); ++i) {
    const double s2 = f.singular_values(i) * f.singular_values(i);
    const double keep = shift / (s2 + shift);
    residual += keep * keep * projection(i) * projection(i);
    trace += keep;
  }
  const double normalized_trace = trace / n;
  return (residual / n) / (normalized_trace * normalized_trace);
}

double gcv_select(const SpectralFactorization& f, const Vec& y, const GammaGrid& grid, bool raw_lambda) {
  require(!grid.empty(), ErrorKind::Input, "gamma grid is empty");
  const double n = static_cast<double>(f.source_rows);
  std::vector<double> scores;
  scores.reserve(grid.size());
  for (const double gamma : grid.values()) scores.push_back(gcv_score(f, y, raw_lambda ? gamma : gamma / n));
  return grid.values()[argmin_first(scores)];
}

RidgeEstimatorInputs ridge_estimator_inputs(const SpectralFactorization& f, const Vec& y) {
  require(y.size() == f.source_rows, ErrorKind::Input, "target length does not match matrix rows");
  RidgeEstimatorInputs inputs;
  inputs.n = f.source_rows;
  inputs.p = f.source_cols;
  require(inputs.n > inputs.p + 1, ErrorKind::EstimatorUndefined,
          "ridge estimators need n > p + 1 (n = " + std::to_string(inputs.n) + ", p = " + std::to_string(inputs.p) +
              ")");
  require(numerical_rank(f, default_threshold(f)) == inputs.p, ErrorKind::EstimatorUndefined,
          "ridge estimators need a full-rank hidden layer");

  // Z = H V has Z^T Z = diag(sigma^2) and Z^T y = diag(sigma) U^T y.
  const Vec projection = f.left.transpose() * y;
  inputs.alpha_hat = projection.array() / f.singular_values.array();
  // y^T y - alpha^T Z^T y is the squared residual of the OLS fit.
  const double residual = (y - f.left * projection).squaredNorm();
  inputs.sigma_hat_sq = residual / static_cast<double>(inputs.n - inputs.p - 1);
  return inputs;
}

double kibria_gamma(const RidgeEstimatorInputs& inputs) {
  require(inputs.alpha_hat.size() > 0, ErrorKind::EstimatorSingular, "no OLS coefficients");
  double total = 0.0;
  for (Index i = 0; i < inputs.alpha_hat.size(); ++i) {
    const double alpha = inputs.alpha_hat(i);
    require(std::abs(alpha) >= kAlphaFloor, ErrorKind::EstimatorSingular,
            "Kibria estimate undefined: alpha_hat[" + std::to_string(i) + "] vanishes");
    total += inputs.sigma_hat_sq / (alpha * alpha);
  }
  return total / static_cast<double>(inputs.alpha_hat.size());
}

double hoerl_kennard_gamma(const RidgeEstimatorInputs& inputs) {
  const double largest = inputs.alpha_hat.size() > 0 ? inputs.alpha_hat.cwiseAbs().maxCoeff() : 0.0;
  require(largest >= kAlphaFloor, ErrorKind::EstimatorSingular, "Hoerl-Kennard estimate undefined: alpha_hat is zero");
  return inputs.sigma_hat_sq / (largest * largest);
}

std::size_t argmin_first(const std::vector<double>& values) {
  require(!values.empty(), ErrorKind::Input, "argmin of an empty list");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  return best;
}

namespace {

Mat rows_of(const Mat& m, const std::vector<Index>& rows) {
  Mat out(static_cast<Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Index>(i)) = m.row(rows[i]);
  return out;
}

}  // namespace

std::vector<CvFold> prepare_folds(const Mat& h, const Mat& t, TaskKind task, Index folds, std::uint64_t seed) {
  require(h.rows() == t.rows(), ErrorKind::Input, "hidden layer and targets differ in row count");
  std::vector<Index> labels;
  if (task == TaskKind::Classification) labels = decode_class(t);
  std::vector<CvFold> out;
  for (const Partition& part : kfold(h.rows(), folds, seed, labels)) {
    require(!part.train.empty() && !part.test.empty(), ErrorKind::Input, "cross-validation fold is empty");
    CvFold fold;
    fold.factorization = factorize(rows_of(h, part.train));
    fold.fit_targets = rows_of(t, part.train);
    fold.validate_hidden = rows_of(h, part.test);
    fold.validate_targets = rows_of(t, part.test);
    out.push_back(std::move(fold));
  }
  return out;
}

std::vector<double> cv_grid_errors(const std::vector<CvFold>& folds, TaskKind task, const GammaGrid& grid) {
  require(!grid.empty(), ErrorKind::Input, "gamma grid is empty");
  require(!folds.empty(), ErrorKind::Input, "no cross-validation folds");
  std::vector<double> errors(grid.size(), 0.0);
  for (const CvFold& fold : folds) {
    const SpectralFactorization& f = fold.factorization;
    // Validation prediction = (H_val V) diag(D) (U^T T_fit); the two outer products are gamma-free.
    const Mat projected_targets = f.left.transpose() * fold.fit_targets;
    const Mat projected_hidden = fold.validate_hidden * f.right;
    const Vec& s = f.singular_values;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const Vec filter = s.array() / (s.array().square() + grid.values()[g]);
      const Mat predicted = projected_hidden * (filter.asDiagonal() * projected_targets);
      errors[g] += task_error(task, predicted, fold.validate_targets);
    }
  }
  for (double& e : errors) e /= static_cast<double>(folds.size());
  return errors;
}

double cv_grid_select(const std::vector<CvFold>& folds, TaskKind task, const GammaGrid& grid) {
  return grid.values()[argmin_first(cv_grid_errors(folds, task, grid))];
}

double cv_grid_select(const Mat& h, const Mat& t, TaskKind task, const GammaGrid& grid, Index folds,
                      std::uint64_t seed) {
  require(!grid.empty(), ErrorKind::Input, "gamma grid is empty");
  return cv_grid_select(prepare_folds(h, t, task, folds, seed), task, grid);
}

double cv_grid_select(const Mat& x, const Mat& t, TaskKind task, const Mat& projection, Activation activation,
                      const GammaGrid& grid, Index folds, std::uint64_t seed) {
  return cv_grid_select(hidden_output(x, projection, activation), t, task, grid, folds, seed);
}

GammaChoice resolve_gamma(const GammaStrategy& strategy, const SpectralFactorization& f, const Mat& h, const Mat& t,
                          TaskKind task, std::uint64_t fold_seed) {
  GammaChoice choice;
  choice.threshold = strategy.resolve_threshold(f);
  if (strategy.single_output_only()) {
    require(task == TaskKind::Regression && t.cols() == 1, ErrorKind::UnsupportedStrategy,
            "strategy '" + strategy.name() + "' requires single-output regression");
  }
  switch (strategy.kind) {
    case StrategyKind::Ocrep:
      choice.gamma = ocrep_gamma(f, choice.threshold);
      break;
    case StrategyKind::FixedValue:
      require(strategy.fixed_gamma > 0.0, ErrorKind::Input, "fixed strategy needs a positive gamma");
      choice.gamma = strategy.fixed_gamma;
      break;
    case StrategyKind::CvGrid:
      choice.gamma = cv_grid_select(h, t, task, strategy.grid, strategy.folds, fold_seed);
      break;
    case StrategyKind::Gcv:
      choice.gamma = gcv_select(f, t.col(0), strategy.grid, strategy.gcv_raw_lambda);
      break;
    case StrategyKind::Kibria:
    case StrategyKind::HoerlKennard: {
      const RidgeEstimatorInputs inputs = ridge_estimator_inputs(f, t.col(0));
      const double gamma =
          strategy.kind == StrategyKind::Kibria ? kibria_gamma(inputs) : hoerl_kennard_gamma(inputs);
      require(std::isfinite(gamma), ErrorKind::Numerical, strategy.name() + " estimate is not finite");
      if (gamma > 0.0) {
        choice.gamma = gamma;
      } else {
        choice.notes.push_back(strategy.name() + " estimate is 0 (exact fit); using the unregularized pseudoinverse");
      }
      break;
    }
    case StrategyKind::Unregularized:
      break;
  }
  return choice;
}

}  // namespace ocrep
