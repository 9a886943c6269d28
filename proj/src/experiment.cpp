#include "ocrep/experiment.hpp"

#include "ocrep/error.hpp"
#include "ocrep/random.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace ocrep {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double mean_of(const std::vector<double>& v) {
  return v.empty() ? kNaN : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double geometric_mean(const std::vector<double>& v) {
  double log_sum = 0.0;
  std::size_t count = 0;
  for (const double x : v) {
    if (x > 0.0 && std::isfinite(x)) {
      log_sum += std::log(x);
      ++count;
    }
  }
  return count == 0 ? kNaN : std::exp(log_sum / static_cast<double>(count));
}

Mat rows_of(const Mat& m, const std::vector<Index>& rows) {
  Mat out(static_cast<Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Index>(i)) = m.row(rows[i]);
  return out;
}

double raw_scale_error(const PreparedSplit& split, Mat predicted) {
  if (split.target_normalizer) predicted = split.target_normalizer->invert(predicted);
  return task_error(split.task, predicted, split.test_t);
}

void add_note(std::vector<std::string>& notes, const std::string& note) {
  if (std::find(notes.begin(), notes.end(), note) == notes.end()) notes.push_back(note);
}

// Validation error of a non-grid strategy on one prepared fold.
double fold_error(const GammaStrategy& strategy, const CvFold& fold, TaskKind task, std::uint64_t seed) {
  const GammaChoice choice = resolve_gamma(strategy, fold.factorization, Mat(), fold.fit_targets, task, seed);
  const Mat weights = choice.gamma ? regularized_apply(fold.factorization, *choice.gamma, fold.fit_targets)
                                   : pseudoinverse_apply(fold.factorization, choice.threshold, fold.fit_targets);
  return task_error(task, fold.validate_hidden * weights, fold.validate_targets);
}

std::string format_number(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "" : (v > 0 ? "inf" : "-inf");
  std::ostringstream s;
  s << std::setprecision(10) << v;
  return s.str();
}

std::string format_optional(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

std::vector<Index> default_hidden_units(const std::string& id) {
  if (id == "machine_cpu" || id == "iris" || id == "wine") return {50, 100};
  if (id == "abalone" || id == "delta_ailerons" || id == "housing" || id == "diabetes") return {50, 100, 200, 300};
  if (id == "segment") return {1000, 1500};
  return {50, 100};
}

std::uint64_t Protocol::split_seed() const { return mix_seed(base_seed, 1); }
std::uint64_t Protocol::fold_seed() const { return mix_seed(base_seed, 2); }

PreparedSplit prepare_split(const Dataset& data, const Protocol& protocol) {
  PreparedSplit split;
  split.task = data.task;
  split.rows = split_train_test(data, protocol.split_seed(), protocol.train_fraction);
  const Mat train_x_raw = rows_of(data.features, split.rows.train);
  split.feature_normalizer = Normalizer::fit(train_x_raw, protocol.feature_scaling);
  split.train_x = split.feature_normalizer.apply(train_x_raw);
  split.test_x = split.feature_normalizer.apply(rows_of(data.features, split.rows.test));
  split.train_t = rows_of(data.targets, split.rows.train);
  split.test_t = rows_of(data.targets, split.rows.test);
  if (data.task == TaskKind::Regression && protocol.target_scaling == TargetScaling::MinMax) {
    split.target_normalizer = Normalizer::fit_min_max(split.train_t);
    split.train_t = split.target_normalizer->apply(split.train_t);
  }
  return split;
}

double test_error(const PreparedSplit& split, const TrainedModel& model) {
  return raw_scale_error(split, predict(model, split.test_x));
}

double CellResult::mean_condition() const {
  return mu_regularized.empty() ? mean_of(mu_unregularized) : mean_of(mu_regularized);
}

double condition_ratio(const CellResult& a, const CellResult& b) { return a.mean_condition() / b.mean_condition(); }

const SweepPoint& SweepCurve::at(Index hidden_units) const {
  for (const auto& p : points) {
    if (p.hidden_units == hidden_units) return p;
  }
  fail(ErrorKind::Input, "sweep has no point at M = " + std::to_string(hidden_units));
}

double SweepCurve::min_test_mean() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    if (std::isfinite(p.test.mean)) best = std::min(best, p.test.mean);
  }
  return best;
}

void ExperimentReport::append(ExperimentReport other) {
  auto move_all = [](auto& into, auto& from) {
    into.insert(into.end(), std::make_move_iterator(from.begin()), std::make_move_iterator(from.end()));
  };
  move_all(cells, other.cells);
  move_all(significance, other.significance);
  move_all(ratios, other.ratios);
  move_all(sweeps, other.sweeps);
  move_all(skipped, other.skipped);
  move_all(warnings, other.warnings);
}

const CellResult* ExperimentReport::find(const std::string& dataset, const std::string& strategy,
                                         Index hidden_units) const {
  for (const auto& c : cells) {
    if (c.dataset == dataset && c.strategy == strategy && c.hidden_units == hidden_units) return &c;
  }
  return nullptr;
}

ExperimentReport run_fixed_hidden(const Dataset& data, const ExperimentPlan& plan) {
  const Protocol& protocol = plan.protocol;
  require(protocol.repetitions >= 2, ErrorKind::Input, "an experiment needs at least 2 repetitions");
  require(!plan.strategies.empty(), ErrorKind::Input, "no strategies to evaluate");
  const PreparedSplit split = prepare_split(data, protocol);
  ExperimentReport report;

  for (const Index hidden : plan.hidden_units) {
    require(hidden >= 1, ErrorKind::Input, "hidden units must be positive");
    std::vector<CellResult> cells;
    for (const auto& s : plan.strategies) {
      CellResult cell;
      cell.dataset = data.id;
      cell.strategy = s.name();
      cell.hidden_units = hidden;
      cell.task = data.task;
      cells.push_back(std::move(cell));
    }

    for (Index r = 0; r < protocol.repetitions; ++r) {
      if (protocol.expired()) {
        for (auto& cell : cells) {
          if (!cell.failure) cell.failure = "time budget exhausted after " + std::to_string(r) + " repetitions";
        }
        break;
      }
      const ProjectionConfig config{split.train_x.cols(), hidden, Activation::Sigmoid, protocol.repetition_seed(r)};
      const Mat projection = init_projection(config);
      const Mat h = hidden_output(split.train_x, projection);
      const SpectralFactorization f = factorize(h);
      for (std::size_t s = 0; s < plan.strategies.size(); ++s) {
        CellResult& cell = cells[s];
        if (cell.failure) continue;
        try {
          const TrainedModel model = train_on_hidden(projection, config.activation, h, f, split.train_t, data.task,
                                                     plan.strategies[s], protocol.fold_seed());
          cell.errors.push_back(test_error(split, model));
          cell.gammas.push_back(model.gamma.value_or(kNaN));
          cell.mu_unregularized.push_back(model.conditioning.mu_unregularized);
          if (model.conditioning.mu_regularized) cell.mu_regularized.push_back(*model.conditioning.mu_regularized);
          for (const auto& note : model.notes) add_note(cell.notes, note);
        } catch (const Error& e) {
          cell.failure = "repetition " + std::to_string(r) + ": " + e.what();
        }
      }
    }

    for (auto& cell : cells) {
      if (cell.failure) {
        report.skipped.push_back(data.id + "/" + cell.strategy + "/M=" + std::to_string(hidden) + ": " + *cell.failure);
      } else if (!cell.errors.empty()) {
        cell.stats = sample_stats(cell.errors);
      }
    }
    for (std::size_t a = 0; a < cells.size(); ++a) {
      for (std::size_t b = a + 1; b < cells.size(); ++b) {
        if (!cells[a].ok() || !cells[b].ok() || cells[a].errors.size() < 2 || cells[b].errors.size() < 2) continue;
        report.significance.push_back({data.id, hidden, cells[a].strategy, cells[b].strategy,
                                       significance_test(cells[a].errors, cells[b].errors, protocol.confidence,
                                                         protocol.pooled_ttest)});
      }
    }

    auto find_cell = [&](const std::string& name) -> const CellResult* {
      for (const auto& c : cells) {
        if (c.strategy == name && c.ok()) return &c;
      }
      return nullptr;
    };
    if (const CellResult* ocrep = find_cell("ocrep")) {
      ConditionRatios ratios;
      ratios.dataset = data.id;
      ratios.hidden_units = hidden;
      const CellResult* unreg = find_cell("unreg");
      ratios.ratio_unreg = unreg ? condition_ratio(*ocrep, *unreg) : mean_of(ocrep->mu_regularized) / mean_of(ocrep->mu_unregularized);
      if (const CellResult* cv = find_cell("cv")) ratios.ratio_cv = condition_ratio(*ocrep, *cv);
      report.ratios.push_back(ratios);
    }
    for (auto& cell : cells) report.cells.push_back(std::move(cell));
  }
  report.warnings = data.warnings;
  return report;
}

ConditionRatios condition_ratio_report(const Dataset& data, Index hidden_units, const Protocol& protocol,
                                       const GammaGrid& grid) {
  ExperimentPlan plan;
  plan.strategies = {GammaStrategy::ocrep(), GammaStrategy::cv_grid(grid, protocol.folds)};
  plan.hidden_units = {hidden_units};
  plan.protocol = protocol;
  const ExperimentReport report = run_fixed_hidden(data, plan);
  require(!report.ratios.empty(), ErrorKind::Numerical,
          "no condition ratios for " + data.id + (report.skipped.empty() ? "" : ": " + report.skipped.front()));
  return report.ratios.front();
}

ExperimentReport sweep_hidden_units(const Dataset& data, const SweepPlan& plan) {
  const Protocol& protocol = plan.protocol;
  require(plan.first >= 1 && plan.last >= plan.first && plan.step >= 1, ErrorKind::Input, "invalid hidden-unit range");
  require(plan.last <= plan.ceiling, ErrorKind::Input,
          "hidden-unit range exceeds the ceiling of " + std::to_string(plan.ceiling));
  require(!plan.strategies.empty(), ErrorKind::Input, "no strategies to evaluate");
  require(protocol.repetitions >= 1, ErrorKind::Input, "a sweep needs at least one repetition");

  const PreparedSplit split = prepare_split(data, protocol);
  std::vector<Index> sizes;
  for (Index m = plan.first; m <= plan.last; m += plan.step) sizes.push_back(m);
  const std::size_t ns = plan.strategies.size();
  // [strategy][size] -> per-repetition values
  std::vector<std::vector<std::vector<double>>> test(ns, std::vector<std::vector<double>>(sizes.size()));
  std::vector<std::vector<std::vector<double>>> validation = test;
  ExperimentReport report;
  report.warnings = data.warnings;

  Index completed = 0;
  for (Index r = 0; r < protocol.repetitions; ++r) {
    if (protocol.expired()) {
      report.skipped.push_back(data.id + " sweep: time budget exhausted after " + std::to_string(r) + " repetitions");
      break;
    }
    // Units are drawn column by column, so the M-unit network is a prefix of the largest one.
    const ProjectionConfig config{split.train_x.cols(), sizes.back(), Activation::Sigmoid, protocol.repetition_seed(r)};
    const Mat full_projection = init_projection(config);
    const Mat full_hidden = hidden_output(split.train_x, full_projection);

    for (std::size_t k = 0; k < sizes.size(); ++k) {
      const Index m = sizes[k];
      const Mat projection = full_projection.leftCols(m);
      const Mat h = full_hidden.leftCols(m);
      const SpectralFactorization f = factorize(h);
      const std::vector<CvFold> folds = prepare_folds(h, split.train_t, data.task, protocol.folds, protocol.fold_seed());

      for (std::size_t s = 0; s < ns; ++s) {
        const GammaStrategy& strategy = plan.strategies[s];
        double cv_error = kNaN;
        double t_error = kNaN;
        try {
          GammaStrategy effective = strategy;
          if (strategy.kind == StrategyKind::CvGrid) {
            const auto errors = cv_grid_errors(folds, data.task, strategy.grid);
            const std::size_t best = argmin_first(errors);
            cv_error = errors[best];
            effective = GammaStrategy::fixed(strategy.grid.values()[best]);
          } else {
            double total = 0.0;
            for (const auto& fold : folds) total += fold_error(strategy, fold, data.task, protocol.fold_seed());
            cv_error = total / static_cast<double>(folds.size());
          }
          const TrainedModel model = train_on_hidden(projection, Activation::Sigmoid, h, f, split.train_t, data.task,
                                                     effective, protocol.fold_seed());
          t_error = test_error(split, model);
        } catch (const Error& e) {
          add_note(report.warnings, data.id + "/" + strategy.name() + "/M=" + std::to_string(m) + ": " + e.what());
        }
        test[s][k].push_back(t_error);
        validation[s][k].push_back(cv_error);
      }
    }
    ++completed;
  }
  require(completed > 0, ErrorKind::Numerical, "sweep ran no repetitions");

  for (std::size_t s = 0; s < ns; ++s) {
    SweepCurve curve;
    curve.dataset = data.id;
    curve.strategy = plan.strategies[s].name();
    double best_validation = std::numeric_limits<double>::infinity();
    std::size_t best_k = sizes.size();
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      SweepPoint point;
      point.hidden_units = sizes[k];
      const bool valid = std::all_of(test[s][k].begin(), test[s][k].end(), [](double v) { return std::isfinite(v); }) &&
                         std::all_of(validation[s][k].begin(), validation[s][k].end(),
                                     [](double v) { return std::isfinite(v); });
      if (valid) {
        point.test = sample_stats(test[s][k]);
        point.validation = sample_stats(validation[s][k]);
        if (point.validation.mean < best_validation) {
          best_validation = point.validation.mean;
          best_k = k;
        }
      } else {
        point.test = {kNaN, kNaN};
        point.validation = {kNaN, kNaN};
      }
      curve.points.push_back(point);
    }
    if (best_k < sizes.size()) {
      curve.best_hidden_units = sizes[best_k];
      curve.errors_at_best = test[s][best_k];
      curve.at_best = sample_stats(curve.errors_at_best);
    }
    report.sweeps.push_back(std::move(curve));
  }
  return report;
}

const GammaSweepRow& GammaSweep::marker(const std::string& kind) const {
  for (const auto& row : rows) {
    if (row.kind == kind) return row;
  }
  fail(ErrorKind::Input, "gamma sweep has no '" + kind + "' row");
}

const GammaSweepRow& GammaSweep::grid_minimum() const {
  const GammaSweepRow* best = nullptr;
  for (const auto& row : rows) {
    if (row.kind == "grid" && (best == nullptr || row.error.mean < best->error.mean)) best = &row;
  }
  require(best != nullptr, ErrorKind::Input, "gamma sweep has no grid rows");
  return *best;
}

const GammaSweepRow& GammaSweep::grid_row(double gamma) const {
  for (const auto& row : rows) {
    if (row.kind == "grid" && std::abs(row.gamma - gamma) <= 1e-9 * gamma) return row;
  }
  fail(ErrorKind::Input, "gamma sweep has no grid row at " + format_number(gamma));
}

GammaSweep sweep_gamma(const Dataset& data, Index hidden_units, const GammaGrid& grid, const Protocol& protocol) {
  require(!grid.empty(), ErrorKind::Input, "gamma grid is empty");
  require(protocol.repetitions >= 2, ErrorKind::Input, "a gamma sweep needs at least 2 repetitions");
  const PreparedSplit split = prepare_split(data, protocol);
  const std::size_t ng = grid.size();
  std::vector<std::vector<double>> errors(ng + 2);
  std::vector<std::vector<double>> conditions(ng + 2);
  std::vector<double> ocrep_gammas;
  std::vector<double> cv_gammas;

  Index completed = 0;
  for (Index r = 0; r < protocol.repetitions && !protocol.expired(); ++r) {
    const ProjectionConfig config{split.train_x.cols(), hidden_units, Activation::Sigmoid, protocol.repetition_seed(r)};
    const Mat projection = init_projection(config);
    const Mat h = hidden_output(split.train_x, projection);
    const SpectralFactorization f = factorize(h);
    const Mat test_projected = hidden_output(split.test_x, projection) * f.right;
    const Mat target_projected = f.left.transpose() * split.train_t;
    const Vec& s = f.singular_values;
    auto evaluate = [&](double gamma, std::size_t slot) {
      const Vec filter = s.array() / (s.array().square() + gamma);
      errors[slot].push_back(raw_scale_error(split, test_projected * (filter.asDiagonal() * target_projected)));
      conditions[slot].push_back(*condition_numbers(f, gamma).mu_regularized);
    };
    for (std::size_t g = 0; g < ng; ++g) evaluate(grid.values()[g], g);
    ocrep_gammas.push_back(ocrep_gamma(f));
    evaluate(ocrep_gammas.back(), ng);
    cv_gammas.push_back(cv_grid_select(h, split.train_t, data.task, grid, protocol.folds, protocol.fold_seed()));
    evaluate(cv_gammas.back(), ng + 1);
    ++completed;
  }
  require(completed >= 2, ErrorKind::Numerical, "time budget allowed fewer than 2 repetitions");

  GammaSweep sweep;
  sweep.dataset = data.id;
  sweep.hidden_units = hidden_units;
  auto row = [&](std::string kind, double gamma, std::size_t slot) {
    GammaSweepRow out;
    out.kind = std::move(kind);
    out.gamma = gamma;
    out.errors = errors[slot];
    out.error = sample_stats(errors[slot]);
    out.mu_regularized_mean = mean_of(conditions[slot]);
    return out;
  };
  for (std::size_t g = 0; g < ng; ++g) sweep.rows.push_back(row("grid", grid.values()[g], g));
  sweep.rows.push_back(row("ocrep", geometric_mean(ocrep_gammas), ng));
  sweep.rows.push_back(row("cv", geometric_mean(cv_gammas), ng + 1));
  return sweep;
}

void write_cells_csv(const ExperimentReport& report, std::ostream& out) {
  out << "dataset,strategy,hidden_units,metric,err_mean,err_std,repetitions,gamma_geomean,"
         "mu_unregularized_mean,mu_regularized_mean,status\n";
  for (const auto& c : report.cells) {
    out << c.dataset << ',' << c.strategy << ',' << c.hidden_units << ','
        << (c.task == TaskKind::Regression ? "rmse" : "misclassification_pct") << ','
        << (c.ok() ? format_number(c.stats.mean) : "") << ',' << (c.ok() ? format_number(c.stats.stddev) : "") << ','
        << c.errors.size() << ',' << format_number(geometric_mean(c.gammas)) << ','
        << format_number(mean_of(c.mu_unregularized)) << ',' << format_number(mean_of(c.mu_regularized)) << ','
        << (c.ok() ? "ok" : "failed") << '\n';
  }
}

void write_ratios_csv(const ExperimentReport& report, std::ostream& out) {
  out << "dataset,hidden_units,ratio_unreg,ratio_cv\n";
  for (const auto& r : report.ratios) {
    out << r.dataset << ',' << r.hidden_units << ',' << format_optional(r.ratio_unreg) << ','
        << format_optional(r.ratio_cv) << '\n';
  }
}

void write_significance_csv(const ExperimentReport& report, std::ostream& out) {
  out << "dataset,hidden_units,strategy_a,strategy_b,verdict\n";
  for (const auto& s : report.significance) {
    out << s.dataset << ',' << s.hidden_units << ',' << s.strategy_a << ',' << s.strategy_b << ','
        << to_string(s.verdict) << '\n';
  }
}

void write_sweep_csv(const ExperimentReport& report, std::ostream& out) {
  out << "dataset,strategy,hidden_units,test_mean,test_std,validation_mean,validation_std,best_hidden_units\n";
  for (const auto& curve : report.sweeps) {
    for (const auto& p : curve.points) {
      out << curve.dataset << ',' << curve.strategy << ',' << p.hidden_units << ',' << format_number(p.test.mean)
          << ',' << format_number(p.test.stddev) << ',' << format_number(p.validation.mean) << ','
          << format_number(p.validation.stddev) << ',' << curve.best_hidden_units << '\n';
    }
  }
}

void write_gamma_sweep_csv(const GammaSweep& sweep, std::ostream& out) {
  out << "dataset,hidden_units,kind,gamma,err_mean,err_std,mu_regularized_mean\n";
  for (const auto& row : sweep.rows) {
    out << sweep.dataset << ',' << sweep.hidden_units << ',' << row.kind << ',' << format_number(row.gamma) << ','
        << format_number(row.error.mean) << ',' << format_number(row.error.stddev) << ','
        << format_number(row.mu_regularized_mean) << '\n';
  }
}

nlohmann::json to_json(const ExperimentReport& report) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : report.cells) {
    cells.push_back({
        {"dataset", c.dataset},
        {"strategy", c.strategy},
        {"hidden_units", c.hidden_units},
        {"metric", c.task == TaskKind::Regression ? "rmse" : "misclassification_pct"},
        {"err_mean", c.ok() ? number_or_null(c.stats.mean) : nlohmann::json(nullptr)},
        {"err_std", c.ok() ? number_or_null(c.stats.stddev) : nlohmann::json(nullptr)},
        {"errors", c.errors},
        {"gamma_geomean", number_or_null(geometric_mean(c.gammas))},
        {"mu_unregularized_mean", number_or_null(mean_of(c.mu_unregularized))},
        {"mu_regularized_mean", number_or_null(mean_of(c.mu_regularized))},
        {"notes", c.notes},
        {"failure", c.failure ? nlohmann::json(*c.failure) : nlohmann::json(nullptr)},
    });
  }
  nlohmann::json significance = nlohmann::json::array();
  for (const auto& s : report.significance) {
    significance.push_back({{"dataset", s.dataset},
                            {"hidden_units", s.hidden_units},
                            {"strategy_a", s.strategy_a},
                            {"strategy_b", s.strategy_b},
                            {"verdict", to_string(s.verdict)}});
  }
  nlohmann::json ratios = nlohmann::json::array();
  for (const auto& r : report.ratios) {
    ratios.push_back({{"dataset", r.dataset},
                      {"hidden_units", r.hidden_units},
                      {"ratio_unreg", r.ratio_unreg ? nlohmann::json(*r.ratio_unreg) : nlohmann::json(nullptr)},
                      {"ratio_cv", r.ratio_cv ? nlohmann::json(*r.ratio_cv) : nlohmann::json(nullptr)}});
  }
  nlohmann::json sweeps = nlohmann::json::array();
  for (const auto& curve : report.sweeps) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : curve.points) {
      points.push_back({{"hidden_units", p.hidden_units},
                        {"test_mean", number_or_null(p.test.mean)},
                        {"test_std", number_or_null(p.test.stddev)},
                        {"validation_mean", number_or_null(p.validation.mean)},
                        {"validation_std", number_or_null(p.validation.stddev)}});
    }
    sweeps.push_back({{"dataset", curve.dataset},
                      {"strategy", curve.strategy},
                      {"best_hidden_units", curve.best_hidden_units},
                      {"err_mean", number_or_null(curve.at_best.mean)},
                      {"err_std", number_or_null(curve.at_best.stddev)},
                      {"points", std::move(points)}});
  }
  return {{"cells", std::move(cells)},   {"significance", std::move(significance)},
          {"ratios", std::move(ratios)}, {"sweeps", std::move(sweeps)},
          {"skipped", report.skipped},   {"warnings", report.warnings}};
}

nlohmann::json to_json(const GammaSweep& sweep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : sweep.rows) {
    rows.push_back({{"kind", row.kind},
                    {"gamma", number_or_null(row.gamma)},
                    {"err_mean", number_or_null(row.error.mean)},
                    {"err_std", number_or_null(row.error.stddev)},
                    {"mu_regularized_mean", number_or_null(row.mu_regularized_mean)}});
  }
  return {{"dataset", sweep.dataset}, {"hidden_units", sweep.hidden_units}, {"rows", std::move(rows)}};
}

std::string report_schema() {
  return R"(cells.csv       dataset,strategy,hidden_units,metric,err_mean,err_std,repetitions,gamma_geomean,mu_unregularized_mean,mu_regularized_mean,status
                metric is rmse (regression, raw target units) or misclassification_pct (0-100).
                gamma_geomean is the geometric mean of the per-repetition gamma (empty for unreg).
ratios.csv      dataset,hidden_units,ratio_unreg,ratio_cv
                ratio_unreg = mean mu(H^reg at OCReP gamma) / mean mu(H^+);
                ratio_cv    = mean mu(H^reg at OCReP gamma) / mean mu(H^reg at CV gamma).
significance    dataset,hidden_units,strategy_a,strategy_b,verdict   (JSON report and significance.csv)
                verdict in {a_better, b_better, indistinguishable}; two-sided t-test at 99%.
sweep.csv       dataset,strategy,hidden_units,test_mean,test_std,validation_mean,validation_std,best_hidden_units
                one row per (strategy, M); best_hidden_units is the argmin of validation_mean.
gamma.csv       dataset,hidden_units,kind,gamma,err_mean,err_std,mu_regularized_mean
                kind is grid, ocrep or cv; marker gammas are geometric means over repetitions.
)";
}

}  // namespace ocrep
