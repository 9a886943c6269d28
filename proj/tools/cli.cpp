#include "cli.hpp"

#include "ocrep/error.hpp"
#include "ocrep/experiment.hpp"
#include "ocrep/network.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace ocrep::cli {

namespace {

namespace fs = std::filesystem;

struct Config {
  std::string data;
  std::string registry;
  std::string task;
  std::string target;
  std::string strategy = "ocrep";
  std::optional<double> gamma;
  std::string grid = "decades";
  Index folds = 3;
  std::vector<Index> hidden;
  std::string hidden_range;
  std::uint64_t seed = 0;
  Index reps = 50;
  std::string out;
  std::string format = "csv";
  std::string feature_norm = "minmax";
  std::string target_norm = "none";
  bool gcv_raw_lambda = false;
  bool errors_json = false;
  std::optional<double> max_minutes;
  bool pooled_ttest = false;
  std::string datasets;
  std::string strategies = "ocrep,cv";
  std::string model;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

double parse_double(const std::string& text) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  require(ec == std::errc() && end == text.data() + text.size(), ErrorKind::Input, "not a number: '" + text + "'");
  return v;
}

Index parse_index(const std::string& text) {
  Index v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  require(ec == std::errc() && end == text.data() + text.size(), ErrorKind::Input, "not an integer: '" + text + "'");
  return v;
}

GammaGrid parse_grid(const std::string& text) {
  if (text == "decades" || text == "elm") return GammaGrid::preset(text);
  std::vector<double> values;
  for (const auto& item : split_list(text)) values.push_back(parse_double(item));
  require(!values.empty(), ErrorKind::Input, "empty gamma grid");
  return GammaGrid(std::move(values));
}

GammaStrategy build_strategy(const std::string& name, const Config& cfg) {
  GammaStrategy s = parse_strategy(name);
  if (s.kind == StrategyKind::FixedValue) {
    require(cfg.gamma.has_value(), ErrorKind::Input, "strategy 'fixed' needs --gamma");
    s = GammaStrategy::fixed(*cfg.gamma);
  }
  s.grid = parse_grid(cfg.grid);
  s.folds = cfg.folds;
  s.gcv_raw_lambda = cfg.gcv_raw_lambda;
  return s;
}

std::vector<GammaStrategy> build_strategies(const Config& cfg) {
  std::vector<GammaStrategy> out;
  for (const auto& name : split_list(cfg.strategies)) out.push_back(build_strategy(name, cfg));
  require(!out.empty(), ErrorKind::Input, "no strategies given");
  return out;
}

fs::path registry_path(const Config& cfg) { return cfg.registry.empty() ? default_registry_path() : fs::path(cfg.registry); }

/// A registry id, a registered file name, or any CSV path.
DatasetSpec resolve_dataset(const std::string& ref, const Config& cfg) {
  require(!ref.empty(), ErrorKind::Input, "--data is required");
  Registry registry;
  if (fs::exists(registry_path(cfg))) registry = load_registry(registry_path(cfg));
  if (auto it = registry.find(ref); it != registry.end()) return it->second;

  fs::path path = ref;
  if (!fs::exists(path) && fs::exists(data_dir() / path)) path = data_dir() / path;
  require(fs::exists(path), ErrorKind::Input, "no dataset '" + ref + "' (not a registry id or an existing file)");

  for (const auto& [id, spec] : registry) {
    if (spec.path.filename() == path.filename() && cfg.task.empty() && cfg.target.empty()) {
      DatasetSpec found = spec;
      found.path = path;
      return found;
    }
  }
  DatasetSpec spec;
  spec.id = path.stem().string();
  spec.path = path;
  spec.task = cfg.task.empty() ? TaskKind::Regression : parse_task(cfg.task);
  if (!cfg.target.empty()) spec.target_columns = split_list(cfg.target);
  return spec;
}

Dataset load_dataset(const std::string& ref, const Config& cfg) {
  DatasetSpec spec = resolve_dataset(ref, cfg);
  if (!cfg.task.empty()) spec.task = parse_task(cfg.task);
  if (!cfg.target.empty()) spec.target_columns = split_list(cfg.target);
  require(fs::exists(spec.path), ErrorKind::Input, "dataset file not found: " + spec.path.string());
  return load_csv(spec);
}

Protocol build_protocol(const Config& cfg) {
  Protocol p;
  p.repetitions = cfg.reps;
  p.folds = cfg.folds;
  p.base_seed = cfg.seed;
  p.feature_scaling = parse_feature_scaling(cfg.feature_norm);
  p.target_scaling = parse_target_scaling(cfg.target_norm);
  p.pooled_ttest = cfg.pooled_ttest;
  if (cfg.max_minutes) {
    require(*cfg.max_minutes > 0.0, ErrorKind::Input, "--max-minutes must be positive");
    p.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double, std::ratio<60>>(*cfg.max_minutes));
  }
  return p;
}

void write_output(const Config& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty() || cfg.out == "-") {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  require(static_cast<bool>(file), ErrorKind::Input, "cannot write " + cfg.out);
  file << text;
}

std::string number(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

const char* metric_name(TaskKind task) { return task == TaskKind::Regression ? "rmse" : "misclassification_pct"; }

int cmd_train(const Config& cfg, std::ostream& out) {
  const std::vector<GammaStrategy> strategy{build_strategy(cfg.strategy, cfg)};
  require(cfg.hidden.size() == 1, ErrorKind::Input, "train needs exactly one --hidden value");
  const Dataset data = load_dataset(cfg.data, cfg);
  if (strategy.front().single_output_only() && (data.task != TaskKind::Regression || data.output_dim() != 1)) {
    fail(ErrorKind::UnsupportedStrategy, "strategy '" + strategy.front().name() + "' requires single-output regression");
  }
  const Protocol protocol = build_protocol(cfg);
  const PreparedSplit split = prepare_split(data, protocol);
  const ProjectionConfig config{data.input_dim(), cfg.hidden.front(), Activation::Sigmoid, cfg.seed};
  ModelDocument doc;
  doc.model = train(split.train_x, split.train_t, data.task, config, strategy.front(), {protocol.fold_seed()});
  doc.task = data.task;
  doc.feature_names = data.feature_names;
  doc.classes = data.classes;
  doc.feature_normalizer = split.feature_normalizer;
  doc.target_normalizer = split.target_normalizer;
  doc.seed = cfg.seed;

  Mat train_pred = predict(doc.model, split.train_x);
  Mat train_t = split.train_t;
  if (split.target_normalizer) {
    train_pred = split.target_normalizer->invert(train_pred);
    train_t = split.target_normalizer->invert(train_t);
  }
  const double train_err = task_error(data.task, train_pred, train_t);
  const double test_err = test_error(split, doc.model);

  const fs::path model_path = cfg.out.empty() ? fs::path("model.json") : fs::path(cfg.out);
  std::ofstream file(model_path, std::ios::binary);
  require(static_cast<bool>(file), ErrorKind::Input, "cannot write " + model_path.string());
  file << to_json(doc).dump(2) << '\n';

  const ConditioningRecord& c = doc.model.conditioning;
  out << "model=" << model_path.string() << " strategy=" << doc.model.strategy
      << " gamma=" << (doc.model.gamma ? number(*doc.model.gamma) : std::string("unregularized"))
      << " mu_H=" << number(c.mu_unregularized)
      << " mu_Hreg=" << (c.mu_regularized ? number(*c.mu_regularized) : std::string("-"))
      << " metric=" << metric_name(data.task) << " train_err=" << number(train_err) << " test_err=" << number(test_err)
      << '\n';
  for (const auto& note : doc.model.notes) out << "note: " << note << '\n';
  return kOk;
}

int cmd_predict(const Config& cfg, std::ostream& out) {
  require(!cfg.model.empty(), ErrorKind::Input, "--model is required");
  std::ifstream in(cfg.model);
  require(static_cast<bool>(in), ErrorKind::Input, "cannot read " + cfg.model);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Input, std::string("malformed model file: ") + e.what());
  }
  const ModelDocument doc = model_from_json(j);
  Config data_cfg = cfg;
  if (data_cfg.task.empty()) data_cfg.task = to_string(doc.task);
  const Dataset data = load_dataset(cfg.data, data_cfg);
  require(data.feature_names == doc.feature_names, ErrorKind::Input,
          "dataset columns do not match the columns the model was trained on");
  const Mat pred = predict(doc, data.features);

  std::ostringstream table;
  table << std::setprecision(10);
  if (doc.task == TaskKind::Classification) {
    table << "row,prediction\n";
    const auto codes = decode_class(pred);
    for (std::size_t i = 0; i < codes.size(); ++i) {
      const auto code = static_cast<std::size_t>(codes[i]);
      table << i << ',' << (code < doc.classes.size() ? doc.classes[code] : std::to_string(code)) << '\n';
    }
  } else {
    table << "row";
    for (Index k = 0; k < pred.cols(); ++k) table << ",prediction" << (pred.cols() > 1 ? std::to_string(k) : "");
    table << '\n';
    for (Index i = 0; i < pred.rows(); ++i) {
      table << i;
      for (Index k = 0; k < pred.cols(); ++k) table << ',' << pred(i, k);
      table << '\n';
    }
  }
  write_output(cfg, table.str(), out);
  if (!cfg.out.empty() && cfg.out != "-") {
    Mat targets = data.targets;
    if (doc.task == TaskKind::Classification && data.classes != doc.classes) {
      std::vector<std::string> labels;
      for (const Index code : data.labels) labels.push_back(data.classes[static_cast<std::size_t>(code)]);
      targets = encode_labels(labels, doc.classes).one_hot;
    }
    out << "rows=" << pred.rows() << " metric=" << metric_name(doc.task)
        << " error=" << number(task_error(doc.task, pred, targets)) << '\n';
  }
  return kOk;
}

int cmd_sweep_gamma(const Config& cfg, std::ostream& out) {
  require(cfg.hidden.size() == 1, ErrorKind::Input, "sweep-gamma needs exactly one --hidden value");
  const GammaGrid grid = parse_grid(cfg.grid);
  const Dataset data = load_dataset(cfg.data, cfg);
  const GammaSweep sweep = sweep_gamma(data, cfg.hidden.front(), grid, build_protocol(cfg));
  std::ostringstream text;
  if (cfg.format == "json") {
    text << to_json(sweep).dump(2) << '\n';
  } else {
    write_gamma_sweep_csv(sweep, text);
  }
  write_output(cfg, text.str(), out);
  return kOk;
}

struct Range {
  Index first = 1;
  Index last = 1;
  Index step = 1;
};

Range parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ':')) parts.push_back(part);
  require(parts.size() == 2 || parts.size() == 3, ErrorKind::Input, "--hidden-range must be FIRST:LAST[:STEP]");
  Range r{parse_index(parts[0]), parse_index(parts[1]), parts.size() == 3 ? parse_index(parts[2]) : 1};
  require(r.first >= 1 && r.last >= r.first && r.step >= 1, ErrorKind::Input, "invalid --hidden-range " + text);
  return r;
}

std::string render_report(const ExperimentReport& report, const Config& cfg) {
  std::ostringstream text;
  if (cfg.format == "json") {
    text << to_json(report).dump(2) << '\n';
  } else if (!report.sweeps.empty() && report.cells.empty()) {
    write_sweep_csv(report, text);
  } else {
    write_cells_csv(report, text);
  }
  return text.str();
}

void write_report_dir(const ExperimentReport& report, const fs::path& dir) {
  fs::create_directories(dir);
  auto save = [&](const char* name, auto&& writer) {
    std::ofstream file(dir / name, std::ios::binary);
    require(static_cast<bool>(file), ErrorKind::Input, "cannot write " + (dir / name).string());
    writer(file);
  };
  save("cells.csv", [&](std::ostream& o) { write_cells_csv(report, o); });
  save("significance.csv", [&](std::ostream& o) { write_significance_csv(report, o); });
  save("ratios.csv", [&](std::ostream& o) { write_ratios_csv(report, o); });
  if (!report.sweeps.empty()) save("sweep.csv", [&](std::ostream& o) { write_sweep_csv(report, o); });
  save("report.json", [&](std::ostream& o) { o << to_json(report).dump(2) << '\n'; });
}

int cmd_sweep_hidden(const Config& cfg, std::ostream& out) {
  require(!cfg.hidden_range.empty(), ErrorKind::Input, "sweep-hidden needs --hidden-range");
  const Range range = parse_range(cfg.hidden_range);
  SweepPlan plan;
  plan.strategies = build_strategies(cfg);
  plan.first = range.first;
  plan.last = range.last;
  plan.step = range.step;
  plan.protocol = build_protocol(cfg);
  const Dataset data = load_dataset(cfg.data, cfg);
  const ExperimentReport report = sweep_hidden_units(data, plan);
  write_output(cfg, render_report(report, cfg), out);
  for (const auto& curve : report.sweeps) {
    if (curve.best_hidden_units > 0 && !cfg.out.empty() && cfg.out != "-") {
      out << curve.strategy << ": M_bar=" << curve.best_hidden_units << " err=" << number(curve.at_best.mean)
          << " std=" << number(curve.at_best.stddev) << '\n';
    }
  }
  return kOk;
}

std::vector<std::string> dataset_list(const Config& cfg) {
  if (cfg.datasets.empty() || cfg.datasets == "all") return benchmark_ids();
  return split_list(cfg.datasets);
}

/// Loads every requested dataset; missing ones land in `skipped`.
std::vector<Dataset> load_many(const Config& cfg, std::vector<std::string>& skipped) {
  std::vector<Dataset> out;
  for (const auto& id : dataset_list(cfg)) {
    try {
      out.push_back(load_dataset(id, cfg));
    } catch (const Error& e) {
      skipped.push_back(id + ": " + e.what());
    }
  }
  return out;
}

int cmd_benchmark(const Config& cfg, std::ostream& out, std::ostream& err) {
  const std::vector<GammaStrategy> strategies = build_strategies(cfg);
  const Protocol protocol = build_protocol(cfg);
  std::optional<Range> range;
  if (!cfg.hidden_range.empty()) range = parse_range(cfg.hidden_range);
  ExperimentReport report;
  const std::vector<Dataset> sets = load_many(cfg, report.skipped);
  for (const auto& data : sets) {
    if (protocol.expired()) {
      report.skipped.push_back(data.id + ": time budget exhausted");
      continue;
    }
    try {
      ExperimentPlan plan{strategies, cfg.hidden.empty() ? default_hidden_units(data.id) : cfg.hidden, protocol};
      report.append(run_fixed_hidden(data, plan));
      if (range) {
        SweepPlan sweep{strategies, range->first, range->last, range->step, 5000, protocol};
        ExperimentReport swept = sweep_hidden_units(data, sweep);
        swept.warnings.clear();
        report.append(std::move(swept));
      }
    } catch (const Error& e) {
      report.skipped.push_back(data.id + ": " + e.what());
    }
  }
  if (!cfg.out.empty() && cfg.out != "-") {
    write_report_dir(report, cfg.out);
    out << "wrote " << report.cells.size() << " cells to " << cfg.out << '\n';
  } else {
    out << render_report(report, cfg);
  }
  for (const auto& s : report.skipped) err << "skipped: " << s << '\n';
  return kOk;
}

int cmd_condition_report(const Config& cfg, std::ostream& out, std::ostream& err) {
  const Protocol protocol = build_protocol(cfg);
  const GammaGrid grid = parse_grid(cfg.grid);
  std::vector<std::string> skipped;
  const std::vector<Dataset> sets = load_many(cfg, skipped);
  std::vector<ConditionRatios> rows;
  for (const auto& data : sets) {
    if (protocol.expired()) {
      skipped.push_back(data.id + ": time budget exhausted");
      continue;
    }
    const Index m = cfg.hidden.empty() ? default_hidden_units(data.id).back() : cfg.hidden.front();
    try {
      rows.push_back(condition_ratio_report(data, m, protocol, grid));
    } catch (const Error& e) {
      skipped.push_back(data.id + ": " + e.what());
    }
  }
  std::ostringstream text;
  text << std::setprecision(10);
  if (cfg.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) {
      j.push_back({{"dataset", r.dataset},
                   {"hidden_units", r.hidden_units},
                   {"reg_over_unreg", r.ratio_unreg ? nlohmann::json(*r.ratio_unreg) : nlohmann::json(nullptr)},
                   {"ocrep_over_cv", r.ratio_cv ? nlohmann::json(*r.ratio_cv) : nlohmann::json(nullptr)}});
    }
    text << nlohmann::json{{"ratios", j}, {"skipped", skipped}}.dump(2) << '\n';
  } else {
    text << "dataset,hidden_units,ratio,value\n";
    for (const auto& r : rows) {
      text << r.dataset << ',' << r.hidden_units << ",reg_over_unreg," << (r.ratio_unreg ? number(*r.ratio_unreg) : "")
           << '\n';
      text << r.dataset << ',' << r.hidden_units << ",ocrep_over_cv," << (r.ratio_cv ? number(*r.ratio_cv) : "") << '\n';
    }
  }
  write_output(cfg, text.str(), out);
  for (const auto& s : skipped) err << "skipped: " << s << '\n';
  return kOk;
}

int cmd_print_schema(std::ostream& out) {
  out << report_schema();
  out << "condition.csv   dataset,hidden_units,ratio,value   ratio in {reg_over_unreg, ocrep_over_cv}\n"
         "predictions.csv row,prediction (class label) | row,prediction[k] (regression, raw units)\n"
         "model.json      format=ocrep-model, version=1; matrices are {rows, cols, data} in row-major order;\n"
         "                gamma is a number or \"unregularized\"; projection is (L+1) x M with biases in the last row.\n";
  return kOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Numerical:
    case ErrorKind::Degenerate:
    case ErrorKind::EstimatorSingular:
      return kNumericalError;
    default:
      return kInputError;
  }
}

int report_error(const std::string& kind, const std::string& message, int code, bool as_json, std::ostream& err) {
  if (as_json) {
    err << nlohmann::json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << '\n';
  } else {
    err << "error: " << message << '\n';
  }
  return code;
}

void add_common(CLI::App* sub, Config& cfg) {
  sub->add_option("--data", cfg.data, "Registry id or CSV path");
  sub->add_option("--registry", cfg.registry, "Dataset registry JSON");
  sub->add_option("--task", cfg.task, "regression | classification (plain CSV files)");
  sub->add_option("--target", cfg.target, "Target column(s), comma separated");
  sub->add_option("--seed", cfg.seed, "Base seed");
  sub->add_option("--out", cfg.out, "Output file (directory for benchmark)");
  sub->add_option("--format", cfg.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--feature-norm", cfg.feature_norm, "minmax | zscore | none");
  sub->add_option("--target-norm", cfg.target_norm, "none | minmax");
}

void add_experiment(CLI::App* sub, Config& cfg) {
  sub->add_option("--reps", cfg.reps, "Repetitions (input-weight draws)");
  sub->add_option("--folds", cfg.folds, "Cross-validation folds");
  sub->add_option("--grid", cfg.grid, "decades | elm | comma-separated gamma values");
  sub->add_option("--gamma", cfg.gamma, "Gamma for the fixed strategy");
  sub->add_flag("--gcv-raw-lambda", cfg.gcv_raw_lambda, "Use grid values as GCV lambda directly");
  sub->add_option("--max-minutes", cfg.max_minutes, "Wall-clock budget; remaining work is skipped");
  sub->add_flag("--pooled-ttest", cfg.pooled_ttest, "Pooled-variance t-test instead of Welch");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  cfg.errors_json = std::find(args.begin(), args.end(), "--errors-json") != args.end();
  CLI::App app{"OCReP: regularized pseudoinverse training for single-hidden-layer networks", "ocrep"};
  app.require_subcommand(1);
  app.add_flag("--errors-json", cfg.errors_json, "Machine-readable errors on stderr");
  app.fallthrough();

  CLI::App* train_cmd = app.add_subcommand("train", "Train one network and save it");
  add_common(train_cmd, cfg);
  add_experiment(train_cmd, cfg);
  train_cmd->add_option("--strategy", cfg.strategy, "ocrep | fixed | cv | gcv | kibria | hoerl-kennard | unreg");
  train_cmd->add_option("--hidden", cfg.hidden, "Hidden units M")->expected(1);

  CLI::App* predict_cmd = app.add_subcommand("predict", "Apply a saved model to a dataset");
  add_common(predict_cmd, cfg);
  predict_cmd->add_option("--model", cfg.model, "Model file")->required();

  CLI::App* gamma_cmd = app.add_subcommand("sweep-gamma", "Test error as a function of gamma at fixed M");
  add_common(gamma_cmd, cfg);
  add_experiment(gamma_cmd, cfg);
  gamma_cmd->add_option("--hidden", cfg.hidden, "Hidden units M")->expected(1);

  CLI::App* hidden_cmd = app.add_subcommand("sweep-hidden", "Test and CV error as a function of M");
  add_common(hidden_cmd, cfg);
  add_experiment(hidden_cmd, cfg);
  hidden_cmd->add_option("--hidden-range", cfg.hidden_range, "FIRST:LAST[:STEP]");
  hidden_cmd->add_option("--strategies", cfg.strategies, "Comma-separated strategies");

  CLI::App* bench_cmd = app.add_subcommand("benchmark", "Fixed-M tables over registered datasets");
  add_common(bench_cmd, cfg);
  add_experiment(bench_cmd, cfg);
  bench_cmd->add_option("--datasets", cfg.datasets, "Comma-separated ids (default: all)");
  bench_cmd->add_option("--strategies", cfg.strategies, "Comma-separated strategies");
  bench_cmd->add_option("--hidden", cfg.hidden, "Override the per-dataset M list")->delimiter(',');
  bench_cmd->add_option("--hidden-range", cfg.hidden_range, "Also sweep M over FIRST:LAST[:STEP]");

  CLI::App* cond_cmd = app.add_subcommand("condition-report", "Condition-number ratios per dataset");
  add_common(cond_cmd, cfg);
  add_experiment(cond_cmd, cfg);
  cond_cmd->add_option("--datasets", cfg.datasets, "Comma-separated ids (default: all)");
  cond_cmd->add_option("--hidden", cfg.hidden, "M (default: largest listed M per dataset)")->expected(1);

  CLI::App* schema_cmd = app.add_subcommand("print-schema", "Describe output columns");

  std::ostringstream usage_out;
  std::ostringstream usage_err;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what(), kInputError, cfg.errors_json, err);
  }

  try {
    // Strategy names are checked before any data is touched.
    if (train_cmd->parsed()) {
      build_strategy(cfg.strategy, cfg);
      return cmd_train(cfg, out);
    }
    if (predict_cmd->parsed()) return cmd_predict(cfg, out);
    if (gamma_cmd->parsed()) return cmd_sweep_gamma(cfg, out);
    if (hidden_cmd->parsed()) {
      build_strategies(cfg);
      return cmd_sweep_hidden(cfg, out);
    }
    if (bench_cmd->parsed()) {
      build_strategies(cfg);
      return cmd_benchmark(cfg, out, err);
    }
    if (cond_cmd->parsed()) return cmd_condition_report(cfg, out, err);
    if (schema_cmd->parsed()) return cmd_print_schema(out);
  } catch (const Error& e) {
    return report_error(to_string(e.kind()), e.what(), exit_code_for(e.kind()), cfg.errors_json, err);
  } catch (const std::exception& e) {
    return report_error("input", e.what(), kInputError, cfg.errors_json, err);
  }
  return kInputError;
}

}  // namespace ocrep::cli
