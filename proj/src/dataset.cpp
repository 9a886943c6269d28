#include "ocrep/dataset.hpp"

#include "ocrep/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#ifndef OCREP_SOURCE_DATA_DIR
#define OCREP_SOURCE_DATA_DIR "data"
#endif

namespace ocrep {

namespace {

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  std::string_view field = text.substr(first, last - first + 1);
  if (field.size() >= 2 && field.front() == '"' && field.back() == '"') {
    field = field.substr(1, field.size() - 2);
  }
  return std::string(field);
}

std::vector<std::string> split(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string_view rest(line);
  while (true) {
    const auto pos = rest.find(delimiter);
    fields.push_back(trim(rest.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    rest.remove_prefix(pos + 1);
  }
  return fields;
}

bool is_missing(const std::string& field) { return field.empty() || field == "?" || field == "NA"; }

// std::from_chars ignores the global locale, so '.' is always the decimal point.
double parse_number(const std::string& field, std::size_t line, const std::string& column) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  if (!field.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  require(ec == std::errc() && ptr == end && std::isfinite(value), ErrorKind::Input,
          "line " + std::to_string(line) + ", column '" + column + "': not a number: '" + field + "'");
  return value;
}

Index resolve_column(const std::vector<std::string>& header, const std::string& name) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it != header.end()) return static_cast<Index>(it - header.begin());
  Index index = -1;
  const auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), index);
  require(ec == std::errc() && ptr == name.data() + name.size() && index >= 0 &&
              index < static_cast<Index>(header.size()),
          ErrorKind::Input, "unknown column '" + name + "'");
  return index;
}

}  // namespace

const char* to_string(TaskKind task) {
  return task == TaskKind::Regression ? "regression" : "classification";
}

TaskKind parse_task(const std::string& name) {
  if (name == "regression") return TaskKind::Regression;
  if (name == "classification") return TaskKind::Classification;
  fail(ErrorKind::Input, "unknown task '" + name + "' (expected regression or classification)");
}

const std::string& LabelEncoding::decode(Index code) const {
  require(code >= 0 && code < num_classes(), ErrorKind::Input,
          "class code " + std::to_string(code) + " outside label map");
  return classes[static_cast<std::size_t>(code)];
}

Index LabelEncoding::code_of(const std::string& label) const {
  const auto it = std::lower_bound(classes.begin(), classes.end(), label);
  require(it != classes.end() && *it == label, ErrorKind::Input, "unseen class label '" + label + "'");
  return static_cast<Index>(it - classes.begin());
}

LabelEncoding encode_labels(const std::vector<std::string>& labels, const std::vector<std::string>& classes) {
  LabelEncoding encoding;
  encoding.classes = classes;
  encoding.one_hot = Mat::Zero(static_cast<Index>(labels.size()), encoding.num_classes());
  encoding.codes.reserve(labels.size());
  for (std::size_t row = 0; row < labels.size(); ++row) {
    const Index code = encoding.code_of(labels[row]);
    encoding.codes.push_back(code);
    encoding.one_hot(static_cast<Index>(row), code) = 1.0;
  }
  return encoding;
}

LabelEncoding encode_labels(const std::vector<std::string>& labels) {
  const std::set<std::string> distinct(labels.begin(), labels.end());
  return encode_labels(labels, std::vector<std::string>(distinct.begin(), distinct.end()));
}

Dataset Dataset::subset(const std::vector<Index>& rows) const {
  Dataset out;
  out.id = id;
  out.task = task;
  out.feature_names = feature_names;
  out.classes = classes;
  out.features.resize(static_cast<Index>(rows.size()), features.cols());
  out.targets.resize(static_cast<Index>(rows.size()), targets.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.features.row(static_cast<Index>(i)) = features.row(rows[i]);
    out.targets.row(static_cast<Index>(i)) = targets.row(rows[i]);
    if (!labels.empty()) out.labels.push_back(labels[static_cast<std::size_t>(rows[i])]);
  }
  return out;
}

Dataset parse_csv(const DatasetSpec& spec, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_number = 0;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> records;
  std::vector<std::size_t> record_lines;

  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) continue;
    auto fields = split(line, spec.delimiter);
    if (header.empty()) {
      if (spec.has_header) {
        header = std::move(fields);
        continue;
      }
      for (std::size_t i = 0; i < fields.size(); ++i) header.push_back(std::to_string(i));
    }
    require(fields.size() == header.size(), ErrorKind::Input,
            "line " + std::to_string(line_number) + ": expected " + std::to_string(header.size()) +
                " fields, found " + std::to_string(fields.size()));
    for (std::size_t c = 0; c < fields.size(); ++c) {
      require(!is_missing(fields[c]), ErrorKind::Input,
              "line " + std::to_string(line_number) + ", row " + std::to_string(records.size()) +
                  ": missing value in column '" + header[c] + "'");
    }
    records.push_back(std::move(fields));
    record_lines.push_back(line_number);
  }
  require(!records.empty(), ErrorKind::Input, "no data rows in " + spec.id);

  std::vector<Index> target_idx;
  if (spec.target_columns.empty()) {
    target_idx.push_back(static_cast<Index>(header.size()) - 1);
  } else {
    for (const auto& name : spec.target_columns) target_idx.push_back(resolve_column(header, name));
  }
  std::vector<Index> feature_idx;
  if (spec.feature_columns.empty()) {
    for (Index c = 0; c < static_cast<Index>(header.size()); ++c) {
      if (std::find(target_idx.begin(), target_idx.end(), c) == target_idx.end()) feature_idx.push_back(c);
    }
  } else {
    for (const auto& name : spec.feature_columns) feature_idx.push_back(resolve_column(header, name));
  }
  require(!feature_idx.empty(), ErrorKind::Input, "dataset has no feature columns");
  std::set<Index> categorical;
  for (const auto& name : spec.categorical_columns) categorical.insert(resolve_column(header, name));

  const Index n = static_cast<Index>(records.size());
  Dataset data;
  data.id = spec.id;
  data.task = spec.task;

  // Expand features: numeric columns pass through, categorical ones become indicator blocks.
  std::vector<Vec> columns;
  for (const Index c : feature_idx) {
    const auto col = static_cast<std::size_t>(c);
    if (categorical.count(c)) {
      std::set<std::string> levels;
      for (const auto& r : records) levels.insert(r[col]);
      for (const auto& level : levels) {
        Vec indicator(n);
        for (Index i = 0; i < n; ++i) indicator(i) = records[static_cast<std::size_t>(i)][col] == level ? 1.0 : 0.0;
        columns.push_back(std::move(indicator));
        data.feature_names.push_back(header[col] + "=" + level);
      }
    } else {
      Vec values(n);
      for (Index i = 0; i < n; ++i) {
        const auto row = static_cast<std::size_t>(i);
        values(i) = parse_number(records[row][col], record_lines[row], header[col]);
      }
      columns.push_back(std::move(values));
      data.feature_names.push_back(header[col]);
    }
  }
  data.features.resize(n, static_cast<Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) data.features.col(static_cast<Index>(j)) = columns[j];

  if (spec.task == TaskKind::Classification) {
    require(target_idx.size() == 1, ErrorKind::Input, "classification needs exactly one label column");
    std::vector<std::string> labels;
    labels.reserve(records.size());
    for (const auto& r : records) labels.push_back(r[static_cast<std::size_t>(target_idx[0])]);
    LabelEncoding encoding = encode_labels(labels);
    require(encoding.num_classes() >= 2, ErrorKind::Input, "classification needs at least two classes");
    data.targets = std::move(encoding.one_hot);
    data.classes = std::move(encoding.classes);
    data.labels = std::move(encoding.codes);
  } else {
    data.targets.resize(n, static_cast<Index>(target_idx.size()));
    for (Index i = 0; i < n; ++i) {
      const auto row = static_cast<std::size_t>(i);
      for (std::size_t j = 0; j < target_idx.size(); ++j) {
        const auto col = static_cast<std::size_t>(target_idx[j]);
        data.targets(i, static_cast<Index>(j)) = parse_number(records[row][col], record_lines[row], header[col]);
      }
    }
  }

  auto check = [&](const char* what, std::optional<Index> expected, Index actual) {
    if (expected && *expected != actual) {
      data.warnings.push_back(spec.id + ": expected " + std::to_string(*expected) + " " + what + ", found " +
                              std::to_string(actual));
    }
  };
  check("rows", spec.expected_rows, n);
  check("attributes", spec.expected_attributes, static_cast<Index>(feature_idx.size()));
  if (spec.task == TaskKind::Classification) {
    check("classes", spec.expected_classes, static_cast<Index>(data.classes.size()));
  }
  return data;
}

Dataset load_csv(const DatasetSpec& spec) {
  std::ifstream in(spec.path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::Input, "cannot open dataset file " + spec.path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(spec, buffer.str());
}

Registry load_registry(const std::filesystem::path& file) {
  std::ifstream in(file);
  require(static_cast<bool>(in), ErrorKind::Input, "cannot open registry " + file.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Input, "registry " + file.string() + ": " + e.what());
  }
  Registry registry;
  const auto root = file.parent_path();
  try {
    for (const auto& entry : doc.at("datasets")) {
      DatasetSpec spec;
      spec.id = entry.at("id").get<std::string>();
      spec.path = root / entry.at("file").get<std::string>();
      spec.task = parse_task(entry.at("task").get<std::string>());
      if (entry.contains("delimiter")) {
        const auto d = entry["delimiter"].get<std::string>();
        require(d.size() == 1, ErrorKind::Input, "delimiter must be one character");
        spec.delimiter = d[0];
      }
      spec.has_header = entry.value("header", true);
      spec.feature_columns = entry.value("features", std::vector<std::string>{});
      spec.target_columns = entry.value("targets", std::vector<std::string>{});
      spec.categorical_columns = entry.value("categorical", std::vector<std::string>{});
      if (entry.contains("expected")) {
        const auto& e = entry["expected"];
        if (e.contains("rows")) spec.expected_rows = e["rows"].get<Index>();
        if (e.contains("attributes")) spec.expected_attributes = e["attributes"].get<Index>();
        if (e.contains("classes")) spec.expected_classes = e["classes"].get<Index>();
      }
      registry.emplace(spec.id, std::move(spec));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Input, "registry " + file.string() + ": " + e.what());
  }
  return registry;
}

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("OCREP_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return OCREP_SOURCE_DATA_DIR;
}

std::filesystem::path default_registry_path() { return data_dir() / "registry.json"; }

const std::vector<std::string>& benchmark_ids() {
  static const std::vector<std::string> ids = {"abalone", "machine_cpu", "delta_ailerons", "housing",
                                               "iris",    "diabetes",    "wine",           "segment"};
  return ids;
}

const char* to_string(FeatureScaling scaling) {
  switch (scaling) {
    case FeatureScaling::MinMax: return "minmax";
    case FeatureScaling::ZScore: return "zscore";
    case FeatureScaling::None: return "none";
  }
  return "none";
}

const char* to_string(TargetScaling scaling) { return scaling == TargetScaling::MinMax ? "minmax" : "none"; }

FeatureScaling parse_feature_scaling(const std::string& name) {
  if (name == "minmax") return FeatureScaling::MinMax;
  if (name == "zscore") return FeatureScaling::ZScore;
  if (name == "none") return FeatureScaling::None;
  fail(ErrorKind::Input, "unknown feature normalization '" + name + "' (minmax, zscore, none)");
}

TargetScaling parse_target_scaling(const std::string& name) {
  if (name == "none") return TargetScaling::None;
  if (name == "minmax") return TargetScaling::MinMax;
  fail(ErrorKind::Input, "unknown target normalization '" + name + "' (none, minmax)");
}

Normalizer Normalizer::fit_min_max(const Mat& train) {
  require(train.rows() > 0, ErrorKind::Input, "cannot fit a normalizer on zero rows");
  const Vec lo = train.colwise().minCoeff();
  const Vec hi = train.colwise().maxCoeff();
  Vec offset = (lo + hi) / 2.0;
  Vec scale(train.cols());
  for (Index j = 0; j < train.cols(); ++j) scale(j) = hi(j) > lo(j) ? 2.0 / (hi(j) - lo(j)) : 0.0;
  return {std::move(offset), std::move(scale)};
}

Normalizer Normalizer::fit_z_score(const Mat& train) {
  require(train.rows() > 1, ErrorKind::Input, "z-score needs at least two rows");
  Vec mean = train.colwise().mean();
  Vec scale(train.cols());
  for (Index j = 0; j < train.cols(); ++j) {
    const double ss = (train.col(j).array() - mean(j)).square().sum();
    const double sd = std::sqrt(ss / static_cast<double>(train.rows() - 1));
    scale(j) = sd > 0.0 ? 1.0 / sd : 0.0;
  }
  return {std::move(mean), std::move(scale)};
}

Normalizer Normalizer::identity(Index columns) { return {Vec::Zero(columns), Vec::Ones(columns)}; }

Normalizer Normalizer::fit(const Mat& train, FeatureScaling scaling) {
  switch (scaling) {
    case FeatureScaling::MinMax: return fit_min_max(train);
    case FeatureScaling::ZScore: return fit_z_score(train);
    case FeatureScaling::None: return identity(train.cols());
  }
  return identity(train.cols());
}

Mat Normalizer::apply(const Mat& x) const {
  require(x.cols() == columns(), ErrorKind::Input,
          "normalizer fitted on " + std::to_string(columns()) + " columns, got " + std::to_string(x.cols()));
  return (x.rowwise() - offset_.transpose()).array().rowwise() * scale_.transpose().array();
}

Mat Normalizer::invert(const Mat& x) const {
  require(x.cols() == columns(), ErrorKind::Input, "normalizer column mismatch");
  Mat out(x.rows(), x.cols());
  for (Index j = 0; j < x.cols(); ++j) {
    if (scale_(j) == 0.0) {
      out.col(j).setConstant(offset_(j));
    } else {
      out.col(j) = x.col(j).array() / scale_(j) + offset_(j);
    }
  }
  return out;
}

}  // namespace ocrep
