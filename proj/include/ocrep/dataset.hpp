#pragma once

#include "ocrep/spectral.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ocrep {

enum class TaskKind { Regression, Classification };

const char* to_string(TaskKind task);
TaskKind parse_task(const std::string& name);

/// Lexicographically ordered class labels and the one-hot matrix built from them.
struct LabelEncoding {
  std::vector<std::string> classes;
  std::vector<Index> codes;  // zero-based column per row
  Mat one_hot;               // N x Q, 1 hot / 0 cold

  Index num_classes() const { return static_cast<Index>(classes.size()); }
  const std::string& decode(Index code) const;
  Index code_of(const std::string& label) const;  // throws on unseen label
};

LabelEncoding encode_labels(const std::vector<std::string>& labels);

/// Re-encodes `labels` against an existing class list (test rows, predict time).
LabelEncoding encode_labels(const std::vector<std::string>& labels, const std::vector<std::string>& classes);

struct Dataset {
  std::string id;
  TaskKind task = TaskKind::Regression;
  Mat features;  // N x L
  Mat targets;   // N x Q; one-hot for classification
  std::vector<std::string> feature_names;
  std::vector<std::string> classes;  // classification only
  std::vector<Index> labels;         // classification only, column of the hot entry
  std::vector<std::string> warnings;

  Index rows() const { return features.rows(); }
  Index input_dim() const { return features.cols(); }
  Index output_dim() const { return targets.cols(); }

  Dataset subset(const std::vector<Index>& rows) const;
};

/// Where a dataset lives and how to read it.
struct DatasetSpec {
  std::string id;
  std::filesystem::path path;
  TaskKind task = TaskKind::Regression;
  char delimiter = ',';
  bool has_header = true;
  std::vector<std::string> feature_columns;  // empty: every column but the targets
  std::vector<std::string> target_columns;   // empty: last column
  std::vector<std::string> categorical_columns;
  std::optional<Index> expected_rows;
  std::optional<Index> expected_attributes;
  std::optional<Index> expected_classes;
};

/// Parses a delimiter-separated file. Header names are used to resolve columns;
/// without a header columns are addressed by zero-based index ("0", "1", ...).
/// Categorical feature columns expand into one-hot indicator columns.
Dataset load_csv(const DatasetSpec& spec);

/// Same as load_csv but reads from an in-memory buffer (tests, stdin).
Dataset parse_csv(const DatasetSpec& spec, const std::string& text);

using Registry = std::map<std::string, DatasetSpec>;

/// Loads a JSON registry; relative csv paths resolve against the registry's directory.
Registry load_registry(const std::filesystem::path& file);

/// OCREP_DATA_DIR if set, otherwise the data directory shipped with the sources.
std::filesystem::path data_dir();
std::filesystem::path default_registry_path();

/// The eight benchmark ids in the order used by the result tables.
const std::vector<std::string>& benchmark_ids();

enum class FeatureScaling { MinMax, ZScore, None };
enum class TargetScaling { None, MinMax };

const char* to_string(FeatureScaling scaling);
const char* to_string(TargetScaling scaling);
FeatureScaling parse_feature_scaling(const std::string& name);
TargetScaling parse_target_scaling(const std::string& name);

/// Per-column affine map x' = (x - offset) * scale fitted on training rows only.
class Normalizer {
 public:
  Normalizer() = default;
  Normalizer(Vec offset, Vec scale) : offset_(std::move(offset)), scale_(std::move(scale)) {}

  /// Min-max maps [min, max] onto [-1, 1]; constant columns map to 0.
  static Normalizer fit_min_max(const Mat& train);
  /// Mean / sample standard deviation (n - 1); constant columns map to 0.
  static Normalizer fit_z_score(const Mat& train);
  static Normalizer identity(Index columns);
  static Normalizer fit(const Mat& train, FeatureScaling scaling);

  Mat apply(const Mat& x) const;
  Mat invert(const Mat& x) const;

  const Vec& offset() const { return offset_; }
  const Vec& scale() const { return scale_; }
  Index columns() const { return offset_.size(); }

 private:
  Vec offset_;
  Vec scale_;
};

}  // namespace ocrep
