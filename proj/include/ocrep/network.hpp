#pragma once

#include "ocrep/dataset.hpp"
#include "ocrep/gamma.hpp"
#include "ocrep/projection.hpp"
#include "ocrep/spectral.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace ocrep {

/// A trained single-hidden-layer network. Immutable after train().
struct TrainedModel {
  Mat projection;  // (L + 1) x M, last row = biases
  Activation activation = Activation::Sigmoid;
  Mat output_weights;  // M x Q
  std::optional<double> gamma;  // empty: unregularized
  ConditioningRecord conditioning;
  std::string strategy;
  std::vector<std::string> notes;

  Index input_dim() const { return projection.rows() - 1; }
  Index hidden_units() const { return projection.cols(); }
  Index output_dim() const { return output_weights.cols(); }
};

struct TrainOptions {
  // Seed for cross-validation folds; the projection seed when unset.
  std::optional<std::uint64_t> fold_seed;
};

TrainedModel train(const Mat& x, const Mat& t, TaskKind task, const ProjectionConfig& config,
                   const GammaStrategy& strategy, const TrainOptions& options = {});

/// Trains from an already computed hidden layer H = hidden_output(X, projection)
/// and its factorization, so several strategies can share one SVD.
TrainedModel train_on_hidden(const Mat& projection, Activation activation, const Mat& h,
                             const SpectralFactorization& f, const Mat& t, TaskKind task,
                             const GammaStrategy& strategy, std::uint64_t fold_seed);

Mat predict(const TrainedModel& model, const Mat& x);

/// A model plus the preprocessing needed to run it on raw rows.
struct ModelDocument {
  TrainedModel model;
  TaskKind task = TaskKind::Regression;
  std::vector<std::string> feature_names;
  std::vector<std::string> classes;
  Normalizer feature_normalizer;
  std::optional<Normalizer> target_normalizer;
  std::uint64_t seed = 0;
};

inline constexpr int kModelFormatVersion = 1;

nlohmann::json to_json(const ModelDocument& doc);
ModelDocument model_from_json(const nlohmann::json& doc);

/// Raw features in, raw-scale outputs out (targets de-normalized when needed).
Mat predict(const ModelDocument& doc, const Mat& raw_features);

}  // namespace ocrep
