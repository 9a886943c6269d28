#include "ocrep/network.hpp"

#include "ocrep/error.hpp"

#include <cmath>

namespace ocrep {

TrainedModel train_on_hidden(const Mat& projection, Activation activation, const Mat& h,
                             const SpectralFactorization& f, const Mat& t, TaskKind task,
                             const GammaStrategy& strategy, std::uint64_t fold_seed) {
  require(t.rows() == h.rows(), ErrorKind::Input,
          "targets have " + std::to_string(t.rows()) + " rows, inputs have " + std::to_string(h.rows()));
  require(t.cols() >= 1, ErrorKind::Input, "targets have no columns");
  require(t.allFinite(), ErrorKind::Input, "targets contain non-finite values");

  const GammaChoice choice = resolve_gamma(strategy, f, h, t, task, fold_seed);

  TrainedModel model;
  model.projection = projection;
  model.activation = activation;
  model.strategy = strategy.name();
  model.notes = choice.notes;
  model.gamma = choice.gamma;
  if (choice.gamma) {
    model.output_weights = regularized_apply(f, *choice.gamma, t);
    model.conditioning = condition_numbers(f, *choice.gamma, choice.threshold);
  } else {
    model.output_weights = pseudoinverse_apply(f, choice.threshold, t);
    model.conditioning = unregularized_conditioning(f, choice.threshold);
  }
  require(model.output_weights.allFinite(), ErrorKind::Numerical, "output weights are not finite");
  return model;
}

TrainedModel train(const Mat& x, const Mat& t, TaskKind task, const ProjectionConfig& config,
                   const GammaStrategy& strategy, const TrainOptions& options) {
  require(x.cols() == config.input_dim, ErrorKind::Input,
          "config expects " + std::to_string(config.input_dim) + " inputs, data has " + std::to_string(x.cols()));
  require(x.rows() == t.rows(), ErrorKind::Input, "inputs and targets differ in row count");
  const Mat projection = init_projection(config);
  const Mat h = hidden_output(x, projection, config.activation);
  const SpectralFactorization f = factorize(h);
  return train_on_hidden(projection, config.activation, h, f, t, task, strategy,
                         options.fold_seed.value_or(config.seed));
}

Mat predict(const TrainedModel& model, const Mat& x) {
  require(x.cols() == model.input_dim(), ErrorKind::Input,
          "model expects " + std::to_string(model.input_dim()) + " inputs, got " + std::to_string(x.cols()));
  return hidden_output(x, model.projection, model.activation) * model.output_weights;
}

Mat predict(const ModelDocument& doc, const Mat& raw_features) {
  Mat out = predict(doc.model, doc.feature_normalizer.apply(raw_features));
  if (doc.target_normalizer) out = doc.target_normalizer->invert(out);
  return out;
}

namespace {

nlohmann::json matrix_to_json(const Mat& m) {
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(m.size()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Mat matrix_from_json(const nlohmann::json& j) {
  const auto rows = j.at("rows").get<Index>();
  const auto cols = j.at("cols").get<Index>();
  const auto data = j.at("data").get<std::vector<double>>();
  require(rows >= 0 && cols >= 0 && static_cast<Index>(data.size()) == rows * cols, ErrorKind::Input,
          "matrix payload does not match its shape");
  Mat m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index k = 0; k < cols; ++k) m(i, k) = data[static_cast<std::size_t>(i * cols + k)];
  }
  return m;
}

nlohmann::json vector_to_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Vec vector_from_json(const nlohmann::json& j) {
  const auto data = j.get<std::vector<double>>();
  return Eigen::Map<const Vec>(data.data(), static_cast<Index>(data.size()));
}

nlohmann::json normalizer_to_json(const Normalizer& n) {
  return {{"offset", vector_to_json(n.offset())}, {"scale", vector_to_json(n.scale())}};
}

Normalizer normalizer_from_json(const nlohmann::json& j) {
  return Normalizer(vector_from_json(j.at("offset")), vector_from_json(j.at("scale")));
}

nlohmann::json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<double> optional_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

}  // namespace

nlohmann::json to_json(const ModelDocument& doc) {
  const TrainedModel& m = doc.model;
  const ConditioningRecord& c = m.conditioning;
  nlohmann::json conditioning = {
      {"mu_unregularized", c.mu_unregularized},
      {"mu_regularized", optional_number(c.mu_regularized)},
      {"gamma_used", optional_number(c.gamma_used)},
      {"sigma_at_dmax", optional_number(c.sigma_at_dmax)},
      {"rank", c.rank},
      {"full_rank", c.full_rank},
  };
  nlohmann::json j = {
      {"format", "ocrep-model"},
      {"version", kModelFormatVersion},
      {"task", to_string(doc.task)},
      {"seed", doc.seed},
      {"strategy", m.strategy},
      {"gamma", m.gamma ? nlohmann::json(*m.gamma) : nlohmann::json("unregularized")},
      {"activation", to_string(m.activation)},
      {"input_dim", m.input_dim()},
      {"hidden_units", m.hidden_units()},
      {"output_dim", m.output_dim()},
      {"projection", matrix_to_json(m.projection)},
      {"output_weights", matrix_to_json(m.output_weights)},
      {"conditioning", std::move(conditioning)},
      {"feature_names", doc.feature_names},
      {"classes", doc.classes},
      {"feature_normalizer", normalizer_to_json(doc.feature_normalizer)},
      {"target_normalizer",
       doc.target_normalizer ? normalizer_to_json(*doc.target_normalizer) : nlohmann::json(nullptr)},
      {"notes", m.notes},
  };
  return j;
}

ModelDocument model_from_json(const nlohmann::json& j) {
  ModelDocument doc;
  try {
    require(j.at("format").get<std::string>() == "ocrep-model", ErrorKind::Input, "not an ocrep model file");
    const int version = j.at("version").get<int>();
    require(version == kModelFormatVersion, ErrorKind::Input,
            "unsupported model format version " + std::to_string(version));
    doc.task = parse_task(j.at("task").get<std::string>());
    doc.seed = j.value("seed", std::uint64_t{0});
    TrainedModel& m = doc.model;
    m.strategy = j.at("strategy").get<std::string>();
    const auto& gamma = j.at("gamma");
    if (gamma.is_number()) m.gamma = gamma.get<double>();
    m.activation = parse_activation(j.at("activation").get<std::string>());
    m.projection = matrix_from_json(j.at("projection"));
    m.output_weights = matrix_from_json(j.at("output_weights"));
    require(m.output_weights.rows() == m.projection.cols(), ErrorKind::Input,
            "output weight rows do not match hidden units");
    const auto& c = j.at("conditioning");
    m.conditioning.mu_unregularized = c.at("mu_unregularized").get<double>();
    m.conditioning.mu_regularized = optional_number(c, "mu_regularized");
    m.conditioning.gamma_used = optional_number(c, "gamma_used");
    m.conditioning.sigma_at_dmax = optional_number(c, "sigma_at_dmax");
    m.conditioning.rank = c.at("rank").get<Index>();
    m.conditioning.full_rank = c.at("full_rank").get<Index>();
    m.notes = j.value("notes", std::vector<std::string>{});
    doc.feature_names = j.value("feature_names", std::vector<std::string>{});
    doc.classes = j.value("classes", std::vector<std::string>{});
    doc.feature_normalizer = normalizer_from_json(j.at("feature_normalizer"));
    require(doc.feature_normalizer.columns() == m.input_dim(), ErrorKind::Input,
            "feature normalizer width does not match model inputs");
    if (!j.at("target_normalizer").is_null()) doc.target_normalizer = normalizer_from_json(j.at("target_normalizer"));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Input, std::string("malformed model file: ") + e.what());
  }
  return doc;
}

}  // namespace ocrep
