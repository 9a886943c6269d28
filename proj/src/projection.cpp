#include "ocrep/projection.hpp"

#include "ocrep/error.hpp"
#include "ocrep/random.hpp"

namespace ocrep {

const char* to_string(Activation) { return "sigmoid"; }

Activation parse_activation(const std::string& name) {
  require(name == "sigmoid", ErrorKind::Input, "unknown activation '" + name + "'");
  return Activation::Sigmoid;
}

Mat init_projection(const ProjectionConfig& config) {
  require(config.input_dim >= 1 && config.hidden_units >= 1, ErrorKind::Input,
          "projection needs at least one input and one hidden unit");
  Rng rng(config.seed);
  Mat c(config.input_dim + 1, config.hidden_units);
  // Column-major fill: unit j's weights then bias, so growing M keeps earlier units.
  for (Index j = 0; j < c.cols(); ++j) {
    for (Index i = 0; i < c.rows(); ++i) c(i, j) = rng.uniform(-1.0, 1.0);
  }
  return c;
}

Mat hidden_output(const Mat& x, const Mat& projection, Activation) {
  require(projection.rows() == x.cols() + 1, ErrorKind::Input,
          "input has " + std::to_string(x.cols()) + " columns, projection expects " +
              std::to_string(projection.rows() - 1));
  require(x.allFinite(), ErrorKind::Input, "input contains non-finite values");
  const Index inputs = x.cols();
  Mat z = x * projection.topRows(inputs);
  z.rowwise() += projection.row(inputs);
  return (1.0 + (-z.array()).exp()).inverse().matrix();
}

std::vector<Index> decode_class(const Mat& outputs) {
  std::vector<Index> labels(static_cast<std::size_t>(outputs.rows()));
  for (Index i = 0; i < outputs.rows(); ++i) {
    Index best = 0;
    for (Index j = 1; j < outputs.cols(); ++j) {
      if (outputs(i, j) > outputs(i, best)) best = j;
    }
    labels[static_cast<std::size_t>(i)] = best;
  }
  return labels;
}

}  // namespace ocrep
