#pragma once

#include "ocrep/spectral.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ocrep {

enum class Activation { Sigmoid };

const char* to_string(Activation activation);
Activation parse_activation(const std::string& name);

/// Random input layer of the network: L inputs, M hidden units.
struct ProjectionConfig {
  Index input_dim = 1;
  Index hidden_units = 1;
  Activation activation = Activation::Sigmoid;
  std::uint64_t seed = 0;
};

/// (L + 1) x M matrix of i.i.d. uniform(-1, 1) entries; the last row holds the biases.
Mat init_projection(const ProjectionConfig& config);

/// phi([X | 1] C) entrywise.
Mat hidden_output(const Mat& x, const Mat& projection, Activation activation = Activation::Sigmoid);

/// Row-wise argmax, ties to the lowest column.
std::vector<Index> decode_class(const Mat& outputs);

}  // namespace ocrep
