#include "ocrep/spectral.hpp"

#include "ocrep/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ocrep {

namespace {

void check_targets(const SpectralFactorization& f, const Mat& t) {
  require(t.rows() == f.source_rows, ErrorKind::Input,
          "target has " + std::to_string(t.rows()) + " rows, factorized matrix has " +
              std::to_string(f.source_rows));
}

}  // namespace

SpectralFactorization factorize(const Mat& h) {
  require(h.rows() >= 1 && h.cols() >= 1, ErrorKind::Input, "cannot factorize an empty matrix");
  require(h.allFinite(), ErrorKind::Input, "matrix contains non-finite entries");

  Eigen::BDCSVD<Mat> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
  require(svd.info() == Eigen::Success, ErrorKind::Numerical, "SVD did not converge");

  SpectralFactorization f;
  f.left = svd.matrixU();
  f.singular_values = svd.singularValues();
  f.right = svd.matrixV();
  f.source_rows = h.rows();
  f.source_cols = h.cols();
  return f;
}

double default_threshold(const SpectralFactorization& f) {
  return static_cast<double>(std::max(f.source_rows, f.source_cols)) *
         std::numeric_limits<double>::epsilon() * f.largest();
}

Index numerical_rank(const SpectralFactorization& f, double threshold) {
  Index rank = 0;
  while (rank < f.size() && f.singular_values(rank) > threshold) ++rank;
  return rank;
}

double d_value(double sigma, double gamma) {
  require(sigma > 0.0, ErrorKind::Domain, "singular value must be positive");
  require(gamma >= 0.0, ErrorKind::Domain, "gamma must be non-negative");
  return sigma / (sigma * sigma + gamma);
}

Mat pseudoinverse_apply(const SpectralFactorization& f, double threshold, const Mat& t) {
  require(threshold >= 0.0, ErrorKind::Domain, "threshold must be non-negative");
  check_targets(f, t);
  Vec inverse = Vec::Zero(f.size());
  for (Index i = 0; i < f.size(); ++i) {
    const double sigma = f.singular_values(i);
    if (sigma > threshold) inverse(i) = 1.0 / sigma;
  }
  return f.right * (inverse.asDiagonal() * (f.left.transpose() * t));
}

Mat regularized_apply(const SpectralFactorization& f, double gamma, const Mat& t) {
  require(gamma > 0.0, ErrorKind::Domain, "regularized solve needs gamma > 0");
  check_targets(f, t);
  const Vec& s = f.singular_values;
  const Vec filter = s.array() / (s.array().square() + gamma);
  return f.right * (filter.asDiagonal() * (f.left.transpose() * t));
}

Mat regularized_operator(const SpectralFactorization& f, double gamma) {
  require(gamma > 0.0, ErrorKind::Domain, "regularized operator needs gamma > 0");
  const Vec& s = f.singular_values;
  const Vec filter = s.array() / (s.array().square() + gamma);
  return f.right * filter.asDiagonal() * f.left.transpose();
}

FilterSpectrum filter_spectrum(const SpectralFactorization& f, double gamma, double threshold) {
  require(gamma > 0.0, ErrorKind::Domain, "filter spectrum needs gamma > 0");
  const Index rank = numerical_rank(f, threshold);
  require(rank > 0, ErrorKind::Degenerate, "all singular values are zero");

  FilterSpectrum spectrum;
  spectrum.gamma = gamma;
  spectrum.d_values.resize(rank);
  for (Index i = 0; i < rank; ++i) spectrum.d_values(i) = d_value(f.singular_values(i), gamma);
  spectrum.d_values.maxCoeff(&spectrum.argmax_index);

  // D(sigma) is unimodal, so over the sorted spectrum the minimum sits at an end.
  const double first = spectrum.d_values(0);
  const double last = spectrum.d_values(rank - 1);
  if (std::abs(first - last) <= kExtremeTieTolerance * std::max(first, last)) {
    spectrum.extremes_tied = true;
    spectrum.argmin_index = 0;
  } else {
    spectrum.argmin_index = first < last ? 0 : rank - 1;
  }
  return spectrum;
}

FilterSpectrum filter_spectrum(const SpectralFactorization& f, double gamma) {
  return filter_spectrum(f, gamma, default_threshold(f));
}

ConditioningRecord unregularized_conditioning(const SpectralFactorization& f, double threshold) {
  const Index rank = numerical_rank(f, threshold);
  require(rank > 0, ErrorKind::Degenerate, "all singular values are zero");
  ConditioningRecord record;
  record.rank = rank;
  record.full_rank = f.size();
  record.mu_unregularized = f.singular_values(0) / f.singular_values(rank - 1);
  return record;
}

ConditioningRecord condition_numbers(const SpectralFactorization& f, double gamma, double threshold) {
  ConditioningRecord record = unregularized_conditioning(f, threshold);
  const FilterSpectrum spectrum = filter_spectrum(f, gamma, threshold);
  record.mu_regularized = spectrum.d_max() / spectrum.d_min();
  record.gamma_used = gamma;
  record.sigma_at_dmax = f.singular_values(spectrum.argmax_index);
  return record;
}

ConditioningRecord condition_numbers(const SpectralFactorization& f, double gamma) {
  return condition_numbers(f, gamma, default_threshold(f));
}

}  // namespace ocrep
