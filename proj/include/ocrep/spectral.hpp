#pragma once

#include <Eigen/Dense>

#include <optional>

namespace ocrep {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Index = Eigen::Index;

/// Thin SVD H = U diag(sigma) V^T of an N x M matrix, p = min(N, M).
///
/// Singular values are sorted non-increasing and non-negative. Every solve and
/// conditioning diagnostic in the library starts from one of these; the object
/// is immutable once built.
struct SpectralFactorization {
  Mat left;             // N x p, orthonormal columns
  Vec singular_values;  // p, descending
  Mat right;            // M x p, orthonormal columns
  Index source_rows = 0;
  Index source_cols = 0;

  Index size() const { return singular_values.size(); }
  double largest() const { return size() > 0 ? singular_values(0) : 0.0; }
};

SpectralFactorization factorize(const Mat& h);

/// Rank cut-off used whenever the caller passes no threshold:
/// max(N, M) * eps * sigma_1 (the usual pinv convention).
double default_threshold(const SpectralFactorization& f);

/// Number of singular values strictly above `threshold`.
Index numerical_rank(const SpectralFactorization& f, double threshold);

/// sigma / (sigma^2 + gamma). Peaks at sigma = sqrt(gamma) with value 1 / (2 sqrt(gamma)).
double d_value(double sigma, double gamma);

/// V Sigma^+ U^T T, reciprocals of singular values at or below `threshold` replaced by 0.
Mat pseudoinverse_apply(const SpectralFactorization& f, double threshold, const Mat& t);

/// V D U^T T with D_i = d_value(sigma_i, gamma). gamma must be > 0; the
/// unregularized solve is pseudoinverse_apply.
Mat regularized_apply(const SpectralFactorization& f, double gamma, const Mat& t);

/// Dense M x N regularized operator V D U^T. Diagnostics only.
Mat regularized_operator(const SpectralFactorization& f, double gamma);

/// Filter factors over the singular values above the default threshold.
struct FilterSpectrum {
  double gamma = 0.0;
  Vec d_values;
  Index argmax_index = 0;
  Index argmin_index = 0;
  // D_1 and D_p agree to 1e-12 relative; argmin_index then reports the first.
  bool extremes_tied = false;

  double d_max() const { return d_values(argmax_index); }
  double d_min() const { return d_values(argmin_index); }
};

FilterSpectrum filter_spectrum(const SpectralFactorization& f, double gamma);
FilterSpectrum filter_spectrum(const SpectralFactorization& f, double gamma, double threshold);

/// Relative tolerance under which D_1 and D_p count as equal.
inline constexpr double kExtremeTieTolerance = 1e-12;

struct ConditioningRecord {
  // sigma_1 / sigma_r with sigma_r the smallest singular value above the
  // threshold, i.e. ||H||_2 ||H^+||_2 for the thresholded pseudoinverse.
  double mu_unregularized = 1.0;
  // D_max / D_min; absent for unregularized training.
  std::optional<double> mu_regularized;
  std::optional<double> gamma_used;
  // Singular value attaining D_max.
  std::optional<double> sigma_at_dmax;
  Index rank = 0;
  Index full_rank = 0;  // p = min(N, M)

  bool rank_deficient() const { return rank < full_rank; }
};

ConditioningRecord condition_numbers(const SpectralFactorization& f, double gamma, double threshold);
ConditioningRecord condition_numbers(const SpectralFactorization& f, double gamma);

/// Conditioning of the unregularized pseudoinverse only.
ConditioningRecord unregularized_conditioning(const SpectralFactorization& f, double threshold);

}  // namespace ocrep
