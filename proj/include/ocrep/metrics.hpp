#pragma once

#include "ocrep/dataset.hpp"

#include <span>
#include <vector>

namespace ocrep {

/// sqrt(mean squared error) over every entry.
double rmse(const Mat& predicted, const Mat& target);

/// Percentage of mismatching labels, 0..100.
double misclassification_rate(std::span<const Index> predicted, std::span<const Index> truth);

/// RMSE for regression, misclassification percentage (argmax decoding) for classification.
double task_error(TaskKind task, const Mat& predicted, const Mat& target);

/// One 70/30 split, or one (fit, validate) fold: row indices into the parent set.
struct Partition {
  std::vector<Index> train;
  std::vector<Index> test;
};

/// Seeded shuffle then floor(0.7 N) training rows. Classification splits are
/// stratified: each class contributes floor(0.7 n_c) rows, and the remaining
/// rows needed to reach floor(0.7 N) go to the classes with the largest
/// fractional parts.
Partition split_train_test(const Dataset& data, std::uint64_t seed, double train_fraction = 0.7);

/// k disjoint validation folds whose sizes differ by at most one. For
/// classification the rows are dealt round-robin class by class so every
/// fold sees every class that has at least k members.
std::vector<Partition> kfold(Index rows, Index k, std::uint64_t seed, std::span<const Index> labels = {});

struct SampleStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, n - 1 divisor
};

SampleStats sample_stats(std::span<const double> values);

enum class Verdict { ABetter, BBetter, Indistinguishable };

const char* to_string(Verdict verdict);

/// Two-sided two-sample t-test on the means of error samples (lower is
/// better). Welch's unequal-variance form by default, pooled Student with
/// `pooled = true`.
Verdict significance_test(std::span<const double> a, std::span<const double> b, double confidence = 0.99,
                          bool pooled = false);

}  // namespace ocrep
