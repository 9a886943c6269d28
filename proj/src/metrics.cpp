#include "ocrep/metrics.hpp"

#include "ocrep/error.hpp"
#include "ocrep/projection.hpp"
#include "ocrep/random.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace ocrep {

double rmse(const Mat& predicted, const Mat& target) {
  require(predicted.size() > 0, ErrorKind::Input, "rmse of an empty sample");
  require(predicted.rows() == target.rows() && predicted.cols() == target.cols(), ErrorKind::Input,
          "rmse: prediction and target shapes differ");
  return std::sqrt((predicted - target).squaredNorm() / static_cast<double>(predicted.size()));
}

double misclassification_rate(std::span<const Index> predicted, std::span<const Index> truth) {
  require(!predicted.empty(), ErrorKind::Input, "misclassification rate of an empty sample");
  require(predicted.size() == truth.size(), ErrorKind::Input, "label vectors differ in length");
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) wrong += predicted[i] != truth[i] ? 1 : 0;
  return 100.0 * static_cast<double>(wrong) / static_cast<double>(predicted.size());
}

double task_error(TaskKind task, const Mat& predicted, const Mat& target) {
  if (task == TaskKind::Regression) return rmse(predicted, target);
  require(predicted.rows() == target.rows(), ErrorKind::Input, "prediction and target row counts differ");
  const auto p = decode_class(predicted);
  const auto t = decode_class(target);
  return misclassification_rate(p, t);
}

Partition split_train_test(const Dataset& data, std::uint64_t seed, double train_fraction) {
  const Index n = data.rows();
  require(n >= 10, ErrorKind::Input, "train/test split needs at least 10 rows, got " + std::to_string(n));
  require(train_fraction > 0.0 && train_fraction < 1.0, ErrorKind::Input, "train fraction must be in (0, 1)");
  Rng rng(seed);
  const auto train_total = static_cast<Index>(std::floor(train_fraction * static_cast<double>(n)));
  Partition split;

  if (data.task == TaskKind::Classification && !data.labels.empty()) {
    std::map<Index, std::vector<Index>> by_class;
    for (Index i = 0; i < n; ++i) by_class[data.labels[static_cast<std::size_t>(i)]].push_back(i);

    struct Quota {
      Index label;
      Index take;
      double remainder;
    };
    std::vector<Quota> quotas;
    Index assigned = 0;
    for (auto& [label, members] : by_class) {
      require(members.size() >= 2, ErrorKind::Degenerate,
              "class '" + (static_cast<std::size_t>(label) < data.classes.size() ? data.classes[label] : std::to_string(label)) +
                  "' has fewer than 2 instances; cannot stratify");
      rng.shuffle(members);
      const double exact = train_fraction * static_cast<double>(members.size());
      const auto take = static_cast<Index>(std::floor(exact));
      quotas.push_back({label, take, exact - static_cast<double>(take)});
      assigned += take;
    }
    std::vector<std::size_t> order(quotas.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return quotas[a].remainder > quotas[b].remainder; });
    for (std::size_t k = 0; assigned < train_total && k < order.size(); ++k, ++assigned) ++quotas[order[k]].take;

    for (const auto& q : quotas) {
      const auto& members = by_class[q.label];
      split.train.insert(split.train.end(), members.begin(), members.begin() + q.take);
      split.test.insert(split.test.end(), members.begin() + q.take, members.end());
    }
  } else {
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    rng.shuffle(order);
    split.train.assign(order.begin(), order.begin() + train_total);
    split.test.assign(order.begin() + train_total, order.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

std::vector<Partition> kfold(Index rows, Index k, std::uint64_t seed, std::span<const Index> labels) {
  require(k >= 2, ErrorKind::Input, "k-fold needs k >= 2");
  require(rows >= k, ErrorKind::Input,
          "k-fold needs at least k rows (" + std::to_string(rows) + " < " + std::to_string(k) + ")");
  require(labels.empty() || static_cast<Index>(labels.size()) == rows, ErrorKind::Input,
          "label count does not match row count");
  std::vector<Index> order(static_cast<std::size_t>(rows));
  std::iota(order.begin(), order.end(), Index{0});
  Rng rng(seed);
  rng.shuffle(order);
  if (!labels.empty()) {
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
      return labels[static_cast<std::size_t>(a)] < labels[static_cast<std::size_t>(b)];
    });
  }
  std::vector<Partition> folds(static_cast<std::size_t>(k));
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const auto fold = pos % static_cast<std::size_t>(k);
    for (std::size_t f = 0; f < folds.size(); ++f) {
      (f == fold ? folds[f].test : folds[f].train).push_back(order[pos]);
    }
  }
  for (auto& fold : folds) {
    std::sort(fold.train.begin(), fold.train.end());
    std::sort(fold.test.begin(), fold.test.end());
  }
  return folds;
}

SampleStats sample_stats(std::span<const double> values) {
  require(!values.empty(), ErrorKind::Input, "statistics of an empty sample");
  SampleStats stats;
  const double n = static_cast<double>(values.size());
  stats.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (const double v : values) ss += (v - stats.mean) * (v - stats.mean);
    stats.stddev = std::sqrt(ss / (n - 1.0));
  }
  return stats;
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::ABetter: return "a_better";
    case Verdict::BBetter: return "b_better";
    case Verdict::Indistinguishable: return "indistinguishable";
  }
  return "indistinguishable";
}

Verdict significance_test(std::span<const double> a, std::span<const double> b, double confidence, bool pooled) {
  require(a.size() >= 2 && b.size() >= 2, ErrorKind::Input, "t-test needs at least two values per sample");
  require(confidence > 0.0 && confidence < 1.0, ErrorKind::Input, "confidence must be in (0, 1)");
  const SampleStats sa = sample_stats(a);
  const SampleStats sb = sample_stats(b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double va = sa.stddev * sa.stddev;
  const double vb = sb.stddev * sb.stddev;
  const double diff = sa.mean - sb.mean;

  if (va == 0.0 && vb == 0.0) {
    if (diff == 0.0) return Verdict::Indistinguishable;
    return diff < 0.0 ? Verdict::ABetter : Verdict::BBetter;
  }

  double se = 0.0;
  double dof = 0.0;
  if (pooled) {
    const double sp2 = ((na - 1.0) * va + (nb - 1.0) * vb) / (na + nb - 2.0);
    se = std::sqrt(sp2 * (1.0 / na + 1.0 / nb));
    dof = na + nb - 2.0;
  } else {
    const double qa = va / na;
    const double qb = vb / nb;
    se = std::sqrt(qa + qb);
    dof = (qa + qb) * (qa + qb) / (qa * qa / (na - 1.0) + qb * qb / (nb - 1.0));
  }
  const boost::math::students_t dist(dof);
  const double critical = boost::math::quantile(dist, 1.0 - (1.0 - confidence) / 2.0);
  const double t = diff / se;
  if (std::abs(t) <= critical) return Verdict::Indistinguishable;
  return t < 0.0 ? Verdict::ABetter : Verdict::BBetter;
}

}  // namespace ocrep
