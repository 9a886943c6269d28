#include "ocrep/error.hpp"
#include "ocrep/gamma.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace ocrep;

namespace {

Vec vec(std::initializer_list<double> v) {
  Vec out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Input;
}

}  // namespace

TEST(Grid, Presets) {
  const auto d = GammaGrid::decades();
  ASSERT_EQ(d.size(), 51u);
  EXPECT_DOUBLE_EQ(d.values().front(), 1e-25);
  EXPECT_DOUBLE_EQ(d.values().back(), 1e25);
  EXPECT_DOUBLE_EQ(d.values()[25], 1.0);
  const auto e = GammaGrid::preset("elm");
  ASSERT_EQ(e.size(), 50u);
  EXPECT_DOUBLE_EQ(e.values().front(), std::ldexp(1.0, -24));
  EXPECT_DOUBLE_EQ(e.values().back(), std::ldexp(1.0, 25));
  EXPECT_THROW(GammaGrid::preset("nope"), Error);
}

TEST(Grid, Validation) {
  EXPECT_THROW(GammaGrid({1.0, 1.0}), Error);
  EXPECT_THROW(GammaGrid({2.0, 1.0}), Error);
  EXPECT_THROW(GammaGrid({0.0, 1.0}), Error);
  EXPECT_THROW(GammaGrid({-1.0}), Error);
  EXPECT_NO_THROW(GammaGrid({1e-3, 1.0, 1e3}));
}

TEST(Strategy, NamesRoundTrip) {
  for (const char* name : {"ocrep", "cv", "gcv", "kibria", "hoerl-kennard", "unreg"}) {
    EXPECT_EQ(parse_strategy(name).name(), name);
  }
  EXPECT_EQ(parse_strategy("unregularized").kind, StrategyKind::Unregularized);
  EXPECT_EQ(parse_strategy("hk").kind, StrategyKind::HoerlKennard);
  EXPECT_EQ(kind_of([] { parse_strategy("lawless"); }), ErrorKind::Input);
  EXPECT_TRUE(GammaStrategy::kibria().single_output_only());
  EXPECT_TRUE(GammaStrategy::gcv().single_output_only());
  EXPECT_FALSE(GammaStrategy::cv_grid().single_output_only());
  EXPECT_THROW(GammaStrategy::cv_grid(GammaGrid::decades(), 1), Error);
}

TEST(Ocrep, Examples) {
  EXPECT_DOUBLE_EQ(ocrep_gamma(oracle::diagonal_factorization(vec({4, 2, 1}))), 4.0);
  const auto f = oracle::diagonal_factorization(vec({10, 0.1}));
  const double g = ocrep_gamma(f);
  EXPECT_NEAR(g, 1.0, 1e-15);
  EXPECT_NEAR(*condition_numbers(f, g).mu_regularized, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(ocrep_gamma(oracle::diagonal_factorization(vec({5}))), 25.0);
}

TEST(Ocrep, SkipsValuesBelowThreshold) {
  const auto f = oracle::diagonal_factorization(vec({4, 2, 1e-30}));
  EXPECT_DOUBLE_EQ(ocrep_gamma(f), 8.0);
  EXPECT_DOUBLE_EQ(ocrep_gamma(f, 3.0), 16.0);
  EXPECT_THROW(ocrep_gamma(oracle::diagonal_factorization(vec({0, 0}))), Error);
}

TEST(Ocrep, ScaleCovariance) {
  std::mt19937_64 gen(31);
  for (int k = 0; k < 20; ++k) {
    const Mat h = oracle::random_matrix(gen, 20, 8);
    const double c = oracle::log_uniform(gen, 1e-3, 1e3);
    const auto f = factorize(h);
    const auto fc = factorize(c * h);
    const double g = ocrep_gamma(f);
    const double gc = ocrep_gamma(fc);
    EXPECT_LE(oracle::relative_error(gc, c * c * g), 1e-10);
    EXPECT_LE(oracle::relative_error(*condition_numbers(fc, gc).mu_regularized,
                                     *condition_numbers(f, g).mu_regularized),
              1e-10);
  }
}

TEST(Ocrep, MinimizesConditioningOverGamma) {
  std::mt19937_64 gen(32);
  const Mat h = oracle::random_matrix(gen, 30, 12);
  const auto f = factorize(h);
  const double best = *condition_numbers(f, ocrep_gamma(f)).mu_regularized;
  const auto grid = GammaGrid::decades(-10, 10);
  for (double g : grid.values()) {
    EXPECT_LE(best, *condition_numbers(f, g).mu_regularized * (1 + 1e-12));
  }
}

TEST(Gcv, HandExample) {
  const auto f = factorize(Mat::Identity(2, 2));
  EXPECT_NEAR(gcv_score(f, vec({1, 1}), 0.5), 1.0, 1e-14);
}

TEST(Gcv, LargeLambdaLimit) {
  std::mt19937_64 gen(33);
  const Mat h = oracle::random_matrix(gen, 10, 3);
  const Vec y = oracle::random_matrix(gen, 10, 1).col(0);
  EXPECT_LE(oracle::relative_error(gcv_score(factorize(h), y, 1e12), y.squaredNorm() / 10.0), 1e-9);
}

TEST(Gcv, MatchesDenseOracle) {
  std::mt19937_64 gen(34);
  const Mat h = oracle::random_matrix(gen, 8, 3);
  const Vec y = oracle::random_matrix(gen, 8, 1).col(0);
  EXPECT_LE(oracle::relative_error(gcv_score(factorize(h), y, 0.1), oracle::gcv_dense(h, y, 0.1)), 1e-10);
  // wide matrices too
  const Mat w = oracle::random_matrix(gen, 6, 10);
  const Vec yw = oracle::random_matrix(gen, 6, 1).col(0);
  EXPECT_LE(oracle::relative_error(gcv_score(factorize(w), yw, 0.05), oracle::gcv_dense(w, yw, 0.05)), 1e-10);
}

TEST(Gcv, LambdaMustBePositive) {
  const auto f = factorize(Mat::Identity(2, 2));
  EXPECT_EQ(kind_of([&] { gcv_score(f, vec({1, 1}), 0.0); }), ErrorKind::Domain);
}

TEST(Gcv, SelectMatchesDenseArgmin) {
  std::mt19937_64 gen(35);
  const Mat h = oracle::random_matrix(gen, 20, 4);
  const Vec w = oracle::random_matrix(gen, 4, 1).col(0);
  const Vec y = h * w + 0.3 * oracle::random_matrix(gen, 20, 1).col(0);
  const GammaGrid grid({1e-3, 1.0, 1e3});
  const auto f = factorize(h);
  std::vector<double> dense;
  for (double g : grid.values()) dense.push_back(oracle::gcv_dense(h, y, g / 20.0));
  EXPECT_EQ(gcv_select(f, y, grid), grid.values()[argmin_first(dense)]);
  EXPECT_EQ(gcv_select(f, y, GammaGrid({0.7})), 0.7);
}

TEST(Gcv, NoiseFreeTargetPicksSmallestGamma) {
  std::mt19937_64 gen(36);
  const Mat h = oracle::random_matrix(gen, 20, 4);
  const Vec y = h * oracle::random_matrix(gen, 4, 1).col(0);
  EXPECT_EQ(gcv_select(factorize(h), y, GammaGrid({1e-6, 1e-2, 1.0, 1e2})), 1e-6);
}

TEST(Gcv, RawLambdaFlag) {
  std::mt19937_64 gen(37);
  const Mat h = oracle::random_matrix(gen, 15, 4);
  const Vec y = oracle::random_matrix(gen, 15, 1).col(0);
  const auto f = factorize(h);
  const GammaGrid grid = GammaGrid::decades(-4, 4);
  std::vector<double> raw;
  for (double g : grid.values()) raw.push_back(oracle::gcv_dense(h, y, g));
  EXPECT_EQ(gcv_select(f, y, grid, true), grid.values()[argmin_first(raw)]);
}

TEST(RidgeInputs, ExactFitInColumnSpace) {
  std::mt19937_64 gen(38);
  Eigen::HouseholderQR<Mat> qr(oracle::random_matrix(gen, 10, 3));
  const Mat q = qr.householderQ() * Mat::Identity(10, 3);
  const Vec y = q * vec({1, -2, 0.5});
  const auto r = ridge_estimator_inputs(factorize(q), y);
  EXPECT_NEAR(r.sigma_hat_sq, 0.0, 1e-28);
  EXPECT_NEAR(r.alpha_hat.norm(), std::sqrt(1 + 4 + 0.25), 1e-12);
  EXPECT_EQ(r.n, 10);
  EXPECT_EQ(r.p, 3);
}

TEST(RidgeInputs, OrthogonalTarget) {
  std::mt19937_64 gen(39);
  Eigen::HouseholderQR<Mat> qr(oracle::random_matrix(gen, 10, 4));
  const Mat q = qr.householderQ() * Mat::Identity(10, 4);
  const Mat h = q.leftCols(3);
  const Vec y = 2.0 * q.col(3);
  const auto r = ridge_estimator_inputs(factorize(h), y);
  EXPECT_LE(r.alpha_hat.cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_NEAR(r.sigma_hat_sq, 4.0 / 6.0, 1e-13);
}

TEST(RidgeInputs, MatchesDenseOracle) {
  std::mt19937_64 gen(40);
  const Mat h = oracle::random_matrix(gen, 10, 3);
  const Vec y = oracle::random_matrix(gen, 10, 1).col(0);
  const auto r = ridge_estimator_inputs(factorize(h), y);
  const auto d = oracle::ridge_inputs_dense(h, y);
  EXPECT_LE(oracle::relative_error(r.sigma_hat_sq, d.sigma_hat_sq), 1e-9);
  std::vector<double> a(r.alpha_hat.data(), r.alpha_hat.data() + 3);
  std::vector<double> b(d.alpha_hat.data(), d.alpha_hat.data() + 3);
  for (auto& x : a) x = std::abs(x);
  for (auto& x : b) x = std::abs(x);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (int i = 0; i < 3; ++i) EXPECT_LE(oracle::relative_error(a[i], b[i]), 1e-9);
  EXPECT_LE(oracle::relative_error(kibria_gamma(r), oracle::kibria_dense(d)), 1e-9);
  EXPECT_LE(oracle::relative_error(hoerl_kennard_gamma(r), oracle::hoerl_kennard_dense(d)), 1e-9);
}

TEST(RidgeInputs, Preconditions) {
  std::mt19937_64 gen(41);
  const Mat h = oracle::random_matrix(gen, 4, 3);
  EXPECT_EQ(kind_of([&] { ridge_estimator_inputs(factorize(h), Vec::Ones(4)); }), ErrorKind::EstimatorUndefined);
  Mat deficient = oracle::random_matrix(gen, 10, 3);
  deficient.col(2) = deficient.col(0);
  EXPECT_EQ(kind_of([&] { ridge_estimator_inputs(factorize(deficient), Vec::Ones(10)); }),
            ErrorKind::EstimatorUndefined);
}

TEST(Kibria, Examples) {
  RidgeEstimatorInputs r{vec({1, 2}), 2.0, 10, 2};
  EXPECT_DOUBLE_EQ(kibria_gamma(r), 1.25);
  r = {vec({std::sqrt(3.0)}), 3.0, 10, 1};
  EXPECT_NEAR(kibria_gamma(r), 1.0, 1e-15);
  r = {vec({1, 2}), 0.0, 10, 2};
  EXPECT_EQ(kibria_gamma(r), 0.0);
  r = {vec({1, 1e-31}), 1.0, 10, 2};
  EXPECT_EQ(kind_of([&] { kibria_gamma(r); }), ErrorKind::EstimatorSingular);
}

TEST(HoerlKennard, Examples) {
  RidgeEstimatorInputs r{vec({1, 2}), 2.0, 10, 2};
  EXPECT_DOUBLE_EQ(hoerl_kennard_gamma(r), 0.5);
  r = {vec({-3, 1}), 9.0, 10, 2};
  EXPECT_DOUBLE_EQ(hoerl_kennard_gamma(r), 1.0);
  r = {vec({1, 2}), 0.0, 10, 2};
  EXPECT_EQ(hoerl_kennard_gamma(r), 0.0);
  r = {vec({0, 0}), 1.0, 10, 2};
  EXPECT_EQ(kind_of([&] { hoerl_kennard_gamma(r); }), ErrorKind::EstimatorSingular);
}

TEST(RidgeEstimators, SignFlipInvariance) {
  std::mt19937_64 gen(42);
  const Mat h = oracle::random_matrix(gen, 25, 5);
  const Vec y = oracle::random_matrix(gen, 25, 1).col(0);
  const auto f = factorize(h);
  const auto a = ridge_estimator_inputs(f, y);
  const auto b = ridge_estimator_inputs(f, -y);
  EXPECT_DOUBLE_EQ(kibria_gamma(a), kibria_gamma(b));
  EXPECT_DOUBLE_EQ(hoerl_kennard_gamma(a), hoerl_kennard_gamma(b));
}

TEST(Cv, SingleElementGrid) {
  std::mt19937_64 gen(43);
  const Mat h = oracle::random_matrix(gen, 30, 5);
  const Mat t = oracle::random_matrix(gen, 30, 1);
  EXPECT_EQ(cv_grid_select(h, t, TaskKind::Regression, GammaGrid({0.25}), 3, 7), 0.25);
}

TEST(Cv, AvoidsExplodingGammaOnNearSingularH) {
  // Last column duplicates the first except in one row, so every fold that
  // leaves that row out is singular and a vanishing gamma amplifies round-off.
  std::mt19937_64 gen(44);
  const Mat a = oracle::random_matrix(gen, 60, 4);
  Mat h(60, 5);
  h.leftCols(4) = a;
  h.col(4) = a.col(0);
  h(7, 4) += 1e-4;
  const Vec s = Eigen::JacobiSVD<Mat>(h).singularValues();
  ASSERT_LT(s(4), 1e-4);
  const Mat t = a * oracle::random_matrix(gen, 4, 1) + 0.1 * oracle::random_matrix(gen, 60, 1);
  const GammaGrid grid({1e-30, 1e-2});
  const auto errors = cv_grid_errors(prepare_folds(h, t, TaskKind::Regression, 3, 1), TaskKind::Regression, grid);
  EXPECT_GT(errors[0], 100 * errors[1]);
  EXPECT_EQ(cv_grid_select(h, t, TaskKind::Regression, grid, 3, 1), 1e-2);
}

TEST(Cv, OrderIndependentAndDeterministic) {
  std::mt19937_64 gen(45);
  const Mat h = oracle::random_matrix(gen, 45, 10);
  const Mat t = h * oracle::random_matrix(gen, 10, 2) + 0.5 * oracle::random_matrix(gen, 45, 2);
  const GammaGrid grid = GammaGrid::decades(-6, 3);
  const double a = cv_grid_select(h, t, TaskKind::Regression, grid, 3, 99);
  EXPECT_EQ(a, cv_grid_select(h, t, TaskKind::Regression, grid, 3, 99));
  // Grids are kept sorted, so a shuffled list yields the same grid.
  std::vector<double> shuffled = grid.values();
  std::reverse(shuffled.begin(), shuffled.end());
  std::sort(shuffled.begin(), shuffled.end());
  EXPECT_EQ(a, cv_grid_select(h, t, TaskKind::Regression, GammaGrid(shuffled), 3, 99));
}

TEST(Cv, ErrorsMatchRefitPerFold) {
  std::mt19937_64 gen(46);
  const Mat h = oracle::random_matrix(gen, 30, 6);
  const Mat t = oracle::random_matrix(gen, 30, 1);
  const auto folds = prepare_folds(h, t, TaskKind::Regression, 3, 5);
  ASSERT_EQ(folds.size(), 3u);
  const GammaGrid grid({0.1, 10.0});
  const auto errors = cv_grid_errors(folds, TaskKind::Regression, grid);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    double total = 0.0;
    for (const auto& fold : folds) {
      const Mat fit_h = fold.factorization.left * fold.factorization.singular_values.asDiagonal() *
                        fold.factorization.right.transpose();
      const Mat w = oracle::ridge_normal_equations(fit_h, fold.fit_targets, grid.values()[g]);
      total += std::sqrt((fold.validate_hidden * w - fold.validate_targets).squaredNorm() /
                         static_cast<double>(fold.validate_targets.size()));
    }
    EXPECT_LE(oracle::relative_error(errors[g], total / 3.0), 1e-9);
  }
}

TEST(Cv, EmptyGridRejected) {
  std::mt19937_64 gen(47);
  const Mat h = oracle::random_matrix(gen, 30, 5);
  const Mat t = oracle::random_matrix(gen, 30, 1);
  EXPECT_EQ(kind_of([&] { cv_grid_select(h, t, TaskKind::Regression, GammaGrid(), 3, 1); }), ErrorKind::Input);
}

TEST(ArgminFirst, TiesGoLow) {
  EXPECT_EQ(argmin_first({3, 1, 1, 2}), 1u);
  EXPECT_EQ(argmin_first({5}), 0u);
}

TEST(Resolve, SingleOutputGuard) {
  std::mt19937_64 gen(48);
  const Mat h = oracle::random_matrix(gen, 20, 4);
  const auto f = factorize(h);
  for (const auto& s : {GammaStrategy::gcv(), GammaStrategy::kibria(), GammaStrategy::hoerl_kennard()}) {
    EXPECT_EQ(kind_of([&] { resolve_gamma(s, f, h, Mat::Ones(20, 2), TaskKind::Regression, 0); }),
              ErrorKind::UnsupportedStrategy);
    EXPECT_EQ(kind_of([&] { resolve_gamma(s, f, h, Mat::Ones(20, 1), TaskKind::Classification, 0); }),
              ErrorKind::UnsupportedStrategy);
    try {
      resolve_gamma(s, f, h, Mat::Ones(20, 2), TaskKind::Regression, 0);
    } catch (const Error& e) {
      EXPECT_NE(std::string(e.what()).find("requires single-output regression"), std::string::npos);
    }
  }
}

TEST(Resolve, ZeroEstimateFallsBackToUnregularized) {
  Mat h = Mat::Zero(4, 2);
  h(0, 0) = 1;
  h(1, 1) = 1;
  const Mat t = (Mat(4, 1) << 1, 2, 0, 0).finished();
  const auto f = factorize(h);
  for (const auto& s : {GammaStrategy::kibria(), GammaStrategy::hoerl_kennard()}) {
    const auto choice = resolve_gamma(s, f, h, t, TaskKind::Regression, 0);
    EXPECT_FALSE(choice.gamma.has_value());
    ASSERT_EQ(choice.notes.size(), 1u);
  }
}

TEST(Resolve, StrategiesProduceExpectedGamma) {
  std::mt19937_64 gen(49);
  const Mat h = oracle::random_matrix(gen, 20, 4);
  const Mat t = oracle::random_matrix(gen, 20, 1);
  const auto f = factorize(h);
  EXPECT_EQ(*resolve_gamma(GammaStrategy::ocrep(), f, h, t, TaskKind::Regression, 0).gamma, ocrep_gamma(f));
  EXPECT_EQ(*resolve_gamma(GammaStrategy::fixed(0.5), f, h, t, TaskKind::Regression, 0).gamma, 0.5);
  EXPECT_FALSE(resolve_gamma(GammaStrategy::unregularized(), f, h, t, TaskKind::Regression, 0).gamma);
  EXPECT_THROW(resolve_gamma(GammaStrategy::fixed(0.0), f, h, t, TaskKind::Regression, 0), Error);
}
