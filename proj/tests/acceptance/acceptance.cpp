// Acceptance suite: one PASS/FAIL line per criterion.
//
// Exit status counts failures, except criteria that cannot run because a
// benchmark data file is absent; those print FAIL with an "unattainable" tag.

#include "ocrep/experiment.hpp"
#include "ocrep/gamma.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace ocrep;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  bool unattainable = false;  // input data missing, not a code failure
};

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

// Shared by criteria 1 and 2.
struct SpectrumCase {
  Vec sigma;
  double beta;
};

std::vector<SpectrumCase> extremal_cases() {
  std::mt19937_64 gen(20240601);
  std::uniform_int_distribution<int> pd(2, 50);
  std::vector<SpectrumCase> cases;
  for (int k = 0; k < 1000; ++k) {
    Vec s = oracle::random_spectrum(gen, pd(gen), 1e-8, 1e3);
    cases.push_back({std::move(s), oracle::log_uniform(gen, 1e-3, 1e3)});
  }
  return cases;
}

Outcome extremal_gamma_brute_force() {
  int extreme = 0;
  int side_ok = 0;
  int tie_ok = 0;
  const auto cases = extremal_cases();
  for (const auto& c : cases) {
    const Vec& s = c.sigma;
    const Index p = s.size();
    const double base = s(0) * s(p - 1);
    const auto f = oracle::diagonal_factorization(s);
    const Vec d = s.array() / (s.array().square() + c.beta * base);
    const Index brute = oracle::brute_argmin(d);
    const auto fs = filter_spectrum(f, c.beta * base);
    if ((brute == 0 || brute == p - 1) && fs.argmin_index == brute) ++extreme;
    const Index expected = c.beta < 1.0 ? 0 : p - 1;
    if (fs.argmin_index == expected && brute == expected) ++side_ok;
    const auto tie = filter_spectrum(f, base);
    const double d1 = tie.d_values(0);
    const double dp = tie.d_values(p - 1);
    if (std::abs(d1 - dp) <= 1e-12 * std::max(d1, dp) && tie.extremes_tied) ++tie_ok;
  }
  const int n = static_cast<int>(cases.size());
  return {extreme == n && side_ok == n && tie_ok == n,
          "argmin at extreme " + std::to_string(extreme) + "/" + std::to_string(n) + ", side by beta " +
              std::to_string(side_ok) + "/" + std::to_string(n) + ", beta=1 tie " + std::to_string(tie_ok) + "/" +
              std::to_string(n)};
}

Outcome beta_optimality() {
  int ok = 0;
  double worst = 0.0;
  const auto cases = extremal_cases();
  for (const auto& c : cases) {
    const Vec& s = c.sigma;
    const auto f = oracle::diagonal_factorization(s);
    const double base = s(0) * s(s.size() - 1);
    const double at_one = *condition_numbers(f, base).mu_regularized;
    bool all = true;
    for (int k = 0; k < 25; ++k) {
      const double beta = std::pow(10.0, -3.0 + 6.0 * k / 24.0);
      const double mu = *condition_numbers(f, beta * base).mu_regularized;
      // independent check of the library value
      worst = std::max(worst, oracle::relative_error(mu, oracle::mu_from_spectrum(s, beta * base)));
      if (at_one > mu * (1 + 1e-12)) all = false;
    }
    if (all) ++ok;
  }
  const int n = static_cast<int>(cases.size());
  return {ok == n && worst <= 1e-12, std::to_string(ok) + "/" + std::to_string(n) +
                                         " spectra minimized at beta=1; library vs oracle mu max rel err " +
                                         fmt(worst)};
}

Outcome oracle_equivalence() {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<int> dim(1, 30);
  double worst_reg = 0.0;
  double worst_pinv = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Index m = dim(gen);
    const Index n = dim(gen);
    const Index q = 1 + k % 3;
    const Mat h = oracle::random_matrix(gen, n, m);
    const Mat t = oracle::random_matrix(gen, n, q);
    const double gamma = oracle::log_uniform(gen, 1e-4, 1e2);
    const auto f = factorize(h);
    worst_reg = std::max(worst_reg, oracle::relative_error(regularized_apply(f, gamma, t),
                                                           oracle::ridge_normal_equations(h, t, gamma)));
    // OLS needs full column rank: draw a tall instance with the same budget.
    const Index tall = std::max<Index>(n, m);
    const Mat ht = oracle::random_matrix(gen, tall, m);
    const Mat tt = oracle::random_matrix(gen, tall, q);
    worst_pinv = std::max(worst_pinv, oracle::relative_error(pseudoinverse_apply(factorize(ht), 0.0, tt),
                                                             oracle::ols_normal_equations(ht, tt)));
  }
  return {worst_reg <= 1e-8 && worst_pinv <= 1e-8,
          "max rel err regularized " + fmt(worst_reg) + ", pseudoinverse " + fmt(worst_pinv)};
}

Outcome gcv_equivalence() {
  std::mt19937_64 gen(8);
  std::uniform_int_distribution<int> dim(2, 20);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const Index n = dim(gen);
    const Index m = dim(gen);
    const Mat h = oracle::random_matrix(gen, n, m);
    const Vec y = oracle::random_matrix(gen, n, 1).col(0);
    const double lambda = oracle::log_uniform(gen, 1e-4, 1e1);
    worst = std::max(worst, oracle::relative_error(gcv_score(factorize(h), y, lambda), oracle::gcv_dense(h, y, lambda)));
  }
  return {worst <= 1e-10, "max rel err " + fmt(worst) + " over 50 instances"};
}

Outcome ridge_estimator_equivalence() {
  std::mt19937_64 gen(9);
  double worst_k = 0.0;
  double worst_hk = 0.0;
  for (int k = 0; k < 50; ++k) {
    const Index p = std::uniform_int_distribution<int>(1, 8)(gen);
    const Index n = std::uniform_int_distribution<int>(static_cast<int>(p) + 3, 40)(gen);
    const Mat h = oracle::random_matrix(gen, n, p);
    const Vec y = h * oracle::random_matrix(gen, p, 1).col(0) + 0.3 * oracle::random_matrix(gen, n, 1).col(0);
    const auto inputs = ridge_estimator_inputs(factorize(h), y);
    const auto dense = oracle::ridge_inputs_dense(h, y);
    worst_k = std::max(worst_k, oracle::relative_error(kibria_gamma(inputs), oracle::kibria_dense(dense)));
    worst_hk = std::max(worst_hk, oracle::relative_error(hoerl_kennard_gamma(inputs), oracle::hoerl_kennard_dense(dense)));
  }
  return {worst_k <= 1e-9 && worst_hk <= 1e-9,
          "max rel err Kibria " + fmt(worst_k) + ", Hoerl-Kennard " + fmt(worst_hk)};
}

std::optional<Dataset> try_load(const std::string& id, std::string& why) {
  const auto registry = load_registry(default_registry_path());
  const auto it = registry.find(id);
  if (it == registry.end()) {
    why = id + " not registered";
    return std::nullopt;
  }
  if (!std::filesystem::exists(it->second.path)) {
    why = id + " data file absent (" + it->second.path.string() + ")";
    return std::nullopt;
  }
  return load_csv(it->second);
}

Outcome fixed_cell(const std::string& id, Index m, double lo, double hi) {
  std::string why;
  const auto data = try_load(id, why);
  if (!data) return {false, why, true};
  ExperimentPlan plan{{GammaStrategy::ocrep()}, {m}, {}};
  const auto report = run_fixed_hidden(*data, plan);
  const auto& cell = report.cells.front();
  if (!cell.ok()) return {false, cell.failure.value_or("cell failed")};
  const bool pass = cell.stats.mean >= lo && cell.stats.mean <= hi;
  return {pass, id + " ocrep M=" + std::to_string(m) + ": mean " + fmt(cell.stats.mean) + " std " +
                    fmt(cell.stats.stddev) + " (band [" + fmt(lo) + ", " + fmt(hi) + "])"};
}

Outcome conditioning_ratios() {
  Protocol protocol;
  protocol.deadline = Clock::now() + std::chrono::minutes(28);
  std::string lines;
  int passed = 0;
  bool missing = false;
  bool code_failure = false;
  for (const auto& id : benchmark_ids()) {
    std::string why;
    std::optional<Dataset> data;
    try {
      data = try_load(id, why);
    } catch (const std::exception& e) {
      why = e.what();
    }
    if (!data) {
      lines += "\n    " + id + ": FAIL unattainable, " + why;
      missing = true;
      continue;
    }
    if (protocol.expired()) {
      lines += "\n    " + id + ": FAIL time budget exhausted";
      code_failure = true;
      continue;
    }
    const Index m = default_hidden_units(id).back();
    try {
      const auto r = condition_ratio_report(*data, m, protocol);
      const bool ok = r.ratio_unreg && r.ratio_cv && *r.ratio_unreg < 1e-2 && *r.ratio_cv <= 1.0;
      passed += ok ? 1 : 0;
      code_failure = code_failure || !ok;
      lines += "\n    " + id + " M=" + std::to_string(m) + ": " + (ok ? "PASS" : "FAIL") +
               " reg/unreg " + (r.ratio_unreg ? fmt(*r.ratio_unreg) : "n/a") + ", ocrep/cv " +
               (r.ratio_cv ? fmt(*r.ratio_cv) : "n/a");
    } catch (const std::exception& e) {
      code_failure = true;
      lines += "\n    " + id + ": FAIL " + e.what();
    }
  }
  Outcome out;
  out.pass = !missing && !code_failure;
  out.unattainable = missing && !code_failure;
  out.detail = std::to_string(passed) + "/" + std::to_string(benchmark_ids().size()) + " datasets pass" + lines;
  return out;
}

// N = 40 training rows, swept to M = 2N.
Outcome overfitting_control() {
  std::mt19937_64 gen(10);
  const Index total = 58;  // floor(0.7 * 58) = 40 training rows
  Dataset d;
  d.id = "synthetic";
  d.task = TaskKind::Regression;
  d.features = oracle::random_matrix(gen, total, 2);
  d.targets.resize(total, 1);
  std::normal_distribution<double> noise(0.0, 0.1);
  for (Index i = 0; i < total; ++i) {
    d.targets(i, 0) = std::sin(3.0 * d.features(i, 0)) + 0.5 * d.features(i, 1) * d.features(i, 1) + noise(gen);
  }
  d.feature_names = {"x0", "x1"};
  Protocol protocol;
  const auto train_rows = static_cast<Index>(split_train_test(d, protocol.split_seed()).train.size());
  SweepPlan plan{{GammaStrategy::unregularized(), GammaStrategy::ocrep()}, 1, 2 * train_rows, 1, 5000, protocol};
  const auto report = sweep_hidden_units(d, plan);
  const auto& unreg = report.sweeps[0];
  const auto& ocrep = report.sweeps[1];
  const double unreg_ratio = unreg.at(2 * train_rows).test.mean / unreg.min_test_mean();
  const double ocrep_ratio = ocrep.at(2 * train_rows).test.mean / ocrep.min_test_mean();
  return {train_rows == 40 && unreg_ratio > 10.0 && ocrep_ratio <= 2.0,
          "N=" + std::to_string(train_rows) + ", at M=2N: unreg/min " + fmt(unreg_ratio) + " (need > 10), ocrep/min " +
              fmt(ocrep_ratio) + " (need <= 2); M_bar unreg " + std::to_string(unreg.best_hidden_units) + ", ocrep " +
              std::to_string(ocrep.best_hidden_units)};
}

Outcome gamma_sweep_shape() {
  std::string why;
  const auto data = try_load("iris", why);
  if (!data) return {false, why, true};
  const auto sweep = sweep_gamma(*data, 100, GammaGrid::decades(), {});
  const auto& best = sweep.grid_minimum();
  const auto& ocrep = sweep.marker("ocrep");
  const auto& small = sweep.grid_row(1e-10);
  const double band = best.error.mean + 2.0 * best.error.stddev;
  const bool close = ocrep.error.mean <= band;
  const bool dispersed = small.error.stddev > ocrep.error.stddev;
  return {close && dispersed, "ocrep gamma~" + fmt(ocrep.gamma) + " err " + fmt(ocrep.error.mean) + " +- " +
                                  fmt(ocrep.error.stddev) + "; grid min at " + fmt(best.gamma) + " err " +
                                  fmt(best.error.mean) + " +- " + fmt(best.error.stddev) + " (band " + fmt(band) +
                                  "); std at 1e-10 " + fmt(small.error.stddev)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "optimal gamma brute force", 5, extremal_gamma_brute_force},
      {2, "beta-optimality", 10, beta_optimality},
      {3, "oracle equivalence", 5, oracle_equivalence},
      {4, "GCV spectral vs dense", 5, gcv_equivalence},
      {5, "Kibria / Hoerl-Kennard vs dense", 5, ridge_estimator_equivalence},
      {6, "Iris OCReP M=50 <= 3.8%", 120, [] { return fixed_cell("iris", 50, 0.0, 3.8); }},
      {7, "Housing OCReP M=300 RMSE in [3.4, 5.6]", 300, [] { return fixed_cell("housing", 300, 3.4, 5.6); }},
      {8, "conditioning ratios on the 8 benchmarks", 1800, conditioning_ratios},
      {9, "overfitting control, N=40 to M=2N", 60, overfitting_control},
      {10, "gamma-sweep shape on Iris M=100", 300, gamma_sweep_shape},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = out.pass && in_time;
    std::string tag = pass ? "PASS" : "FAIL";
    if (!pass && out.unattainable && in_time) tag += " (unattainable: data missing)";
    std::cout << "criterion " << c.id << " " << tag << ": " << c.title << " [" << fmt(secs) << " s of "
              << fmt(c.budget_seconds) << " s] " << out.detail << std::endl;
    if (!pass && !(out.unattainable && in_time)) ++failures;
  }
  std::cout << (failures == 0 ? "acceptance: no code failures" : "acceptance: " + std::to_string(failures) + " failing")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
