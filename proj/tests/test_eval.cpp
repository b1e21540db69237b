#include "doctest.h"

#include <cmath>
#include <set>
#include <sstream>

#include "e2d2/eval.hpp"

#include "test_support.hpp"

using namespace e2d2;

namespace {

SyntheticClassSpec small_spec() {
  SyntheticClassSpec spec;
  spec.precision.p = 8;
  spec.precision.bandwidth = 1;
  spec.precision.offdiag_strength = 0.4;
  spec.sigma_scale = 1.0;
  spec.mean_separation = 2.5;
  return spec;
}

}  // namespace

TEST_CASE("metrics of hand-checked confusion matrices") {
  const ClassificationMetrics m = metrics({50, 40, 10, 0});
  CHECK(m.accuracy == doctest::Approx(0.9));
  CHECK(*m.f1 == doctest::Approx(100.0 / 110.0));
  CHECK(*m.sensitivity == 1.0);
  CHECK(*m.specificity == doctest::Approx(0.8));

  const ClassificationMetrics perfect = metrics({30, 30, 0, 0});
  CHECK(perfect.accuracy == 1.0);
  CHECK(*perfect.f1 == 1.0);
  CHECK(*perfect.sensitivity == 1.0);
  CHECK(*perfect.specificity == 1.0);

  // All-positive predictor on balanced data.
  const ClassificationMetrics all_pos = metrics({50, 0, 50, 0});
  CHECK(all_pos.accuracy == doctest::Approx(0.5));
  CHECK(*all_pos.f1 == doctest::Approx(2.0 / 3.0));
  CHECK(*all_pos.sensitivity == 1.0);
  CHECK(*all_pos.specificity == 0.0);
}

TEST_CASE("metrics undefined cases and validation") {
  CHECK_THROWS_AS(metrics({0, 0, 0, 0}), EmptyConfusion);
  const ClassificationMetrics no_pos = metrics({0, 5, 2, 0});  // no positive truth
  CHECK_FALSE(no_pos.sensitivity.has_value());
  CHECK(no_pos.specificity.has_value());
  const ClassificationMetrics no_neg = metrics({5, 0, 0, 2});  // no negative truth
  CHECK_FALSE(no_neg.specificity.has_value());
  const ClassificationMetrics no_f1 = metrics({0, 5, 0, 0});  // tp = fp = fn = 0
  CHECK_FALSE(no_f1.f1.has_value());
}

TEST_CASE("metrics are exact ratios of the integer counts") {
  test_support::Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    Confusion c;
    c.tp = static_cast<long long>(rng.below(1000));
    c.tn = static_cast<long long>(rng.below(1000));
    c.fp = static_cast<long long>(rng.below(1000));
    c.fn = static_cast<long long>(rng.below(1000));
    if (c.total() == 0) continue;
    const ClassificationMetrics m = metrics(c);
    CHECK(m.accuracy == double(c.tp + c.tn) / double(c.total()));
    if (c.tp + c.fn > 0) CHECK(*m.sensitivity == double(c.tp) / double(c.tp + c.fn));
    if (c.tn + c.fp > 0) CHECK(*m.specificity == double(c.tn) / double(c.tn + c.fp));
    if (2 * c.tp + c.fp + c.fn > 0) {
      CHECK(*m.f1 == double(2 * c.tp) / double(2 * c.tp + c.fp + c.fn));
    }
  }
}

TEST_CASE("a single-trial report equals the direct fit/predict/metrics composition") {
  ClassifyBenchConfig cfg;
  cfg.source = small_spec();
  cfg.train_sizes_per_class = {15};
  cfg.test_size_per_class = 40;
  cfg.algorithms = {EstimatorKind::diag()};
  cfg.repeats = 1;
  cfg.base_seed = 31337;
  cfg.threads = 1;
  const TrialReport report = run_classification_trials(cfg);
  REQUIRE(report.cells.size() == 1);

  // Rebuild the same trial by hand: same derived seed, same draw order.
  const GroundTruth truth = make_ground_truth(small_spec());
  Rng rng(31337);
  LabeledDataset train, test;
  train.p = test.p = 8;
  {
    Rng r2(31337);
    auto tp = sample_mvn(truth.mu_plus, truth.sigma_chol, 15, r2);
    auto tm = sample_mvn(truth.mu_minus, truth.sigma_chol, 15, r2);
    auto sp = sample_mvn(truth.mu_plus, truth.sigma_chol, 40, r2);
    auto sm = sample_mvn(truth.mu_minus, truth.sigma_chol, 40, r2);
    for (auto& x : tp) { train.samples.push_back(x); train.labels.push_back(+1); }
    for (auto& x : tm) { train.samples.push_back(x); train.labels.push_back(-1); }
    for (auto& x : sp) { test.samples.push_back(x); test.labels.push_back(+1); }
    for (auto& x : sm) { test.samples.push_back(x); test.labels.push_back(-1); }
  }
  const LdaModel model = fit_lda(train, EstimatorKind::diag());
  const ClassificationMetrics direct = metrics(evaluate_model(model, test));
  CHECK(report.cells[0].accuracy.mean == direct.accuracy);
  CHECK(report.cells[0].f1.mean == *direct.f1);
  CHECK(report.cells[0].accuracy.stddev == 0.0);
}

TEST_CASE("reports are reproducible and thread-count independent") {
  ClassifyBenchConfig cfg;
  cfg.source = small_spec();
  cfg.train_sizes_per_class = {10, 20};
  cfg.test_size_per_class = 30;
  cfg.algorithms = {EstimatorKind::pseudo_inverse_lda(), EstimatorKind::e2d2(1.0)};
  cfg.repeats = 6;
  cfg.base_seed = 99;
  cfg.threads = 1;
  const TrialReport a = run_classification_trials(cfg);
  cfg.threads = 2;
  const TrialReport b = run_classification_trials(cfg);

  REQUIRE(a.cells.size() == b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    CHECK(a.cells[i].accuracy.mean == b.cells[i].accuracy.mean);
    CHECK(a.cells[i].accuracy.stddev == b.cells[i].accuracy.stddev);
    CHECK(a.cells[i].split_hashes == b.cells[i].split_hashes);
  }

  std::ostringstream csv_a, csv_b;
  write_classification_csv(csv_a, a);
  write_classification_csv(csv_b, b);
  CHECK(csv_a.str() == csv_b.str());
}

TEST_CASE("every algorithm sees the identical split in each trial") {
  ClassifyBenchConfig cfg;
  cfg.source = small_spec();
  cfg.train_sizes_per_class = {12};
  cfg.test_size_per_class = 20;
  cfg.algorithms = {EstimatorKind::pseudo_inverse_lda(), EstimatorKind::diag(),
                    EstimatorKind::shrinkage(0.5), EstimatorKind::e2d2(0.5)};
  cfg.repeats = 4;
  cfg.base_seed = 7;
  const TrialReport report = run_classification_trials(cfg);
  for (int r = 0; r < cfg.repeats; ++r) {
    const std::uint64_t h = report.cell(0, 0).split_hashes[std::size_t(r)];
    for (std::size_t ai = 1; ai < cfg.algorithms.size(); ++ai) {
      CHECK(report.cell(0, ai).split_hashes[std::size_t(r)] == h);
    }
  }
}

TEST_CASE("csv-backed splits are balanced, disjoint, and size-checked") {
  // Build a dataset whose feature value encodes the sample index.
  LabeledDataset pool;
  pool.p = 1;
  for (int i = 0; i < 40; ++i) {
    pool.samples.push_back({double(i)});
    pool.labels.push_back(i < 20 ? +1 : -1);
  }
  detail::CsvSplitter splitter(pool);
  Rng rng(123);
  const auto [train, test] = splitter.split(5, 8, rng);
  REQUIRE(train.size() == 10);
  REQUIRE(test.size() == 16);
  CHECK(train.count_label(+1) == 5);
  CHECK(test.count_label(+1) == 8);
  std::set<double> seen;
  for (const auto& x : train.samples) CHECK(seen.insert(x[0]).second);
  for (const auto& x : test.samples) CHECK(seen.insert(x[0]).second);

  CHECK_THROWS_AS(splitter.split(15, 8, rng), InsufficientData);
}

TEST_CASE("estimator error study is deterministic and internally consistent") {
  EstimatorStudyConfig cfg;
  cfg.truth = small_spec();
  cfg.n_large_per_class = 400;
  cfg.sizes_per_class = {10, 25};
  cfg.lambdas = {0.5, 2.0};
  cfg.repeats = 3;
  cfg.base_seed = 11;
  cfg.threads = 2;
  const EstimatorStudyReport a = estimator_error_study(cfg);
  cfg.threads = 1;
  const EstimatorStudyReport b = estimator_error_study(cfg);

  REQUIRE(a.cells.size() == 4);
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    CHECK(a.cells[i].gaps == b.cells[i].gaps);
    CHECK(a.cells[i].gap_mean == b.cells[i].gap_mean);
    // gap = crda_l1 - e2d2_l1, trial by trial
    for (int r = 0; r < cfg.repeats; ++r) {
      CHECK(a.cells[i].gaps[std::size_t(r)] ==
            a.cells[i].crda_l1[std::size_t(r)] - a.cells[i].e2d2_l1[std::size_t(r)]);
    }
    // The LDA distance does not depend on lambda.
    CHECK(a.cell(i / 2, 0).lda_l1 == a.cell(i / 2, 1).lda_l1);
  }

  std::ostringstream gap_a, gap_b, err_a, err_b, dat_a, dat_b;
  write_gap_table_csv(gap_a, a);
  write_gap_table_csv(gap_b, b);
  write_estimator_errors_csv(err_a, a);
  write_estimator_errors_csv(err_b, b);
  write_error_curves_dat(dat_a, a);
  write_error_curves_dat(dat_b, b);
  CHECK(gap_a.str() == gap_b.str());
  CHECK(err_a.str() == err_b.str());
  CHECK(dat_a.str() == dat_b.str());

  // Sanity on the CSV shape: header plus one row per size.
  int lines = 0;
  for (char c : gap_a.str()) lines += (c == '\n');
  CHECK(lines == 1 + int(cfg.sizes_per_class.size()));
}

TEST_CASE("config validation") {
  ClassifyBenchConfig cfg;
  cfg.source = small_spec();
  cfg.test_size_per_class = 10;
  cfg.algorithms = {EstimatorKind::diag()};
  cfg.repeats = 2;
  CHECK_THROWS_AS(run_classification_trials(cfg), InvalidSpec);  // no train sizes

  EstimatorStudyConfig study;
  study.truth = small_spec();
  study.sizes_per_class = {10};
  study.lambdas = {};
  CHECK_THROWS_AS(estimator_error_study(study), InvalidSpec);
}
