#include "doctest.h"

#include <cmath>
#include <cstdio>

#include "e2d2/discriminant.hpp"
#include "e2d2/error_theory.hpp"
#include "e2d2/synth.hpp"

#include "test_support.hpp"

using namespace e2d2;
using test_support::random_spd;
using test_support::random_vector;

namespace {

LabeledDataset two_blob_data(int n_plus, int n_minus, std::uint64_t seed) {
  const SymMatrix sigma = SymMatrix::identity(2);
  Rng rng(seed);
  const CholeskyFactor chol = cholesky(sigma);
  LabeledDataset data;
  data.p = 2;
  for (auto& x : sample_mvn({1.0, 0.0}, chol, n_plus, rng)) {
    data.samples.push_back(std::move(x));
    data.labels.push_back(+1);
  }
  for (auto& x : sample_mvn({-1.0, 0.0}, chol, n_minus, rng)) {
    data.samples.push_back(std::move(x));
    data.labels.push_back(-1);
  }
  return data;
}

}  // namespace

TEST_CASE("balanced data gives equal log-priors") {
  const LdaModel model = fit_lda(two_blob_data(20, 20, 1), EstimatorKind::diag());
  CHECK(model.log_prior_plus == model.log_prior_minus);
}

TEST_CASE("a 75/25 split gives log(0.75) and log(0.25) priors") {
  const LdaModel model = fit_lda(two_blob_data(30, 10, 2), EstimatorKind::diag());
  CHECK(model.log_prior_plus == doctest::Approx(std::log(0.75)));
  CHECK(model.log_prior_minus == doctest::Approx(std::log(0.25)));
}

TEST_CASE("fit with E2D2 composes glasso and desparsify") {
  const LabeledDataset data = two_blob_data(25, 25, 3);
  const LdaModel model = fit_lda(data, EstimatorKind::e2d2(0.3));
  const SymMatrix sigma = sample_covariance_mle(data);
  GlassoConfig cfg;
  cfg.lambda = 0.3;
  const SymMatrix expected = desparsify(graphical_lasso(sigma, cfg).theta, sigma);
  CHECK(model.precision.data() == expected.data());
}

TEST_CASE("single-class training data is rejected") {
  LabeledDataset data = two_blob_data(10, 10, 4);
  for (auto& l : data.labels) l = +1;
  CHECK_THROWS_AS(fit_lda(data, EstimatorKind::diag()), SingleClassData);
}

TEST_CASE("score at the midpoint with equal priors is zero") {
  Rng rng(5);
  const LdaModel model({2.0, -1.0, 0.5}, {0.0, 1.0, -0.5}, random_spd(3, rng),
                       std::log(0.5), std::log(0.5));
  Vector mid(3, 0.0);
  for (int i = 0; i < 3; ++i) {
    mid[std::size_t(i)] = 0.5 * (model.mu_plus[std::size_t(i)] + model.mu_minus[std::size_t(i)]);
  }
  CHECK(model.score(mid) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(model.predict(mid) == +1);  // ties go to the positive class
}

TEST_CASE("hand-computed score: identity precision, x = (2,0)") {
  const LdaModel model({1.0, 0.0}, {-1.0, 0.0}, SymMatrix::identity(2), std::log(0.5),
                       std::log(0.5));
  CHECK(model.score({2.0, 0.0}) == doctest::Approx(4.0));
  CHECK(model.predict({1.0, 0.0}) == +1);
  CHECK(model.predict({-1.0, 0.0}) == -1);
}

TEST_CASE("score equals a term-by-term evaluation of the two discriminants") {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const int p = 2 + int(rng.below(8));
    const LdaModel model(random_vector(p, rng), random_vector(p, rng), random_spd(p, rng),
                         std::log(0.3), std::log(0.7));
    const Vector x = random_vector(p, rng);

    double delta_plus = 0.0, delta_minus = 0.0;
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < p; ++j) {
        delta_plus += x[std::size_t(i)] * model.precision(i, j) * model.mu_plus[std::size_t(j)];
        delta_plus -= 0.5 * model.mu_plus[std::size_t(i)] * model.precision(i, j) *
                      model.mu_plus[std::size_t(j)];
        delta_minus += x[std::size_t(i)] * model.precision(i, j) * model.mu_minus[std::size_t(j)];
        delta_minus -= 0.5 * model.mu_minus[std::size_t(i)] * model.precision(i, j) *
                       model.mu_minus[std::size_t(j)];
      }
    }
    delta_plus += model.log_prior_plus;
    delta_minus += model.log_prior_minus;
    CHECK(model.score(x) == doctest::Approx(delta_plus - delta_minus).epsilon(1e-10));
    // The batch scorer agrees with the reference implementation.
    CHECK(LdaScorer(model).score(x) == doctest::Approx(model.score(x)).epsilon(1e-10));
  }
}

TEST_CASE("prediction is invariant to positive precision scaling when priors are equal") {
  Rng rng(7);
  const int p = 4;
  const LdaModel base(random_vector(p, rng), random_vector(p, rng), random_spd(p, rng),
                      std::log(0.5), std::log(0.5));
  for (double c : {0.1, 10.0}) {
    const LdaModel scaled(base.mu_plus, base.mu_minus, sym_scale(base.precision, c),
                          base.log_prior_plus, base.log_prior_minus);
    for (int trial = 0; trial < 50; ++trial) {
      const Vector x = random_vector(p, rng, 2.0);
      CHECK(base.predict(x) == scaled.predict(x));
    }
  }
}

TEST_CASE("swapping classes and priors negates the score") {
  Rng rng(8);
  const int p = 5;
  const LdaModel model(random_vector(p, rng), random_vector(p, rng), random_spd(p, rng),
                       std::log(0.3), std::log(0.7));
  const LdaModel swapped(model.mu_minus, model.mu_plus, model.precision, model.log_prior_minus,
                         model.log_prior_plus);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector x = random_vector(p, rng);
    CHECK(swapped.score(x) == doctest::Approx(-model.score(x)).epsilon(1e-12));
  }
}

TEST_CASE("monte carlo error with the true precision matches the closed form") {
  // delta = (2,0,0): separation 2, so the expected error is Phi(-1).
  Rng rng(9);
  const int p = 3;
  const SymMatrix sigma = SymMatrix::identity(p);
  const Vector mu_plus{1.0, 0.0, 0.0};
  const Vector mu_minus{-1.0, 0.0, 0.0};
  const LdaModel model(mu_plus, mu_minus, invert_spd(sigma), std::log(0.5), std::log(0.5));
  const LdaScorer scorer(model);

  const int n = 100000;
  const CholeskyFactor chol = cholesky(sigma);
  int wrong = 0;
  for (auto& x : sample_mvn(mu_plus, chol, n / 2, rng)) wrong += scorer.predict(x) != +1;
  for (auto& x : sample_mvn(mu_minus, chol, n / 2, rng)) wrong += scorer.predict(x) != -1;
  const double empirical = double(wrong) / n;
  const double expected = std_normal_cdf(-1.0);
  const double three_sigma = 3.0 * std::sqrt(expected * (1.0 - expected) / n);
  CHECK(std::abs(empirical - expected) <= three_sigma);
}

TEST_CASE("model JSON persistence round-trips") {
  const LdaModel model = fit_lda(two_blob_data(12, 8, 10), EstimatorKind::shrinkage(0.5));
  const std::string path = "test_model_roundtrip.json";
  save_model(path, model);
  const LdaModel back = load_model(path);
  std::remove(path.c_str());

  CHECK(back.dim() == model.dim());
  CHECK(back.mu_plus == model.mu_plus);
  CHECK(back.mu_minus == model.mu_minus);
  CHECK(back.precision.data() == model.precision.data());
  CHECK(back.log_prior_plus == model.log_prior_plus);
  CHECK(back.log_prior_minus == model.log_prior_minus);

  CHECK_THROWS_AS(load_model("does_not_exist.json"), IoError);
}

TEST_CASE("score rejects dimension mismatches") {
  const LdaModel model({0.0, 0.0}, {1.0, 1.0}, SymMatrix::identity(2), std::log(0.5),
                       std::log(0.5));
  CHECK_THROWS_AS(model.score({1.0}), DimensionMismatch);
}
