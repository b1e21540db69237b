#include "doctest.h"

#include <cmath>

#include "e2d2/error_theory.hpp"
#include "e2d2/synth.hpp"

#include "test_support.hpp"

using namespace e2d2;
using test_support::random_spd;
using test_support::random_vector;

TEST_CASE("standard normal cdf basics") {
  CHECK(std_normal_cdf(0.0) == 0.5);
  CHECK(std_normal_cdf(-1.0) == doctest::Approx(0.15865525393145707).epsilon(1e-12));

  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const double z = 8.0 * (rng.uniform_co() - 0.5);
    CHECK(std_normal_cdf(z) + std_normal_cdf(-z) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("standard normal cdf agrees with Simpson quadrature of the density") {
  // Independent oracle: integrate the density from -12 to z.
  auto quadrature = [](double z) {
    const double lo = -12.0;
    const int n = 20000;  // even
    const double h = (z - lo) / n;
    auto density = [](double t) {
      return std::exp(-0.5 * t * t) / std::sqrt(2.0 * 3.14159265358979323846);
    };
    double acc = density(lo) + density(z);
    for (int i = 1; i < n; ++i) acc += density(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
  };
  for (double z : {-3.0, -1.0, -0.2, 0.0, 0.7, 2.5}) {
    CHECK(std_normal_cdf(z) == doctest::Approx(quadrature(z)).epsilon(1e-10));
  }
}

TEST_CASE("general expected error with exact parameters reduces to the Bayes error") {
  const GaussianPair truth({1.0, 0.0}, {-1.0, 0.0}, SymMatrix::identity(2), 0.5);
  const double eps =
      expected_error_general(truth, truth.mu_plus, truth.mu_minus, SymMatrix::identity(2));
  CHECK(eps == doctest::Approx(std_normal_cdf(-1.0)).epsilon(1e-12));
}

TEST_CASE("nearly coincident estimated means give an error near one half") {
  // The formula depends only on the direction of the estimated gap, so
  // "no separation" means a tiny gap pointing somewhere uninformative
  // (orthogonal to the true gap here).
  const GaussianPair truth({1.0, 0.0}, {-1.0, 0.0}, SymMatrix::identity(2), 0.5);
  const Vector mu_hat_plus{0.0, 1e-9};
  const Vector mu_hat_minus{0.0, 0.0};
  const double eps = expected_error_general(truth, mu_hat_plus, mu_hat_minus,
                                            SymMatrix::identity(2));
  CHECK(eps == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("general expected error matches monte carlo classification") {
  Rng rng(20240609);
  const int p = 5;
  const SymMatrix sigma = random_spd(p, rng);
  const Vector mu_plus = random_vector(p, rng);
  Vector mu_minus = mu_plus;
  for (auto& v : mu_minus) v -= 0.9;
  const double prior_plus = 0.4;
  const GaussianPair truth(mu_plus, mu_minus, sigma, prior_plus);

  // Noisy plug-ins: perturbed means and the pseudo-inverse of a noisy
  // covariance.
  Vector mu_hat_plus = mu_plus, mu_hat_minus = mu_minus;
  for (auto& v : mu_hat_plus) v += 0.2 * rng.normal();
  for (auto& v : mu_hat_minus) v += 0.2 * rng.normal();
  SymMatrix noisy = sigma;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j <= i; ++j) noisy.set(i, j, sigma(i, j) + 0.1 * rng.normal());

  const SymMatrix p_hat = pseudo_inverse(noisy);
  const double eps = expected_error_general(truth, mu_hat_plus, mu_hat_minus, p_hat);

  // Equal-prior-threshold classifier evaluated on class draws mixed by the
  // true priors.
  const Vector delta_hat = vec_sub(mu_hat_plus, mu_hat_minus);
  const Vector u = matvec(p_hat, delta_hat);
  Vector mid(std::size_t(p), 0.0);
  for (int i = 0; i < p; ++i)
    mid[std::size_t(i)] = 0.5 * (mu_hat_plus[std::size_t(i)] + mu_hat_minus[std::size_t(i)]);

  const int n = 200000;
  const CholeskyFactor chol = cholesky(sigma);
  Rng mc(987654321);
  int wrong = 0;
  Vector z(std::size_t(p), 0.0);
  for (int s = 0; s < n; ++s) {
    const bool positive = mc.uniform_co() < prior_plus;
    const Vector& mu = positive ? mu_plus : mu_minus;
    for (int i = 0; i < p; ++i) z[std::size_t(i)] = mc.normal();
    double stat = 0.0;
    for (int i = 0; i < p; ++i) {
      double xi = mu[std::size_t(i)];
      for (int j = 0; j <= i; ++j) xi += chol(i, j) * z[std::size_t(j)];
      stat += (xi - mid[std::size_t(i)]) * u[std::size_t(i)];
    }
    const int predicted = stat >= 0.0 ? +1 : -1;
    wrong += predicted != (positive ? +1 : -1);
  }
  const double empirical = double(wrong) / n;
  const double three_sigma = 3.0 * std::sqrt(eps * (1.0 - eps) / n);
  CHECK(std::abs(empirical - eps) <= three_sigma);
}

TEST_CASE("reduced error with the true precision collapses to the Mahalanobis form") {
  Rng rng(77);
  const int p = 4;
  const SymMatrix sigma = random_spd(p, rng);
  const Vector mu_plus = random_vector(p, rng);
  const Vector mu_minus = random_vector(p, rng);
  const SymMatrix prec = invert_spd(sigma);
  const double eps = expected_error_reduced(mu_plus, mu_minus, sigma, prec);
  const Vector delta = vec_sub(mu_plus, mu_minus);
  const double mahal = std::sqrt(quad_form(prec, delta));
  CHECK(eps == doctest::Approx(std_normal_cdf(-0.5 * mahal)).epsilon(1e-12));
}

TEST_CASE("reduced error equals the general form at exact means and prior one half") {
  Rng rng(78);
  for (int trial = 0; trial < 10; ++trial) {
    const int p = 2 + int(rng.below(6));
    const SymMatrix sigma = random_spd(p, rng);
    const Vector mu_plus = random_vector(p, rng);
    const Vector mu_minus = random_vector(p, rng);
    const SymMatrix p_hat = random_spd(p, rng);
    const GaussianPair truth(mu_plus, mu_minus, sigma, 0.5);
    CHECK(expected_error_reduced(mu_plus, mu_minus, sigma, p_hat) ==
          doctest::Approx(expected_error_general(truth, mu_plus, mu_minus, p_hat))
              .epsilon(1e-12));
  }
}

TEST_CASE("reduced error is invariant under positive scaling of the precision") {
  Rng rng(79);
  for (int trial = 0; trial < 10; ++trial) {
    const int p = 2 + int(rng.below(6));
    const SymMatrix sigma = random_spd(p, rng);
    const Vector mu_plus = random_vector(p, rng);
    const Vector mu_minus = random_vector(p, rng);
    const SymMatrix p_hat = random_spd(p, rng);
    const double base = expected_error_reduced(mu_plus, mu_minus, sigma, p_hat);
    for (double c : {1e-3, 0.1, 7.0, 1e4}) {
      const double scaled = expected_error_reduced(mu_plus, mu_minus, sigma,
                                                   sym_scale(p_hat, c));
      CHECK(scaled == doctest::Approx(base).epsilon(1e-12));
    }
  }
}

TEST_CASE("degenerate directions are rejected") {
  const SymMatrix sigma = SymMatrix::identity(2);
  const SymMatrix zero(2);
  CHECK_THROWS_AS(expected_error_reduced({1.0, 0.0}, {-1.0, 0.0}, sigma, zero),
                  DegenerateDirection);
  const GaussianPair truth({1.0, 0.0}, {-1.0, 0.0}, sigma, 0.5);
  CHECK_THROWS_AS(expected_error_general(truth, {1.0, 0.0}, {1.0, 0.0}, sigma),
                  DegenerateDirection);
}

TEST_CASE("frobenius error bound special cases") {
  // p = 1, unit precision, separation 2: Phi(-1).
  SymMatrix one(1);
  one.set(0, 0, 1.0);
  CHECK(error_bound_frobenius({2.0}, {0.0}, one, one) ==
        doctest::Approx(std_normal_cdf(-1.0)).epsilon(1e-12));
  // No separation: Phi(0) = 1/2.
  CHECK(error_bound_frobenius({1.0, 1.0}, {1.0, 1.0}, SymMatrix::identity(2),
                              SymMatrix::identity(2)) == 0.5);
}

TEST_CASE("both bounds shrink as the mean separation grows") {
  Rng rng(80);
  const int p = 4;
  const SymMatrix sigma = random_spd(p, rng);
  const SymMatrix t_hat = random_spd(p, rng);
  double prev_frob = 1.0, prev_rate = 1.0;
  for (double sep : {0.1, 0.5, 1.0, 2.0, 4.0}) {
    Vector mu_plus(std::size_t(p), 0.0);
    mu_plus[0] = sep;
    const Vector mu_minus(std::size_t(p), 0.0);
    const double b1 = error_bound_frobenius(mu_plus, mu_minus, t_hat, sigma);
    const double b3 = error_bound_rate(mu_plus, mu_minus, t_hat, 100, 1.0);
    CHECK(b1 < prev_frob);
    CHECK(b3 < prev_rate);
    prev_frob = b1;
    prev_rate = b3;
  }
}

TEST_CASE("rate bound limits and monotonicity") {
  Rng rng(81);
  const int p = 10;
  const SymMatrix t_hat = random_spd(p, rng);
  Vector mu_plus(std::size_t(p), 0.0);
  mu_plus[0] = 1.5;
  const Vector mu_minus(std::size_t(p), 0.0);

  SUBCASE("c_rate = 0 drops the error term entirely") {
    const double expect =
        std_normal_cdf(-0.5 * 1.5 * std::sqrt(norms(t_hat).frobenius));
    CHECK(error_bound_rate(mu_plus, mu_minus, t_hat, 50, 0.0) ==
          doctest::Approx(expect).epsilon(1e-14));
  }
  SUBCASE("larger c_rate can only lower the bound") {
    double prev = 1.0;
    for (double c : {0.0, 0.5, 1.0, 2.0, 8.0}) {
      const double b = error_bound_rate(mu_plus, mu_minus, t_hat, 50, c);
      CHECK(b <= prev);
      prev = b;
    }
  }
  SUBCASE("growing m raises the bound toward the c_rate = 0 limit") {
    const double limit = error_bound_rate(mu_plus, mu_minus, t_hat, 50, 0.0);
    double prev = 0.0;
    for (int m : {50, 100, 200, 800}) {
      const double b = error_bound_rate(mu_plus, mu_minus, t_hat, m, 1.0);
      CHECK(b >= prev);
      CHECK(b <= limit);
      prev = b;
    }
  }
}

TEST_CASE("max vector support") {
  CHECK(max_vector_support(SymMatrix::identity(4)) == 1);

  SymMatrix tri(5);
  for (int i = 0; i < 5; ++i) tri.set(i, i, 1.0);
  for (int i = 0; i + 1 < 5; ++i) tri.set(i, i + 1, 0.4);
  CHECK(max_vector_support(tri) == 3);

  Rng rng(82);
  SymMatrix dense = random_spd(6, rng);
  CHECK(max_vector_support(dense) == 6);

  // Banded with bandwidth b has support 2b+1 once p > 2b.
  for (int b : {1, 2, 3}) {
    const int p = 2 * b + 4;
    SymMatrix banded(p);
    for (int i = 0; i < p; ++i) {
      banded.set(i, i, 1.0);
      for (int j = std::max(0, i - b); j < i; ++j) banded.set(i, j, 0.1);
    }
    CHECK(max_vector_support(banded) == 2 * b + 1);
  }
}
