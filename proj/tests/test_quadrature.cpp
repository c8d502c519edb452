#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <random>

#include "levykac/quadrature.hpp"

using namespace levykac;

TEST_CASE("adaptive simpson hits closed forms") {
  CHECK(quad::integrate([](double x) { return x * x; }, 0.0, 1.0) ==
        Catch::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(quad::integrate([](double x) { return std::sin(x); }, 0.0, M_PI) ==
        Catch::Approx(2.0).epsilon(1e-12));
  CHECK(quad::integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0) ==
        Catch::Approx(std::sqrt(M_PI)).epsilon(1e-12));
}

TEST_CASE("relative tolerance keeps huge integrands affordable") {
  // integral of e^{0.9 u} over [0, 34]: value ~ 2e13; must terminate quickly
  const double v = quad::integrate([](double u) { return std::exp(0.9 * u); }, 0.0,
                                   34.0, 1e-12, 48, 1e-12);
  const double want = (std::exp(0.9 * 34.0) - 1.0) / 0.9;
  CHECK(v == Catch::Approx(want).epsilon(1e-10));
}

TEST_CASE("oscillatory cosine integral matches Laplace transform") {
  // int_0^inf e^{-xi} cos(x xi) dxi = 1 / (1 + x^2)
  for (double x : {3.0, 7.0, 25.0}) {
    const double v =
        quad::cosine_oscillatory([](double xi) { return std::exp(-xi); }, x, 0.0,
                                 60.0, 1e-13);
    CHECK(v == Catch::Approx(1.0 / (1.0 + x * x)).epsilon(1e-8));
  }
  // slowly decaying envelope, mpmath reference: int_0^inf cos(5 xi)/(1+xi)^2
  const double ref = 0.0188713603831 * M_PI;
  const double v = quad::cosine_oscillatory(
      [](double xi) { return 1.0 / ((1.0 + xi) * (1.0 + xi)); }, 5.0, 0.0, 1e6,
      1e-13);
  CHECK(v == Catch::Approx(ref).epsilon(1e-7));
}

TEST_CASE("tail integration converges and flags divergence") {
  auto decays = quad::integrate_tail([](double x) { return 1.0 / (x * x); }, 1.0);
  CHECK(decays.converged);
  CHECK(decays.value == Catch::Approx(1.0).epsilon(1e-8));

  auto diverges = quad::integrate_tail([](double x) { return 1.0 / x; }, 1.0);
  CHECK_FALSE(diverges.converged);
  CHECK(diverges.diverging);
}

TEST_CASE("line fit recovers exact coefficients") {
  std::vector<double> xs, ys;
  for (int i = 0; i < 12; ++i) {
    xs.push_back(0.5 * i);
    ys.push_back(3.0 * xs.back() - 2.0);
  }
  const auto fit = quad::fit_line(xs, ys);
  CHECK(fit.slope == Catch::Approx(3.0).margin(1e-12));
  CHECK(fit.intercept == Catch::Approx(-2.0).margin(1e-12));
  CHECK(fit.slope_stderr == Catch::Approx(0.0).margin(1e-12));
  CHECK_THROWS_AS(quad::fit_line({1.0}, {2.0}), parameter_error);
}

TEST_CASE("pairwise summation equals sequential on benign data") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(1000);
  for (auto& c : v) c = u(gen);
  const double seq = std::accumulate(v.begin(), v.end(), 0.0);
  CHECK(quad::pairwise_sum(v) == Catch::Approx(seq).margin(1e-12));
}
