#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "levykac/assumptions.hpp"

using namespace levykac;
using namespace levykac::assumptions;

TEST_CASE("intensity ratio regularity") {
  SECTION("stable law: worst pair sits at the inner edge") {
    // sup over r <= y <= x <= y+1 of (x/y)^{d+alpha} = ((r+1)/r)^2 = 9 at r = 1/2
    const auto e = check_ratio_regularity(LevyModel::stable(1.0), 0.5);
    CHECK(e.verdict == Verdict::Pass);
    CHECK(e.constant == Catch::Approx(9.0).epsilon(1e-10));
  }
  SECTION("identical points give ratio one") {
    const auto e = check_ratio_regularity(
        [](double) { return -1.0; }, 0.5);  // constant log-intensity
    CHECK(e.constant == Catch::Approx(1.0).margin(1e-14));
    CHECK(e.verdict == Verdict::Pass);
  }
  SECTION("tempered profile: e^a times the power factor") {
    const auto e =
        check_ratio_regularity(LevyModel::tempered(1.0, 1.0, 1.0, 2.0), 0.5);
    CHECK(e.verdict == Verdict::Pass);
    CHECK(e.constant == Catch::Approx(9.0 * std::exp(1.0)).epsilon(1e-9));
  }
  SECTION("gaussian-type tempering diverges") {
    const auto e =
        check_ratio_regularity(LevyModel::tempered(1.0, 2.0, 1.0, 2.0), 0.5);
    CHECK(e.verdict == Verdict::FailDivergent);
  }
  CHECK_THROWS_AS(check_ratio_regularity(LevyModel::stable(1.0), 0.7),
                  parameter_error);
}

TEST_CASE("monotone domination") {
  for (const auto& md :
       {LevyModel::stable(1.0), LevyModel::stable_mixture(1.5, 0.5, 1.0, 1.0),
        LevyModel::tempered(1.0, 1.0, 1.0, 2.0)}) {
    const auto e = check_monotone_domination(md);
    CHECK(e.verdict == Verdict::Pass);
    CHECK(e.constant == Catch::Approx(1.0).margin(1e-12));
  }
  // relativistic profile carries a growing correction factor yet stays tame
  const auto e = check_monotone_domination(LevyModel::relativistic(1.0, 1.0));
  CHECK(e.verdict == Verdict::Pass);
  CHECK(e.constant < 2.0);
}

TEST_CASE("convolution domination constant") {
  SECTION("stable: bounded with scipy-frozen profile") {
    const auto e = check_convolution_condition(LevyModel::stable(1.0),
                                               {1, 2, 5, 10, 20, 30});
    CHECK(e.verdict == Verdict::Pass);
    // independent scipy.quad references on the same Z = s + 50 truncation
    const std::vector<double> want = {0.298854515206, 2.05150607159, 2.46962433963,
                                      2.52725059116,  2.54141507067, 2.54387060974};
    REQUIRE(e.samples.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i)
      CHECK(e.samples[i].second == Catch::Approx(want[i]).epsilon(1e-6));
    const double k20 = e.samples[4].second, k30 = e.samples[5].second;
    CHECK(std::abs(k30 - k20) / k20 < 0.1);
  }
  SECTION("gaussian-type tempering blows up") {
    const auto e = check_convolution_condition(
        LevyModel::tempered(1.0, 2.0, 1.0, 2.0), {2, 5, 10, 20});
    CHECK(e.verdict == Verdict::FailDivergent);
    CHECK(e.samples.front().second == Catch::Approx(30.0259).epsilon(1e-4));
    CHECK(e.samples.back().second / e.samples.front().second > 1e3);
  }
  SECTION("relativistic profile stays bounded") {
    const auto e = check_convolution_condition(LevyModel::relativistic(1.0, 1.0),
                                               {2, 3, 5, 8, 12, 16, 20});
    CHECK(e.verdict == Verdict::Pass);
    CHECK(e.constant == Catch::Approx(11.0).epsilon(0.05));
  }
  SECTION("exponentially tempered admissible case") {
    const auto e = check_convolution_condition(
        LevyModel::tempered(1.0, 1.0, 1.0, 2.0), {2, 3, 5, 8, 12, 16, 20});
    CHECK(e.verdict == Verdict::Pass);
  }
  CHECK_THROWS_AS(
      check_convolution_condition(LevyModel::stable(1.0), {0.5, 2.0}),
      parameter_error);
  CHECK_THROWS_AS(
      check_convolution_condition(LevyModel::stable(1.0), {2.0, 2.0}),
      parameter_error);
}

TEST_CASE("potential comparability") {
  SECTION("quadratic: worst case at the inner edge") {
    const auto e = check_potential_comparability(Potential::power(1.0, 2.0), 2.0);
    CHECK(e.verdict == Verdict::Pass);
    CHECK(e.constant == Catch::Approx(2.25).epsilon(1e-10));
  }
  SECTION("constant potential") {
    const auto e = check_potential_comparability(Potential::constant(3.0), 2.0);
    CHECK(e.constant == Catch::Approx(1.0).margin(1e-14));
  }
  SECTION("exponential growth is still comparable") {
    const auto e = check_potential_comparability(
        [](double x) { return std::exp(std::abs(x)); }, 2.0);
    CHECK(e.verdict == Verdict::Pass);
    CHECK(e.constant == Catch::Approx(std::exp(1.0)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(check_potential_comparability(Potential::power(1.0, 2.0), 0.5),
                  parameter_error);
}

TEST_CASE("log-intensity integrability") {
  const auto stable = check_log_nu_integrability(LevyModel::stable(1.0), 1.0);
  CHECK(stable.verdict == Verdict::Pass);
  CHECK(stable.constant > 0.0);
  const auto temp =
      check_log_nu_integrability(LevyModel::tempered(1.0, 1.0, 1.0, 2.0), 1.0);
  CHECK(temp.verdict == Verdict::Pass);
  // fixture with a bare |x|^{-1} tail: log|x| / |x| diverges
  const auto fixture = check_log_nu_integrability(
      [](double x) { return -std::log(x); }, 1.0);
  CHECK(fixture.verdict == Verdict::FailDivergent);
}

TEST_CASE("log-scale comparison of intensity, density and hitting") {
  SECTION("stable law: all three logs grow alike") {
    const auto e = check_log_comparison(LevyModel::stable(1.0), 1.0, 5.0, 30.0);
    CHECK(e.verdict == Verdict::Pass);
    CHECK(e.constant < 1.5);
    // far-sample pairwise ratio drifts to one
    CHECK(e.samples.back().second == Catch::Approx(1.0).margin(0.25));
  }
  SECTION("radial symmetry of the ingredients") {
    const auto md = LevyModel::stable(1.0);
    CHECK(transition_density(md, 1.0, 7.0) ==
          Catch::Approx(transition_density(md, 1.0, -7.0)).epsilon(1e-12));
  }
  SECTION("tempered family stays within loose two-sided bounds") {
    const auto e = check_log_comparison(LevyModel::tempered(1.0, 1.0, 1.0, 2.0),
                                        1.0, 5.0, 15.0);
    CHECK(e.verdict == Verdict::Pass);
    CHECK(e.constant < 2.0);
  }
  SECTION("geometric stable at non-integrable t is inconclusive") {
    const auto e = check_log_comparison(LevyModel::geometric_stable(1.0), 1.0,
                                        5.0, 30.0);
    CHECK(e.verdict == Verdict::Inconclusive);
  }
}

TEST_CASE("verdicts are monotone under window nesting") {
  // a pass at window W must not become fail-divergent on a sub-window
  SampleSpec wide, narrow;
  wide.windows = 4;
  narrow.windows = 4;
  narrow.growth = 1.5;
  for (const auto& md : {LevyModel::stable(1.0), LevyModel::relativistic(1.0, 1.0)}) {
    const auto a = check_ratio_regularity(md, 0.5, wide);
    const auto b = check_ratio_regularity(md, 0.5, narrow);
    CHECK(a.verdict == Verdict::Pass);
    CHECK(b.verdict == Verdict::Pass);
  }
}

TEST_CASE("empirical constants are sign-flip invariant") {
  // the checkers sample radii; evaluating the intensity at -x must agree
  const auto md = LevyModel::stable(1.5);
  for (double x : {0.7, 3.0, 11.0})
    CHECK(log_levy_density(md, x) ==
          Catch::Approx(log_levy_density(md, std::abs(-x))).epsilon(1e-15));
}
