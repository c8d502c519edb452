#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "levykac/classify.hpp"

using namespace levykac;
using namespace levykac::classify;

namespace {

const LevyModel& cauchy() {
  static const LevyModel md = LevyModel::stable(1.0);
  return md;
}

SpectrumResult solve(const LevyModel& md, const Potential& V, double L, int k = 16) {
  return lowest_eigenpairs(build_operator(md, V, Grid(1, L, 512)), k, 1e-9);
}

ClassificationReport classify_small(const LevyModel& md, const Potential& V) {
  const auto base = solve(md, V, 20.0);
  const auto doubled = solve(md, V, 40.0);
  return classify_pair(md, V, base, doubled);
}

}  // namespace

TEST_CASE("borderline ratio profiles and trend tags") {
  SECTION("quadratic potential runs away") {
    const auto p = borderline_ratio(cauchy(), Potential::power(1.0, 2.0),
                                    default_radial_samples());
    CHECK(p.trend == Trend::ToInfinity);
    CHECK(p.fit.slope > 1.5);
  }
  SECTION("borderline potential is exactly flat at 1/t0") {
    const auto V = borderline_potential(cauchy(), 2.0, 2.0);
    const auto p = borderline_ratio(cauchy(), V, default_radial_samples());
    CHECK(p.trend == Trend::BoundedPositive);
    for (const auto& [x, rho] : p.samples)
      CHECK(rho == Catch::Approx(0.5).epsilon(1e-12));
  }
  SECTION("iterated logarithm sinks to zero") {
    const auto p = borderline_ratio(cauchy(), Potential::loglog(1.0),
                                    default_radial_samples());
    CHECK(p.trend == Trend::ToZero);
  }
  SECTION("profiles scale exactly with the potential") {
    const auto p1 = borderline_ratio(cauchy(), Potential::power(1.0, 2.0),
                                     default_radial_samples());
    const auto p2 = borderline_ratio(cauchy(), Potential::power(3.0, 2.0),
                                     default_radial_samples());
    for (std::size_t i = 0; i < p1.samples.size(); ++i)
      CHECK(p2.samples[i].second ==
            Catch::Approx(3.0 * p1.samples[i].second).epsilon(1e-12));
  }
  SECTION("samples where nu >= 1 are rejected") {
    CHECK_THROWS_AS(borderline_ratio(cauchy(), Potential::power(1.0, 2.0),
                                     {0.3, 2.0, 10.0}),
                    sampling_error);
  }
}

TEST_CASE("free energy over annuli") {
  const auto annuli = default_annuli();
  SECTION("borderline potential zeroes the functional at its own t0") {
    const auto V = borderline_potential(cauchy(), 1.0, 2.0);
    const auto rep = free_energy(cauchy(), V, 1.0, annuli);
    for (const auto& row : rep.rows) {
      CHECK(row.sign == 0);
      CHECK(row.free_energy == Catch::Approx(row.energy - row.entropy));
      const double scale = std::max(row.energy, row.entropy);
      CHECK(std::abs(row.free_energy) <= 1e-8 * scale);
    }
    CHECK(rep.all_nonnegative());
  }
  SECTION("doubling the potential makes it strictly positive") {
    const auto V = borderline_potential(cauchy(), 1.0, 2.0);
    const auto rep = free_energy(cauchy(), V, 2.0, annuli);
    for (const auto& row : rep.rows) CHECK(row.sign == 1);
  }
  SECTION("a quarter of the borderline potential is strictly negative") {
    // t0 = 4 construction gives V = |log nu| / 4
    const auto V = borderline_potential(cauchy(), 4.0, 2.0);
    const auto rep = free_energy(cauchy(), V, 1.0, annuli);
    for (const auto& row : rep.rows) CHECK(row.sign == -1);
    CHECK_FALSE(rep.all_nonnegative());
  }
  SECTION("energy is linear in the potential") {
    const auto a = free_energy(cauchy(), Potential::power(1.0, 2.0), 1.0, annuli);
    const auto b = free_energy(cauchy(), Potential::power(2.0, 2.0), 1.0, annuli);
    for (std::size_t i = 0; i < annuli.size(); ++i) {
      CHECK(b.rows[i].energy == Catch::Approx(2.0 * a.rows[i].energy).epsilon(1e-10));
      CHECK(b.rows[i].entropy == Catch::Approx(a.rows[i].entropy).epsilon(1e-12));
    }
  }
  SECTION("annulus validation") {
    CHECK_THROWS_AS(free_energy(cauchy(), Potential::power(1, 2), 1.0,
                                {{3, 5}, {4, 6}}),
                    parameter_error);
    CHECK_THROWS_AS(free_energy(cauchy(), Potential::power(1, 2), 1.0, {{0.2, 0.5}}),
                    parameter_error);  // nu >= 1 there
    CHECK_THROWS_AS(free_energy(cauchy(), Potential::power(1, 2), 0.0, {{3, 5}}),
                    parameter_error);
  }
}

TEST_CASE("probabilistic ratio profiles") {
  const auto samples = default_radial_samples(5.0, 60.0, 12);
  SECTION("quadratic potential on the Cauchy process") {
    const auto p = probabilistic_ratio(cauchy(), Potential::power(1.0, 2.0), 1.0,
                                       samples, {}, Trend::ToInfinity);
    CHECK(p.vs_hitting.trend == Trend::ToInfinity);
    CHECK(p.vs_density.trend == Trend::ToInfinity);
    CHECK(p.consistent_with);
  }
  SECTION("borderline potential sits near level one") {
    const auto V = borderline_potential(cauchy(), 1.0, 2.0);
    const auto p = probabilistic_ratio(cauchy(), V, 1.0, samples);
    CHECK(p.vs_density.trend == Trend::BoundedPositive);
    for (const auto& [x, rho] : p.vs_density.samples) {
      CHECK(rho > 0.5);
      CHECK(rho < 2.0);
    }
  }
}

TEST_CASE("window-growth diagnostics") {
  const auto V = Potential::power(1.0, 2.0);
  const auto base = solve(cauchy(), V, 20.0);
  const auto doubled = solve(cauchy(), V, 40.0);
  const std::vector<double> times = {0.25, 0.5, 1.0, 2.0};

  SECTION("domination sup stays put for a confining pair") {
    const auto rows = gsd_diagnostic(base, doubled, times);
    for (const auto& r : rows) {
      CHECK(r.growth_factor < 1.2);
      CHECK(r.sup_base > 0.0);
    }
  }
  SECTION("sup of the ratio is bounded below by the ground term") {
    const auto rows = gsd_diagnostic(base, doubled, times);
    std::vector<double> ones(base.grid.total_points(), 1.0);
    for (const auto& r : rows) {
      const double floor_term = std::exp(-base.eigenvalues[0] * r.t) *
                                base.inner(ones, base.phi[0]);
      CHECK(r.sup_base >= floor_term - 1e-12);
    }
  }
  SECTION("intrinsic kernel sup decreases in t and tends to one") {
    const auto rows = iuc_diagnostic(base, doubled, times);
    for (std::size_t i = 1; i < rows.size(); ++i)
      CHECK(rows[i].sup_base <= rows[i - 1].sup_base + 1e-12);
    const auto late = iuc_diagnostic(base, doubled, {30.0});
    CHECK(late.front().sup_base == Catch::Approx(1.0).margin(1e-2));
  }
}

TEST_CASE("classification verdicts on the catalog quartet") {
  SECTION("quadratic confinement is ground-state dominated") {
    const auto rep = classify_small(cauchy(), Potential::power(1.0, 2.0));
    CHECK(rep.verdict == VerdictClass::Gsd);
    CHECK(rep.densities_bounded);
    CHECK(rep.iuc);
    CHECK(rep.exit_code() == 0);
  }
  SECTION("borderline potential is asymptotically dominated only") {
    const auto rep =
        classify_small(cauchy(), borderline_potential(cauchy(), 1.0, 2.0));
    CHECK(rep.verdict == VerdictClass::AgsdOnly);
    CHECK(rep.exit_code() == 4);
  }
  SECTION("iterated-logarithm potential fails domination") {
    const auto rep = classify_small(cauchy(), Potential::loglog(1.0));
    CHECK(rep.verdict == VerdictClass::NotAgsd);
    CHECK(rep.exit_code() == 5);
  }
  SECTION("geometric stable is dominated but not ultracontractive") {
    const auto geo = LevyModel::geometric_stable(1.0);
    const auto rep = classify_small(geo, Potential::power(1.0, 2.0));
    CHECK(rep.verdict == VerdictClass::Gsd);
    CHECK_FALSE(rep.densities_bounded);
    CHECK_FALSE(rep.iuc);
    CHECK(rep.exit_code() == 0);
  }
}
