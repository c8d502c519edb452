#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "levykac/verify.hpp"

using namespace levykac;

namespace {

const LevyModel& flagship_model() {
  static const LevyModel md = LevyModel::stable(1.0);
  return md;
}

const Potential& flagship_potential() {
  static const Potential V = Potential::power(1.0, 2.0);
  return V;
}

// one shared solve for the whole suite
const SpectrumResult& flagship_spectrum() {
  static const SpectrumResult spec = [] {
    Grid g(1, 40.0, 2048);
    auto H = build_operator(flagship_model(), flagship_potential(), g);
    return lowest_eigenpairs(H, 8, 1e-9);
  }();
  return spec;
}

}  // namespace

TEST_CASE("ground state envelope on the flagship pair") {
  const auto rep = verify::ground_state_envelope(
      flagship_spectrum(), flagship_model(), flagship_potential(), {5.0, 15.0});
  CHECK(rep.pass);
  CHECK(rep.min_ratio > 0.0);
  CHECK(rep.spread < 20.0);
  CHECK(rep.spread >= 1.0);
  // phi_0 ~ nu/V = |x|^{-4} up to constants on the window
  CHECK(rep.decay_fit.slope == Catch::Approx(-4.0).margin(0.3));
  CHECK(rep.eta == 0.0);  // lambda_0 > 0, no shift needed

  SECTION("ratio profile is radially symmetric") {
    for (const auto& row : rep.rows) {
      if (row.x <= 0) continue;
      for (const auto& other : rep.rows)
        if (other.x == -row.x)
          CHECK(row.ratio == Catch::Approx(other.ratio).epsilon(1e-7));
    }
  }
  SECTION("spread and decay slope are normalization-free") {
    SpectrumResult scaled = flagship_spectrum();
    for (double& v : scaled.phi[0]) v *= 3.0;
    const auto rep2 = verify::ground_state_envelope(
        scaled, flagship_model(), flagship_potential(), {5.0, 15.0});
    CHECK(rep2.spread == Catch::Approx(rep.spread).epsilon(1e-12));
    CHECK(rep2.decay_fit.slope == Catch::Approx(rep.decay_fit.slope).margin(1e-12));
  }
  SECTION("window must stay clear of the wrap-around zone") {
    CHECK_THROWS_AS(
        verify::ground_state_envelope(flagship_spectrum(), flagship_model(),
                                      flagship_potential(), {5.0, 36.0}),
        domain_error);
  }
}

TEST_CASE("envelope stability between two half-widths") {
  Grid g(1, 80.0, 2048);
  auto H = build_operator(flagship_model(), flagship_potential(), g);
  const auto wide = lowest_eigenpairs(H, 8, 1e-9);
  const auto rep_base = verify::ground_state_envelope(
      flagship_spectrum(), flagship_model(), flagship_potential(), {5.0, 15.0});
  const auto rep_wide = verify::ground_state_envelope(
      wide, flagship_model(), flagship_potential(), {5.0, 15.0});
  CHECK(verify::envelope_stability(rep_base, rep_wide) < 2.0);
}

TEST_CASE("eigenfunction domination") {
  const auto& spec = flagship_spectrum();
  SECTION("the ground state dominates itself exactly") {
    const auto rep = verify::eigenfunction_domination(spec, 0, {5.0, 15.0});
    CHECK(rep.sup == 1.0);
  }
  SECTION("higher modes are dominated on the window") {
    for (int n = 1; n <= 5; ++n) {
      const auto rep = verify::eigenfunction_domination(spec, n, {5.0, 15.0});
      CHECK(rep.sup > 0.0);
      CHECK(rep.sup < 5.0);
    }
  }
  SECTION("sup sits in the interior, not at the outer edge") {
    const auto rep = verify::eigenfunction_domination(spec, 1, {5.0, 15.0});
    CHECK(rep.edge_value < rep.sup);
  }
  CHECK_THROWS_AS(verify::eigenfunction_domination(spec, 100, {5.0, 15.0}),
                  parameter_error);
}

TEST_CASE("subaveraging envelope") {
  const auto& spec = flagship_spectrum();
  SECTION("the ground state saturates the eigenrelation") {
    const auto rep = verify::subaveraging_envelope(
        spec, flagship_model(), spec.eigenvalues[0], spec.phi[0], {5.0, 15.0});
    CHECK(rep.worst_defect > -1e-8);
    CHECK(rep.worst_defect < 1e-8);  // equality case
    CHECK(rep.sup_envelope > 0.0);
    CHECK(rep.sup_envelope < 10.0);
  }
  SECTION("|phi_1| is subaveraging at lambda_1") {
    std::vector<double> f(spec.phi[1].size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::abs(spec.phi[1][i]);
    const auto rep = verify::subaveraging_envelope(spec, flagship_model(),
                                                   spec.eigenvalues[1], f,
                                                   {5.0, 15.0});
    CHECK(rep.worst_defect > -1e-8);
    CHECK(rep.sup_envelope < 10.0);
  }
  SECTION("the envelope is scale-free in f") {
    std::vector<double> doubled = spec.phi[0];
    for (double& v : doubled) v *= 2.0;
    const auto a = verify::subaveraging_envelope(
        spec, flagship_model(), spec.eigenvalues[0], spec.phi[0], {5.0, 15.0});
    const auto b = verify::subaveraging_envelope(
        spec, flagship_model(), spec.eigenvalues[0], doubled, {5.0, 15.0});
    CHECK(a.sup_envelope == Catch::Approx(b.sup_envelope).epsilon(1e-12));
  }
  SECTION("a signed mode mixture fails the precondition") {
    std::vector<double> f(spec.phi[0].size());
    for (std::size_t i = 0; i < f.size(); ++i)
      f[i] = spec.phi[0][i] + spec.phi[1][i];
    CHECK_THROWS_AS(
        verify::subaveraging_envelope(spec, flagship_model(), spec.eigenvalues[0],
                                      f, {5.0, 15.0}),
        not_subaveraging_error);
  }
}

TEST_CASE("green sandwich") {
  mc::PathConfig pc;
  pc.dt = 1e-3;
  pc.horizon = 1.0;
  pc.n_paths = 4000;
  pc.seed = 5;

  SECTION("constant potential forces the ordering") {
    const auto sw = verify::green_sandwich(flagship_model(), Potential::constant(2.0),
                                           0.0, {0.0, 1.0}, pc);
    CHECK(sw.upper == Catch::Approx(0.5));
    CHECK(sw.lower <= sw.upper);
    CHECK(sw.lower > 0.0);
  }
  SECTION("unbounded potential collapses the lower bound to zero") {
    // |x|^400 overflows to infinity on B(10,1)
    const auto sw = verify::green_sandwich(flagship_model(),
                                           Potential::power(1.0, 400.0), 10.0,
                                           {10.0, 1.0}, pc);
    CHECK(sw.lower == 0.0);
  }
  SECTION("identically zero potential is rejected") {
    CHECK_THROWS_AS(verify::green_sandwich(flagship_model(), Potential::constant(0.0),
                                           0.0, {0.0, 1.0}, pc),
                    parameter_error);
  }
  SECTION("independent Green estimate lands inside the sandwich") {
    mc::PathConfig fast = pc;
    fast.dt = 5e-4;
    fast.horizon = 1.0;
    fast.n_paths = 5000;
    const auto sw = verify::green_sandwich(flagship_model(), flagship_potential(),
                                           10.0, {10.0, 1.0}, fast);
    const auto g = mc::green_mc(flagship_model(), flagship_potential(),
                                mc::SetSpec::ball(10.0, 1.0), 10.0, fast);
    CHECK(g.mean >= sw.lower - 3.0 * (g.std_error + sw.survival_std_error));
    CHECK(g.mean <= sw.upper + 3.0 * g.std_error);
  }
}
