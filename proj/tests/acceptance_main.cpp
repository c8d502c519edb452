// Acceptance suite: one pass/fail line per criterion, each evaluated at its
// stated tolerance and wall-clock budget. Exit code 0 only when every
// criterion holds.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "levykac/assumptions.hpp"
#include "levykac/classify.hpp"
#include "levykac/models.hpp"
#include "levykac/montecarlo.hpp"
#include "levykac/spectral.hpp"
#include "levykac/verify.hpp"

using namespace levykac;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) {
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

int g_failures = 0;

void criterion(int id, const std::string& name, double budget_s,
               const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& err) {
    out.pass = false;
    out.detail += std::string("exception: ") + err.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs > budget_s) {
    out.pass = false;
    out.detail += "; over budget " + std::to_string(budget_s) + " s";
  }
  if (!out.pass) ++g_failures;
  std::printf("%s  [%2d] %-28s (%6.1f s)  %s\n", out.pass ? "PASS" : "FAIL", id,
              name.c_str(), secs, out.detail.c_str());
  std::fflush(stdout);
}

double cauchy_density(double t, double x) { return t / (M_PI * (t * t + x * x)); }

SpectrumResult solve(const LevyModel& md, const Potential& V, int N, double L,
                     int k, double tol = 1e-9) {
  return lowest_eigenpairs(build_operator(md, V, Grid(1, L, N)), k, tol);
}

}  // namespace

int main() {
  const auto cauchy = LevyModel::stable(1.0);
  const auto x2 = Potential::power(1.0, 2.0);

  criterion(1, "symbol consistency", 10.0, [&](Outcome& out) {
    double worst = 0.0;
    for (double alpha : {0.5, 1.0, 1.5})
      for (double xi : {0.5, 1.0, 2.0, 5.0})
        worst = std::max(worst,
                         verify_levy_khintchine(LevyModel::stable(alpha), xi));
    out.require(worst < 1e-3, "residual " + std::to_string(worst));
    out.note("max residual " + std::to_string(worst));
  });

  criterion(2, "density oracle", 10.0, [&](Outcome& out) {
    double worst_rel = 0.0;
    for (double t : {0.5, 1.0, 2.0})
      for (double x = 0.0; x <= 10.0; x += 0.5)
        worst_rel =
            std::max(worst_rel, std::abs(transition_density(cauchy, t, x) /
                                             cauchy_density(t, x) -
                                         1.0));
    out.require(worst_rel < 1e-4, "rel err " + std::to_string(worst_rel));
    double worst_norm = 0.0;
    for (double t : {0.5, 1.0, 2.0})
      worst_norm = std::max(
          worst_norm, std::abs(normalization_check(cauchy, t, 200.0).total - 1.0));
    out.require(worst_norm < 1e-6, "normalization " + std::to_string(worst_norm));
    out.note("max rel " + std::to_string(worst_rel) + ", norm defect " +
             std::to_string(worst_norm));
  });

  criterion(3, "convolution condition", 60.0, [&](Outcome& out) {
    const auto st = assumptions::check_convolution_condition(
        cauchy, {1, 2, 5, 10, 20, 30});
    out.require(st.verdict == assumptions::Verdict::Pass, "stable not pass");
    const double k20 = st.samples[4].second, k30 = st.samples[5].second;
    out.require(std::abs(k30 - k20) / k20 < 0.1, "stable K not settled");
    const auto tp = assumptions::check_convolution_condition(
        LevyModel::tempered(1.0, 2.0, 1.0, 2.0), {2, 5, 10, 20});
    out.require(tp.verdict == assumptions::Verdict::FailDivergent,
                "tempered beta=2 not divergent");
    const double ratio = tp.samples.back().second / tp.samples.front().second;
    out.require(ratio > 1e3, "K(20)/K(2) = " + std::to_string(ratio));
    out.note("K(30)/K(20)-1 = " + std::to_string(k30 / k20 - 1.0));
  });

  SpectrumResult flag40, flag80;
  criterion(4, "ground-state envelope", 300.0, [&](Outcome& out) {
    flag40 = solve(cauchy, x2, 4096, 40.0, 8);
    flag80 = solve(cauchy, x2, 4096, 80.0, 8);
    const auto rep40 =
        verify::ground_state_envelope(flag40, cauchy, x2, {5.0, 15.0});
    const auto rep80 =
        verify::ground_state_envelope(flag80, cauchy, x2, {5.0, 15.0});
    out.require(rep40.spread < 50.0, "spread " + std::to_string(rep40.spread));
    out.require(verify::envelope_stability(rep40, rep80) < 2.0,
                "unstable under L doubling");
    out.require(std::abs(rep40.decay_fit.slope + 4.0) <= 0.3,
                "decay exponent " + std::to_string(rep40.decay_fit.slope));
    out.note("spread " + std::to_string(rep40.spread) + ", decay " +
             std::to_string(rep40.decay_fit.slope));
  });

  criterion(5, "eigenfunction domination", 0.0, [&](Outcome& out) {
    const auto fine = solve(cauchy, x2, 8192, 40.0, 8);
    double worst_change = 0.0;
    for (int n = 1; n <= 5; ++n) {
      const auto a = verify::eigenfunction_domination(flag40, n, {5.0, 15.0});
      const auto b = verify::eigenfunction_domination(fine, n, {5.0, 15.0});
      out.require(a.sup > 0.0 && std::isfinite(a.sup), "sup not finite");
      worst_change = std::max(worst_change, std::abs(b.sup / a.sup - 1.0));
    }
    out.require(worst_change < 0.2,
                "refinement change " + std::to_string(worst_change));
    out.note("max refinement change " + std::to_string(worst_change));
  });

  criterion(6, "solver correctness oracle", 0.0, [&](Outcome& out) {
    // dense comparison on the same discrete operator
    Grid g(1, 8.0, 64);
    auto H = build_operator(cauchy, x2, g);
    std::vector<std::vector<double>> cols(64, std::vector<double>(64));
    std::vector<double> e(64, 0.0);
    for (int j = 0; j < 64; ++j) {
      e[j] = 1.0;
      H.apply(e.data(), cols[j].data());
      e[j] = 0.0;
    }
    Eigen::MatrixXd M(64, 64);
    for (int j = 0; j < 64; ++j)
      for (int i = 0; i < 64; ++i) M(i, j) = cols[j][i];
    M = 0.5 * (M + M.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    const auto spec = lowest_eigenpairs(H, 6, 1e-10);
    double worst = 0.0;
    for (int n = 0; n < 6; ++n)
      worst = std::max(worst,
                       std::abs(spec.eigenvalues[n] - es.eigenvalues()[n]));
    out.require(worst <= 1e-8, "dense mismatch " + std::to_string(worst));
    // harmonic fixture
    auto Hh = build_operator(Grid(1, 20.0, 1024),
                             [](double xi) { return xi * xi; },
                             [](double x) { return x * x; });
    const auto hs = lowest_eigenpairs(Hh, 4, 1e-9);
    for (int n = 0; n <= 3; ++n)
      out.require(std::abs(hs.eigenvalues[n] - (2.0 * n + 1.0)) <= 1e-3,
                  "harmonic level " + std::to_string(n));
    out.note("dense gap " + std::to_string(worst));
  });

  criterion(7, "classification triangle", 600.0, [&](Outcome& out) {
    classify::ClassifyOptions opt;
    auto run_pair = [&](const Potential& V) {
      const auto base = solve(cauchy, V, 2048, 40.0, 16);
      const auto dbl = solve(cauchy, V, 2048, 80.0, 16);
      return classify::classify_pair(cauchy, V, base, dbl, opt);
    };
    // (a) quadratic potential: GSD along all three routes
    const auto a = run_pair(x2);
    out.require(a.verdict == classify::VerdictClass::Gsd, "(a) verdict");
    out.require(a.ratio.trend == classify::Trend::ToInfinity, "(a) trend");
    for (const auto& [t0, fe] : a.free_energy_table)
      out.require(fe.all_nonnegative(), "(a) free energy at t0");
    for (const auto& row : a.gsd_table)
      out.require(row.growth_factor < 1.2, "(a) window growth at t");
    // (b) borderline potential at t0 = 1
    const auto Vb = borderline_potential(cauchy, 1.0, 2.0);
    const auto b = run_pair(Vb);
    out.require(b.verdict == classify::VerdictClass::AgsdOnly, "(b) verdict");
    for (const auto& [t0, fe] : b.free_energy_table) {
      if (t0 == 1.0)
        for (const auto& row : fe.rows) out.require(row.sign == 0, "(b) F at t0=1");
      if (t0 == 2.0)
        for (const auto& row : fe.rows) out.require(row.sign > 0, "(b) F at t0=2");
    }
    // (c) iterated logarithm: fails domination
    const auto c = run_pair(Potential::loglog(1.0));
    out.require(c.verdict == classify::VerdictClass::NotAgsd, "(c) verdict");
    out.require(c.ratio.trend == classify::Trend::ToZero, "(c) trend");
    for (const auto& [t0, fe] : c.free_energy_table)
      for (std::size_t i = fe.rows.size() - 2; i < fe.rows.size(); ++i)
        out.require(fe.rows[i].sign < 0, "(c) outer annuli at t0");
    out.note("verdicts GSD / AGSD-only / not-AGSD");
  });

  criterion(8, "GSD without IUC", 0.0, [&](Outcome& out) {
    const auto geo = LevyModel::geometric_stable(1.0);
    const auto d01 = density_sup(geo, 0.1);
    const auto d1 = density_sup(geo, 1.0);
    out.require(d01.value > 10.0 * d1.value, "density blow-up missing");
    out.require(d01.possibly_unbounded, "0.1 probe not flagged");
    const auto base = solve(geo, x2, 1024, 20.0, 16);
    const auto dbl = solve(geo, x2, 1024, 40.0, 16);
    const auto rep = classify::classify_pair(geo, x2, base, dbl);
    out.require(rep.verdict == classify::VerdictClass::Gsd, "verdict not GSD");
    out.require(!rep.densities_bounded, "flag not false");
    out.require(!rep.iuc, "IUC not capped");
    out.note("sup(0.1)/sup(1) = " + std::to_string(d01.value / d1.value));
  });

  criterion(9, "MC/spectral cross-validation", 300.0, [&](Outcome& out) {
    const auto spec = solve(cauchy, x2, 2048, 32.0, 24);
    const std::vector<double> ones(spec.grid.total_points(), 1.0);
    const auto Tt = semigroup_apply(spec, 1.0, ones);
    mc::PathConfig pc;
    pc.n_paths = 100000;
    pc.dt = 1e-3;
    pc.horizon = 1.0;
    pc.seed = 2024;
    for (double x : {0.0, 2.0, 5.0}) {
      const int j = static_cast<int>(std::lround((x + 32.0) / (64.0 / 2048)));
      const auto est = mc::feynman_kac(cauchy, x2, 1.0, x, pc);
      const double dev = std::abs(est.mean - Tt.values[j]);
      out.require(dev <= 3.0 * est.std_error,
                  "x=" + std::to_string(x) + " dev/se " +
                      std::to_string(dev / est.std_error));
    }
    mc::PathConfig sanity;
    sanity.n_paths = 2000;
    sanity.dt = 0.01;
    sanity.horizon = 1.0;
    sanity.seed = 7;
    for (double c : {0.5, 1.0, 2.0})
      for (double t : {0.5, 1.0}) {
        const auto est =
            mc::feynman_kac(cauchy, Potential::constant(c), t, 0.0, sanity);
        out.require(std::abs(est.mean - std::exp(-c * t)) <=
                        3.0 * est.std_error + 1e-12,
                    "constant potential sanity");
      }
  });

  criterion(10, "green sandwich", 0.0, [&](Outcome& out) {
    mc::PathConfig pc;
    pc.dt = 2e-4;
    pc.horizon = 1.5;
    pc.n_paths = 20000;
    pc.seed = 31;
    const auto sw = verify::green_sandwich(cauchy, x2, 10.0, {10.0, 1.0}, pc);
    const auto g = mc::green_mc(cauchy, x2, mc::SetSpec::ball(10.0, 1.0), 10.0, pc);
    out.require(g.mean >= sw.lower - 3.0 * (g.std_error + sw.survival_std_error),
                "below lower bound");
    out.require(g.mean <= sw.upper + 3.0 * g.std_error, "above upper bound");
    out.note("lower " + std::to_string(sw.lower) + " <= " +
             std::to_string(g.mean) + " <= upper " + std::to_string(sw.upper));
  });

  criterion(11, "MC reproducibility", 0.0, [&](Outcome& out) {
    std::vector<mc::McEstimate> runs;
    for (int threads : {1, 4, 8}) {
      mc::PathConfig pc;
      pc.n_paths = 10000;
      pc.dt = 1e-2;
      pc.horizon = 1.0;
      pc.seed = 9001;
      pc.threads = threads;
      runs.push_back(mc::feynman_kac(cauchy, x2, 1.0, 0.0, pc));
    }
    for (std::size_t i = 1; i < runs.size(); ++i) {
      out.require(std::memcmp(&runs[i].mean, &runs[0].mean, sizeof(double)) == 0,
                  "mean differs across workers");
      out.require(std::memcmp(&runs[i].std_error, &runs[0].std_error,
                              sizeof(double)) == 0,
                  "stderr differs across workers");
    }
    out.note("bit-identical across 1/4/8 workers");
  });

  std::printf("%d of 11 criteria passed\n", 11 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
