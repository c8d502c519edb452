// levykac: numerical laboratory for Feynman-Kac semigroups of symmetric jump
// Levy processes. Subcommands: check, solve, verify, classify, mc, report.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "levykac/assumptions.hpp"
#include "levykac/classify.hpp"
#include "levykac/config.hpp"
#include "levykac/io.hpp"
#include "levykac/models.hpp"
#include "levykac/montecarlo.hpp"
#include "levykac/spectral.hpp"
#include "levykac/verify.hpp"

namespace fs = std::filesystem;
using namespace levykac;
using io::ordered_json;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

std::vector<double> convolution_separations(const LevyModel& md) {
  switch (md.family) {
    case Family::TemperedFamily:
    case Family::Relativistic:
      return {2, 3, 5, 8, 12, 16, 20};
    default:
      return {1, 2, 5, 10, 20, 30};
  }
}

int run_check(const RunConfig& cfg) {
  Timer timer;
  fs::create_directories(cfg.out_dir);
  const std::uint64_t hash = cfg.hash();
  assumptions::AssumptionReport report;
  report.entries.push_back(assumptions::check_ratio_regularity(cfg.model, 0.5));
  report.entries.push_back(assumptions::check_monotone_domination(cfg.model));
  report.entries.push_back(assumptions::check_convolution_condition(
      cfg.model, convolution_separations(cfg.model)));
  report.entries.push_back(assumptions::check_potential_comparability(
      cfg.potential, 2.0));
  report.entries.push_back(assumptions::check_log_nu_integrability(cfg.model, 1.0));
  report.entries.push_back(assumptions::check_log_comparison(cfg.model, 1.0, 5.0, 30.0));

  io::CsvWriter csv(cfg.out_dir + "/assumptions.csv", hash,
                    {"condition", "abscissa", "value"});
  for (const auto& e : report.entries)
    for (const auto& [x, v] : e.samples)
      csv.write_row_strings({e.condition, io::fmt(x), io::fmt(v)});

  ordered_json j;
  j["config_hash"] = io::hash_hex(hash);
  j["entries"] = ordered_json::array();
  for (const auto& e : report.entries) {
    ordered_json je;
    je["condition"] = e.condition;
    je["window"] = e.window;
    je["constant"] = e.constant;
    je["slope"] = e.trend_slope;
    je["slope_stderr"] = e.trend_stderr;
    je["verdict"] = assumptions::verdict_name(e.verdict);
    if (!e.note.empty()) je["note"] = e.note;
    j["entries"].push_back(je);
    std::printf("%-28s %-15s constant=%-12.6g slope=%.4f\n", e.condition.c_str(),
                assumptions::verdict_name(e.verdict), e.constant, e.trend_slope);
  }
  io::write_json(cfg.out_dir + "/assumptions_summary.json", j);
  io::write_manifest(cfg.out_dir, "check", hash, cfg.seed, cfg.threads, timer.seconds());
  if (report.any(assumptions::Verdict::FailDivergent)) return 2;
  if (report.any(assumptions::Verdict::Inconclusive)) return 3;
  return 0;
}

SpectrumResult solve_spectrum(const RunConfig& cfg, double L) {
  Grid grid(cfg.model.dim, L, cfg.grid_n);
  auto H = build_operator(cfg.model, cfg.potential, grid);
  return lowest_eigenpairs(H, cfg.solver_k, cfg.solver_tol, cfg.seed);
}

int run_solve(const RunConfig& cfg) {
  Timer timer;
  fs::create_directories(cfg.out_dir);
  const std::uint64_t hash = cfg.hash();
  const SpectrumResult spec = solve_spectrum(cfg, cfg.grid_l);
  io::save_spectrum(cfg.out_dir + "/spectrum.bin", spec, hash);
  io::save_spectrum_csv(cfg.out_dir + "/spectrum.csv", spec, hash);
  ordered_json j;
  j["config_hash"] = io::hash_hex(hash);
  j["eigenvalues"] = spec.eigenvalues;
  j["residual_norms"] = spec.residual_norms;
  j["spectral_gap"] = spec.gap();
  j["solver_tol"] = spec.solver_tol;
  j["operator_applications"] = spec.applications;
  j["near_degenerate_warning"] = spec.near_degenerate_warning;
  io::write_json(cfg.out_dir + "/spectrum.json", j);
  io::write_manifest(cfg.out_dir, "solve", hash, cfg.seed, cfg.threads, timer.seconds());
  std::printf("lambda_0 = %.10f  gap = %.6f  residual_max = %.2e\n",
              spec.eigenvalues[0], spec.gap(),
              *std::max_element(spec.residual_norms.begin(), spec.residual_norms.end()));
  return 0;
}

int run_verify(const RunConfig& cfg, const std::string& spectrum_path) {
  Timer timer;
  fs::create_directories(cfg.out_dir);
  const std::uint64_t hash = cfg.hash();
  const std::string path =
      spectrum_path.empty() ? cfg.out_dir + "/spectrum.bin" : spectrum_path;
  auto loaded = io::load_spectrum(path);
  if (loaded.config_hash != hash)
    std::fprintf(stderr, "warning: spectrum config hash differs from this config\n");
  const SpectrumResult& spec = loaded.spectrum;

  verify::Window w{cfg.window_lo, cfg.window_hi};
  const auto envelope =
      verify::ground_state_envelope(spec, cfg.model, cfg.potential, w, cfg.spread_bound);
  io::CsvWriter csv(cfg.out_dir + "/envelope.csv", hash, {"x", "phi0", "nu", "V", "ratio"});
  for (const auto& r : envelope.rows) csv.row(r.x, r.phi0, r.nu, r.V, r.ratio);

  ordered_json j;
  j["config_hash"] = io::hash_hex(hash);
  j["envelope"] = {{"spread", envelope.spread},
                   {"min_ratio", envelope.min_ratio},
                   {"max_ratio", envelope.max_ratio},
                   {"decay_exponent", envelope.decay_fit.slope},
                   {"decay_exponent_stderr", envelope.decay_fit.slope_stderr},
                   {"eta", envelope.eta},
                   {"pass", envelope.pass}};
  j["domination"] = ordered_json::array();
  for (int n = 1; n < std::min(spec.modes(), 6); ++n) {
    const auto dom = verify::eigenfunction_domination(spec, n, w);
    j["domination"].push_back({{"n", n},
                               {"sup", dom.sup},
                               {"arg_abs_x", dom.arg_abs_x},
                               {"edge_value", dom.edge_value}});
  }
  try {
    const auto sub0 = verify::subaveraging_envelope(spec, cfg.model,
                                                    spec.eigenvalues[0], spec.phi[0], w);
    std::vector<double> abs_phi1(spec.phi[1].size());
    for (std::size_t i = 0; i < abs_phi1.size(); ++i) abs_phi1[i] = std::abs(spec.phi[1][i]);
    const auto sub1 = verify::subaveraging_envelope(spec, cfg.model,
                                                    spec.eigenvalues[1], abs_phi1, w);
    j["subaveraging"] = {{"ground_state_sup", sub0.sup_envelope},
                         {"abs_phi1_sup", sub1.sup_envelope},
                         {"worst_defect", std::min(sub0.worst_defect, sub1.worst_defect)}};
  } catch (const not_subaveraging_error& err) {
    j["subaveraging"] = {{"error", err.what()}};
  }
  io::write_json(cfg.out_dir + "/verify_summary.json", j);
  io::write_manifest(cfg.out_dir, "verify", hash, cfg.seed, cfg.threads, timer.seconds());
  std::printf("envelope spread = %.4g (bound %g)  decay exponent = %.3f  pass = %d\n",
              envelope.spread, cfg.spread_bound, envelope.decay_fit.slope,
              envelope.pass ? 1 : 0);
  return envelope.pass ? 0 : 1;
}

int run_classify(const RunConfig& cfg, const std::string& spectrum_path) {
  Timer timer;
  fs::create_directories(cfg.out_dir);
  const std::uint64_t hash = cfg.hash();
  SpectrumResult base;
  if (!spectrum_path.empty()) {
    base = io::load_spectrum(spectrum_path).spectrum;
  } else if (fs::exists(cfg.out_dir + "/spectrum.bin")) {
    base = io::load_spectrum(cfg.out_dir + "/spectrum.bin").spectrum;
  } else {
    base = solve_spectrum(cfg, cfg.grid_l);
  }
  const SpectrumResult doubled = solve_spectrum(cfg, 2.0 * base.grid.half_width);

  classify::ClassifyOptions opt;
  opt.times = cfg.times;
  opt.t0_probes = cfg.t0_probes;
  opt.annuli = cfg.annuli();
  opt.radial_samples =
      classify::default_radial_samples(cfg.sample_lo, cfg.sample_hi, cfg.sample_n);
  const auto rep = classify::classify_pair(cfg.model, cfg.potential, base, doubled, opt);

  io::CsvWriter ratio_csv(cfg.out_dir + "/ratio_profile.csv", hash, {"x", "rho"});
  for (const auto& [x, rho] : rep.ratio.samples) ratio_csv.row(x, rho);
  io::CsvWriter gsd_csv(cfg.out_dir + "/gsd_diagnostic.csv", hash,
                        {"t", "sup_base", "sup_doubled", "growth_factor"});
  for (const auto& r : rep.gsd_table)
    gsd_csv.row(r.t, r.sup_base, r.sup_doubled, r.growth_factor);
  io::CsvWriter iuc_csv(cfg.out_dir + "/iuc_diagnostic.csv", hash,
                        {"t", "sup_base", "sup_doubled", "growth_factor"});
  for (const auto& r : rep.iuc_table)
    iuc_csv.row(r.t, r.sup_base, r.sup_doubled, r.growth_factor);
  io::CsvWriter fe_csv(cfg.out_dir + "/free_energy.csv", hash,
                       {"t0", "a", "b", "energy", "entropy", "free_energy", "sign"});
  for (const auto& [t0, fr] : rep.free_energy_table)
    for (const auto& row : fr.rows)
      fe_csv.row(t0, row.annulus.a, row.annulus.b, row.energy, row.entropy,
                 row.free_energy, row.sign);

  ordered_json j;
  j["config_hash"] = io::hash_hex(hash);
  j["verdict"] = classify::verdict_name(rep.verdict);
  j["iuc"] = rep.iuc;
  j["densities_bounded"] = rep.densities_bounded;
  j["ratio_trend"] = classify::trend_name(rep.ratio.trend);
  j["ratio_slope"] = rep.ratio.fit.slope;
  if (!rep.note.empty()) j["note"] = rep.note;
  j["gsd_growth_factors"] = ordered_json::array();
  for (const auto& r : rep.gsd_table)
    j["gsd_growth_factors"].push_back({{"t", r.t},
                                       {"factor", r.growth_factor},
                                       {"truncation_warning", r.truncation_warning}});
  j["free_energy_nonnegative_t0"] = ordered_json::array();
  for (const auto& [t0, fr] : rep.free_energy_table)
    j["free_energy_nonnegative_t0"].push_back(
        {{"t0", t0}, {"all_nonnegative", fr.all_nonnegative()}});
  io::write_json(cfg.out_dir + "/classification.json", j);
  io::write_manifest(cfg.out_dir, "classify", hash, cfg.seed, cfg.threads,
                     timer.seconds());
  std::printf("verdict = %s%s\n", classify::verdict_name(rep.verdict),
              rep.verdict == classify::VerdictClass::Gsd
                  ? (rep.iuc ? " (IUC)" : " (not IUC)")
                  : "");
  return rep.exit_code();
}

int run_mc(const RunConfig& cfg) {
  Timer timer;
  fs::create_directories(cfg.out_dir);
  const std::uint64_t hash = cfg.hash();
  mc::PathConfig pc;
  pc.dt = cfg.mc_dt;
  pc.horizon = cfg.mc_horizon;
  pc.n_paths = cfg.mc_paths;
  pc.seed = cfg.seed;
  pc.threads = cfg.threads;
  const mc::Ball ball{cfg.mc_ball_center, cfg.mc_ball_radius};

  ordered_json records = ordered_json::array();
  auto push = [&](const mc::McEstimate& est, double x) {
    ordered_json r;
    r["estimator"] = est.estimator;
    r["x"] = x;
    r["t"] = cfg.mc_horizon;
    r["mean"] = est.mean;
    r["stderr"] = est.std_error;
    r["n"] = est.n_paths;
    r["dt"] = est.dt;
    r["seed"] = cfg.seed;
    records.push_back(r);
    std::printf("%-12s x=%-8g mean=%.8g  stderr=%.3g\n", est.estimator.c_str(), x,
                est.mean, est.std_error);
  };
  for (double x : cfg.mc_x) {
    push(mc::feynman_kac(cfg.model, cfg.potential, cfg.mc_horizon, x, pc), x);
    if (ball.contains(x)) {
      push(mc::survival(cfg.model, mc::SetSpec{{ball}}, cfg.mc_horizon, x, pc), x);
      push(mc::green_mc(cfg.model, cfg.potential, mc::SetSpec{{ball}}, x, pc), x);
      const auto sandwich = verify::green_sandwich(cfg.model, cfg.potential, x, ball, pc);
      ordered_json r;
      r["estimator"] = "green_sandwich";
      r["x"] = x;
      r["lower"] = sandwich.lower;
      r["upper"] = sandwich.upper;
      r["survival"] = sandwich.survival;
      r["survival_stderr"] = sandwich.survival_std_error;
      r["seed"] = cfg.seed;
      records.push_back(r);
    }
  }
  ordered_json j;
  j["config_hash"] = io::hash_hex(hash);
  j["records"] = records;
  io::write_json(cfg.out_dir + "/mc_records.json", j);
  io::write_manifest(cfg.out_dir, "mc", hash, cfg.seed, cfg.threads, timer.seconds());
  return 0;
}

int run_report(const std::string& run_dir) {
  Timer timer;
  ordered_json report;
  std::string expected_hash;
  bool mismatch = false;
  auto check_hash = [&](const std::string& h, const std::string& where) {
    if (h.empty()) return;
    if (expected_hash.empty()) expected_hash = h;
    else if (h != expected_hash) {
      std::fprintf(stderr, "config hash mismatch in %s (%s vs %s)\n", where.c_str(),
                   h.c_str(), expected_hash.c_str());
      mismatch = true;
    }
  };
  for (const auto& entry : fs::directory_iterator(run_dir)) {
    const std::string name = entry.path().filename().string();
    if (entry.path().extension() == ".json" && name.rfind("manifest_", 0) != 0 &&
        name != "report.json") {
      auto j = io::read_json(entry.path().string());
      if (j.contains("config_hash")) check_hash(j["config_hash"], name);
      report[name] = j;
    } else if (entry.path().extension() == ".csv") {
      check_hash(io::read_csv_hash(entry.path().string()), name);
      report["csv_files"].push_back(name);
    }
  }
  if (mismatch) {
    std::fprintf(stderr, "report: refusing to consolidate mismatched hashes\n");
    return 1;
  }
  report["config_hash"] = expected_hash;
  io::write_json(run_dir + "/report.json", report);
  std::printf("consolidated report for %s (config %s)\n", run_dir.c_str(),
              expected_hash.c_str());
  (void)timer;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"levykac: Feynman-Kac semigroups of symmetric jump Levy processes"};
  app.require_subcommand(1);

  std::string config_path, out_override, spectrum_path, run_dir;
  std::uint64_t seed_override = 0;
  bool seed_set = false;
  int threads_override = -1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "configuration file")->required();
    sub->add_option("--out", out_override, "output directory override");
    sub->add_option("--seed", seed_override, "master seed override")
        ->each([&](const std::string&) { seed_set = true; });
    sub->add_option("--threads", threads_override, "worker threads (0 = auto)");
  };

  auto* c_check = app.add_subcommand("check", "estimate regularity constants");
  add_common(c_check);
  auto* c_solve = app.add_subcommand("solve", "compute the low spectrum");
  add_common(c_solve);
  auto* c_verify = app.add_subcommand("verify", "test eigenfunction estimates");
  add_common(c_verify);
  c_verify->add_option("--spectrum", spectrum_path, "spectrum binary path");
  auto* c_classify = app.add_subcommand("classify", "decide GSD/AGSD/IUC behaviour");
  add_common(c_classify);
  c_classify->add_option("--spectrum", spectrum_path, "spectrum binary path");
  auto* c_mc = app.add_subcommand("mc", "Monte Carlo estimates");
  add_common(c_mc);
  auto* c_report = app.add_subcommand("report", "consolidate a run directory");
  c_report->add_option("--run", run_dir, "run directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(c_report)) return run_report(run_dir);
    RunConfig cfg = RunConfig::from_file(config_path);
    if (!out_override.empty()) cfg.out_dir = out_override;
    if (seed_set) cfg.seed = seed_override;
    if (threads_override >= 0) cfg.threads = threads_override;
    if (app.got_subcommand(c_check)) return run_check(cfg);
    if (app.got_subcommand(c_solve)) return run_solve(cfg);
    if (app.got_subcommand(c_verify)) return run_verify(cfg, spectrum_path);
    if (app.got_subcommand(c_classify)) return run_classify(cfg, spectrum_path);
    if (app.got_subcommand(c_mc)) return run_mc(cfg);
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
  return 0;
}
