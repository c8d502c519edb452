#pragma once

// Empirical estimation of the regularity constants a (model, potential) pair
// must carry: intensity ratio bounds, convolution domination, potential
// comparability, log-intensity integrability, and the log-scale comparison
// between intensity, density and hitting probability. A desk-scale checker
// can only certify sampled profiles, so divergence is operationalized as a
// significant positive trend of the empirical constant over nested windows.

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "levykac/errors.hpp"
#include "levykac/models.hpp"
#include "levykac/quadrature.hpp"

namespace levykac::assumptions {

enum class Verdict { Pass, FailDivergent, Inconclusive };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::FailDivergent: return "fail-divergent";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct CheckEntry {
  std::string condition;
  std::string window;
  double constant = 0.0;     // empirical sup of the defining ratio
  double trend_slope = 0.0;  // log-constant versus log-window-size
  double trend_stderr = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::pair<double, double>> samples;  // (abscissa, value) rows
  std::string note;
};

struct AssumptionReport {
  std::vector<CheckEntry> entries;
  bool any(Verdict v) const {
    for (const auto& e : entries)
      if (e.verdict == v) return true;
    return false;
  }
};

struct SampleSpec {
  int windows = 4;          // nested window count (>= 4 for divergence calls)
  double growth = 2.0;      // geometric window growth
  int samples_per_window = 24;
  double slope_threshold = 0.02;
};

namespace detail {

inline std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i)
    xs[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return xs;
}

// verdict from the trend of log-constant over window sizes
inline void finish_trend(CheckEntry& e, const std::vector<double>& wsizes,
                         const std::vector<double>& consts, const SampleSpec& spec) {
  std::vector<double> lw, lc;
  for (std::size_t i = 0; i < wsizes.size(); ++i) {
    lw.push_back(std::log(wsizes[i]));
    lc.push_back(std::log(consts[i]));
  }
  const auto fit = quad::fit_line(lw, lc);
  e.trend_slope = fit.slope;
  e.trend_stderr = fit.slope_stderr;
  e.constant = consts.back();
  const bool significant =
      wsizes.size() >= 4 && fit.slope > 2.0 * fit.slope_stderr;
  if (fit.slope > spec.slope_threshold && significant)
    e.verdict = Verdict::FailDivergent;
  else
    e.verdict = Verdict::Pass;
  for (std::size_t i = 0; i < wsizes.size(); ++i)
    e.samples.emplace_back(wsizes[i], consts[i]);
}

}  // namespace detail

using LogDensityFn = std::function<double(double)>;  // log nu(|x|)

// sup of max(nu(x)/nu(y), nu(y)/nu(x)) over r <= |y| <= |x| <= |y| + 1.
inline CheckEntry check_ratio_regularity(const LogDensityFn& log_nu, double r,
                                         const SampleSpec& spec = {}) {
  if (!(r > 0 && r <= 0.5))
    throw parameter_error("ratio regularity: r must lie in (0, 1/2]");
  CheckEntry e;
  e.condition = "ratio-regularity";
  std::vector<double> wsizes, consts;
  double W = 8.0;
  for (int w = 0; w < spec.windows; ++w, W *= spec.growth) {
    double best = 1.0;
    for (double y : detail::log_spaced(r, W, spec.samples_per_window)) {
      for (int i = 0; i <= 16; ++i) {
        const double x = y + i / 16.0;
        best = std::max(best, std::exp(std::abs(log_nu(x) - log_nu(y))));
      }
    }
    wsizes.push_back(W);
    consts.push_back(best);
  }
  e.window = "y in [r, W], x in [y, y+1]";
  detail::finish_trend(e, wsizes, consts, spec);
  return e;
}

inline CheckEntry check_ratio_regularity(const LevyModel& md, double r,
                                         const SampleSpec& spec = {}) {
  return check_ratio_regularity(
      [&](double x) { return log_levy_density(md, x); }, r, spec);
}

// sup of nu(x)/nu(y) over 1/2 <= |y| <= |x|.
inline CheckEntry check_monotone_domination(const LogDensityFn& log_nu,
                                            const SampleSpec& spec = {}) {
  CheckEntry e;
  e.condition = "monotone-domination";
  std::vector<double> wsizes, consts;
  double W = 8.0;
  for (int w = 0; w < spec.windows; ++w, W *= spec.growth) {
    double best = 1.0;
    const auto ys = detail::log_spaced(0.5, W, 2 * spec.samples_per_window);
    for (std::size_t i = 0; i < ys.size(); ++i)
      for (std::size_t j = i; j < ys.size(); ++j)
        best = std::max(best, std::exp(log_nu(ys[j]) - log_nu(ys[i])));
    wsizes.push_back(W);
    consts.push_back(best);
  }
  e.window = "1/2 <= y <= x <= W";
  detail::finish_trend(e, wsizes, consts, spec);
  return e;
}

inline CheckEntry check_monotone_domination(const LevyModel& md,
                                            const SampleSpec& spec = {}) {
  return check_monotone_domination(
      [&](double x) { return log_levy_density(md, x); }, spec);
}

// K(s) = int_{|z|>1/2, |z-s|>1/2, |z|<=Z} nu(z) nu(z-s) dz / nu(s), Z = s + 50.
// Evaluated in log scale so that exponentially tempered tails survive.
inline CheckEntry check_convolution_condition(const LogDensityFn& log_nu,
                                              const std::vector<double>& separations,
                                              const QuadratureSpec& q = {},
                                              const SampleSpec& spec = {}) {
  for (std::size_t i = 0; i < separations.size(); ++i) {
    if (separations[i] < 1.0)
      throw parameter_error("convolution condition: separations must be >= 1");
    if (i > 0 && separations[i] <= separations[i - 1])
      throw parameter_error("convolution condition: separations must be ascending");
  }
  CheckEntry e;
  e.condition = "convolution-bound";
  e.window = "s in given separations, Z = s + 50";
  std::vector<double> logK;
  bool quad_ok = true;
  for (double s : separations) {
    const double Z = s + 50.0;
    auto f = [&](double u) { return log_nu(std::abs(u)) + log_nu(std::abs(u - s)); };
    // scale by the maximum of the log-integrand over a scan
    double M = -1e300;
    auto scan = [&](double a, double b) {
      for (int i = 0; i <= 200; ++i) M = std::max(M, f(a + (b - a) * i / 200.0));
    };
    scan(-Z, -0.5);
    if (s > 1.0) scan(0.5, s - 0.5);
    scan(s + 0.5, Z);
    auto g = [&](double u) { return std::exp(f(u) - M); };
    double I = quad::integrate(g, -Z, -0.5, q.abs_tol, q.max_depth);
    if (s > 1.0) I += quad::integrate(g, 0.5, s - 0.5, q.abs_tol, q.max_depth);
    I += quad::integrate(g, s + 0.5, Z, q.abs_tol, q.max_depth);
    if (!(I > 0) || !std::isfinite(I)) {
      quad_ok = false;
      break;
    }
    const double lk = M + std::log(I) - log_nu(s);
    logK.push_back(lk);
    e.samples.emplace_back(s, std::exp(lk));
  }
  if (!quad_ok || logK.size() < 2) {
    e.verdict = Verdict::Inconclusive;
    e.note = "quadrature non-convergence";
    return e;
  }
  e.constant = std::exp(*std::max_element(logK.begin(), logK.end()));
  std::vector<double> ls, ss;
  for (std::size_t i = 0; i < separations.size(); ++i) {
    ls.push_back(std::log(separations[i]));
    ss.push_back(separations[i]);
  }
  const auto fit_pow = quad::fit_line(ls, logK);  // log K vs log s
  const auto fit_exp = quad::fit_line(ss, logK);  // log K vs s
  e.trend_slope = fit_pow.slope;
  e.trend_stderr = fit_pow.slope_stderr;
  const double kl = std::exp(logK[logK.size() - 1]);
  const double kp = std::exp(logK[logK.size() - 2]);
  const bool superlinear_power =
      fit_pow.slope > 1.0 && fit_pow.slope > 2.0 * fit_pow.slope_stderr;
  const bool linear_exp =
      fit_exp.slope > 0.05 && fit_exp.slope > 2.0 * fit_exp.slope_stderr;
  if (separations.size() >= 4 && (superlinear_power || linear_exp))
    e.verdict = Verdict::FailDivergent;
  else if (std::abs(kl - kp) / kp < 0.5)
    e.verdict = Verdict::Pass;
  else
    e.verdict = Verdict::Inconclusive;
  (void)spec;
  return e;
}

inline CheckEntry check_convolution_condition(const LevyModel& md,
                                              const std::vector<double>& separations,
                                              const QuadratureSpec& q = {},
                                              const SampleSpec& spec = {}) {
  if (md.dim != 1)
    throw unsupported_family_error("convolution condition: d = 1 only");
  return check_convolution_condition(
      [&](double x) { return log_levy_density(md, x); }, separations, q, spec);
}

// sup of V(y)/V(x) over |x| > R, y in B(x, 1).
inline CheckEntry check_potential_comparability(const std::function<double(double)>& V,
                                                double R, const SampleSpec& spec = {}) {
  if (!(R > 1)) throw parameter_error("potential comparability: R > 1");
  CheckEntry e;
  e.condition = "potential-comparability";
  std::vector<double> wsizes, consts;
  double W = std::max(4.0 * R, 16.0);
  for (int w = 0; w < spec.windows; ++w, W *= spec.growth) {
    double best = 1.0;
    for (double x : detail::log_spaced(R, W, spec.samples_per_window)) {
      const double vx = V(x);
      if (!(vx > 0)) continue;
      for (int i = 0; i <= 32; ++i) {
        const double y = x - 1.0 + i / 16.0;
        best = std::max(best, V(std::abs(y)) / vx);
      }
    }
    wsizes.push_back(W);
    consts.push_back(best);
  }
  e.window = "|x| in [R, W], y in B(x,1)";
  detail::finish_trend(e, wsizes, consts, spec);
  return e;
}

inline CheckEntry check_potential_comparability(const Potential& V, double R,
                                                const SampleSpec& spec = {}) {
  return check_potential_comparability([&](double x) { return V(x); }, R, spec);
}

// Tail integral int_{|x|>R} |log nu| nu dx with a convergence flag (d = 1).
inline CheckEntry check_log_nu_integrability(const LogDensityFn& log_nu, double R,
                                             const QuadratureSpec& q = {}) {
  if (!(R > 0)) throw parameter_error("log-intensity integrability: R > 0");
  CheckEntry e;
  e.condition = "log-intensity-integrability";
  e.window = "|x| > R";
  auto f = [&](double x) {
    const double l = log_nu(x);
    return std::abs(l) * std::exp(l);
  };
  const auto tail = quad::integrate_tail(f, R, q.abs_tol, q.rel_tol);
  e.constant = 2.0 * tail.value;
  e.samples.emplace_back(R, e.constant);
  if (tail.converged)
    e.verdict = Verdict::Pass;
  else if (tail.diverging)
    e.verdict = Verdict::FailDivergent;
  else
    e.verdict = Verdict::Inconclusive;
  return e;
}

inline CheckEntry check_log_nu_integrability(const LevyModel& md, double R,
                                             const QuadratureSpec& q = {}) {
  return check_log_nu_integrability(
      [&](double x) { return log_levy_density(md, x); }, R, q);
}

// Two-sided log-scale comparison of |log nu|, |log p(t, .)| and
// |log P^x(X_t in B(0,1))| over a radial window. The reported constants are
// the max of each pairwise ratio and its reciprocal.
inline CheckEntry check_log_comparison(const LevyModel& md, double t, double lo,
                                       double hi, const QuadratureSpec& q = {},
                                       const SampleSpec& spec = {}) {
  CheckEntry e;
  e.condition = "log-comparison";
  e.window = "|x| in nested windows";
  try {
    std::vector<double> wsizes, consts;
    double c17 = 1.0, c18 = 1.0;
    double H = hi;
    const int windows = std::max(2, spec.windows / 2);
    // below this the inversion quadrature cannot resolve log p honestly
    const double density_floor = 1e3 * q.abs_tol;
    int unresolvable = 0;
    for (int w = 0; w < windows; ++w, H *= spec.growth) {
      int usable = 0;
      for (double x : detail::log_spaced(lo, H, spec.samples_per_window / 2)) {
        const double lnu = std::abs(log_levy_density(md, x));
        const double pd = transition_density(md, t, x, q);
        const double hp = hitting_probability(md, t, x, 1.0, q);
        if (pd < density_floor || hp < density_floor) {
          ++unresolvable;
          continue;
        }
        const double lp = std::abs(std::log(pd));
        const double lh = std::abs(std::log(hp));
        const double r17 = lnu / lp, r18 = lnu / lh;
        c17 = std::max({c17, r17, 1.0 / r17});
        c18 = std::max({c18, r18, 1.0 / r18});
        e.samples.emplace_back(x, r17);
        ++usable;
      }
      if (usable < 3) break;  // window outran the quadrature floor
      wsizes.push_back(H);
      consts.push_back(std::max(c17, c18));
    }
    if (unresolvable > 0)
      e.note = std::to_string(unresolvable) + " samples below the quadrature floor; ";
    if (wsizes.size() < 2) {
      e.verdict = Verdict::Inconclusive;
      e.note += "window cannot grow within quadrature reach";
      return e;
    }
    std::vector<double> lw, lc;
    for (std::size_t i = 0; i < wsizes.size(); ++i) {
      lw.push_back(std::log(wsizes[i]));
      lc.push_back(std::log(consts[i]));
    }
    const auto fit = quad::fit_line(lw, lc);
    e.trend_slope = fit.slope;
    e.trend_stderr = fit.slope_stderr;
    e.constant = consts.back();
    e.note += "constants: intensity-vs-density " + std::to_string(c17) +
              ", intensity-vs-hitting " + std::to_string(c18);
    e.verdict = fit.slope > 0.15 ? Verdict::FailDivergent : Verdict::Pass;
  } catch (const integrability_error& err) {
    e.verdict = Verdict::Inconclusive;
    e.note = err.what();
  }
  return e;
}

}  // namespace levykac::assumptions
