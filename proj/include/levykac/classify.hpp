#pragma once

// Decides ground-state-domination / intrinsic-ultracontractivity behaviour of
// a (process, potential) pair along three routes: the potential-to-log-
// intensity ratio at infinity, window-growth behaviour of spectral
// diagnostics, and the sign pattern of the free-energy functional. The routes
// must agree under the fixed mapping; disagreement is reported, never
// resolved silently.

#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "levykac/errors.hpp"
#include "levykac/models.hpp"
#include "levykac/quadrature.hpp"
#include "levykac/spectral.hpp"

namespace levykac::classify {

enum class Trend { ToInfinity, BoundedPositive, ToZero };
enum class VerdictClass { Gsd, AgsdOnly, NotAgsd, Inconclusive };

inline const char* trend_name(Trend t) {
  switch (t) {
    case Trend::ToInfinity: return "to-infinity";
    case Trend::BoundedPositive: return "bounded-positive";
    case Trend::ToZero: return "to-zero";
  }
  return "?";
}

inline const char* verdict_name(VerdictClass v) {
  switch (v) {
    case VerdictClass::Gsd: return "GSD";
    case VerdictClass::AgsdOnly: return "AGSD-only";
    case VerdictClass::NotAgsd: return "not-AGSD";
    case VerdictClass::Inconclusive: return "inconclusive";
  }
  return "?";
}

inline VerdictClass trend_to_verdict(Trend t) {
  switch (t) {
    case Trend::ToInfinity: return VerdictClass::Gsd;
    case Trend::BoundedPositive: return VerdictClass::AgsdOnly;
    case Trend::ToZero: return VerdictClass::NotAgsd;
  }
  return VerdictClass::Inconclusive;
}

// Log-spaced radial sample set, the default probe set for ratio profiles.
inline std::vector<double> default_radial_samples(double lo = 2.0, double hi = 1000.0,
                                                  int n = 64) {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i)
    xs[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return xs;
}

struct RatioProfile {
  std::vector<std::pair<double, double>> samples;  // (|x|, rho)
  quad::LineFit fit;                               // log rho vs log |x|, outer half
  Trend trend = Trend::BoundedPositive;
  double slope_threshold = 0.05;
};

namespace detail {

inline Trend tag_from_slope(double slope, double thr) {
  if (slope > thr) return Trend::ToInfinity;
  if (slope < -thr) return Trend::ToZero;
  return Trend::BoundedPositive;
}

inline RatioProfile profile_from(const std::vector<double>& xs,
                                 const std::vector<double>& rho, double thr) {
  RatioProfile p;
  p.slope_threshold = thr;
  std::vector<double> lx, lr;
  const std::size_t half = xs.size() / 2;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    p.samples.emplace_back(xs[i], rho[i]);
    if (i >= half) {
      lx.push_back(std::log(xs[i]));
      lr.push_back(std::log(rho[i]));
    }
  }
  p.fit = quad::fit_line(lx, lr);
  p.trend = tag_from_slope(p.fit.slope, thr);
  return p;
}

}  // namespace detail

// rho(x) = V(x) / |log nu(x)| on the radial samples; trend by regression of
// log rho against log |x| over the outer half.
inline RatioProfile borderline_ratio(const LevyModel& md, const Potential& V,
                                     const std::vector<double>& radial_samples,
                                     double slope_threshold = 0.05) {
  std::vector<double> rho;
  rho.reserve(radial_samples.size());
  for (double x : radial_samples) {
    const double lnu = log_levy_density(md, x);
    if (lnu >= 0)
      throw sampling_error("borderline_ratio: nu >= 1 at sample |x|=" +
                           std::to_string(x));
    const double r = V(x) / (-lnu);
    if (!(r > 0))
      throw sampling_error("borderline_ratio: nonpositive ratio at |x|=" +
                           std::to_string(x));
    rho.push_back(r);
  }
  return detail::profile_from(radial_samples, rho, slope_threshold);
}

// ---------------------------------------------------------------------------
// Spectral diagnostics under window growth
// ---------------------------------------------------------------------------

struct GsdRow {
  double t = 0.0;
  double sup_base = 0.0;     // sup over trusted window of T_t 1 / phi_0
  double sup_doubled = 0.0;  // same on the doubled-L spectrum
  double growth_factor = 0.0;
  double truncation_base = 0.0;  // e^{-lambda_{k-1} t} ||1||
  bool truncation_warning = false;
};

// sup over the trusted window (|x| <= frac L) of (T_t 1)(x) / phi_0(x), and
// its growth when L doubles. Bounded factors signal domination at that t;
// growth signals failure under window growth.
inline std::vector<GsdRow> gsd_diagnostic(const SpectrumResult& base,
                                          const SpectrumResult& doubled,
                                          const std::vector<double>& times,
                                          double trusted_fraction = 0.85,
                                          double warning_tol = 1e-3) {
  auto sup_ratio = [&](const SpectrumResult& s, double t, double& trunc) {
    const std::vector<double> ones(s.grid.total_points(), 1.0);
    const auto Tt = semigroup_apply(s, t, ones);
    trunc = Tt.truncation_estimate;
    double sup = 0.0;
    for (int j = 0; j < s.grid.points_per_axis; ++j) {
      if (std::abs(s.grid.node(j)) > trusted_fraction * s.grid.half_width) continue;
      sup = std::max(sup, Tt.values[j] / s.phi[0][j]);
    }
    return sup;
  };
  std::vector<GsdRow> rows;
  for (double t : times) {
    GsdRow r;
    r.t = t;
    double trunc2 = 0.0;
    r.sup_base = sup_ratio(base, t, r.truncation_base);
    r.sup_doubled = sup_ratio(doubled, t, trunc2);
    r.growth_factor = r.sup_doubled / r.sup_base;
    r.truncation_warning = r.truncation_base > warning_tol * r.sup_base;
    rows.push_back(r);
  }
  return rows;
}

struct IucRow {
  double t = 0.0;
  double sup_base = 0.0;  // sup over sampled window pairs of utilde(t,x,y)
  double sup_doubled = 0.0;
  double growth_factor = 0.0;
  bool truncation_warning = false;
};

inline std::vector<IucRow> iuc_diagnostic(const SpectrumResult& base,
                                          const SpectrumResult& doubled,
                                          const std::vector<double>& times,
                                          double trusted_fraction = 0.85,
                                          int sample_nodes = 96) {
  auto sup_kernel = [&](const SpectrumResult& s, double t, bool& warn) {
    std::vector<std::size_t> idx;
    const int N = s.grid.points_per_axis;
    for (int i = 0; i < sample_nodes; ++i) {
      const int j = static_cast<int>((static_cast<double>(i) + 0.5) * N / sample_nodes);
      if (std::abs(s.grid.node(j)) <= trusted_fraction * s.grid.half_width)
        idx.push_back(static_cast<std::size_t>(j));
    }
    double sup = 0.0;
    warn = false;
    for (std::size_t a : idx)
      for (std::size_t b : idx) {
        const auto k = intrinsic_kernel(s, t, a, b);
        sup = std::max(sup, k.value);
        warn = warn || k.truncation_warning;
      }
    return sup;
  };
  std::vector<IucRow> rows;
  for (double t : times) {
    IucRow r;
    r.t = t;
    bool w1 = false, w2 = false;
    r.sup_base = sup_kernel(base, t, w1);
    r.sup_doubled = sup_kernel(doubled, t, w2);
    r.growth_factor = r.sup_doubled / r.sup_base;
    r.truncation_warning = w1 || w2;
    rows.push_back(r);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Free energy
// ---------------------------------------------------------------------------

struct Annulus {
  double a = 3.0;
  double b = 5.0;
};

inline std::vector<Annulus> default_annuli() {
  return {{3, 5}, {5, 9}, {9, 17}, {17, 33}};
}

struct FreeEnergyRow {
  Annulus annulus;
  double energy = 0.0;   // int_A t0 V nu dx
  double entropy = 0.0;  // -int_A nu log nu dx
  double free_energy = 0.0;
  int sign = 0;  // -1, 0, +1 with a relative zero tolerance
};

struct FreeEnergyReport {
  double t0 = 1.0;
  std::vector<FreeEnergyRow> rows;
  double zero_tol_rel = 1e-8;
  bool all_nonnegative() const {
    for (const auto& r : rows)
      if (r.sign < 0) return false;
    return true;
  }
};

// E, H, F over radial annuli {a <= |x| <= b} (both sides in d = 1) for the
// potential t0 V. F = E - H by construction.
inline FreeEnergyReport free_energy(const LevyModel& md, const Potential& V, double t0,
                                    const std::vector<Annulus>& annuli,
                                    const QuadratureSpec& q = {}) {
  if (!(t0 > 0)) throw parameter_error("free_energy: t0 > 0");
  if (md.dim != 1) throw unsupported_family_error("free_energy: d = 1 only");
  FreeEnergyReport rep;
  rep.t0 = t0;
  double prev_b = 0.0;
  for (const auto& an : annuli) {
    if (!(an.a > 0 && an.b > an.a) || an.a < prev_b)
      throw parameter_error("free_energy: annuli must be disjoint ascending");
    prev_b = an.b;
    if (log_levy_density(md, an.a) >= 0)
      throw parameter_error("free_energy: nu >= 1 on an annulus");
    FreeEnergyRow row;
    row.annulus = an;
    row.energy = 2.0 * quad::integrate(
                           [&](double x) {
                             return t0 * V(x) * levy_density(md, x);
                           },
                           an.a, an.b, q.abs_tol, q.max_depth);
    row.entropy = -2.0 * quad::integrate(
                            [&](double x) {
                              const double l = log_levy_density(md, x);
                              return std::exp(l) * l;
                            },
                            an.a, an.b, q.abs_tol, q.max_depth);
    row.free_energy = row.energy - row.entropy;
    const double scale = std::max({std::abs(row.energy), std::abs(row.entropy), 1e-300});
    if (std::abs(row.free_energy) <= rep.zero_tol_rel * scale)
      row.sign = 0;
    else
      row.sign = row.free_energy > 0 ? 1 : -1;
    rep.rows.push_back(row);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Probabilistic route
// ---------------------------------------------------------------------------

struct ProbabilisticProfiles {
  RatioProfile vs_hitting;  // V / |log P^x(X_t in B(0,1))|
  RatioProfile vs_density;  // V / |log p(t, x)|
  bool consistent_with = false;  // both trends equal a reference trend
};

inline ProbabilisticProfiles probabilistic_ratio(const LevyModel& md, const Potential& V,
                                                 double t,
                                                 const std::vector<double>& radial_samples,
                                                 const QuadratureSpec& q = {},
                                                 std::optional<Trend> reference = {},
                                                 double slope_threshold = 0.05) {
  std::vector<double> r_hit, r_dens;
  for (double x : radial_samples) {
    const double hp = hitting_probability(md, t, x, 1.0, q);
    const double pd = transition_density(md, t, x, q);
    if (!(hp > 0) || !(pd > 0) || hp >= 1 || pd >= 1)
      throw sampling_error("probabilistic_ratio: log-scale undefined at |x|=" +
                           std::to_string(x));
    r_hit.push_back(V(x) / std::abs(std::log(hp)));
    r_dens.push_back(V(x) / std::abs(std::log(pd)));
  }
  ProbabilisticProfiles out;
  out.vs_hitting = detail::profile_from(radial_samples, r_hit, slope_threshold);
  out.vs_density = detail::profile_from(radial_samples, r_dens, slope_threshold);
  if (reference)
    out.consistent_with = out.vs_hitting.trend == *reference &&
                          out.vs_density.trend == *reference;
  return out;
}

// ---------------------------------------------------------------------------
// Verdict assembly
// ---------------------------------------------------------------------------

struct ClassificationReport {
  RatioProfile ratio;
  std::vector<GsdRow> gsd_table;
  std::vector<IucRow> iuc_table;
  std::vector<std::pair<double, FreeEnergyReport>> free_energy_table;  // per t0
  bool densities_bounded = true;  // small-t density_sup probes unflagged
  VerdictClass verdict = VerdictClass::Inconclusive;
  bool iuc = false;  // verdict GSD and densities bounded
  std::string note;

  int exit_code() const {
    switch (verdict) {
      case VerdictClass::Gsd: return 0;
      case VerdictClass::AgsdOnly: return 4;
      case VerdictClass::NotAgsd: return 5;
      case VerdictClass::Inconclusive: return 3;
    }
    return 3;
  }
};

struct ClassifyOptions {
  std::vector<double> times = {0.25, 0.5, 1.0, 2.0};
  std::vector<double> t0_probes = {0.5, 1.0, 2.0, 4.0};
  std::vector<Annulus> annuli = default_annuli();
  std::vector<double> radial_samples = default_radial_samples();
  double growth_bound = 1.2;      // window-growth factor splitting stable from sqrt(2)
  double slope_threshold = 0.05;
  std::vector<double> density_probe_times = {0.1, 0.5, 1.0};
};

// Free-energy route verdict: all probed t0 nonnegative -> GSD-class; some ->
// AGSD-only; none -> not-AGSD.
inline VerdictClass free_energy_route(const std::vector<std::pair<double, FreeEnergyReport>>& table) {
  int nonneg = 0;
  for (const auto& [t0, rep] : table)
    if (rep.all_nonnegative()) ++nonneg;
  if (nonneg == static_cast<int>(table.size())) return VerdictClass::Gsd;
  if (nonneg > 0) return VerdictClass::AgsdOnly;
  return VerdictClass::NotAgsd;
}

// GSD route as a compatibility set. Growth at the largest probe time rules
// everything but not-AGSD out (the exact ground-mode term already drives that
// growth, truncation only adds mass). At the smallest time the sup is only
// trustworthy without a truncation warning: growth there is evidence of
// AGSD-only, boundedness evidence of GSD, and a warning blurs either reading
// to {GSD, AGSD-only}.
inline std::set<VerdictClass> gsd_route(const std::vector<GsdRow>& rows,
                                        double growth_bound) {
  const GsdRow& small_t = rows.front();
  const GsdRow& big_t = rows.back();
  if (big_t.growth_factor >= growth_bound) return {VerdictClass::NotAgsd};
  if (small_t.truncation_warning)
    return {VerdictClass::Gsd, VerdictClass::AgsdOnly};
  if (small_t.growth_factor >= growth_bound) return {VerdictClass::AgsdOnly};
  return {VerdictClass::Gsd};
}

inline ClassificationReport classify_pair(const LevyModel& md, const Potential& V,
                                          const SpectrumResult& base,
                                          const SpectrumResult& doubled,
                                          const ClassifyOptions& opt = {},
                                          const QuadratureSpec& q = {}) {
  ClassificationReport rep;
  rep.ratio = borderline_ratio(md, V, opt.radial_samples, opt.slope_threshold);
  rep.gsd_table = gsd_diagnostic(base, doubled, opt.times);
  rep.iuc_table = iuc_diagnostic(base, doubled, opt.times);
  for (double t0 : opt.t0_probes)
    rep.free_energy_table.emplace_back(t0, free_energy(md, V, t0, opt.annuli, q));
  for (double t : opt.density_probe_times) {
    const auto ds = density_sup(md, t, q);
    if (ds.possibly_unbounded) rep.densities_bounded = false;
  }

  const VerdictClass from_trend = trend_to_verdict(rep.ratio.trend);
  const VerdictClass from_fe = free_energy_route(rep.free_energy_table);
  const auto route = gsd_route(rep.gsd_table, opt.growth_bound);
  if (from_trend == from_fe && route.count(from_trend)) {
    rep.verdict = from_trend;
  } else {
    rep.verdict = VerdictClass::Inconclusive;
    rep.note = std::string("route disagreement: trend=") +
               verdict_name(from_trend) + " free-energy=" + verdict_name(from_fe) +
               " window-growth={";
    for (auto v : route) rep.note += std::string(verdict_name(v)) + ",";
    rep.note += "}";
  }
  rep.iuc = rep.verdict == VerdictClass::Gsd && rep.densities_bounded;
  if (rep.verdict == VerdictClass::Gsd && !rep.densities_bounded)
    rep.note = "GSD, not IUC: transition densities unbounded at small t";
  return rep;
}

}  // namespace levykac::classify
