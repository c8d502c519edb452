#pragma once

// Tests of the eigenfunction estimates against a computed spectrum: the
// ground-state envelope against nu/V, domination of higher eigenfunctions by
// the ground state, the subaveraging bound, and the Green-operator sandwich.

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "levykac/errors.hpp"
#include "levykac/models.hpp"
#include "levykac/montecarlo.hpp"
#include "levykac/quadrature.hpp"
#include "levykac/spectral.hpp"

namespace levykac::verify {

struct Window {
  double lo = 5.0;
  double hi = 15.0;
};

struct EnvelopeRow {
  double x, phi0, nu, V, ratio;
};

struct EnvelopeReport {
  Window window;
  std::vector<EnvelopeRow> rows;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double spread = 0.0;  // max/min
  quad::LineFit decay_fit;  // log phi0 vs log |x|
  double eta = 0.0;
  bool pass = false;
  double spread_bound = 50.0;
};

namespace detail {

inline void require_trusted(const Grid& g, const Window& w) {
  if (!(w.lo > 0) || !(w.hi > w.lo))
    throw parameter_error("window: need 0 < lo < hi");
  if (w.hi > 0.85 * g.half_width)
    throw domain_error("window reaches into the wrap-around zone (|x| > 0.85 L)");
}

// shift eta with lambda_0 + eta > 0
inline double eta_shift(const SpectrumResult& spec) {
  const double l0 = spec.eigenvalues.front();
  return l0 > 0 ? 0.0 : 1.0 - l0;
}

}  // namespace detail

// r(x) = phi_0(x) (V(x) + eta) / nu(x) over window nodes; pass when the
// max/min spread stays under the bound. Stability under doubling L is the
// caller's comparison of two reports.
inline EnvelopeReport ground_state_envelope(const SpectrumResult& spec,
                                            const LevyModel& md, const Potential& V,
                                            Window w, double spread_bound = 50.0) {
  detail::require_trusted(spec.grid, w);
  if (spec.grid.dim != 1)
    throw unsupported_family_error("ground_state_envelope: d = 1 only");
  EnvelopeReport rep;
  rep.window = w;
  rep.spread_bound = spread_bound;
  rep.eta = detail::eta_shift(spec);
  rep.min_ratio = std::numeric_limits<double>::infinity();
  std::vector<double> lx, lphi;
  const auto& phi0 = spec.phi[0];
  for (int j = 0; j < spec.grid.points_per_axis; ++j) {
    const double x = spec.grid.node(j);
    const double ax = std::abs(x);
    if (ax < w.lo || ax > w.hi) continue;
    const double nu = levy_density(md, ax);
    const double r = phi0[j] * (V(ax) + rep.eta) / nu;
    rep.rows.push_back({x, phi0[j], nu, V(ax), r});
    rep.min_ratio = std::min(rep.min_ratio, r);
    rep.max_ratio = std::max(rep.max_ratio, r);
    if (phi0[j] > 0) {
      lx.push_back(std::log(ax));
      lphi.push_back(std::log(phi0[j]));
    }
  }
  if (rep.rows.size() < 8) throw parameter_error("envelope window holds too few nodes");
  rep.spread = rep.max_ratio / rep.min_ratio;
  rep.decay_fit = quad::fit_line(lx, lphi);
  rep.pass = rep.min_ratio > 0 && rep.spread < spread_bound;
  return rep;
}

// spread change between two envelope runs (e.g. L and 2L)
inline double envelope_stability(const EnvelopeReport& a, const EnvelopeReport& b) {
  const double lo = std::min(a.spread, b.spread);
  const double hi = std::max(a.spread, b.spread);
  return hi / lo;
}

struct DominationReport {
  int n = 0;
  double sup = 0.0;
  double arg_abs_x = 0.0;      // |x| where the sup is attained
  double edge_value = 0.0;     // ratio at the outermost window node
  std::vector<std::pair<double, double>> profile;  // (x, |phi_n|/phi_0)
};

// sup over window nodes of |phi_n(x)| / phi_0(x).
inline DominationReport eigenfunction_domination(const SpectrumResult& spec, int n,
                                                 Window w) {
  if (n < 0 || n >= spec.modes())
    throw parameter_error("eigenfunction_domination: n out of range");
  detail::require_trusted(spec.grid, w);
  DominationReport rep;
  rep.n = n;
  double edge_x = 0.0;
  for (int j = 0; j < spec.grid.points_per_axis; ++j) {
    const double x = spec.grid.node(j);
    const double ax = std::abs(x);
    if (ax < w.lo || ax > w.hi) continue;
    const double r = std::abs(spec.phi[n][j]) / spec.phi[0][j];
    rep.profile.emplace_back(x, r);
    if (r > rep.sup) {
      rep.sup = r;
      rep.arg_abs_x = ax;
    }
    if (ax > edge_x) {
      edge_x = ax;
      rep.edge_value = r;
    }
  }
  return rep;
}

struct SubaveragingReport {
  double lambda = 0.0;
  double sup_envelope = 0.0;  // sup f / (||f||_inf nu)
  double worst_defect = 0.0;  // min over probes/nodes of e^{lambda t} T_t f - f
  std::vector<std::pair<double, double>> profile;
};

// Check the subaveraging precondition e^{lambda t} T_t f >= f on probe times,
// then the envelope sup f(x)/(||f||_inf nu(x)) over the window.
inline SubaveragingReport subaveraging_envelope(const SpectrumResult& spec,
                                                const LevyModel& md, double lambda,
                                                const std::vector<double>& f, Window w,
                                                std::vector<double> probe_times = {0.5, 1.0, 2.0}) {
  detail::require_trusted(spec.grid, w);
  if (lambda < spec.eigenvalues.front() - 1e-12)
    throw parameter_error("subaveraging_envelope: lambda >= lambda_0 required");
  double fmax = 0.0;
  for (double v : f) fmax = std::max(fmax, std::abs(v));
  if (!(fmax > 0)) throw parameter_error("subaveraging_envelope: f must be nonzero");

  SubaveragingReport rep;
  rep.lambda = lambda;
  rep.worst_defect = std::numeric_limits<double>::infinity();
  for (double t : probe_times) {
    const auto Tf = semigroup_apply(spec, t, f);
    const double grow = std::exp(lambda * t);
    for (std::size_t j = 0; j < f.size(); ++j)
      rep.worst_defect = std::min(rep.worst_defect, grow * Tf.values[j] - f[j]);
  }
  if (rep.worst_defect < -1e-8 * fmax)
    throw not_subaveraging_error("subaveraging precondition failed (defect " +
                                 std::to_string(rep.worst_defect) + ")");

  for (int j = 0; j < spec.grid.points_per_axis; ++j) {
    const double x = spec.grid.node(j);
    const double ax = std::abs(x);
    if (ax < w.lo || ax > w.hi) continue;
    const double r = f[j] / (fmax * levy_density(md, ax));
    rep.profile.emplace_back(x, r);
    rep.sup_envelope = std::max(rep.sup_envelope, r);
  }
  return rep;
}

struct GreenSandwich {
  double lower = 0.0;
  double upper = 0.0;
  double survival = 0.0;
  double survival_std_error = 0.0;
  double inf_V = 0.0;
  double sup_V = 0.0;
};

// (1 - e^{-sup_D V}) P^x(tau_D > 1) / sup_D V  <=  G^V_D 1(x)  <=  1 / inf_D V,
// with the survival probability estimated by Monte Carlo. Conventions
// 1/inf = 0 and 1/0+ = inf apply.
inline GreenSandwich green_sandwich(const LevyModel& md,
                                    const std::function<double(double)>& V, double x,
                                    const mc::Ball& D, const mc::PathConfig& cfg) {
  GreenSandwich out;
  out.inf_V = std::numeric_limits<double>::infinity();
  out.sup_V = 0.0;
  const int scan = 2000;
  for (int i = 0; i <= scan; ++i) {
    const double y = D.center - D.radius + 2.0 * D.radius * i / scan;
    const double v = V(y);
    if (v < 0) throw parameter_error("green_sandwich: V must be >= 0 on D");
    out.inf_V = std::min(out.inf_V, v);
    out.sup_V = std::max(out.sup_V, v);
  }
  if (!(out.sup_V > 0))
    throw parameter_error("green_sandwich: V identically 0 on D");
  out.upper = out.inf_V > 0 ? 1.0 / out.inf_V
                            : std::numeric_limits<double>::infinity();
  const auto surv = mc::survival(md, mc::SetSpec{{D}}, 1.0, x, cfg);
  out.survival = surv.mean;
  out.survival_std_error = surv.std_error;
  if (std::isinf(out.sup_V)) {
    out.lower = 0.0;  // (1 - e^{-inf}) / inf
  } else {
    out.lower = (1.0 - std::exp(-out.sup_V)) * surv.mean / out.sup_V;
  }
  return out;
}

inline GreenSandwich green_sandwich(const LevyModel& md, const Potential& V, double x,
                                    const mc::Ball& D, const mc::PathConfig& cfg) {
  return green_sandwich(md, [&V](double y) { return V(y); }, x, D, cfg);
}

}  // namespace levykac::verify
