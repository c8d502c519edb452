#pragma once

// Path sampling and Monte Carlo estimators for the path-integral semigroup:
// stochastic oracles deliberately independent of the spectral pipeline.
// Increments use exact transform samplers where the family admits one and a
// tabulated CDF inversion of the transition density elsewhere.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "levykac/errors.hpp"
#include "levykac/models.hpp"
#include "levykac/parallel.hpp"
#include "levykac/quadrature.hpp"
#include "levykac/rng.hpp"

namespace levykac::mc {

struct PathConfig {
  double dt = 1e-3;
  double horizon = 1.0;
  std::size_t n_paths = 10000;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: LEVYKAC_THREADS or hardware

  void validate() const {
    if (!(dt > 0) || dt > horizon) throw parameter_error("PathConfig: 0 < dt <= horizon");
    if (n_paths < 100) throw parameter_error("PathConfig: n_paths >= 100");
  }
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_paths = 0;
  double dt = 0.0;
  std::string estimator;
};

struct Ball {
  double center = 0.0;
  double radius = 1.0;
  bool contains(double x) const { return std::abs(x - center) < radius; }
};

// finite union of intervals/balls
struct SetSpec {
  std::vector<Ball> balls;
  bool contains(double x) const {
    for (const auto& b : balls)
      if (b.contains(x)) return true;
    return false;
  }
  static SetSpec ball(double center, double radius) { return {{{center, radius}}}; }
};

namespace detail {

// symmetric alpha-stable with cf e^{-|xi|^alpha}
inline double sym_stable(Rng& rng, double alpha) {
  const double U = rng.uniform(-0.5 * M_PI, 0.5 * M_PI);
  if (std::abs(alpha - 1.0) < 1e-12) return std::tan(U);
  const double E = rng.exponential();
  return std::sin(alpha * U) / std::pow(std::cos(U), 1.0 / alpha) *
         std::pow(std::cos((1.0 - alpha) * U) / E, (1.0 - alpha) / alpha);
}

// one-sided stable subordinator value with Laplace transform e^{-u^g}, g in (0,1)
inline double pos_stable(Rng& rng, double g) {
  const double U = rng.uniform(0.0, M_PI);
  const double E = rng.exponential();
  const double A = std::pow(std::pow(std::sin(g * U), g) *
                                std::pow(std::sin((1.0 - g) * U), 1.0 - g) / std::sin(U),
                            1.0 / (1.0 - g));
  return std::pow(A / E, (1.0 - g) / g);
}

}  // namespace detail

// Draws i.i.d. increments with law p(dt, .). Families with an exact transform
// sampler are drawn directly; anything else goes through CDF inversion of the
// inverted density, which requires integrability at dt.
class IncrementSampler {
 public:
  IncrementSampler(const LevyModel& md, double dt, const QuadratureSpec& q = {})
      : model_(md), dt_(dt) {
    md.validate();
    if (md.dim != 1) throw unsupported_family_error("IncrementSampler: d = 1 only");
    if (!(dt > 0)) throw parameter_error("IncrementSampler: dt > 0");
    switch (md.family) {
      case Family::Stable:
      case Family::StableMixture:
      case Family::JumpDiffusion:
      case Family::Relativistic:
        direct_ = true;
        break;
      default:
        direct_ = false;
        build_cdf_table(q);
        break;
    }
  }

  double sample(Rng& rng) const {
    switch (model_.family) {
      case Family::Stable:
        return std::pow(dt_, 1.0 / model_.alpha) * detail::sym_stable(rng, model_.alpha);
      case Family::StableMixture:
        return std::pow(model_.a * dt_, 1.0 / model_.alpha) *
                   detail::sym_stable(rng, model_.alpha) +
               std::pow(model_.b * dt_, 1.0 / model_.beta) *
                   detail::sym_stable(rng, model_.beta);
      case Family::JumpDiffusion:
        return std::pow(model_.a * dt_, 1.0 / model_.alpha) *
                   detail::sym_stable(rng, model_.alpha) +
               std::sqrt(2.0 * model_.b * dt_) * rng.normal();
      case Family::Relativistic: {
        // exponentially tilted one-sided stable subordinator, then Gaussian
        const double g = 0.5 * model_.alpha;
        const double tilt = std::pow(model_.m, 2.0 / model_.alpha);
        double T;
        do {
          T = std::pow(dt_, 1.0 / g) * detail::pos_stable(rng, g);
        } while (rng.uniform01() >= std::exp(-tilt * T));
        return std::sqrt(2.0 * T) * rng.normal();
      }
      default: {  // CDF inversion
        const double u = rng.uniform01() * cdf_.back();
        auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
        std::size_t j = static_cast<std::size_t>(it - cdf_.begin());
        if (j == 0) j = 1;
        const double c0 = cdf_[j - 1], c1 = cdf_[j];
        const double y0 = ys_[j - 1], y1 = ys_[j];
        const double r = c1 > c0 ? y0 + (y1 - y0) * (u - c0) / (c1 - c0) : y0;
        return rng.coin() ? r : -r;
      }
    }
  }

  bool direct() const { return direct_; }

 private:
  void build_cdf_table(const QuadratureSpec& q) {
    const Truncation tr = find_truncation(model_, dt_, q);
    if (!tr.reached || !tr.decay_ok)
      throw integrability_error(
          "IncrementSampler: inversion fallback needs an integrable density at dt");
    // first-jump estimate of the tail mass beyond Y
    auto tail_mass = [&](double Y) {
      auto nu = [&](double z) { return levy_density(model_, z); };
      return 2.0 * dt_ * quad::integrate_tail(nu, Y, q.abs_tol).value;
    };
    // uniform nodes over the 99% core, geometric nodes out to the 1e-7
    // quantile; heavy tails would otherwise starve the core of resolution
    double Ycore = 1.0;
    while (Ycore < 1e6 && tail_mass(Ycore) > 0.01) Ycore *= 2.0;
    double Ymax = Ycore;
    while (Ymax < 1e12 && tail_mass(Ymax) > 1e-7) Ymax *= 2.0;
    const std::size_t M = 2049, core = 1537;
    ys_.resize(M);
    cdf_.resize(M);
    for (std::size_t i = 0; i < core; ++i)
      ys_[i] = Ycore * static_cast<double>(i) / (core - 1);
    const double g = std::pow(Ymax / Ycore, 1.0 / static_cast<double>(M - core));
    for (std::size_t i = core; i < M; ++i) ys_[i] = ys_[i - 1] * g;
    std::vector<double> p(M);
    for (std::size_t i = 0; i < M; ++i)
      p[i] = std::max(0.0, transition_density(model_, dt_, ys_[i], q));
    cdf_[0] = 0.0;  // CDF of |X|: 2 * int_0^y p
    for (std::size_t i = 1; i < M; ++i)
      cdf_[i] = cdf_[i - 1] + (p[i - 1] + p[i]) * (ys_[i] - ys_[i - 1]);
  }

  LevyModel model_;
  double dt_;
  bool direct_ = true;
  std::vector<double> ys_, cdf_;
};

// Positions X_0 = start, X_{k dt}, k = 0..horizon/dt, for one path index.
inline std::vector<double> sample_path(const LevyModel& md, const PathConfig& cfg,
                                       double start, std::uint64_t path_index,
                                       const IncrementSampler* sampler = nullptr) {
  cfg.validate();
  const std::size_t steps = static_cast<std::size_t>(std::llround(cfg.horizon / cfg.dt));
  IncrementSampler local = sampler ? *sampler : IncrementSampler(md, cfg.dt);
  Rng rng(derive_stream(cfg.seed, path_index));
  std::vector<double> xs(steps + 1);
  xs[0] = start;
  for (std::size_t k = 1; k <= steps; ++k) xs[k] = xs[k - 1] + local.sample(rng);
  return xs;
}

namespace detail {

// shared driver: per-path values land in an index-addressed buffer, reduced
// by pairwise summation, so estimates are bit-stable across thread counts
template <typename PathFn>
McEstimate run_estimator(const LevyModel& md, const PathConfig& cfg,
                         const std::string& tag, const PathFn& per_path) {
  cfg.validate();
  const IncrementSampler sampler(md, cfg.dt);
  std::vector<double> vals(cfg.n_paths);
  parallel_for(cfg.n_paths, cfg.threads, [&](std::size_t i) {
    Rng rng(derive_stream(cfg.seed, i));
    vals[i] = per_path(sampler, rng);
  });
  McEstimate est;
  est.n_paths = cfg.n_paths;
  est.dt = cfg.dt;
  est.estimator = tag;
  est.mean = quad::pairwise_sum(vals) / static_cast<double>(cfg.n_paths);
  std::vector<double> sq(cfg.n_paths);
  for (std::size_t i = 0; i < cfg.n_paths; ++i) {
    const double d = vals[i] - est.mean;
    sq[i] = d * d;
  }
  const double var = quad::pairwise_sum(sq) /
                     (static_cast<double>(cfg.n_paths) - 1.0);
  est.std_error = std::sqrt(var / static_cast<double>(cfg.n_paths));
  return est;
}

}  // namespace detail

// E^x[ e^{-int_0^t V(X_s) ds} ], V discretized by the trapezoid rule.
inline McEstimate feynman_kac(const LevyModel& md, const Potential& V, double t,
                              double x, const PathConfig& cfg) {
  if (!(t > 0)) throw parameter_error("feynman_kac: t > 0");
  const std::size_t steps = static_cast<std::size_t>(std::llround(t / cfg.dt));
  if (std::abs(steps * cfg.dt - t) > 1e-9 * t)
    throw parameter_error("feynman_kac: t must be a multiple of dt");
  return detail::run_estimator(
      md, cfg, "feynman_kac", [&](const IncrementSampler& sampler, Rng& rng) {
        double pos = x;
        double acc = 0.5 * V(pos);
        for (std::size_t k = 1; k <= steps; ++k) {
          pos += sampler.sample(rng);
          acc += (k == steps ? 0.5 : 1.0) * V(pos);
        }
        return std::exp(-acc * cfg.dt);
      });
}

// P^x(tau_D > t) from discrete positions (one-sided overestimate: excursions
// out and back inside one step are missed).
inline McEstimate survival(const LevyModel& md, const SetSpec& D, double t, double x,
                           const PathConfig& cfg) {
  if (!D.contains(x)) throw parameter_error("survival: start must lie in D");
  const std::size_t steps = static_cast<std::size_t>(std::llround(t / cfg.dt));
  return detail::run_estimator(
      md, cfg, "survival", [&](const IncrementSampler& sampler, Rng& rng) {
        double pos = x;
        for (std::size_t k = 1; k <= steps; ++k) {
          pos += sampler.sample(rng);
          if (!D.contains(pos)) return 0.0;
        }
        return 1.0;
      });
}

// G^V_D 1(x): time-discretized Feynman-Kac occupation of D before first exit,
// truncated at the horizon (remainder is exponentially small for V >> 0 on D).
inline McEstimate green_mc(const LevyModel& md, const Potential& V, const SetSpec& D,
                           double x, const PathConfig& cfg) {
  if (!D.contains(x)) throw parameter_error("green_mc: start must lie in D");
  const std::size_t max_steps =
      static_cast<std::size_t>(std::llround(cfg.horizon / cfg.dt));
  return detail::run_estimator(
      md, cfg, "green_mc", [&](const IncrementSampler& sampler, Rng& rng) {
        double pos = x;
        double vsum = 0.0;  // trapezoid accumulator of V along the path
        double g = 0.0;
        double prev_v = V(pos);
        for (std::size_t k = 0; k < max_steps; ++k) {
          g += std::exp(-vsum * cfg.dt) * cfg.dt;
          pos += sampler.sample(rng);
          if (!D.contains(pos)) break;
          const double v = V(pos);
          vsum += 0.5 * (prev_v + v);
          prev_v = v;
        }
        return g;
      });
}

struct RatioEntry {
  double x = 0.0;
  McEstimate numerator;    // E^x[e_V(t); X_t in A]
  McEstimate denominator;  // E^x[e_V(t); X_t in D]
  double ratio = 0.0;
  double ratio_std_error = 0.0;
  std::size_t denominator_hits = 0;
  bool valid = false;
};

// E^x[e_V(t); X_t in A] / E^x[e_V(t); X_t in D] over the sampled starts.
inline std::vector<RatioEntry> survival_ratio(const LevyModel& md, const Potential& V,
                                              double t, const SetSpec& D,
                                              const SetSpec& A,
                                              const std::vector<double>& x_samples,
                                              const PathConfig& cfg) {
  cfg.validate();
  const std::size_t steps = static_cast<std::size_t>(std::llround(t / cfg.dt));
  if (std::abs(steps * cfg.dt - t) > 1e-9 * t)
    throw parameter_error("survival_ratio: t must be a multiple of dt");
  const IncrementSampler sampler(md, cfg.dt);
  std::vector<RatioEntry> out;
  for (double x : x_samples) {
    std::vector<double> w_num(cfg.n_paths), w_den(cfg.n_paths);
    std::vector<double> hits(cfg.n_paths, 0.0);
    parallel_for(cfg.n_paths, cfg.threads, [&](std::size_t i) {
      Rng rng(derive_stream(cfg.seed, i));
      double pos = x;
      double acc = 0.5 * V(pos);
      for (std::size_t k = 1; k <= steps; ++k) {
        pos += sampler.sample(rng);
        acc += (k == steps ? 0.5 : 1.0) * V(pos);
      }
      const double w = std::exp(-acc * cfg.dt);
      w_num[i] = A.contains(pos) ? w : 0.0;
      w_den[i] = D.contains(pos) ? w : 0.0;
      hits[i] = D.contains(pos) ? 1.0 : 0.0;
    });
    RatioEntry entry;
    entry.x = x;
    auto reduce = [&](std::vector<double>& vals, const std::string& tag) {
      McEstimate est;
      est.n_paths = cfg.n_paths;
      est.dt = cfg.dt;
      est.estimator = tag;
      est.mean = quad::pairwise_sum(vals) / static_cast<double>(cfg.n_paths);
      std::vector<double> sq(cfg.n_paths);
      for (std::size_t i = 0; i < cfg.n_paths; ++i) {
        const double d = vals[i] - est.mean;
        sq[i] = d * d;
      }
      est.std_error = std::sqrt(quad::pairwise_sum(sq) /
                                (static_cast<double>(cfg.n_paths) - 1.0) /
                                static_cast<double>(cfg.n_paths));
      return est;
    };
    entry.numerator = reduce(w_num, "survival_ratio_num");
    entry.denominator = reduce(w_den, "survival_ratio_den");
    entry.denominator_hits =
        static_cast<std::size_t>(std::llround(quad::pairwise_sum(hits)));
    entry.valid = entry.denominator_hits >= 10;
    if (entry.valid && entry.denominator.mean > 0) {
      entry.ratio = entry.numerator.mean / entry.denominator.mean;
      const double rn = entry.numerator.mean > 0
                            ? entry.numerator.std_error / entry.numerator.mean
                            : 0.0;
      const double rd = entry.denominator.std_error / entry.denominator.mean;
      entry.ratio_std_error = entry.ratio * std::sqrt(rn * rn + rd * rd);
    } else {
      entry.valid = false;
    }
    out.push_back(std::move(entry));
  }
  return out;
}

inline RatioEntry survival_ratio_at(const LevyModel& md, const Potential& V, double t,
                                    const SetSpec& D, const SetSpec& A, double x,
                                    const PathConfig& cfg) {
  auto entries = survival_ratio(md, V, t, D, A, {x}, cfg);
  if (!entries[0].valid)
    throw insufficient_statistics_error(
        "survival_ratio: denominator consistent with 0 at x=" + std::to_string(x));
  return entries[0];
}

}  // namespace levykac::mc
