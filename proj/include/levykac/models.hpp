#pragma once

// Catalog of symmetric jump Levy processes and confining potentials:
// characteristic exponents, jump intensities, transition densities by
// Fourier inversion, hitting probabilities, and the borderline potential.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "levykac/errors.hpp"
#include "levykac/quadrature.hpp"

namespace levykac {

enum class Family {
  Stable,          // psi = |xi|^alpha, nu = C(d,alpha) |x|^{ -d-alpha }
  StableMixture,   // psi = a|xi|^alpha + b|xi|^beta, 0 < beta < alpha < 2
  JumpDiffusion,   // psi = a|xi|^alpha + b|xi|^2
  Relativistic,    // psi = (|xi|^2 + m^{2/alpha})^{alpha/2} - m
  GeometricStable, // psi = log(1 + |xi|^alpha)
  TemperedFamily,  // nu-profile e^{-a|x|^beta} |x|^{-d-delta} (1+|x|)^{d+delta-gamma}
};

inline const char* family_name(Family f) {
  switch (f) {
    case Family::Stable: return "stable";
    case Family::StableMixture: return "stable_mixture";
    case Family::JumpDiffusion: return "jump_diffusion";
    case Family::Relativistic: return "relativistic";
    case Family::GeometricStable: return "geometric_stable";
    case Family::TemperedFamily: return "tempered";
  }
  return "?";
}

// Exact normalization of the rotationally symmetric alpha-stable intensity.
inline double stable_density_constant(int dim, double alpha) {
  return alpha * std::pow(2.0, alpha - 1.0) * std::tgamma(0.5 * (dim + alpha)) /
         (std::pow(M_PI, 0.5 * dim) * std::tgamma(1.0 - 0.5 * alpha));
}

struct LevyModel {
  Family family = Family::Stable;
  int dim = 1;
  double alpha = 1.0;  // stability index in (0,2)
  double beta = 0.5;   // mixture: second index in (0,alpha); tempered: e^{-a|x|^beta}
  double m = 1.0;      // relativistic mass
  double a = 1.0;      // mixture/diffusion weight; tempered tempering rate
  double b = 0.0;      // mixture/diffusion weight
  double delta = 1.0;  // tempered small-jump exponent, in [0,2)
  double gamma = 2.0;  // tempered large-|x| polynomial correction

  static LevyModel stable(double alpha, int dim = 1) {
    LevyModel md;
    md.family = Family::Stable;
    md.alpha = alpha;
    md.dim = dim;
    md.validate();
    return md;
  }
  static LevyModel stable_mixture(double alpha, double beta, double a, double b,
                                  int dim = 1) {
    LevyModel md;
    md.family = Family::StableMixture;
    md.alpha = alpha;
    md.beta = beta;
    md.a = a;
    md.b = b;
    md.dim = dim;
    md.validate();
    return md;
  }
  static LevyModel jump_diffusion(double alpha, double a, double b, int dim = 1) {
    LevyModel md;
    md.family = Family::JumpDiffusion;
    md.alpha = alpha;
    md.a = a;
    md.b = b;
    md.dim = dim;
    md.validate();
    return md;
  }
  static LevyModel relativistic(double alpha, double m, int dim = 1) {
    LevyModel md;
    md.family = Family::Relativistic;
    md.alpha = alpha;
    md.m = m;
    md.dim = dim;
    md.validate();
    return md;
  }
  static LevyModel geometric_stable(double alpha, int dim = 1) {
    LevyModel md;
    md.family = Family::GeometricStable;
    md.alpha = alpha;
    md.dim = dim;
    md.validate();
    return md;
  }
  static LevyModel tempered(double a, double beta, double delta, double gamma,
                            int dim = 1) {
    LevyModel md;
    md.family = Family::TemperedFamily;
    md.a = a;
    md.beta = beta;
    md.delta = delta;
    md.gamma = gamma;
    md.dim = dim;
    md.validate();
    return md;
  }

  // Gaussian coefficient A in psi = A|xi|^2 + integral term.
  double gaussian_coefficient() const {
    return family == Family::JumpDiffusion ? b : 0.0;
  }

  void validate() const {
    if (dim != 1 && dim != 2) throw parameter_error("LevyModel: dim must be 1 or 2");
    switch (family) {
      case Family::Stable:
        if (!(alpha > 0 && alpha < 2)) throw parameter_error("stable: alpha in (0,2)");
        break;
      case Family::StableMixture:
        if (!(alpha > 0 && alpha < 2)) throw parameter_error("mixture: alpha in (0,2)");
        if (!(beta > 0 && beta < alpha))
          throw parameter_error("mixture: beta in (0,alpha)");
        if (!(a >= 0 && b >= 0 && a + b > 0))
          throw parameter_error("mixture: weights a,b >= 0, not both 0");
        break;
      case Family::JumpDiffusion:
        if (!(alpha > 0 && alpha < 2))
          throw parameter_error("jump_diffusion: alpha in (0,2)");
        if (!(a > 0 && b >= 0)) throw parameter_error("jump_diffusion: a > 0, b >= 0");
        break;
      case Family::Relativistic:
        if (!(alpha > 0 && alpha < 2))
          throw parameter_error("relativistic: alpha in (0,2)");
        if (!(m > 0)) throw parameter_error("relativistic: m > 0");
        break;
      case Family::GeometricStable:
        if (!(alpha > 0 && alpha < 2))
          throw parameter_error("geometric_stable: alpha in (0,2)");
        break;
      case Family::TemperedFamily:
        if (!(a > 0)) throw parameter_error("tempered: a > 0");
        if (!((beta > 0 && beta <= 1) || beta == 2.0))
          throw parameter_error("tempered: beta in (0,1] or beta = 2");
        if (!(delta >= 0 && delta < 2)) throw parameter_error("tempered: delta in [0,2)");
        if (!(gamma > 0)) throw parameter_error("tempered: gamma > 0");
        break;
    }
  }

  bool operator==(const LevyModel&) const = default;
};

// ---------------------------------------------------------------------------
// Jump intensity nu
// ---------------------------------------------------------------------------

// log nu(x) as a function of r = |x|; exact in log space so that tempered
// tails far below DBL_MIN stay usable.
inline double log_levy_density(const LevyModel& md, double r) {
  if (!(r > 0)) throw domain_error("levy_density: |x| must be > 0");
  const double d = md.dim;
  switch (md.family) {
    case Family::Stable:
      return std::log(stable_density_constant(md.dim, md.alpha)) -
             (d + md.alpha) * std::log(r);
    case Family::StableMixture: {
      const double la = std::log(md.a * stable_density_constant(md.dim, md.alpha)) -
                        (d + md.alpha) * std::log(r);
      const double lb = std::log(md.b * stable_density_constant(md.dim, md.beta)) -
                        (d + md.beta) * std::log(r);
      if (md.a == 0) return lb;
      if (md.b == 0) return la;
      const double hi = std::max(la, lb);
      return hi + std::log1p(std::exp(std::min(la, lb) - hi));
    }
    case Family::JumpDiffusion:
      return std::log(md.a * stable_density_constant(md.dim, md.alpha)) -
             (d + md.alpha) * std::log(r);
    case Family::Relativistic:
      // profile convention: e^{-m^{1/alpha} r} r^{-d-alpha} (1 + r^{(d+alpha-1)/2})
      return -std::pow(md.m, 1.0 / md.alpha) * r - (d + md.alpha) * std::log(r) +
             std::log1p(std::pow(r, 0.5 * (d + md.alpha - 1.0)));
    case Family::GeometricStable:
      // profile convention: r^{-d} (1+r)^{-alpha}
      return -d * std::log(r) - md.alpha * std::log1p(r);
    case Family::TemperedFamily:
      return -md.a * std::pow(r, md.beta) - (d + md.delta) * std::log(r) +
             (d + md.delta - md.gamma) * std::log1p(r);
  }
  return 0.0;
}

inline double levy_density(const LevyModel& md, double r) {
  return std::exp(log_levy_density(md, r));
}

inline double levy_density(const LevyModel& md, const std::vector<double>& x) {
  double r2 = 0;
  for (double c : x) r2 += c * c;
  return levy_density(md, std::sqrt(r2));
}

// Exact power-law tail decomposition nu(z) = sum coef * z^{-1-exp} (d = 1),
// available for the families with exact constants.
struct PowerTail {
  double coef;
  double exponent;  // nu term = coef * z^{-1-exponent}
};

inline std::vector<PowerTail> exact_power_tails(const LevyModel& md) {
  if (md.dim != 1)
    throw unsupported_family_error("exact_power_tails: d = 1 only");
  switch (md.family) {
    case Family::Stable:
      return {{stable_density_constant(1, md.alpha), md.alpha}};
    case Family::StableMixture:
      return {{md.a * stable_density_constant(1, md.alpha), md.alpha},
              {md.b * stable_density_constant(1, md.beta), md.beta}};
    case Family::JumpDiffusion:
      return {{md.a * stable_density_constant(1, md.alpha), md.alpha}};
    default:
      throw unsupported_family_error(
          "exact_power_tails: family has a profile-only intensity");
  }
}

// ---------------------------------------------------------------------------
// Characteristic exponent psi
// ---------------------------------------------------------------------------

namespace detail {

// cancellation-free 1 - cos
inline double one_minus_cos(double v) {
  const double s = std::sin(0.5 * v);
  return 2.0 * s * s;
}

// Levy-Khintchine quadrature of the tempered profile: fixed composite
// Gauss-Legendre grid in z, head desingularized by z = u^{2/(2-delta)}.
inline double tempered_symbol_1d(const LevyModel& md, double xi) {
  xi = std::abs(xi);
  if (xi == 0) return 0.0;
  static const double gx[8] = {-0.9602898564975363, -0.7966664774136267,
                               -0.5255324099163290, -0.1834346424956498,
                               0.1834346424956498,  0.5255324099163290,
                               0.7966664774136267,  0.9602898564975363};
  static const double gw[8] = {0.1012285362903763, 0.2223810344533745,
                               0.3137066458778873, 0.3626837833783620,
                               0.3626837833783620, 0.3137066458778873,
                               0.2223810344533745, 0.1012285362903763};
  auto nu = [&](double z) { return levy_density(md, z); };
  const double p = 2.0 / (2.0 - md.delta);
  double head = 0.0;  // [0,1] via substitution z = u^p
  {
    const int panels = 128;
    for (int k = 0; k < panels; ++k) {
      const double ua = static_cast<double>(k) / panels;
      const double ub = static_cast<double>(k + 1) / panels;
      const double c = 0.5 * (ua + ub), h = 0.5 * (ub - ua);
      for (int i = 0; i < 8; ++i) {
        const double u = c + h * gx[i];
        if (u == 0) continue;
        const double z = std::pow(u, p);
        head += gw[i] * h * one_minus_cos(xi * z) * nu(z) * p * std::pow(u, p - 1.0);
      }
    }
  }
  // tail [1, Z]: exponential localization makes Z modest
  double Z = 1.0;
  while (log_levy_density(md, Z) > -46.0 && Z < 1e6) Z *= 1.5;
  double tail = 0.0;
  {
    const int panels = 1024;
    for (int k = 0; k < panels; ++k) {
      const double za = 1.0 + (Z - 1.0) * k / panels;
      const double zb = 1.0 + (Z - 1.0) * (k + 1) / panels;
      const double c = 0.5 * (za + zb), h = 0.5 * (zb - za);
      for (int i = 0; i < 8; ++i) {
        const double z = c + h * gx[i];
        tail += gw[i] * h * one_minus_cos(xi * z) * nu(z);
      }
    }
  }
  return 2.0 * (head + tail);
}

// Piecewise-linear table of the tempered symbol on a fixed dyadic grid.
// Node values depend only on the model, never on query order, so cached
// evaluation stays deterministic across threads and runs.
inline double tempered_symbol_cached(const LevyModel& md, double xi) {
  constexpr double kStep = 1.0 / 1024.0;
  struct Cache {
    LevyModel key;
    std::vector<double> vals;  // psi at i * kStep
    bool valid = false;
  };
  thread_local Cache cache;
  if (xi > 4096.0) return tempered_symbol_1d(md, xi);  // beyond the table cap
  if (!cache.valid || !(cache.key == md)) {
    cache.key = md;
    cache.vals.assign(1, 0.0);
    cache.valid = true;
  }
  const double pos = xi / kStep;
  const std::size_t hi = static_cast<std::size_t>(pos) + 1;
  if (hi >= cache.vals.size()) {
    std::size_t target = 2;
    while (target <= hi) target *= 2;  // dyadic growth keeps nodes stable
    const std::size_t old = cache.vals.size();
    cache.vals.resize(target + 1);
    for (std::size_t i = old; i <= target; ++i)
      cache.vals[i] = tempered_symbol_1d(md, static_cast<double>(i) * kStep);
  }
  const std::size_t lo = hi - 1;
  const double w = pos - static_cast<double>(lo);
  // cubic Lagrange through nodes lo-1..lo+2: linear-interp kinks would leak
  // noise into oscillatory inversions of exponentially small densities
  if (lo == 0 || hi + 1 >= cache.vals.size()) {
    if (hi + 1 >= cache.vals.size() || cache.vals.size() < 4)
      return (1.0 - w) * cache.vals[lo] + w * cache.vals[hi];
    const double f0 = cache.vals[0], f1 = cache.vals[1], f2 = cache.vals[2],
                 f3 = cache.vals[3];
    const double s = pos;  // one-sided cubic from the origin
    return f0 + s * (f1 - f0 + (s - 1.0) * (0.5 * (f2 - 2.0 * f1 + f0) +
                                            (s - 2.0) * (f3 - 3.0 * f2 + 3.0 * f1 - f0) / 6.0));
  }
  const double fm = cache.vals[lo - 1], f0 = cache.vals[lo], f1 = cache.vals[hi],
               f2 = cache.vals[hi + 1];
  const double a = -fm / 6.0 + 0.5 * f0 - 0.5 * f1 + f2 / 6.0;
  const double b = 0.5 * fm - f0 + 0.5 * f1;
  const double c = -fm / 3.0 - 0.5 * f0 + f1 - f2 / 6.0;
  return ((a * w + b) * w + c) * w + f0;
}

}  // namespace detail

// psi(|xi|); radial by symmetry of every catalog family.
inline double symbol(const LevyModel& md, double xi) {
  md.validate();
  const double r = std::abs(xi);
  switch (md.family) {
    case Family::Stable:
      return std::pow(r, md.alpha);
    case Family::StableMixture:
      return md.a * std::pow(r, md.alpha) + md.b * std::pow(r, md.beta);
    case Family::JumpDiffusion:
      return md.a * std::pow(r, md.alpha) + md.b * r * r;
    case Family::Relativistic:
      return std::pow(r * r + std::pow(md.m, 2.0 / md.alpha), 0.5 * md.alpha) - md.m;
    case Family::GeometricStable:
      return std::log1p(std::pow(r, md.alpha));
    case Family::TemperedFamily:
      if (md.dim != 1)
        throw unsupported_family_error("tempered symbol: d = 1 only");
      return detail::tempered_symbol_cached(md, r);
  }
  return 0.0;
}

inline double symbol(const LevyModel& md, const std::vector<double>& xi) {
  double r2 = 0;
  for (double c : xi) r2 += c * c;
  return symbol(md, std::sqrt(r2));
}

// ---------------------------------------------------------------------------
// Transition densities by Fourier inversion
// ---------------------------------------------------------------------------

// Truncation search for e^{-t psi}: Xi with e^{-t psi(Xi)} < trunc_tol, plus
// the local decay exponent of the integrand near Xi. decay_ok is false when
// the integrand decays slower than |xi|^{-d-0.1} there (slowly varying
// exponents; density possibly unbounded or non-integrable at this t).
struct Truncation {
  double Xi = 0.0;
  double decay_exponent = 0.0;
  bool reached = false;  // trunc_tol attained below the cap
  bool decay_ok = false;
};

inline Truncation find_truncation(const LevyModel& md, double t,
                                  const QuadratureSpec& q = {}) {
  if (!(t > 0)) throw parameter_error("transition density: t must be > 0");
  Truncation tr;
  double xi = 1.0;
  while (xi < q.xi_cap && std::exp(-t * symbol(md, xi)) >= q.trunc_tol) xi *= 2.0;
  tr.Xi = xi;
  tr.reached = xi < q.xi_cap;
  const double g1 = -t * symbol(md, xi);
  const double g0 = -t * symbol(md, 0.5 * xi);
  tr.decay_exponent = (g1 - g0) / std::log(2.0);
  tr.decay_ok = tr.decay_exponent < -(md.dim + 0.1);
  return tr;
}

namespace detail {

// int_a^b g(xi) cos(xi x) dxi, switching to half-period summation with
// iterated averaging once the window holds too many oscillations.
template <typename G>
double cosine_integral(const G& g, double x, double a, double b,
                       const QuadratureSpec& q) {
  const double periods = std::abs(x) * (b - a) / (2.0 * M_PI);
  if (periods <= q.osc_period_threshold) {
    return quad::integrate([&](double xi) { return g(xi) * std::cos(xi * x); }, a, b,
                           q.abs_tol, q.max_depth);
  }
  return quad::cosine_oscillatory(g, x, a, b, q.abs_tol);
}

inline double bessel_j0(double v) { return std::cyl_bessel_j(0.0, v); }

}  // namespace detail

// p(t, x) for |x| = r, by inversion of e^{-t psi}. Raw quadrature value;
// tiny negative values are the caller's to clamp in reports.
inline double transition_density(const LevyModel& md, double t, double r,
                                 const QuadratureSpec& q = {}) {
  q.validate();
  const Truncation tr = find_truncation(md, t, q);
  if (!tr.reached || !tr.decay_ok)
    throw integrability_error(
        std::string("transition_density: density possibly unbounded/"
                    "non-integrable at t=") +
        std::to_string(t) + " (decay exponent " +
        std::to_string(tr.decay_exponent) + ")");
  r = std::abs(r);
  auto g = [&](double xi) { return std::exp(-t * symbol(md, xi)); };
  if (md.dim == 1)
    return detail::cosine_integral(g, r, 0.0, tr.Xi, q) / M_PI;
  // d = 2: radial reduction through the Bessel kernel
  auto f = [&](double xi) { return g(xi) * detail::bessel_j0(xi * r) * xi; };
  return quad::integrate(f, 0.0, tr.Xi, q.abs_tol, q.max_depth) / (2.0 * M_PI);
}

inline double transition_density(const LevyModel& md, double t,
                                 const std::vector<double>& x,
                                 const QuadratureSpec& q = {}) {
  double r2 = 0;
  for (double c : x) r2 += c * c;
  return transition_density(md, t, std::sqrt(r2), q);
}

// sup_x p(t, x) = p(t, 0) for the radial unimodal catalog families.
// When the integrand fails the decay pretest the value reported is the
// truncated integral, a lower bound, with possibly_unbounded set; acceptance
// comparisons still need the magnitude of the blow-up.
struct DensitySup {
  double value = 0.0;
  bool possibly_unbounded = false;
  double truncation = 0.0;
};

inline DensitySup density_sup(const LevyModel& md, double t,
                              const QuadratureSpec& q = {}) {
  const Truncation tr = find_truncation(md, t, q);
  DensitySup out;
  out.possibly_unbounded = !(tr.reached && tr.decay_ok);
  out.truncation = tr.Xi;
  // log substitution xi = e^u - 1 keeps slowly decaying integrands tame
  const double U = std::log1p(tr.Xi);
  auto h = [&](double u) {
    const double xi = std::expm1(u);
    return std::exp(-t * symbol(md, xi) + u);
  };
  const double I = quad::integrate(h, 0.0, U, q.abs_tol, q.max_depth);
  if (md.dim == 1) {
    out.value = I / M_PI;
  } else {
    auto h2 = [&](double u) {
      const double xi = std::expm1(u);
      return std::exp(-t * symbol(md, xi) + u) * xi;
    };
    out.value = quad::integrate(h2, 0.0, U, q.abs_tol, q.max_depth) / (2.0 * M_PI);
  }
  return out;
}

// P^x(X_t in B(0, r)) = int_{B(0,r)} p(t, y - x) dy; d = 1.
inline double hitting_probability(const LevyModel& md, double t, double x,
                                  double ball_radius, const QuadratureSpec& q = {}) {
  if (md.dim != 1)
    throw unsupported_family_error("hitting_probability: d = 1 only");
  if (!(ball_radius > 0)) throw parameter_error("hitting_probability: radius > 0");
  // outer tolerance stays coarser than the inner inversion; p is smooth here
  auto f = [&](double y) { return transition_density(md, t, y - x, q); };
  const double v =
      quad::integrate(f, -ball_radius, ball_radius, std::max(q.abs_tol, 1e-11), 24, 1e-10);
  return std::clamp(v, 0.0, 1.0);
}

// Window mass of p(t, .) plus the first-jump tail estimate t * nu(B(0,X)^c);
// total should sit at 1 for every integrable (model, t).
struct NormalizationCheck {
  double window_mass = 0.0;
  double tail_estimate = 0.0;
  double total = 0.0;
};

inline NormalizationCheck normalization_check(const LevyModel& md, double t,
                                              double window, const QuadratureSpec& q = {}) {
  if (md.dim != 1)
    throw unsupported_family_error("normalization_check: d = 1 only");
  NormalizationCheck out;
  // outer x-integration at 1e-9: comfortably inside the 1e-6 budget while
  // keeping the expensive per-point inversions countable
  auto f = [&](double y) { return transition_density(md, t, y, q); };
  out.window_mass = 2.0 * quad::integrate(f, 0.0, window, 1e-9, 24, 1e-9);
  auto nu = [&](double z) { return levy_density(md, z); };
  out.tail_estimate = 2.0 * t * quad::integrate_tail(nu, window, q.abs_tol).value;
  out.total = out.window_mass + out.tail_estimate;
  return out;
}

// ---------------------------------------------------------------------------
// Levy-Khintchine cross-validation
// ---------------------------------------------------------------------------

// Relative residual | psi(xi) - A xi^2 - int (1 - cos(xi z)) nu(z) dz | /
// max(psi(xi), eps), for the exact-constant families (d = 1). The integral is
// evaluated numerically so that the (psi, nu) pair is genuinely cross-checked.
inline double verify_levy_khintchine(const LevyModel& md, double xi,
                                     const QuadratureSpec& q = {}) {
  md.validate();
  const auto tails = exact_power_tails(md);  // throws for profile-only families
  xi = std::abs(xi);
  if (xi == 0) return 0.0;
  auto nu = [&](double z) { return levy_density(md, z); };

  // [0, 1]: desingularized head, z = u^p with p = 2/(2 - max exponent)
  double max_exp = 0;
  for (const auto& tl : tails) max_exp = std::max(max_exp, tl.exponent);
  const double p = 2.0 / (2.0 - max_exp);
  auto head_f = [&](double u) {
    if (u <= 0) return 0.0;
    const double z = std::pow(u, p);
    return detail::one_minus_cos(xi * z) * nu(z) * p * std::pow(u, p - 1.0);
  };
  const double head = quad::integrate(head_f, 0.0, 1.0, q.abs_tol, q.max_depth);

  // [1, Z]: plain or oscillatory; then the exact power tail of nu minus the
  // oscillatory cosine remainder
  const double Z = std::max(200.0, 200.0 / xi);
  const double mid = quad::integrate(
      [&](double z) { return detail::one_minus_cos(xi * z) * nu(z); }, 1.0, Z, q.abs_tol,
      q.max_depth);
  double nu_tail = 0.0;
  for (const auto& tl : tails) nu_tail += tl.coef / (tl.exponent * std::pow(Z, tl.exponent));
  const double Zosc = std::max(Z * 1e4, 1e8);
  const double cos_tail = detail::cosine_integral(nu, xi, Z, Zosc, q);

  const double integral = 2.0 * (head + mid + nu_tail - cos_tail);
  const double lhs = symbol(md, xi);
  const double rhs = md.gaussian_coefficient() * xi * xi + integral;
  return std::abs(lhs - rhs) / std::max(lhs, 1e-12);
}

// ---------------------------------------------------------------------------
// Potentials
// ---------------------------------------------------------------------------

enum class PotentialFamily {
  Power,      // c |x|^p
  PowerLog,   // c |x|^p log^q(e + |x|)
  Log,        // kappa log(1 + |x|)
  LogLog,     // kappa log(1 + log(1 + |x|))
  Borderline, // |log nu(x)| / t0 outside R, frozen constant inside
  Constant,
};

inline const char* potential_family_name(PotentialFamily f) {
  switch (f) {
    case PotentialFamily::Power: return "power";
    case PotentialFamily::PowerLog: return "power_log";
    case PotentialFamily::Log: return "log";
    case PotentialFamily::LogLog: return "loglog";
    case PotentialFamily::Borderline: return "borderline";
    case PotentialFamily::Constant: return "constant";
  }
  return "?";
}

struct Potential {
  PotentialFamily family = PotentialFamily::Power;
  double c = 1.0;
  double p = 2.0;
  double q = 1.0;
  double kappa = 1.0;
  double t0 = 1.0;
  double R = 2.0;
  double offset = 0.0;
  std::optional<LevyModel> model;  // Borderline only

  static Potential power(double c, double p) {
    Potential v;
    v.family = PotentialFamily::Power;
    v.c = c;
    v.p = p;
    v.validate();
    return v;
  }
  static Potential power_log(double c, double p, double q) {
    Potential v;
    v.family = PotentialFamily::PowerLog;
    v.c = c;
    v.p = p;
    v.q = q;
    v.validate();
    return v;
  }
  static Potential log_potential(double kappa) {
    Potential v;
    v.family = PotentialFamily::Log;
    v.kappa = kappa;
    v.validate();
    return v;
  }
  static Potential loglog(double kappa) {
    Potential v;
    v.family = PotentialFamily::LogLog;
    v.kappa = kappa;
    v.validate();
    return v;
  }
  static Potential constant(double value) {
    Potential v;
    v.family = PotentialFamily::Constant;
    v.offset = value;
    return v;
  }

  void validate() const {
    switch (family) {
      case PotentialFamily::Power:
        if (!(c > 0 && p > 0)) throw parameter_error("power potential: c, p > 0");
        break;
      case PotentialFamily::PowerLog:
        if (!(c > 0 && p > 0)) throw parameter_error("power_log potential: c, p > 0");
        break;
      case PotentialFamily::Log:
      case PotentialFamily::LogLog:
        if (!(kappa > 0)) throw parameter_error("log potential: kappa > 0");
        break;
      case PotentialFamily::Borderline:
        if (!(t0 > 0)) throw parameter_error("borderline potential: t0 > 0");
        if (!model) throw parameter_error("borderline potential: model required");
        break;
      case PotentialFamily::Constant:
        break;
    }
  }

  bool confining() const { return family != PotentialFamily::Constant; }

  double operator()(double x) const {
    const double r = std::abs(x);
    switch (family) {
      case PotentialFamily::Power:
        return c * std::pow(r, p) + offset;
      case PotentialFamily::PowerLog:
        return c * std::pow(r, p) * std::pow(std::log(M_E + r), q) + offset;
      case PotentialFamily::Log:
        return kappa * std::log1p(r) + offset;
      case PotentialFamily::LogLog:
        return kappa * std::log1p(std::log1p(r)) + offset;
      case PotentialFamily::Borderline: {
        const double re = std::max(r, R);
        return -log_levy_density(*model, re) / t0 + offset;
      }
      case PotentialFamily::Constant:
        return offset;
    }
    return 0.0;
  }

  double operator()(const std::vector<double>& x) const {
    double r2 = 0;
    for (double cc : x) r2 += cc * cc;
    return (*this)(std::sqrt(r2));
  }
};

inline double evaluate_potential(const Potential& v, double x) { return v(x); }

// t0 V = |log nu| outside radius R, constant inside. R must already put nu
// below 1 on |x| >= R so that |log nu| = -log nu > 0.
inline Potential borderline_potential(const LevyModel& md, double t0, double R) {
  if (!(t0 > 0)) throw parameter_error("borderline_potential: t0 > 0");
  if (!(R > 0)) throw parameter_error("borderline_potential: R > 0");
  for (double s : {1.0, 1.5, 2.0, 4.0}) {
    if (log_levy_density(md, R * s) >= 0.0)
      throw parameter_error("borderline_potential: R too small, nu >= 1 at |x| >= R");
  }
  Potential v;
  v.family = PotentialFamily::Borderline;
  v.t0 = t0;
  v.R = R;
  v.model = md;
  v.validate();
  return v;
}

// A priori half-width suggestion from the nu/V envelope: smallest L of the
// form 2^k with envelope(L)/envelope(1) < 1e-6.
inline double suggest_half_width(const LevyModel& md, const Potential& V) {
  auto env = [&](double r) {
    return log_levy_density(md, r) - std::log(std::max(V(r), 1.0));
  };
  const double ref = env(1.0);
  double L = 2.0;
  while (L < 1e6 && env(L) - ref > std::log(1e-6)) L *= 2.0;
  return L;
}

}  // namespace levykac
