#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "levykac/errors.hpp"

namespace levykac {

// Controls for the deterministic quadrature used throughout the catalog.
struct QuadratureSpec {
  double abs_tol = 1e-12;       // absolute target for adaptive refinement
  double rel_tol = 1e-10;       // relative target (whichever is looser wins)
  double trunc_tol = 1e-12;     // e^{-t psi(Xi)} must fall below this at Xi
  double xi_cap = 1e15;         // hard cap on the truncation search
  int max_depth = 48;           // adaptive bisection depth
  int nodes = 16;               // nodes per oscillation half-period
  double osc_period_threshold = 16.0;  // switch to the oscillatory path above this

  void validate() const {
    if (nodes < 2) throw parameter_error("QuadratureSpec: nodes must be >= 2");
    if (abs_tol <= 0 || rel_tol <= 0 || trunc_tol <= 0)
      throw parameter_error("QuadratureSpec: tolerances must be > 0");
  }
};

namespace quad {

namespace detail {

template <typename F>
double simpson(const F& f, double a, double fa, double b, double fb, double fm) {
  return (b - a) * (fa + 4.0 * fm + fb) / 6.0;
}

template <typename F>
double adapt(const F& f, double a, double fa, double b, double fb, double fm,
             double whole, double tol, double rel_tol, int depth) {
  const double m = 0.5 * (a + b);
  const double fl = f(0.5 * (a + m));
  const double fr = f(0.5 * (m + b));
  const double left = simpson(f, a, fa, m, fm, fl);
  const double right = simpson(f, m, fm, b, fb, fr);
  const double diff = left + right - whole;
  const double target = std::max(tol, rel_tol * std::abs(left + right));
  if (depth <= 0 || std::abs(diff) <= 15.0 * target)
    return left + right + diff / 15.0;
  return adapt(f, a, fa, m, fm, fl, left, 0.5 * tol, rel_tol, depth - 1) +
         adapt(f, m, fm, b, fb, fr, right, 0.5 * tol, rel_tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson on [a, b]; refinement stops at the absolute target or at
// a per-panel relative one, whichever is met first.
template <typename F>
double integrate(const F& f, double a, double b, double abs_tol = 1e-12,
                 int max_depth = 48, double rel_tol = 1e-12) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = detail::simpson(f, a, fa, b, fb, fm);
  return detail::adapt(f, a, fa, b, fb, fm, whole, abs_tol, rel_tol, max_depth);
}

// Integral over [a, inf) of a decaying integrand, by geometrically growing
// panels. Returns {value, converged}; converged is false when the panel sums
// stop shrinking before the target is met.
struct TailResult {
  double value = 0.0;
  bool converged = false;
  bool diverging = false;  // panel sums stopped shrinking
};

template <typename F>
TailResult integrate_tail(const F& f, double a, double abs_tol = 1e-12,
                          double rel_tol = 1e-10, int max_panels = 64) {
  TailResult out;
  double lo = a;
  double width = std::max(1.0, std::abs(a));
  double prev = std::numeric_limits<double>::infinity();
  int non_shrinking = 0;
  for (int p = 0; p < max_panels; ++p) {
    const double hi = lo + width;
    const double piece = integrate(f, lo, hi, abs_tol);
    out.value += piece;
    const double target = std::max(abs_tol, rel_tol * std::abs(out.value));
    if (std::abs(piece) < target && std::abs(piece) <= std::abs(prev)) {
      out.converged = true;
      return out;
    }
    non_shrinking = std::abs(piece) >= std::abs(prev) ? non_shrinking + 1 : 0;
    if (non_shrinking >= 4) {
      out.diverging = true;
      return out;
    }
    prev = piece;
    lo = hi;
    width *= 2.0;
  }
  return out;
}

// int_lo^Xi g(xi) cos(xi x) dxi for slowly decaying g: half-period panels
// summed with iterated averaging (Euler transform) on the alternating tail.
template <typename G>
double cosine_oscillatory(const G& g, double x, double lo, double Xi, double abs_tol,
                          int gl_nodes = 8) {
  x = std::abs(x);
  // 8-point Gauss-Legendre on [-1, 1]
  static const double gl_x[8] = {-0.9602898564975363, -0.7966664774136267,
                                 -0.5255324099163290, -0.1834346424956498,
                                 0.1834346424956498,  0.5255324099163290,
                                 0.7966664774136267,  0.9602898564975363};
  static const double gl_w[8] = {0.1012285362903763, 0.2223810344533745,
                                 0.3137066458778873, 0.3626837833783620,
                                 0.3626837833783620, 0.3137066458778873,
                                 0.2223810344533745, 0.1012285362903763};
  (void)gl_nodes;
  auto panel = [&](double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 8; ++i) {
      const double xi = c + h * gl_x[i];
      s += gl_w[i] * g(xi) * std::cos(xi * x);
    }
    return s * h;
  };
  const double half = M_PI / x;
  double a = lo;
  // head: up to the next zero of cos(xi x) past lo
  const double first_zero = (std::floor(lo / half - 0.5) + 1.5) * half;
  double head_end = std::min(std::max(first_zero, lo), Xi);
  double total = integrate([&](double xi) { return g(xi) * std::cos(xi * x); },
                           a, head_end, abs_tol);
  a = head_end;
  if (a >= Xi) return total;

  // the iterated averaging extrapolates the smooth alternating tail, so a
  // moderate panel budget already reaches quadrature-level accuracy
  const std::size_t kMaxTerms = 1 << 12;
  const std::size_t kAvgWindow = 64;
  std::vector<double> partial;
  partial.reserve(1 << 12);
  double run = 0.0;
  std::size_t m = 0;
  while (a < Xi && m < kMaxTerms) {
    const double b = std::min(a + half, Xi);
    run += panel(a, b);
    partial.push_back(run);
    a = b;
    ++m;
    // two consecutive half-period pairs cancelling below tolerance: the
    // iterated averaging below supplies the alternating-tail correction
    if (m >= 8 && std::abs(run - partial[m - 3]) < abs_tol &&
        std::abs(partial[m - 3] - partial[m - 5]) < abs_tol)
      break;
  }
  // iterated averaging of the last window of partial sums; for a fully
  // converged run this reproduces the plain sum
  std::size_t w = std::min(kAvgWindow, partial.size());
  std::vector<double> t(partial.end() - static_cast<std::ptrdiff_t>(w), partial.end());
  while (t.size() > 1) {
    for (std::size_t i = 0; i + 1 < t.size(); ++i) t[i] = 0.5 * (t[i] + t[i + 1]);
    t.pop_back();
  }
  return total + t[0];
}

// Least-squares line y = slope * x + intercept; also the standard error of
// the slope. Used by decay fits and trend tests.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};

inline LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n < 2 || ys.size() != n) throw parameter_error("fit_line: need >= 2 points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0) throw parameter_error("fit_line: degenerate abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (n > 2) {
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = ys[i] - (f.intercept + f.slope * xs[i]);
      ss += r * r;
    }
    f.slope_stderr = std::sqrt(ss / (static_cast<double>(n) - 2.0) / sxx);
  }
  return f;
}

// Pairwise (cascade) summation; order-independent reductions for MC use this.
inline double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

inline double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(v.data(), v.size());
}

}  // namespace quad
}  // namespace levykac
