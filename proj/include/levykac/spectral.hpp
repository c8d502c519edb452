#pragma once

// Pseudospectral discretization of H = psi(-Delta) + V on the periodic grid:
// the kinetic part is a Fourier multiplier, the potential a diagonal, and
// everything downstream (semigroup, heat kernel, intrinsic kernel) is spectral.

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "levykac/eigensolver.hpp"
#include "levykac/errors.hpp"
#include "levykac/fft.hpp"
#include "levykac/grid.hpp"
#include "levykac/models.hpp"

namespace levykac {

class DiscreteOperator {
 public:
  template <typename SymbolFn, typename PotFn>
  DiscreteOperator(const Grid& grid, const SymbolFn& psi, const PotFn& V)
      : grid_(grid), plan_(std::make_shared<FftPlan>(grid.points_per_axis)) {
    grid.validate();
    const int N = grid.points_per_axis;
    const std::size_t total = grid.total_points();
    multiplier_.resize(total);
    potential_.resize(total);
    if (grid.dim == 1) {
      for (int j = 0; j < N; ++j) {
        multiplier_[j] = psi(std::abs(grid.frequency(j)));
        potential_[j] = V(grid.node(j));
      }
    } else {
      for (int jy = 0; jy < N; ++jy)
        for (int jx = 0; jx < N; ++jx) {
          const std::size_t idx = static_cast<std::size_t>(jy) * N + jx;
          const double kx = grid.frequency(jx), ky = grid.frequency(jy);
          multiplier_[idx] = psi(std::hypot(kx, ky));
          potential_[idx] = V(std::hypot(grid.node(jx), grid.node(jy)));
        }
    }
    if (multiplier_[0] != 0.0)
      throw parameter_error("DiscreteOperator: psi(0) must be 0");
    for (double mv : multiplier_)
      if (mv < 0) throw parameter_error("DiscreteOperator: multiplier must be >= 0");
  }

  static DiscreteOperator build(const LevyModel& md, const Potential& V,
                                const Grid& grid) {
    if (md.dim != grid.dim)
      throw parameter_error("build_operator: model and grid dimension mismatch");
    return DiscreteOperator(
        grid, [&](double r) { return symbol(md, r); },
        [&](double r) { return V(r); });
  }

  const Grid& grid() const { return grid_; }
  const std::vector<double>& multiplier() const { return multiplier_; }
  const std::vector<double>& potential() const { return potential_; }
  std::uint64_t applications() const { return applications_.load(); }

  // out = IFFT( psi(xi) FFT(in) ) + V .* in
  void apply(const double* in, double* out) const {
    applications_.fetch_add(1, std::memory_order_relaxed);
    const std::size_t total = grid_.total_points();
    std::vector<std::complex<double>> buf(total);
    for (std::size_t i = 0; i < total; ++i) buf[i] = in[i];
    if (grid_.dim == 1) {
      plan_->forward(buf.data());
      for (std::size_t i = 0; i < total; ++i) buf[i] *= multiplier_[i];
      plan_->inverse(buf.data());
    } else {
      const std::size_t N = static_cast<std::size_t>(grid_.points_per_axis);
      std::vector<std::complex<double>> col(N);
      for (std::size_t r = 0; r < N; ++r) plan_->forward(buf.data() + r * N);
      for (std::size_t c = 0; c < N; ++c) {
        for (std::size_t r = 0; r < N; ++r) col[r] = buf[r * N + c];
        plan_->forward(col.data());
        for (std::size_t r = 0; r < N; ++r) buf[r * N + c] = col[r];
      }
      for (std::size_t i = 0; i < total; ++i) buf[i] *= multiplier_[i];
      for (std::size_t c = 0; c < N; ++c) {
        for (std::size_t r = 0; r < N; ++r) col[r] = buf[r * N + c];
        plan_->inverse(col.data());
        for (std::size_t r = 0; r < N; ++r) buf[r * N + c] = col[r];
      }
      for (std::size_t r = 0; r < N; ++r) plan_->inverse(buf.data() + r * N);
    }
    for (std::size_t i = 0; i < total; ++i) out[i] = buf[i].real() + potential_[i] * in[i];
  }

  std::vector<double> apply(const std::vector<double>& in) const {
    std::vector<double> out(in.size());
    apply(in.data(), out.data());
    return out;
  }

  double operator_norm_bound() const {
    double mmax = 0, vmax = 0;
    for (double v : multiplier_) mmax = std::max(mmax, v);
    for (double v : potential_) vmax = std::max(vmax, std::abs(v));
    return mmax + vmax;
  }

 private:
  Grid grid_;
  std::shared_ptr<FftPlan> plan_;
  std::vector<double> multiplier_;
  std::vector<double> potential_;
  mutable std::atomic<std::uint64_t> applications_{0};
};

template <typename SymbolFn, typename PotFn>
DiscreteOperator build_operator(const Grid& grid, const SymbolFn& psi, const PotFn& V) {
  return DiscreteOperator(grid, psi, V);
}

inline DiscreteOperator build_operator(const LevyModel& md, const Potential& V,
                                       const Grid& grid) {
  return DiscreteOperator::build(md, V, grid);
}

// Low spectrum of a discrete operator. Eigenfunctions are L2-normalized with
// respect to the grid measure and the ground state is sign-fixed positive.
struct SpectrumResult {
  Grid grid;
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> phi;  // phi[n][node]
  std::vector<double> residual_norms;    // grid-measure norms of H phi - lambda phi
  double solver_tol = 0.0;
  std::uint64_t applications = 0;
  bool near_degenerate_warning = false;  // lambda1 - lambda0 < 10 tol

  int modes() const { return static_cast<int>(eigenvalues.size()); }
  double gap() const { return eigenvalues.at(1) - eigenvalues.at(0); }

  // <f, g> under the grid measure
  double inner(const std::vector<double>& f, const std::vector<double>& g) const {
    double s = 0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i];
    return s * grid.measure();
  }
};

inline SpectrumResult lowest_eigenpairs(const DiscreteOperator& H, int k, double tol,
                                        std::uint64_t seed = 42) {
  if (k < 1 || k > 32) throw parameter_error("lowest_eigenpairs: k in [1, 32]");
  if (!(tol > 0)) throw parameter_error("lowest_eigenpairs: tol > 0");
  const std::size_t n = H.grid().total_points();
  EigOptions opt;
  opt.k = k;
  opt.tol = tol;
  opt.seed = seed;
  auto apply = [&H](const double* in, double* out) { H.apply(in, out); };
  EigReport rep = lowest_eigenpairs_lanczos(apply, n, opt);

  // A single-vector Krylov sequence sees one copy of each eigenvalue.
  // Deflation sweeps with fresh start vectors recover missed multiplicities.
  const double sigma = H.operator_norm_bound() + std::abs(rep.values[0]) + 10.0;
  for (int sweep = 0; sweep < 3; ++sweep) {
    auto deflated = [&](const double* in, double* out) {
      H.apply(in, out);
      for (std::size_t m = 0; m < rep.vectors.size(); ++m) {
        const double c = detail::dot(rep.vectors[m].data(), in, n);
        detail::axpy(sigma * c, rep.vectors[m].data(), out, n);
      }
    };
    EigOptions popt;
    popt.k = 1;
    popt.tol = tol;
    popt.seed = seed + 7919 * static_cast<std::uint64_t>(sweep + 1);
    EigReport probe = lowest_eigenpairs_lanczos(deflated, n, popt);
    if (probe.values[0] >= rep.values.back() - 100.0 * tol) break;
    // missed copy: orthogonalize, insert, drop the displaced top pair
    std::vector<double>& v = probe.vectors[0];
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : rep.vectors)
        detail::axpy(-detail::dot(v.data(), u.data(), n), u.data(), v.data(), n);
    const double nv = detail::nrm2(v.data(), n);
    if (nv < 0.5) break;
    for (double& c : v) c /= nv;
    const auto pos = std::upper_bound(rep.values.begin(), rep.values.end(),
                                      probe.values[0]);
    const auto idx = static_cast<std::size_t>(pos - rep.values.begin());
    rep.values.insert(pos, probe.values[0]);
    rep.vectors.insert(rep.vectors.begin() + static_cast<std::ptrdiff_t>(idx), v);
    rep.residuals.insert(rep.residuals.begin() + static_cast<std::ptrdiff_t>(idx),
                         probe.residuals[0]);
    rep.values.pop_back();
    rep.vectors.pop_back();
    rep.residuals.pop_back();
  }

  SpectrumResult out;
  out.grid = H.grid();
  out.eigenvalues = rep.values;
  out.solver_tol = tol;
  out.applications = H.applications();
  const double h = out.grid.measure();
  const double sq = std::sqrt(h);
  out.phi.resize(k);
  out.residual_norms.resize(k);
  for (int i = 0; i < k; ++i) {
    out.phi[i] = std::move(rep.vectors[i]);
    for (double& c : out.phi[i]) c /= sq;  // euclidean -> grid-measure normalization
    out.residual_norms[i] = rep.residuals[i];  // scale-free: both norms rescale alike
  }
  // sign fix: ground state positive (mean decides, every node should follow)
  double mean = 0;
  for (double c : out.phi[0]) mean += c;
  if (mean < 0)
    for (double& c : out.phi[0]) c = -c;
  if (out.eigenvalues.size() > 1 &&
      out.eigenvalues[1] - out.eigenvalues[0] < 10.0 * tol)
    out.near_degenerate_warning = true;
  return out;
}

// ---------------------------------------------------------------------------
// Spectral semigroup and kernels
// ---------------------------------------------------------------------------

struct SemigroupValue {
  std::vector<double> values;
  double truncation_estimate = 0.0;  // e^{-lambda_{k-1} t} ||f||
  double min_value = 0.0;            // positivity diagnostic
};

// T_t f = sum_{n<k} e^{-lambda_n t} <f, phi_n> phi_n
inline SemigroupValue semigroup_apply(const SpectrumResult& spec, double t,
                                      const std::vector<double>& f) {
  if (!(t > 0)) throw parameter_error("semigroup_apply: t > 0");
  SemigroupValue out;
  out.values.assign(f.size(), 0.0);
  double fnorm = 0;
  for (std::size_t i = 0; i < f.size(); ++i) fnorm += f[i] * f[i];
  fnorm = std::sqrt(fnorm * spec.grid.measure());
  for (int n = 0; n < spec.modes(); ++n) {
    const double c = std::exp(-spec.eigenvalues[n] * t) * spec.inner(f, spec.phi[n]);
    for (std::size_t i = 0; i < f.size(); ++i) out.values[i] += c * spec.phi[n][i];
  }
  out.truncation_estimate = std::exp(-spec.eigenvalues.back() * t) * fnorm;
  out.min_value = out.values.empty() ? 0.0 : *std::min_element(out.values.begin(), out.values.end());
  return out;
}

struct KernelValue {
  double value = 0.0;
  double tail_bound = 0.0;  // e^{-(lambda_k - lambda_0) t} * (N / 2L)
  bool truncation_warning = false;
};

// u(t, x_i, y_j) = sum e^{-lambda_n t} phi_n(x_i) phi_n(y_j)
inline KernelValue heat_kernel(const SpectrumResult& spec, double t, std::size_t i,
                               std::size_t j, double tol = 1e-8) {
  if (!(t > 0)) throw parameter_error("heat_kernel: t > 0");
  KernelValue out;
  for (int n = 0; n < spec.modes(); ++n)
    out.value += std::exp(-spec.eigenvalues[n] * t) * spec.phi[n][i] * spec.phi[n][j];
  out.tail_bound = std::exp(-(spec.eigenvalues.back() - spec.eigenvalues.front()) * t) *
                   (spec.grid.points_per_axis / (2.0 * spec.grid.half_width));
  out.truncation_warning = out.tail_bound > tol;
  return out;
}

// utilde(t,x,y) = e^{lambda_0 t} u(t,x,y) / (phi_0(x) phi_0(y))
inline KernelValue intrinsic_kernel(const SpectrumResult& spec, double t, std::size_t i,
                                    std::size_t j, double tol = 1e-8) {
  KernelValue out = heat_kernel(spec, t, i, j, tol);
  out.value *= std::exp(spec.eigenvalues.front() * t) /
               (spec.phi[0][i] * spec.phi[0][j]);
  return out;
}

}  // namespace levykac
