#pragma once

// Thick-restart Lanczos for the lowest eigenpairs of a symmetric operator
// applied matrix-free. Full reorthogonalization against the active basis;
// restart keeps the wanted Ritz vectors plus a buffer, giving the standard
// arrowhead-plus-tridiagonal projected problem.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "levykac/errors.hpp"

namespace levykac {

struct EigOptions {
  int k = 6;              // wanted eigenpairs
  double tol = 1e-10;     // residual norm target (euclidean)
  int max_basis = 0;      // 0: max(4k + 40, 120), capped by n
  int max_restarts = 400;
  std::uint64_t seed = 42;
};

struct EigReport {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;  // euclidean-orthonormal
  std::vector<double> residuals;             // ||Hx - lambda x||
  int restarts = 0;
  std::uint64_t applies = 0;
  bool converged = false;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline double uniform01(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

inline double dot(const double* a, const double* b, std::size_t n) {
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

inline void axpy(double c, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += c * x[i];
}

inline double nrm2(const double* a, std::size_t n) { return std::sqrt(dot(a, a, n)); }

}  // namespace detail

template <typename Apply>
EigReport lowest_eigenpairs_lanczos(const Apply& H, std::size_t n, EigOptions opt) {
  if (opt.k < 1) throw parameter_error("eigensolver: k >= 1");
  if (!(opt.tol > 0)) throw parameter_error("eigensolver: tol > 0");
  const int k = opt.k;
  int m = opt.max_basis > 0 ? opt.max_basis : std::max(4 * k + 40, 120);
  m = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(m), n));
  if (m < 2 * k + 2) m = std::min<int>(static_cast<int>(n), 2 * k + 2);
  if (static_cast<std::size_t>(k) > n) throw parameter_error("eigensolver: k > n");

  EigReport rep;
  std::vector<std::vector<double>> V;  // basis vectors, each length n
  V.reserve(m + 1);

  // deterministic start vector
  std::uint64_t state = opt.seed ^ 0x5bf03635ULL;
  std::vector<double> v0(n);
  for (std::size_t i = 0; i < n; ++i) v0[i] = detail::uniform01(state) - 0.5;
  const double nv = detail::nrm2(v0.data(), n);
  for (auto& c : v0) c /= nv;
  V.push_back(std::move(v0));

  int locked = 0;                 // Ritz vectors carried through restart
  std::vector<double> theta;      // their Ritz values
  std::vector<double> coupling;   // arrowhead couplings to the restart vector
  std::vector<double> alpha, beta;

  auto ritz_residuals = std::vector<double>();
  std::vector<double> w(n);

  for (int cycle = 0; cycle <= opt.max_restarts; ++cycle) {
    // Lanczos expansion from the current basis front
    alpha.clear();
    beta.clear();
    while (static_cast<int>(V.size()) < m) {
      const std::vector<double>& v = V.back();
      H(v.data(), w.data());
      ++rep.applies;
      const double a = detail::dot(w.data(), v.data(), n);
      alpha.push_back(a);
      // full reorthogonalization, two passes
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& u : V) detail::axpy(-detail::dot(w.data(), u.data(), n), u.data(), w.data(), n);
      const double b = detail::nrm2(w.data(), n);
      if (b < 1e-14) {  // invariant subspace found; restart with fresh vector
        std::vector<double> fresh(n);
        for (std::size_t i = 0; i < n; ++i) fresh[i] = detail::uniform01(state) - 0.5;
        for (int pass = 0; pass < 2; ++pass)
          for (const auto& u : V) detail::axpy(-detail::dot(fresh.data(), u.data(), n), u.data(), fresh.data(), n);
        const double fb = detail::nrm2(fresh.data(), n);
        if (fb < 1e-14) break;
        for (auto& c : fresh) c /= fb;
        beta.push_back(0.0);
        V.push_back(std::move(fresh));
        continue;
      }
      beta.push_back(b);
      std::vector<double> next(n);
      for (std::size_t i = 0; i < n; ++i) next[i] = w[i] / b;
      V.push_back(std::move(next));
    }
    const int msz = static_cast<int>(V.size()) - 1;  // projected size excl. trailing vector
    if (msz <= 0) throw convergence_error("eigensolver: basis collapse", {});

    // projected matrix: locked block is diagonal + coupling into column
    // `locked`; the rest is tridiagonal
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(msz, msz);
    for (int i = 0; i < locked; ++i) {
      T(i, i) = theta[i];
      T(i, locked) = coupling[i];
      T(locked, i) = coupling[i];
    }
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      const int d = locked + static_cast<int>(i);
      T(d, d) = alpha[i];
      if (i + 1 < alpha.size()) {
        T(d, d + 1) = beta[i];
        T(d + 1, d) = beta[i];
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const Eigen::MatrixXd& S = es.eigenvectors();

    const double blast = beta.empty() ? 0.0 : beta.back();
    const int keep = std::min(msz, std::min(2 * k + 8, msz));
    ritz_residuals.assign(k, 0.0);
    bool ok = true;
    for (int i = 0; i < k && i < msz; ++i) {
      ritz_residuals[i] = std::abs(blast * S(msz - 1, i));
      if (ritz_residuals[i] > 0.5 * opt.tol) ok = false;
    }

    // assemble Ritz vectors for the kept window
    std::vector<std::vector<double>> Y(keep, std::vector<double>(n, 0.0));
    for (int j = 0; j < keep; ++j)
      for (int i = 0; i < msz; ++i)
        if (std::abs(S(i, j)) > 0) detail::axpy(S(i, j), V[i].data(), Y[j].data(), n);

    if (ok || cycle == opt.max_restarts || msz >= static_cast<int>(n)) {
      rep.restarts = cycle;
      rep.values.assign(ev.data(), ev.data() + k);
      rep.vectors.assign(Y.begin(), Y.begin() + k);
      rep.residuals.resize(k);
      for (int i = 0; i < k; ++i) {  // explicit residuals
        H(rep.vectors[i].data(), w.data());
        ++rep.applies;
        detail::axpy(-rep.values[i], rep.vectors[i].data(), w.data(), n);
        rep.residuals[i] = detail::nrm2(w.data(), n);
      }
      rep.converged = true;
      for (int i = 0; i < k; ++i)
        if (rep.residuals[i] > opt.tol) rep.converged = false;
      if (!rep.converged && cycle == opt.max_restarts)
        throw convergence_error("eigensolver: restart budget exhausted", rep.residuals);
      if (rep.converged) return rep;
    }

    // thick restart: locked Ritz window + the trailing Lanczos vector
    std::vector<double> vm = V.back();
    theta.assign(ev.data(), ev.data() + keep);
    coupling.resize(keep);
    for (int j = 0; j < keep; ++j) coupling[j] = blast * S(msz - 1, j);
    V.clear();
    for (auto& y : Y) V.push_back(std::move(y));
    V.push_back(std::move(vm));
    locked = keep;
  }
  throw convergence_error("eigensolver: did not converge", ritz_residuals);
}

}  // namespace levykac
