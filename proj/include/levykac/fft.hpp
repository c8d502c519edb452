#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "levykac/errors.hpp"

namespace levykac {

// Radix-2 complex FFT with precomputed twiddles. Grid sizes are powers of
// two by construction, so nothing more general is needed.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n) : n_(n) {
    if (n < 2 || (n & (n - 1)) != 0)
      throw parameter_error("FftPlan: size must be a power of two >= 2");
    bitrev_.resize(n);
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
      bitrev_[i] = j;
      std::size_t bit = n >> 1;
      while (j & bit) {
        j ^= bit;
        bit >>= 1;
      }
      j |= bit;
    }
    twiddle_.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
      const double ang = -2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
      twiddle_[k] = {std::cos(ang), std::sin(ang)};
    }
  }

  std::size_t size() const { return n_; }

  void forward(std::complex<double>* a) const { run(a, false); }

  void inverse(std::complex<double>* a) const {
    run(a, true);
    const double s = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) a[i] *= s;
  }

 private:
  void run(std::complex<double>* a, bool inv) const {
    for (std::size_t i = 0; i < n_; ++i) {
      const std::size_t r = bitrev_[i];
      if (i < r) std::swap(a[i], a[r]);
    }
    for (std::size_t len = 2; len <= n_; len <<= 1) {
      const std::size_t step = n_ / len;
      for (std::size_t i = 0; i < n_; i += len) {
        for (std::size_t k = 0; k < len / 2; ++k) {
          std::complex<double> w = twiddle_[k * step];
          if (inv) w = std::conj(w);
          const std::complex<double> u = a[i + k];
          const std::complex<double> v = a[i + k + len / 2] * w;
          a[i + k] = u + v;
          a[i + k + len / 2] = u - v;
        }
      }
    }
  }

  std::size_t n_;
  std::vector<std::size_t> bitrev_;
  std::vector<std::complex<double>> twiddle_;
};

}  // namespace levykac
