#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ungd {

using cdouble = std::complex<double>;

namespace detail {

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// In-place iterative radix-2 FFT. Inverse transform scales by 1/n.
inline void fft_radix2(std::vector<cdouble>& a, bool inverse) {
  const std::size_t n = a.size();
  if (!is_power_of_two(n)) throw std::invalid_argument("fft_radix2: size must be a power of two");
  if (n == 1) return;

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  const double pi = 3.14159265358979323846;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    const cdouble wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cdouble w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const cdouble u = a[i + j];
        const cdouble v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }

  if (inverse) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& x : a) x *= inv_n;
  }
}

// Bluestein chirp-z for arbitrary n, reduced to a power-of-two convolution.
// Chirp exponents are taken mod 2n so large indices do not lose precision.
inline std::vector<cdouble> fft_bluestein(const std::vector<cdouble>& x, bool inverse) {
  const std::size_t n = x.size();
  const double pi = 3.14159265358979323846;
  const double sign = inverse ? 1.0 : -1.0;

  std::vector<cdouble> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t k2 = static_cast<std::size_t>((static_cast<unsigned long long>(k) * k) % (2 * n));
    const double ang = sign * pi * static_cast<double>(k2) / static_cast<double>(n);
    chirp[k] = cdouble(std::cos(ang), std::sin(ang));
  }

  const std::size_t L = next_power_of_two(2 * n - 1);
  std::vector<cdouble> a(L, cdouble(0.0, 0.0));
  std::vector<cdouble> b(L, cdouble(0.0, 0.0));
  for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
  for (std::size_t k = 0; k < n; ++k) {
    b[k] = std::conj(chirp[k]);
    if (k != 0) b[L - k] = std::conj(chirp[k]);
  }

  fft_radix2(a, false);
  fft_radix2(b, false);
  for (std::size_t k = 0; k < L; ++k) a[k] *= b[k];
  fft_radix2(a, true);

  std::vector<cdouble> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * chirp[k];
  if (inverse) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& v : out) v *= inv_n;
  }
  return out;
}

}  // namespace detail

// Discrete Fourier transform of arbitrary length (radix-2 when possible,
// Bluestein otherwise). The inverse includes the 1/n factor.
inline std::vector<cdouble> fft(std::vector<cdouble> x, bool inverse = false) {
  if (x.empty()) throw std::invalid_argument("fft: empty input");
  if (detail::is_power_of_two(x.size())) {
    detail::fft_radix2(x, inverse);
    return x;
  }
  return detail::fft_bluestein(x, inverse);
}

inline std::vector<cdouble> fft_real(const std::vector<double>& x, bool inverse = false) {
  std::vector<cdouble> c(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) c[i] = cdouble(x[i], 0.0);
  return fft(std::move(c), inverse);
}

}  // namespace ungd
