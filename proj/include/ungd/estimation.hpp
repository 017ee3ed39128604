#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ungd/fft.hpp"
#include "ungd/filter.hpp"

namespace ungd {

// One-sided Welch power spectral density over f in [0, 1/2]. Normalized as a
// density: sum(density) * df recovers the signal variance.
struct PsdEstimate {
  std::vector<double> freqs;
  std::vector<double> density;
  std::size_t seg_len = 0;
  double overlap = 0.0;
};

// Empirical frequency response from cross- and auto-spectra. Bins whose input
// power is below 1e-6 of the maximum are flagged unreliable rather than
// rejected; out-of-band estimates are meaningless but not fatal.
struct FrequencyResponseEstimate {
  std::vector<double> freqs;
  std::vector<std::complex<double>> values;
  std::vector<bool> reliable;
};

namespace detail {

inline std::vector<double> hann_window(std::size_t n) {
  std::vector<double> w(n);
  const double pi = 3.14159265358979323846;
  for (std::size_t i = 0; i < n; ++i)
    w[i] = 0.5 - 0.5 * std::cos(2.0 * pi * static_cast<double>(i) / static_cast<double>(n));
  return w;
}

struct WelchSpectra {
  std::vector<double> freqs;
  std::vector<double> pxx;           // averaged |X|^2 / sum(w^2), one-sided
  std::vector<std::complex<double>> pxy;  // averaged conj(X)*Y / sum(w^2)
};

// Shared segmentation core. The cross-spectrum uses conj(X)*Y so that
// pxy/pxx recovers the response of the system mapping x to y. The mean is
// removed once, globally: removing it per segment would also strip genuine
// near-DC signal power and break the variance bookkeeping for strongly
// low-frequency signals.
inline WelchSpectra welch_spectra(const Signal& x, const Signal* y, std::size_t seg_len,
                                  double overlap) {
  if (seg_len < 8 || !is_power_of_two(seg_len))
    throw std::invalid_argument("welch: segment length must be a power of two >= 8");
  if (seg_len > x.size()) throw std::invalid_argument("welch: signal shorter than one segment");
  if (y && y->size() != x.size()) throw std::invalid_argument("welch: length mismatch");
  if (!(overlap >= 0.0 && overlap < 1.0)) throw std::invalid_argument("welch: overlap must be in [0, 1)");

  const auto window = hann_window(seg_len);
  const double wsum2 = std::inner_product(window.begin(), window.end(), window.begin(), 0.0);
  std::size_t hop = static_cast<std::size_t>(std::floor(static_cast<double>(seg_len) * (1.0 - overlap)));
  if (hop < 1) hop = 1;

  const std::size_t nfreq = seg_len / 2 + 1;
  WelchSpectra out;
  out.freqs.resize(nfreq);
  for (std::size_t k = 0; k < nfreq; ++k)
    out.freqs[k] = static_cast<double>(k) / static_cast<double>(seg_len);
  out.pxx.assign(nfreq, 0.0);
  out.pxy.assign(nfreq, std::complex<double>(0.0, 0.0));

  double mx = 0.0, my = 0.0;
  for (const double v : x) mx += v;
  mx /= static_cast<double>(x.size());
  if (y) {
    for (const double v : *y) my += v;
    my /= static_cast<double>(y->size());
  }

  std::size_t nseg = 0;
  std::vector<cdouble> bufx(seg_len), bufy;
  for (std::size_t start = 0; start + seg_len <= x.size(); start += hop) {
    for (std::size_t i = 0; i < seg_len; ++i) bufx[i] = cdouble((x[start + i] - mx) * window[i], 0.0);
    fft_radix2(bufx, false);

    if (y) {
      bufy.resize(seg_len);
      for (std::size_t i = 0; i < seg_len; ++i) bufy[i] = cdouble(((*y)[start + i] - my) * window[i], 0.0);
      fft_radix2(bufy, false);
    }

    for (std::size_t k = 0; k < nfreq; ++k) {
      const double two_sided = (k == 0 || k == seg_len / 2) ? 1.0 : 2.0;
      out.pxx[k] += two_sided * std::norm(bufx[k]) / wsum2;
      if (y) out.pxy[k] += two_sided * std::conj(bufx[k]) * bufy[k] / wsum2;
    }
    ++nseg;
  }
  if (nseg == 0) throw std::invalid_argument("welch: no full segment fits");
  for (auto& v : out.pxx) v /= static_cast<double>(nseg);
  for (auto& v : out.pxy) v /= static_cast<double>(nseg);
  return out;
}

}  // namespace detail

inline PsdEstimate welch_psd(const Signal& x, std::size_t seg_len, double overlap = 0.5) {
  auto spectra = detail::welch_spectra(x, nullptr, seg_len, overlap);
  PsdEstimate out;
  out.freqs = std::move(spectra.freqs);
  out.density = std::move(spectra.pxx);
  out.seg_len = seg_len;
  out.overlap = overlap;
  return out;
}

inline FrequencyResponseEstimate estimate_frequency_response(const Signal& x, const Signal& y,
                                                             std::size_t seg_len,
                                                             double overlap = 0.5) {
  auto spectra = detail::welch_spectra(x, &y, seg_len, overlap);
  const double pmax = *std::max_element(spectra.pxx.begin(), spectra.pxx.end());
  if (!(pmax > 0.0)) throw std::invalid_argument("estimate_frequency_response: input has no power");

  FrequencyResponseEstimate out;
  out.freqs = std::move(spectra.freqs);
  out.values.resize(out.freqs.size());
  out.reliable.resize(out.freqs.size());
  for (std::size_t k = 0; k < out.freqs.size(); ++k) {
    const bool ok = spectra.pxx[k] > 1e-6 * pmax;
    out.reliable[k] = ok;
    out.values[k] = ok ? spectra.pxy[k] / spectra.pxx[k] : std::complex<double>(0.0, 0.0);
  }
  return out;
}

// Standard +-pi jump correction along the frequency axis. Only data-derived
// phase needs this; the theoretical phase never leaves (-pi/2, pi/2).
inline std::vector<double> unwrap_phase(const std::vector<double>& phase) {
  std::vector<double> out = phase;
  const double pi = 3.14159265358979323846;
  double shift = 0.0;
  for (std::size_t i = 1; i < out.size(); ++i) {
    double d = phase[i] - phase[i - 1];
    while (d > pi) {
      d -= 2.0 * pi;
      shift -= 2.0 * pi;
    }
    while (d < -pi) {
      d += 2.0 * pi;
      shift += 2.0 * pi;
    }
    out[i] = phase[i] + shift;
  }
  return out;
}

// Least-squares line (free intercept) through the unwrapped empirical phase
// over f in (f_min, f_max]; the group delay estimate is minus the slope.
inline double phase_fit_group_delay(const FrequencyResponseEstimate& est, double f_max,
                                    double f_min = 0.0) {
  std::vector<double> omegas, phases;
  for (std::size_t k = 0; k < est.freqs.size(); ++k) {
    const double f = est.freqs[k];
    if (f <= f_min || f > f_max || !est.reliable[k]) continue;
    omegas.push_back(2.0 * 3.14159265358979323846 * f);
    phases.push_back(std::arg(est.values[k]));
  }
  if (omegas.size() < 3) throw std::invalid_argument("phase_fit_group_delay: fewer than 3 usable bins");
  phases = unwrap_phase(phases);

  const double n = static_cast<double>(omegas.size());
  const double sw = std::accumulate(omegas.begin(), omegas.end(), 0.0);
  const double sp = std::accumulate(phases.begin(), phases.end(), 0.0);
  double sww = 0.0, swp = 0.0;
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    sww += omegas[i] * omegas[i];
    swp += omegas[i] * phases[i];
  }
  const double denom = n * sww - sw * sw;
  if (denom == 0.0) throw std::invalid_argument("phase_fit_group_delay: degenerate frequency grid");
  const double slope = (n * swp - sw * sp) / denom;
  return -slope;
}

}  // namespace ungd
