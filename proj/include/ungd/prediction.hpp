#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ungd/fft.hpp"
#include "ungd/filter.hpp"
#include "ungd/spectral.hpp"

namespace ungd {

// Normalized cross-correlation between input and output. Sign convention:
// if y(t) = x(t+d) with d > 0, the maximum falls at lag -d, so a prediction
// shows up as a peak at negative lag.
struct CcfResult {
  std::vector<double> lags;
  std::vector<double> values;
  double extremum_lag = 0.0;            // lag maximizing |C|
  std::optional<double> horizon;        // -extremum_lag when predictive
};

// Normalized input spectral density f_XX on [-pi, pi] (unit total mass),
// symmetric in omega. Either a brickwall band [0, f0] or a tabulated shape.
class PsdSpec {
 public:
  static PsdSpec uniform_band(double f0) {
    if (!(f0 > 0.0 && f0 <= 0.5)) throw std::invalid_argument("PsdSpec: f0 must be in (0, 1/2]");
    PsdSpec p;
    p.omega_hi_ = 2.0 * kPi * f0;
    p.level_ = 1.0 / (2.0 * p.omega_hi_);
    return p;
  }

  // Points (f, density) with ascending f in [0, 1/2]; density is interpolated
  // linearly inside the table span, zero outside, and rescaled to unit mass.
  static PsdSpec tabulated(std::vector<double> freq, std::vector<double> density) {
    if (freq.size() != density.size() || freq.size() < 2)
      throw std::invalid_argument("PsdSpec: need >= 2 (freq, density) points");
    PsdSpec p;
    p.omega_.resize(freq.size());
    for (std::size_t i = 0; i < freq.size(); ++i) {
      if (freq[i] < 0.0 || freq[i] > 0.5 || (i > 0 && freq[i] <= freq[i - 1]))
        throw std::invalid_argument("PsdSpec: frequencies must ascend within [0, 1/2]");
      if (!(density[i] >= 0.0)) throw std::invalid_argument("PsdSpec: density must be nonnegative");
      p.omega_[i] = 2.0 * kPi * freq[i];
    }
    p.table_ = std::move(density);
    p.omega_hi_ = p.omega_.back();
    double mass = 0.0;  // over [-pi, pi] = twice the one-sided integral
    for (std::size_t i = 1; i < p.omega_.size(); ++i)
      mass += (p.table_[i] + p.table_[i - 1]) * 0.5 * (p.omega_[i] - p.omega_[i - 1]);
    mass *= 2.0;
    if (!(mass > 0.0)) throw std::invalid_argument("PsdSpec: density has zero mass");
    for (auto& d : p.table_) d /= mass;
    return p;
  }

  double density(double omega) const {
    const double w = std::abs(omega);
    if (w > omega_hi_) return 0.0;
    if (omega_.empty()) return level_;
    if (w < omega_.front()) return 0.0;
    const auto it = std::upper_bound(omega_.begin(), omega_.end(), w);
    const std::size_t i = static_cast<std::size_t>(it - omega_.begin());
    if (i == omega_.size()) return table_.back();
    const double t = (w - omega_[i - 1]) / (omega_[i] - omega_[i - 1]);
    return table_[i - 1] + t * (table_[i] - table_[i - 1]);
  }

  double support_max() const { return omega_hi_; }

 private:
  PsdSpec() = default;
  double omega_hi_ = 0.0;
  double level_ = 0.0;            // uniform-band case
  std::vector<double> omega_;     // tabulated case
  std::vector<double> table_;
};

namespace detail {

inline std::complex<double> response_signed(const FilterSpec& spec, double omega) {
  if (omega < 0.0) return std::conj(frequency_response(spec, -omega));
  return frequency_response(spec, omega);
}

// Quadrature grid of f_XX * H over the psd support, built once per
// (spec, psd): 2^14 trapezoid intervals with the band edges on grid points.
struct CcfIntegrand {
  std::vector<double> omegas;
  std::vector<std::complex<double>> weighted;  // trapezoid weight * f_XX * H
  double norm = 0.0;                           // sqrt(mass * energy)

  CcfIntegrand(const FilterSpec& spec, const PsdSpec& psd) {
    constexpr std::size_t kIntervals = 1 << 14;
    const double hi = psd.support_max();
    if (!(hi > 0.0)) throw std::invalid_argument("theoretical_ccf: degenerate psd support");
    omegas.resize(kIntervals + 1);
    weighted.resize(kIntervals + 1);
    const double dw = 2.0 * hi / static_cast<double>(kIntervals);
    double mass = 0.0, energy = 0.0;
    for (std::size_t i = 0; i <= kIntervals; ++i) {
      const double w = -hi + dw * static_cast<double>(i);
      const double weight = (i == 0 || i == kIntervals) ? 0.5 * dw : dw;
      const double d = psd.density(w);
      const auto h = response_signed(spec, w);
      omegas[i] = w;
      weighted[i] = weight * d * h;
      mass += weight * d;
      energy += weight * d * std::norm(h);
    }
    if (!(mass > 0.0)) throw std::invalid_argument("theoretical_ccf: psd has zero mass on grid");
    norm = std::sqrt(mass * energy);
  }

  double at(double tau) const {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = 0; i < omegas.size(); ++i)
      acc += weighted[i] * std::exp(std::complex<double>(0.0, omegas[i] * tau));
    const double value = acc.real() / norm;
    if (std::abs(acc.imag()) / norm >= 1e-8)
      throw std::runtime_error("theoretical_ccf: residual imaginary part exceeds 1e-8");
    return value;
  }
};

}  // namespace detail

// CCF predicted from the frequency response and an input spectral density;
// valid for arbitrary (non-integer) lags.
inline double theoretical_ccf(const FilterSpec& spec, const PsdSpec& psd, double tau) {
  return detail::CcfIntegrand(spec, psd).at(tau);
}

inline std::vector<double> theoretical_ccf_curve(const FilterSpec& spec, const PsdSpec& psd,
                                                 const std::vector<double>& lags) {
  const detail::CcfIntegrand integrand(spec, psd);
  std::vector<double> out(lags.size());
  for (std::size_t i = 0; i < lags.size(); ++i) out[i] = integrand.at(lags[i]);
  return out;
}

struct CcfExtremum {
  double lag = 0.0;
  double value = 0.0;
};

// Continuous argmax of the theoretical CCF: 0.01-sample grid over
// [lag_lo, lag_hi], then golden-section refinement around the best cell.
inline CcfExtremum theoretical_ccf_argmax(const FilterSpec& spec, const PsdSpec& psd,
                                          double lag_lo, double lag_hi, double step = 0.01) {
  if (!(lag_lo < lag_hi)) throw std::invalid_argument("theoretical_ccf_argmax: empty lag range");
  if (!(step > 0.0)) throw std::invalid_argument("theoretical_ccf_argmax: step must be positive");
  const detail::CcfIntegrand integrand(spec, psd);
  double best_lag = lag_lo, best_val = integrand.at(lag_lo);
  for (double t = lag_lo + step; t <= lag_hi + 1e-12; t += step) {
    const double v = integrand.at(t);
    if (v > best_val) {
      best_val = v;
      best_lag = t;
    }
  }
  double a = std::max(lag_lo, best_lag - step);
  double b = std::min(lag_hi, best_lag + step);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = integrand.at(x1), f2 = integrand.at(x2);
  while (b - a > 1e-6) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = integrand.at(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = integrand.at(x1);
    }
  }
  const double lag = 0.5 * (a + b);
  return {lag, integrand.at(lag)};
}

// sigma_y^2 / sigma_x^2 by the same quadrature.
inline double output_variance_ratio(const FilterSpec& spec, const PsdSpec& psd) {
  constexpr std::size_t kIntervals = 1 << 14;
  const double hi = psd.support_max();
  if (!(hi > 0.0)) throw std::invalid_argument("output_variance_ratio: degenerate psd support");
  const double dw = 2.0 * hi / static_cast<double>(kIntervals);
  double mass = 0.0, energy = 0.0;
  for (std::size_t i = 0; i <= kIntervals; ++i) {
    const double w = -hi + dw * static_cast<double>(i);
    const double weight = (i == 0 || i == kIntervals) ? 0.5 * dw : dw;
    const double d = psd.density(w);
    mass += weight * d;
    energy += weight * d * std::norm(detail::response_signed(spec, w));
  }
  if (!(mass > 0.0)) throw std::invalid_argument("output_variance_ratio: psd has zero mass");
  return energy / mass;
}

// Defined only when the global |C| extremum sits at negative lag with
// positive correlation there; "no horizon" is a legitimate outcome, not an
// error.
inline std::optional<double> prediction_horizon(const CcfResult& ccf) {
  if (ccf.lags.empty()) return std::nullopt;
  std::size_t best = 0;
  for (std::size_t i = 1; i < ccf.values.size(); ++i)
    if (std::abs(ccf.values[i]) > std::abs(ccf.values[best])) best = i;
  if (ccf.lags[best] < 0.0 && ccf.values[best] > 0.0) return -ccf.lags[best];
  return std::nullopt;
}

// Biased FFT estimator: means removed, zero-padded linear correlation,
// normalized by N and the full-sample standard deviations (keeps |C| <= 1).
inline CcfResult estimate_ccf(const Signal& x, const Signal& y, int max_lag) {
  if (x.size() != y.size()) throw std::invalid_argument("estimate_ccf: length mismatch");
  if (max_lag < 1) throw std::invalid_argument("estimate_ccf: max_lag must be >= 1");
  const std::size_t n = x.size();
  if (n < 4 * static_cast<std::size_t>(max_lag))
    throw std::invalid_argument("estimate_ccf: need length >= 4*max_lag");

  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double vx = 0.0, vy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    vx += (x[i] - mx) * (x[i] - mx);
    vy += (y[i] - my) * (y[i] - my);
  }
  vx /= static_cast<double>(n);
  vy /= static_cast<double>(n);
  if (!(vx > 0.0) || !(vy > 0.0)) throw std::invalid_argument("estimate_ccf: constant signal");

  const std::size_t L = detail::next_power_of_two(n + static_cast<std::size_t>(max_lag) + 1);
  std::vector<cdouble> X(L, cdouble(0.0, 0.0)), Y(L, cdouble(0.0, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    X[i] = cdouble(x[i] - mx, 0.0);
    Y[i] = cdouble(y[i] - my, 0.0);
  }
  detail::fft_radix2(X, false);
  detail::fft_radix2(Y, false);
  for (std::size_t i = 0; i < L; ++i) X[i] = std::conj(X[i]) * Y[i];
  detail::fft_radix2(X, true);

  CcfResult out;
  const double scale = 1.0 / (static_cast<double>(n) * std::sqrt(vx * vy));
  out.lags.reserve(2 * static_cast<std::size_t>(max_lag) + 1);
  out.values.reserve(out.lags.capacity());
  for (int lag = -max_lag; lag <= max_lag; ++lag) {
    const std::size_t idx = static_cast<std::size_t>((lag + static_cast<int>(L)) % static_cast<int>(L));
    out.lags.push_back(static_cast<double>(lag));
    out.values.push_back(X[idx].real() * scale);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < out.values.size(); ++i)
    if (std::abs(out.values[i]) > std::abs(out.values[best])) best = i;
  out.extremum_lag = out.lags[best];
  out.horizon = prediction_horizon(out);
  return out;
}

// One row per lag: real part of the normalized gain/phase integrand whose
// integral reproduces the CCF at that lag. The row with the largest integral
// identifies the stationary-phase-dominant lag.
struct StationaryPhaseTable {
  std::vector<double> lags;
  std::vector<double> omegas;
  std::vector<std::vector<double>> integrand;  // [lag][omega]
  std::vector<double> integrals;
  double best_lag = 0.0;
};

inline StationaryPhaseTable stationary_phase_table(const FilterSpec& spec, const PsdSpec& psd,
                                                   const std::vector<double>& lags) {
  if (lags.empty()) throw std::invalid_argument("stationary_phase_table: no lags given");
  const detail::CcfIntegrand quad(spec, psd);

  StationaryPhaseTable t;
  t.lags = lags;
  t.omegas = quad.omegas;
  t.integrand.resize(lags.size());
  t.integrals.resize(lags.size());

  // Deliberately routed through gain and phase (not the complex response):
  // an independent algebraic path against theoretical_ccf.
  const std::size_t npts = quad.omegas.size();
  std::vector<double> gain(npts), phase(npts), dens(npts), weight(npts);
  const double dw = quad.omegas[1] - quad.omegas[0];
  for (std::size_t i = 0; i < npts; ++i) {
    const double w = quad.omegas[i];
    const auto h = detail::response_signed(spec, w);
    gain[i] = std::abs(h);
    phase[i] = std::arg(h);
    dens[i] = psd.density(w);
    weight[i] = (i == 0 || i + 1 == npts) ? 0.5 * dw : dw;
  }

  std::size_t best = 0;
  for (std::size_t j = 0; j < lags.size(); ++j) {
    auto& row = t.integrand[j];
    row.resize(npts);
    double acc = 0.0;
    for (std::size_t i = 0; i < npts; ++i) {
      row[i] = dens[i] * gain[i] * std::cos(phase[i] + quad.omegas[i] * lags[j]) / quad.norm;
      acc += weight[i] * row[i];
    }
    t.integrals[j] = acc;
    if (acc > t.integrals[best]) best = j;
  }
  t.best_lag = lags[best];
  return t;
}

}  // namespace ungd
