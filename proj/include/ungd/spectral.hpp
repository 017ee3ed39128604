#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "ungd/filter.hpp"

namespace ungd {

inline constexpr double kPi = 3.14159265358979323846;

namespace detail {

// Real and imaginary parts of the conjugate response denominator:
// R = 1 + sum c_k cos((m-k)w), I = sum c_k sin((m-k)w). The response phase is
// atan(I/R); R equals the stability spectrum.
struct PhaseParts {
  double re = 0.0, im = 0.0;      // R, I
  double dre = 0.0, dim = 0.0;    // dR/dw, dI/dw
};

inline PhaseParts phase_parts(const FilterSpec& spec, double omega) {
  PhaseParts p;
  p.re = 1.0;
  const int m = spec.order;
  for (int k = 0; k < m; ++k) {
    const double d = static_cast<double>(m - k);
    const double ck = spec.c[static_cast<std::size_t>(k)];
    p.re += ck * std::cos(d * omega);
    p.im += ck * std::sin(d * omega);
    p.dre -= ck * d * std::sin(d * omega);
    p.dim += ck * d * std::cos(d * omega);
  }
  return p;
}

inline void check_omega(double omega, const char* who) {
  if (!(omega >= 0.0 && omega <= kPi + 1e-12))
    throw std::invalid_argument(std::string(who) + ": omega must lie in [0, pi]");
}

}  // namespace detail

inline std::complex<double> frequency_response(const FilterSpec& spec, double omega) {
  detail::check_omega(omega, "frequency_response");
  std::complex<double> den(1.0, 0.0);
  const int m = spec.order;
  for (int k = 0; k < m; ++k) {
    const double d = static_cast<double>(m - k);
    den += spec.c[static_cast<std::size_t>(k)] * std::exp(std::complex<double>(0.0, -d * omega));
  }
  return spec.b / den;
}

// Real part of the response denominator; strictly positive for the full
// coefficient set, which is the sufficient stability criterion.
inline double stability_spectrum_direct(const FilterSpec& spec, double omega) {
  detail::check_omega(omega, "stability_spectrum_direct");
  double s = 1.0;
  const int m = spec.order;
  for (int k = 0; k < m; ++k)
    s += spec.c[static_cast<std::size_t>(k)] * std::cos(static_cast<double>(m - k) * omega);
  return s;
}

// Closed form of the stability spectrum for the standard coefficients,
// evaluated via half-angle sines (equal to the quotient
// 1 - (cos(w(m+1)) - (m+1)cos(w) + m) / (2m(1-cos(w))) but free of its
// cancellation near w = 0). Endpoints are substituted with their separately
// derived values: S(0) = (m+3)/2, S(pi) = 1/2 (m even) or (m-1)/(2m) (m odd).
inline double stability_spectrum_closed(int order, double omega) {
  if (order < 2) throw std::invalid_argument("stability_spectrum_closed: order must be >= 2");
  detail::check_omega(omega, "stability_spectrum_closed");
  const double m = static_cast<double>(order);
  if (omega == 0.0) return (m + 3.0) / 2.0;
  if (omega == kPi || omega > kPi) return (order % 2 == 0) ? 0.5 : (m - 1.0) / (2.0 * m);
  const double ratio = std::sin((m + 1.0) * omega / 2.0) / std::sin(omega / 2.0);
  return (m - 1.0) / (2.0 * m) + ratio * ratio / (2.0 * m);
}

// tau_g = -d/dw atan(I/R); the analytic derivative is regular everywhere
// because R > 0, including w = 0 where it reduces to -sum c_k (m-k) / b.
inline double group_delay(const FilterSpec& spec, double omega) {
  detail::check_omega(omega, "group_delay");
  const auto p = detail::phase_parts(spec, omega);
  return -(p.re * p.dim - p.im * p.dre) / (p.re * p.re + p.im * p.im);
}

inline double phase_delay(const FilterSpec& spec, double omega) {
  detail::check_omega(omega, "phase_delay");
  if (omega == 0.0) return group_delay(spec, 0.0);  // limit by L'Hopital
  const auto p = detail::phase_parts(spec, omega);
  return -std::atan2(p.im, p.re) / omega;
}

inline double zero_freq_group_delay(int order) {
  if (order < 2) throw std::invalid_argument("zero_freq_group_delay: order must be >= 2");
  const double m = static_cast<double>(order);
  return -(m * m + 3.0 * m + 2.0) / (3.0 * (m + 3.0));
}

// Smallest normalized frequency where the gain first reaches 3: coarse grid
// bracketing (step 1e-4) followed by bisection to |G - 3| < 1e-8.
inline double cutoff_frequency(int order) {
  const FilterSpec spec = make_coefficients(order);
  const auto gain = [&](double f) { return std::abs(frequency_response(spec, 2.0 * kPi * f)); };
  double lo = 0.0, hi = 0.0;
  for (double f = 1e-4; f < 0.5; f += 1e-4) {
    if (gain(f) >= 3.0) {
      lo = f - 1e-4;
      hi = f;
      break;
    }
  }
  if (hi == 0.0) throw std::runtime_error("cutoff_frequency: no gain-3 crossing found");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g = gain(mid);
    if (std::abs(g - 3.0) < 1e-8) return mid;
    (g < 3.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

struct OrderSelection {
  int order = 0;
  double cutoff = 0.0;  // cutoff_frequency(order)
  bool clamped = false; // f0 was at or above the order-2 cutoff
};

// Conservative inversion of the cutoff curve: the largest m whose cutoff
// still covers f0, so the whole signal band stays inside the predictive band.
inline OrderSelection order_from_cutoff(double f0) {
  if (!(f0 > 0.0)) throw std::invalid_argument("order_from_cutoff: cutoff must be positive");
  double prev = cutoff_frequency(2);
  if (f0 >= prev) return {2, prev, true};
  constexpr int kMaxOrder = 4096;
  for (int m = 3; m <= kMaxOrder; ++m) {
    const double cut = cutoff_frequency(m);
    if (cut >= prev) throw std::runtime_error("order_from_cutoff: cutoff curve not decreasing");
    if (cut < f0) return {m - 1, prev, false};
    prev = cut;
  }
  throw std::runtime_error("order_from_cutoff: cutoff below range of supported orders");
}

// First frequency (rad/sample) where the group delay turns positive.
inline double group_delay_crossover(const FilterSpec& spec) {
  double lo = 0.0, hi = 0.0;
  constexpr int kGrid = 200000;
  double prev_w = 1e-9;
  double prev_tg = group_delay(spec, prev_w);
  for (int i = 1; i <= kGrid; ++i) {
    const double w = kPi * static_cast<double>(i) / kGrid;
    const double tg = group_delay(spec, w);
    if (prev_tg < 0.0 && tg >= 0.0) {
      lo = prev_w;
      hi = w;
      break;
    }
    prev_w = w;
    prev_tg = tg;
  }
  if (hi == 0.0) throw std::runtime_error("group_delay_crossover: no sign change found");
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (group_delay(spec, mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Per-frequency analysis over a uniform grid spanning f in [0, 1/2].
struct SpectrumTable {
  std::vector<double> freqs;
  std::vector<std::complex<double>> response;
  std::vector<double> gain;
  std::vector<double> phase;
  std::vector<double> phase_delay;
  std::vector<double> group_delay;
  std::vector<double> stability;
};

inline SpectrumTable spectrum_table(const FilterSpec& spec, int n_grid) {
  if (n_grid < 2) throw std::invalid_argument("spectrum_table: need at least 2 grid points");
  SpectrumTable t;
  const std::size_t n = static_cast<std::size_t>(n_grid);
  t.freqs.resize(n);
  t.response.resize(n);
  t.gain.resize(n);
  t.phase.resize(n);
  t.phase_delay.resize(n);
  t.group_delay.resize(n);
  t.stability.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = 0.5 * static_cast<double>(i) / static_cast<double>(n - 1);
    const double w = 2.0 * kPi * f;
    const auto p = detail::phase_parts(spec, w);
    t.freqs[i] = f;
    t.response[i] = frequency_response(spec, w);
    t.gain[i] = std::abs(t.response[i]);
    t.phase[i] = std::atan2(p.im, p.re);
    t.phase_delay[i] = phase_delay(spec, w);
    t.group_delay[i] = group_delay(spec, w);
    t.stability[i] = p.re;
  }
  return t;
}

}  // namespace ungd
