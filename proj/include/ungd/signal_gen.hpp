#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ungd/fft.hpp"
#include "ungd/filter.hpp"
#include "ungd/rng.hpp"

namespace ungd {

// Seeded i.i.d. standard normal samples (see Rng for the exact generator),
// sample mean subtracted.
inline Signal white_noise(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("white_noise: n must be >= 1");
  Rng rng(seed);
  Signal x(n);
  for (auto& v : x) v = rng.gaussian();
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  for (auto& v : x) v -= mean;
  return x;
}

// One biquad (or first-order) stage, direct form II transposed.
struct SosSection {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;  // numerator
  double a1 = 0.0, a2 = 0.0;            // denominator, a0 normalized to 1
};

using SosChain = std::vector<SosSection>;

// Digital Butterworth lowpass: analog prototype poles, frequency pre-warping,
// bilinear transform, conjugate pairs grouped into second-order sections plus
// one first-order section for odd orders. Every section is normalized to unit
// DC gain.
inline SosChain butterworth_design(int order, double fc) {
  if (order < 1) throw std::invalid_argument("butterworth_design: order must be >= 1");
  if (!(fc > 0.0 && fc < 0.5)) throw std::invalid_argument("butterworth_design: fc must be in (0, 1/2)");

  const double pi = 3.14159265358979323846;
  const double warped = 2.0 * std::tan(pi * fc);  // analog cutoff, T = 1

  SosChain chain;
  const int pairs = order / 2;
  for (int k = 0; k < pairs; ++k) {
    // prototype pole pair at angle pi*(2k+order+1)/(2*order), magnitude "warped"
    const double angle = pi * (2.0 * k + order + 1.0) / (2.0 * order);
    const std::complex<double> s = warped * std::exp(std::complex<double>(0.0, angle));
    const std::complex<double> z = (2.0 + s) / (2.0 - s);
    SosSection sec;
    sec.a1 = -2.0 * z.real();
    sec.a2 = std::norm(z);
    const double g = (1.0 + sec.a1 + sec.a2) / 4.0;  // (1+z^-1)^2 numerator, dc gain 1
    sec.b0 = g;
    sec.b1 = 2.0 * g;
    sec.b2 = g;
    chain.push_back(sec);
  }
  if (order % 2 == 1) {
    const double s = -warped;  // real prototype pole
    const double z = (2.0 + s) / (2.0 - s);
    SosSection sec;
    sec.a1 = -z;
    sec.a2 = 0.0;
    const double g = (1.0 - z) / 2.0;
    sec.b0 = g;
    sec.b1 = g;
    sec.b2 = 0.0;
    chain.push_back(sec);
  }
  return chain;
}

inline std::complex<double> sos_response(const SosChain& chain, double omega) {
  const std::complex<double> z1 = std::exp(std::complex<double>(0.0, -omega));
  const std::complex<double> z2 = z1 * z1;
  std::complex<double> h(1.0, 0.0);
  for (const auto& s : chain)
    h *= (s.b0 + s.b1 * z1 + s.b2 * z2) / (1.0 + s.a1 * z1 + s.a2 * z2);
  return h;
}

// Causal cascade from zero state.
inline Signal sos_apply(const SosChain& chain, const Signal& x) {
  Signal y = x;
  for (const auto& s : chain) {
    double z1 = 0.0, z2 = 0.0;
    for (auto& v : y) {
      const double in = v;
      const double out = s.b0 * in + z1;
      z1 = s.b1 * in - s.a1 * out + z2;
      z2 = s.b2 * in - s.a2 * out;
      v = out;
    }
  }
  return y;
}

inline Signal butterworth_lowpass(const Signal& x, int order, double fc) {
  return sos_apply(butterworth_design(order, fc), x);
}

// White noise masked onto [f_lo, f_hi] (and its mirror) by an FFT brickwall,
// mean-removed and rescaled to unit variance.
inline Signal bandpass_noise(std::size_t n, std::uint64_t seed, double f_lo, double f_hi) {
  if (!(f_lo > 0.0 && f_lo < f_hi && f_hi < 0.5))
    throw std::invalid_argument("bandpass_noise: need 0 < f_lo < f_hi < 1/2");
  if (n < 2) throw std::invalid_argument("bandpass_noise: n must be >= 2");

  Rng rng(seed);
  std::vector<cdouble> spec(n);
  for (auto& v : spec) v = cdouble(rng.gaussian(), 0.0);
  spec = fft(std::move(spec), false);
  bool any = false;
  for (std::size_t k = 0; k < n; ++k) {
    const double f = std::min(k, n - k) / static_cast<double>(n);
    if (f >= f_lo && f <= f_hi) {
      any = true;
    } else {
      spec[k] = cdouble(0.0, 0.0);
    }
  }
  if (!any) throw std::runtime_error("bandpass_noise: band contains no FFT bin at this length");
  spec = fft(std::move(spec), true);

  Signal x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = spec[i].real();
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  double var = 0.0;
  for (auto& v : x) {
    v -= mean;
    var += v * v;
  }
  var /= static_cast<double>(n);
  if (!(var > 0.0)) throw std::runtime_error("bandpass_noise: degenerate output");
  const double scale = 1.0 / std::sqrt(var);
  for (auto& v : x) v *= scale;
  return x;
}

// Cumulative staircase contamination: sample t gains amplitude*floor(t/period),
// then the mean is removed (the predictor assumes zero-mean input).
inline Signal add_jumps(const Signal& x, double amplitude, int period) {
  if (period < 1) throw std::invalid_argument("add_jumps: period must be >= 1");
  Signal out(x.size());
  for (std::size_t t = 0; t < x.size(); ++t)
    out[t] = x[t] + amplitude * static_cast<double>(t / static_cast<std::size_t>(period));
  const double mean = std::accumulate(out.begin(), out.end(), 0.0) / static_cast<double>(out.size());
  for (auto& v : out) v -= mean;
  return out;
}

// Second-order IIR notch: zeros on the unit circle at +-2*pi*f_notch, poles at
// radius exp(-pi*bandwidth), unit DC gain. Applied forward then backward
// (zero phase; this is an off-line cleanup step, not part of the real-time
// path).
inline Signal notch_filter(const Signal& x, double f_notch, double bandwidth) {
  if (!(f_notch > 0.0 && f_notch < 0.5)) throw std::invalid_argument("notch_filter: f_notch must be in (0, 1/2)");
  if (!(bandwidth > 0.0 && bandwidth < f_notch))
    throw std::invalid_argument("notch_filter: bandwidth must be in (0, f_notch)");

  const double pi = 3.14159265358979323846;
  const double w0 = 2.0 * pi * f_notch;
  const double r = std::exp(-pi * bandwidth);
  const double cw = std::cos(w0);
  SosSection sec;
  const double g = (1.0 - 2.0 * r * cw + r * r) / (2.0 - 2.0 * cw);
  sec.b0 = g;
  sec.b1 = -2.0 * g * cw;
  sec.b2 = g;
  sec.a1 = -2.0 * r * cw;
  sec.a2 = r * r;

  Signal y = sos_apply({sec}, x);
  std::reverse(y.begin(), y.end());
  y = sos_apply({sec}, y);
  std::reverse(y.begin(), y.end());
  return y;
}

// Declarative description of the generated test signals; expressible one to
// one as CLI flags.
struct NoiseRecipe {
  std::size_t n = 1024;
  std::uint64_t seed = 1;
  enum class Band { none, lowpass, bandpass } band = Band::none;
  int lowpass_order = 15;
  double lowpass_fc = 0.05;
  double bandpass_lo = 0.05;
  double bandpass_hi = 0.075;
  bool normalize = false;  // rescale to unit variance after band shaping
  std::optional<std::pair<double, int>> jumps;  // amplitude, period
};

inline Signal generate(const NoiseRecipe& recipe) {
  Signal x;
  switch (recipe.band) {
    case NoiseRecipe::Band::bandpass:
      x = bandpass_noise(recipe.n, recipe.seed, recipe.bandpass_lo, recipe.bandpass_hi);
      break;
    case NoiseRecipe::Band::lowpass:
      x = butterworth_lowpass(white_noise(recipe.n, recipe.seed), recipe.lowpass_order,
                              recipe.lowpass_fc);
      break;
    case NoiseRecipe::Band::none:
      x = white_noise(recipe.n, recipe.seed);
      break;
  }
  if (recipe.normalize) {
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    double var = 0.0;
    for (auto& v : x) {
      v -= mean;
      var += v * v;
    }
    var /= static_cast<double>(x.size());
    if (var > 0.0) {
      const double s = 1.0 / std::sqrt(var);
      for (auto& v : x) v *= s;
    }
  }
  if (recipe.jumps) x = add_jumps(x, recipe.jumps->first, recipe.jumps->second);
  return x;
}

}  // namespace ungd
