#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "ungd/estimation.hpp"
#include "ungd/signal_gen.hpp"
#include "ungd/spectral.hpp"

using namespace ungd;

TEST_CASE("welch density of white noise is flat and mass-preserving", "[estimation]") {
  const std::size_t n = 1 << 16;
  const Signal x = white_noise(n, 12);
  const auto psd = welch_psd(x, 256);
  REQUIRE(psd.freqs.size() == 129);

  double var = 0.0;
  for (const double v : x) var += v * v;
  var /= static_cast<double>(n);

  const double df = psd.freqs[1] - psd.freqs[0];
  double mass = 0.0;
  for (const double d : psd.density) {
    CHECK(d >= 0.0);
    mass += d * df;
  }
  CHECK(mass == Catch::Approx(var).epsilon(0.03));

  // flat to within 20% pointwise: unit-variance white noise has one-sided
  // density 2 between DC and Nyquist (those two bins are not doubled)
  for (std::size_t i = 1; i + 1 < psd.density.size(); ++i) {
    INFO("f = " << psd.freqs[i]);
    CHECK(psd.density[i] == Catch::Approx(2.0).epsilon(0.20));
  }
}

TEST_CASE("welch mass check holds for shaped signals", "[estimation]") {
  for (std::uint64_t seed : {1, 2, 3}) {
    const Signal x = butterworth_lowpass(white_noise(1 << 15, seed), 15, 0.05);
    const auto psd = welch_psd(x, 512);
    double var = 0.0, mean = 0.0;
    for (const double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    for (const double v : x) var += (v - mean) * (v - mean);
    var /= static_cast<double>(x.size());
    const double df = psd.freqs[1] - psd.freqs[0];
    double mass = 0.0;
    for (const double d : psd.density) mass += d * df;
    CHECK(mass == Catch::Approx(var).epsilon(0.03));
  }
}

TEST_CASE("a pure tone concentrates at the nearest grid frequency", "[estimation]") {
  const std::size_t n = 1 << 14;
  Signal x(n);
  for (std::size_t t = 0; t < n; ++t) x[t] = std::sin(2.0 * kPi * 0.1 * static_cast<double>(t));
  const auto psd = welch_psd(x, 256);
  std::size_t best = 0;
  for (std::size_t i = 1; i < psd.density.size(); ++i)
    if (psd.density[i] > psd.density[best]) best = i;
  CHECK(psd.freqs[best] == Catch::Approx(0.1).margin(0.5 / 256.0));
}

TEST_CASE("band-limited noise has negligible mass above its cutoff", "[estimation]") {
  const Signal x = butterworth_lowpass(white_noise(1 << 14, 3), 15, 0.05);
  const auto psd = welch_psd(x, 256);
  double above = 0.0, total = 0.0;
  for (std::size_t i = 0; i < psd.freqs.size(); ++i) {
    total += psd.density[i];
    if (psd.freqs[i] > 0.06) above += psd.density[i];
  }
  CHECK(above / total < 0.01);
}

TEST_CASE("welch input validation", "[estimation]") {
  const Signal x = white_noise(256, 1);
  CHECK_THROWS_AS(welch_psd(x, 512), std::invalid_argument);   // longer than the signal
  CHECK_THROWS_AS(welch_psd(x, 100), std::invalid_argument);   // not a power of two
  CHECK_THROWS_AS(welch_psd(x, 256, 1.0), std::invalid_argument);
}

TEST_CASE("identity system recovers a unit response", "[estimation]") {
  const Signal x = white_noise(1 << 14, 21);
  const auto est = estimate_frequency_response(x, x, 256);
  for (std::size_t i = 0; i < est.freqs.size(); ++i) {
    if (!est.reliable[i]) continue;
    CHECK(std::abs(est.values[i] - std::complex<double>(1.0, 0.0)) < 1e-10);
  }
}

TEST_CASE("white-noise driving recovers the predictor response", "[estimation]") {
  const auto spec = make_coefficients(18);
  const Signal x = white_noise(1 << 16, 7);
  const Signal y = filter(spec, x);
  const auto est = estimate_frequency_response(x, y, 1024);
  for (std::size_t i = 0; i < est.freqs.size(); ++i) {
    const double f = est.freqs[i];
    if (f <= 0.0 || f > 0.2 || !est.reliable[i]) continue;
    const auto h = frequency_response(spec, 2.0 * kPi * f);
    INFO("f = " << f);
    CHECK(std::abs(est.values[i]) == Catch::Approx(std::abs(h)).epsilon(0.05));
    CHECK(std::arg(est.values[i]) == Catch::Approx(std::arg(h)).margin(0.05));
  }
}

TEST_CASE("out-of-band bins are flagged unreliable, in-band ones match", "[estimation]") {
  const auto spec = make_coefficients(18);
  const Signal x = butterworth_lowpass(white_noise(1 << 16, 4), 15, 0.05);
  const Signal y = filter(spec, x);
  const auto est = estimate_frequency_response(x, y, 256);
  bool any_unreliable = false;
  for (std::size_t i = 0; i < est.freqs.size(); ++i) {
    const double f = est.freqs[i];
    if (f > 0.2) any_unreliable = any_unreliable || !est.reliable[i];
    if (f > 0.0 && f <= 0.04 && est.reliable[i]) {
      const auto h = frequency_response(spec, 2.0 * kPi * f);
      CHECK(std::abs(est.values[i]) == Catch::Approx(std::abs(h)).epsilon(0.05));
    }
  }
  CHECK(any_unreliable);
}

TEST_CASE("phase fit of an exact pure delay", "[estimation]") {
  FrequencyResponseEstimate est;
  const double delay = 4.0;
  for (int i = 0; i <= 64; ++i) {
    const double f = 0.2 * i / 64.0;
    const double w = 2.0 * kPi * f;
    est.freqs.push_back(f);
    est.values.push_back(std::exp(std::complex<double>(0.0, -w * delay)));
    est.reliable.push_back(true);
  }
  CHECK(phase_fit_group_delay(est, 0.2) == Catch::Approx(delay).margin(1e-9));
}

TEST_CASE("phase fit needs at least three usable bins", "[estimation]") {
  FrequencyResponseEstimate est;
  est.freqs = {0.01, 0.02, 0.03};
  est.values = {{1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}};
  est.reliable = {true, false, false};
  CHECK_THROWS_AS(phase_fit_group_delay(est, 0.05), std::invalid_argument);
}

TEST_CASE("phase unwrapping removes two-pi jumps", "[estimation]") {
  std::vector<double> phase;
  for (int i = 0; i < 50; ++i) {
    double p = -0.4 * i;
    while (p < -kPi) p += 2.0 * kPi;
    phase.push_back(p);
  }
  const auto un = unwrap_phase(phase);
  for (int i = 0; i < 50; ++i) CHECK(un[static_cast<std::size_t>(i)] == Catch::Approx(-0.4 * i).margin(1e-12));
}

TEST_CASE("phase fit on the noise-free response tracks the band average", "[estimation]") {
  // The least-squares slope weighs curvature differently from the plain mean
  // of tau_g; the measured gap reaches 0.29 at order 18.
  for (int m : {8, 18}) {
    const double f0 = (m == 8) ? 0.1 : 0.05;
    const auto spec = make_coefficients(m);
    FrequencyResponseEstimate est;
    for (int i = 1; i <= 400; ++i) {
      const double f = f0 * i / 400.0;
      est.freqs.push_back(f);
      est.values.push_back(frequency_response(spec, 2.0 * kPi * f));
      est.reliable.push_back(true);
    }
    const double fitted = phase_fit_group_delay(est, f0);
    double mean_tg = 0.0;
    const int steps = 4000;
    for (int i = 0; i < steps; ++i)
      mean_tg += group_delay(spec, 2.0 * kPi * f0 * (i + 0.5) / steps);
    mean_tg /= steps;
    INFO("m = " << m << " fit = " << fitted << " band avg = " << mean_tg);
    CHECK(std::abs(fitted - mean_tg) < 0.35);
  }
}
