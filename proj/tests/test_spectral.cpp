#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "ungd/spectral.hpp"

using namespace ungd;

TEST_CASE("response at zero frequency is exactly one", "[spectral]") {
  for (int m : {2, 3, 8, 18, 40, 100}) {
    const auto h = frequency_response(make_coefficients(m), 0.0);
    CHECK(std::abs(h - std::complex<double>(1.0, 0.0)) < 1e-12);
  }
}

TEST_CASE("order-2 response at Nyquist, hand evaluated", "[spectral]") {
  const auto h = frequency_response(make_coefficients(2), kPi);
  CHECK(h.real() == Catch::Approx(5.0).margin(1e-12));
  CHECK(h.imag() == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("omega outside [0, pi] is rejected", "[spectral]") {
  const auto spec = make_coefficients(4);
  CHECK_THROWS_AS(frequency_response(spec, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(frequency_response(spec, kPi + 0.1), std::invalid_argument);
  CHECK_THROWS_AS(stability_spectrum_direct(spec, -1.0), std::invalid_argument);
}

TEST_CASE("maximum gain of the order-18 filter", "[spectral]") {
  // The largest resonance sits just below Nyquist; the Nyquist value itself
  // is b / S(pi) = 21.
  const auto spec = make_coefficients(18);
  double peak = 0.0;
  for (int i = 0; i <= 400000; ++i) {
    const double w = kPi * i / 400000.0;
    peak = std::max(peak, std::abs(frequency_response(spec, w)));
  }
  CHECK(std::abs(frequency_response(spec, kPi)) == Catch::Approx(21.0).margin(1e-9));
  CHECK(peak > 22.0);
  CHECK(peak < 22.3);
}

TEST_CASE("stability spectrum endpoints", "[spectral]") {
  for (int m = 2; m <= 50; ++m) {
    const auto spec = make_coefficients(m);
    CHECK(stability_spectrum_direct(spec, 0.0) == Catch::Approx((m + 3.0) / 2.0).margin(1e-12));
    const double expected_pi = (m % 2 == 0) ? 0.5 : (m - 1.0) / (2.0 * m);
    CHECK(stability_spectrum_direct(spec, kPi) == Catch::Approx(expected_pi).margin(1e-12));
    CHECK(stability_spectrum_closed(m, 0.0) == (m + 3.0) / 2.0);
    CHECK(stability_spectrum_closed(m, kPi) == Catch::Approx(expected_pi).margin(1e-15));
  }
}

TEST_CASE("closed form agrees with the direct sum away from endpoints", "[spectral]") {
  for (int m = 2; m <= 100; ++m) {
    const auto spec = make_coefficients(m);
    double worst = 0.0;
    for (int i = 0; i <= 512; ++i) {
      const double w = 1e-3 + (kPi - 2e-3) * i / 512.0;
      worst = std::max(worst, std::abs(stability_spectrum_closed(m, w) -
                                       stability_spectrum_direct(spec, w)));
    }
    INFO("m = " << m);
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("closed form hand check at order 2, omega = pi/2", "[spectral]") {
  CHECK(stability_spectrum_closed(2, kPi / 2.0) == Catch::Approx(0.5).margin(1e-14));
  const auto spec = make_coefficients(2);
  CHECK(stability_spectrum_direct(spec, kPi / 2.0) == Catch::Approx(0.5).margin(1e-14));
}

TEST_CASE("closed form tends to b at small omega", "[spectral]") {
  for (int m : {2, 18, 63}) {
    CHECK(stability_spectrum_closed(m, 1e-8) == Catch::Approx((m + 3.0) / 2.0).margin(1e-6));
  }
}

TEST_CASE("stability positive on a dense grid for a spread of orders", "[spectral]") {
  for (int m : {2, 3, 8, 18, 63, 200}) {
    const auto spec = make_coefficients(m);
    double lowest = 1e300;
    for (int i = 0; i < 4096; ++i)
      lowest = std::min(lowest, stability_spectrum_direct(spec, kPi * i / 4095.0));
    INFO("m = " << m);
    CHECK(lowest > 0.0);
  }
}

TEST_CASE("truncating the coefficients loses guaranteed stability", "[spectral]") {
  const auto truncated = make_truncated_coefficients(8, 3);
  const auto full = make_coefficients(8);
  double min_trunc = 1e300, min_full = 1e300;
  for (int i = 0; i < 4096; ++i) {
    const double w = kPi * i / 4095.0;
    min_trunc = std::min(min_trunc, stability_spectrum_direct(truncated, w));
    min_full = std::min(min_full, stability_spectrum_direct(full, w));
  }
  CHECK(min_trunc < 0.0);
  CHECK(min_full > 0.0);
}

TEST_CASE("real part of b/H equals the stability spectrum", "[spectral]") {
  for (int m : {2, 7, 18, 41}) {
    const auto spec = make_coefficients(m);
    for (int i = 0; i <= 200; ++i) {
      const double w = kPi * i / 200.0;
      const double via_response = (spec.b / frequency_response(spec, w)).real();
      CHECK(std::abs(via_response - stability_spectrum_direct(spec, w)) < 1e-10);
    }
  }
}

TEST_CASE("stability proof inequality holds on sampled frequencies", "[spectral]") {
  for (int m = 2; m <= 100; ++m) {
    for (int i = 1; i < 128; ++i) {
      const double w = kPi * i / 128.0;
      CHECK(std::cos(w * (m + 1)) < m + (1.0 - m) * std::cos(w));
    }
  }
}

TEST_CASE("zero-frequency group delay values", "[spectral]") {
  CHECK(zero_freq_group_delay(18) == Catch::Approx(-380.0 / 63.0).margin(1e-15));
  CHECK(zero_freq_group_delay(18) == Catch::Approx(-6.03).margin(0.01));
  CHECK(zero_freq_group_delay(8) == Catch::Approx(-2.73).margin(0.01));
  CHECK(zero_freq_group_delay(9) == Catch::Approx(-3.06).margin(0.01));
  CHECK_THROWS_AS(zero_freq_group_delay(1), std::invalid_argument);
}

TEST_CASE("analytic group delay equals the formula value at omega zero", "[spectral]") {
  for (int m : {2, 8, 18, 40}) {
    const auto spec = make_coefficients(m);
    CHECK(group_delay(spec, 0.0) == Catch::Approx(zero_freq_group_delay(m)).margin(1e-12));
  }
}

namespace {

double wrapped_phase(const FilterSpec& spec, double w) {
  const auto h = frequency_response(spec, w);
  return std::atan2(h.imag(), h.real());
}

}  // namespace

TEST_CASE("analytic group delay matches a finite-difference phase derivative", "[spectral]") {
  const double h = 1e-6;
  for (int m : {2, 8, 18, 40}) {
    const auto spec = make_coefficients(m);
    double worst = 0.0;
    for (int i = 1; i < 400; ++i) {
      const double w = h + (kPi - 2.0 * h) * i / 400.0;
      const double fd = -(wrapped_phase(spec, w + h) - wrapped_phase(spec, w - h)) / (2.0 * h);
      worst = std::max(worst, std::abs(group_delay(spec, w) - fd));
    }
    INFO("m = " << m);
    CHECK(worst < 1e-5);
  }
}

TEST_CASE("group delay of the order-18 filter crosses zero near its cutoff", "[spectral]") {
  const auto spec = make_coefficients(18);
  const double w_cross = group_delay_crossover(spec) / (2.0 * kPi);
  CHECK(w_cross == Catch::Approx(0.05).margin(0.005));
  CHECK(group_delay(spec, 2.0 * kPi * 0.03) < 0.0);
  CHECK(group_delay(spec, 2.0 * kPi * 0.06) > 0.0);
}

TEST_CASE("phase delay limits and signs for order 18", "[spectral]") {
  const auto spec = make_coefficients(18);
  CHECK(phase_delay(spec, 1e-6) == Catch::Approx(zero_freq_group_delay(18)).margin(1e-3));
  CHECK(phase_delay(spec, 0.0) == Catch::Approx(zero_freq_group_delay(18)).margin(1e-12));
  for (int i = 1; i <= 500; ++i) {
    const double w = kPi * i / 500.0;
    CHECK(phase_delay(spec, w) < 0.0);
  }
  // inside the first positive-group-delay band the phase delay stays negative
  for (double f : {0.055, 0.06, 0.07, 0.075}) {
    CHECK(phase_delay(spec, 2.0 * kPi * f) < 0.0);
    CHECK(group_delay(spec, 2.0 * kPi * f) > 0.0);
  }
}

TEST_CASE("theoretical phase never reaches the arctan branch cut", "[spectral]") {
  for (int m : {2, 5, 18, 40}) {
    const auto spec = make_coefficients(m);
    for (int i = 0; i <= 1000; ++i) {
      const double w = kPi * i / 1000.0;
      CHECK(std::abs(wrapped_phase(spec, w)) < kPi / 2.0);
    }
  }
}

TEST_CASE("cutoff frequencies and the reference fit", "[spectral]") {
  const auto fit = [](double m) { return -0.42 / (m * m) + 0.81 / m + 0.005; };
  const double c18 = cutoff_frequency(18);
  const double c8 = cutoff_frequency(8);
  CHECK(c18 >= 0.045);
  CHECK(c18 <= 0.055);
  CHECK(c8 >= 0.095);
  CHECK(c8 <= 0.105);
  for (int m : {4, 8, 18, 40}) CHECK(std::abs(cutoff_frequency(m) - fit(m)) <= 0.005);
  const auto spec = make_coefficients(18);
  CHECK(std::abs(frequency_response(spec, 2.0 * kPi * c18)) == Catch::Approx(3.0).margin(1e-7));
}

TEST_CASE("order selection from the cutoff frequency", "[spectral]") {
  CHECK(order_from_cutoff(0.05).order == 18);
  CHECK(order_from_cutoff(0.1).order == 8);
  const double c12 = cutoff_frequency(12);
  CHECK(order_from_cutoff(c12).order == 12);
  const auto clamped = order_from_cutoff(0.45);
  CHECK(clamped.order == 2);
  CHECK(clamped.clamped);
  CHECK_THROWS_AS(order_from_cutoff(0.0), std::invalid_argument);
  CHECK_THROWS_AS(order_from_cutoff(-0.1), std::invalid_argument);
}

TEST_CASE("gain at the group-delay crossover", "[spectral]") {
  const auto g_at_cross = [](int m) {
    const auto spec = make_coefficients(m);
    return std::abs(frequency_response(spec, group_delay_crossover(spec)));
  };
  CHECK(g_at_cross(4) == Catch::Approx(2.8).margin(0.1));
  CHECK(g_at_cross(40) == Catch::Approx(3.1).margin(0.1));
}

TEST_CASE("spectrum table fills a consistent grid", "[spectral]") {
  const auto spec = make_coefficients(18);
  const auto t = spectrum_table(spec, 1025);
  REQUIRE(t.freqs.size() == 1025);
  CHECK(t.freqs.front() == 0.0);
  CHECK(t.freqs.back() == 0.5);
  CHECK(t.gain.front() == Catch::Approx(1.0).margin(1e-12));
  CHECK(t.phase.front() == Catch::Approx(0.0).margin(1e-12));
  for (std::size_t i = 0; i < t.freqs.size(); ++i) {
    CHECK(t.stability[i] > 0.0);
    CHECK(t.gain[i] == Catch::Approx(std::abs(t.response[i])).margin(1e-14));
    CHECK(std::abs(t.phase[i]) < kPi / 2.0);
  }
  CHECK_THROWS_AS(spectrum_table(spec, 1), std::invalid_argument);
}
