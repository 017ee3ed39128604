#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ungd {

using Signal = std::vector<double>;

// Pure-IIR predictor: y(t) = b*x(t) - sum_k c[k]*y(t-(m-k)), with
// b = (3+m)/2 and c[k] = (k+1)/m. The feedback taps weight previously
// *predicted* values only; the input enters through the present sample.
struct FilterSpec {
  int order = 0;          // m, number of feedback taps
  double b = 0.0;         // input gain, fixes unit DC gain: b = 1 + sum(c)
  std::vector<double> c;  // c[k] weights the output delayed by (m-k) samples
};

// Running state of one stream: the m most recent outputs.
struct FilterState {
  std::vector<double> history;  // ring: history[(head + j) % m] = y(t-1-j)
  std::size_t head = 0;
  std::uint64_t steps_run = 0;
};

inline FilterSpec make_coefficients(int order) {
  if (order < 2) throw std::invalid_argument("make_coefficients: order must be >= 2");
  FilterSpec spec;
  spec.order = order;
  spec.b = static_cast<double>(3 + order) / 2.0;
  spec.c.resize(static_cast<std::size_t>(order));
  for (int k = 0; k < order; ++k)
    spec.c[static_cast<std::size_t>(k)] = static_cast<double>(k + 1) / static_cast<double>(order);
  return spec;
}

// Demo variant for the stability counterexample: coefficients past k_max are
// zeroed. Not a valid predictor (may be unstable); b is kept at (3+m)/2 so
// spectra scale as in the full filter.
inline FilterSpec make_truncated_coefficients(int order, int k_max) {
  if (order < 2) throw std::invalid_argument("make_truncated_coefficients: order must be >= 2");
  if (k_max < 0 || k_max >= order)
    throw std::invalid_argument("make_truncated_coefficients: k_max must be in [0, order)");
  FilterSpec spec = make_coefficients(order);
  for (int k = k_max + 1; k < order; ++k) spec.c[static_cast<std::size_t>(k)] = 0.0;
  return spec;
}

inline FilterState make_state(const FilterSpec& spec) {
  FilterState state;
  state.history.assign(spec.c.size(), 0.0);
  return state;
}

// One causal update. Rejects non-finite input: a NaN entering the feedback
// history never leaves it.
inline double step(const FilterSpec& spec, FilterState& state, double x) {
  const std::size_t m = spec.c.size();
  if (state.history.size() != m) throw std::invalid_argument("step: state does not match spec order");
  if (!std::isfinite(x)) throw std::invalid_argument("step: non-finite input sample");

  double y = spec.b * x;
  // delay d = m-k samples back: y(t-d) lives at ring slot head+d-1
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t d = m - k;
    y -= spec.c[k] * state.history[(state.head + d - 1) % m];
  }
  if (m > 0) {
    state.head = (state.head + m - 1) % m;
    state.history[state.head] = y;
  }
  ++state.steps_run;
  return y;
}

inline Signal filter(const FilterSpec& spec, const Signal& x, const FilterState* initial = nullptr) {
  if (x.empty()) throw std::invalid_argument("filter: empty input signal");
  FilterState state = initial ? *initial : make_state(spec);
  Signal y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = step(spec, state, x[i]);
  return y;
}

// Feed the output through the same filter again, each stage from zero state.
inline Signal cascade(const FilterSpec& spec, const Signal& x, int stages) {
  if (stages < 1) throw std::invalid_argument("cascade: stages must be >= 1");
  Signal y = filter(spec, x);
  for (int s = 1; s < stages; ++s) y = filter(spec, y);
  return y;
}

}  // namespace ungd
