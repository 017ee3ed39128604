// Command-line front end: coefficient design, order selection, streaming
// prediction, spectrum tables, deterministic signal generation, and the
// experiment reproduction harness.
//
// Exit codes: 0 success, 1 I/O failure, 2 usage or parameter error,
// 3 reproduction check failed, 4 reproduction skipped (missing ECG data).

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ungd/ungd.hpp"

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("UNGD_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return static_cast<std::uint64_t>(v);
    std::fprintf(stderr, "warning: ignoring malformed UNGD_SEED '%s'\n", env);
  }
  return 1;
}

bool parse_pair(const std::string& text, double& a, double& b) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return false;
  try {
    a = std::stod(text.substr(0, colon));
    b = std::stod(text.substr(colon + 1));
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

int cmd_coeffs(int order) {
  const auto spec = ungd::make_coefficients(order);
  std::printf("b=%g c=", spec.b);
  for (std::size_t k = 0; k < spec.c.size(); ++k) std::printf("%s%g", k ? "," : "", spec.c[k]);
  std::printf("\n");
  return 0;
}

int cmd_order(double f0) {
  const auto sel = ungd::order_from_cutoff(f0);
  if (sel.clamped)
    std::fprintf(stderr, "warning: cutoff %g is at or above the order-2 cutoff %g; using m=2\n", f0,
                 sel.cutoff);
  std::printf("m=%d f0=%.4g tau_g0=%.3g\n", sel.order, sel.cutoff,
              ungd::zero_freq_group_delay(sel.order));
  return 0;
}

int cmd_predict(int order, const std::string& input, const std::string& output, int stages,
                bool with_ccf, int max_lag, bool raw_int16, bool no_demean, bool discard_warmup) {
  const auto spec = ungd::make_coefficients(order);
  ungd::Signal x;
  std::optional<double> fs;
  if (raw_int16) {
    x = ungd::read_raw_int16(input, !no_demean);
  } else {
    auto file = ungd::read_signal_file(input);
    x = std::move(file.samples);
    fs = file.fs;
  }
  if (x.empty()) throw ungd::io_error("input file has no samples: " + input);

  const ungd::Signal y = ungd::cascade(spec, x, stages);
  ungd::write_signal_file(output, y, fs);

  std::printf("m=%d tau_g0=%.3g n=%zu", order, ungd::zero_freq_group_delay(order), x.size());
  if (with_ccf) {
    ungd::Signal xm = x, ym = y;
    if (discard_warmup) {
      const std::size_t skip = 20 * static_cast<std::size_t>(order);
      if (xm.size() <= skip + 4 * static_cast<std::size_t>(max_lag))
        throw std::invalid_argument("signal too short to discard the warm-up window");
      xm.erase(xm.begin(), xm.begin() + static_cast<std::ptrdiff_t>(skip));
      ym.erase(ym.begin(), ym.begin() + static_cast<std::ptrdiff_t>(skip));
    }
    const auto ccf = ungd::estimate_ccf(xm, ym, max_lag);
    std::size_t best = 0;
    for (std::size_t i = 1; i < ccf.values.size(); ++i)
      if (std::abs(ccf.values[i]) > std::abs(ccf.values[best])) best = i;
    if (ccf.horizon)
      std::printf(" delta=%g ccf_max=%.3g", *ccf.horizon, ccf.values[best]);
    else
      std::printf(" delta=undefined ccf_extremum_lag=%g ccf_value=%.3g", ccf.lags[best],
                  ccf.values[best]);
  }
  std::printf("\n");
  return 0;
}

int cmd_analyze(int order, int grid, const std::string& output) {
  const auto spec = ungd::make_coefficients(order);
  const auto table = ungd::spectrum_table(spec, grid);
  std::vector<std::vector<double>> rows;
  rows.reserve(table.freqs.size());
  for (std::size_t i = 0; i < table.freqs.size(); ++i)
    rows.push_back({table.freqs[i], table.gain[i], table.phase[i], table.phase_delay[i],
                    table.group_delay[i], table.stability[i]});
  ungd::write_tsv(output, {"freq", "gain", "phase", "tau_p", "tau_g", "S"}, rows);
  std::printf("m=%d grid=%d wrote %s\n", order, grid, output.c_str());
  return 0;
}

int cmd_gen(const std::string& kind, std::size_t n, std::uint64_t seed, const std::string& lowpass,
            const std::string& bandpass, const std::string& jumps, bool normalize,
            const std::string& output) {
  if (kind != "noise") throw std::invalid_argument("unknown signal kind: " + kind);
  ungd::NoiseRecipe recipe;
  recipe.n = n;
  recipe.seed = seed;
  recipe.normalize = normalize;
  if (!lowpass.empty() && !bandpass.empty())
    throw std::invalid_argument("--lowpass and --bandpass are mutually exclusive");
  if (!lowpass.empty()) {
    double order = 0.0, fc = 0.0;
    if (!parse_pair(lowpass, order, fc))
      throw std::invalid_argument("--lowpass expects ORDER:FC");
    recipe.band = ungd::NoiseRecipe::Band::lowpass;
    recipe.lowpass_order = static_cast<int>(order);
    recipe.lowpass_fc = fc;
  }
  if (!bandpass.empty()) {
    double lo = 0.0, hi = 0.0;
    if (!parse_pair(bandpass, lo, hi)) throw std::invalid_argument("--bandpass expects FLO:FHI");
    recipe.band = ungd::NoiseRecipe::Band::bandpass;
    recipe.bandpass_lo = lo;
    recipe.bandpass_hi = hi;
  }
  if (!jumps.empty()) {
    double amp = 0.0, period = 0.0;
    if (!parse_pair(jumps, amp, period)) throw std::invalid_argument("--jumps expects AMP:PERIOD");
    recipe.jumps = std::make_pair(amp, static_cast<int>(period));
  }
  const ungd::Signal x = ungd::generate(recipe);
  ungd::write_signal_file(output, x);
  std::printf("wrote %zu samples (seed=%" PRIu64 ") to %s\n", x.size(), seed, output.c_str());
  return 0;
}

int cmd_reproduce(const std::string& figure, const std::string& outdir, const std::string& ecg,
                  double notch_freq, double notch_bw) {
  const auto report = ungd::run_figure(figure, outdir, ecg, notch_freq, notch_bw);
  if (report.skipped) {
    std::printf("SKIP %s: %s\n", report.figure.c_str(), report.skip_reason.c_str());
    return 4;
  }
  bool all = true;
  for (const auto& check : report.checks) {
    std::printf("%s %s/%s: %s\n", check.pass ? "PASS" : "FAIL", report.figure.c_str(),
                check.name.c_str(), check.detail.c_str());
    all = all && check.pass;
  }
  std::printf("%s %s\n", all ? "PASS" : "FAIL", report.figure.c_str());
  return all ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"universal negative-group-delay predictor for band-limited signals"};
  app.require_subcommand(1);

  int order = 0;
  double f0 = 0.0;
  std::string input, output, lowpass, bandpass, jumps, figure, outdir = "reproduce_out", ecg;
  std::string kind = "noise";
  int grid = 4096, stages = 1, max_lag = 50;
  std::size_t n = 1024;
  std::uint64_t seed = default_seed();
  bool with_ccf = false, raw16 = false, no_demean = false, discard_warmup = false, normalize = false;
  double notch_freq = 1.0 / 6.0, notch_bw = 0.01;

  auto* coeffs = app.add_subcommand("coeffs", "print predictor coefficients for an order");
  coeffs->add_option("-m,--order", order, "filter order (>= 2)")->required();

  auto* ord = app.add_subcommand("order", "select the filter order for a signal cutoff frequency");
  ord->add_option("--cutoff", f0, "signal cutoff frequency in (0, 1/2)")->required();

  auto* predict = app.add_subcommand("predict", "run the streaming predictor over a signal file");
  predict->add_option("-m,--order", order, "filter order (>= 2)")->required();
  predict->add_option("-i,--input", input, "input signal file")->required();
  predict->add_option("-o,--output", output, "output signal file")->required();
  predict->add_option("--cascade", stages, "number of cascaded stages (default 1)");
  predict->add_flag("--ccf", with_ccf, "report the empirical prediction horizon and peak correlation");
  predict->add_option("--max-lag", max_lag, "CCF lag range (default 50)");
  predict->add_flag("--raw-int16", raw16, "input is headerless little-endian int16");
  predict->add_flag("--no-demean", no_demean, "skip mean removal when loading raw int16");
  predict->add_flag("--discard-warmup", discard_warmup, "drop the first 20*m samples from the CCF");

  auto* analyze = app.add_subcommand("analyze", "write the spectrum table for an order");
  analyze->add_option("-m,--order", order, "filter order (>= 2)")->required();
  analyze->add_option("--grid", grid, "number of frequency grid points (default 4096)");
  analyze->add_option("-o,--output", output, "output TSV path")->required();

  auto* gen = app.add_subcommand("gen", "generate a deterministic test signal");
  gen->add_option("kind", kind, "signal kind (noise)")->required();
  gen->add_option("--n", n, "number of samples (default 1024)");
  gen->add_option("--seed", seed, "PRNG seed (default 1, or UNGD_SEED)");
  gen->add_option("--lowpass", lowpass, "Butterworth band limit, ORDER:FC");
  gen->add_option("--bandpass", bandpass, "FFT brickwall band, FLO:FHI");
  gen->add_option("--jumps", jumps, "staircase contamination, AMP:PERIOD");
  gen->add_flag("--normalize", normalize, "rescale to unit variance after band shaping");
  gen->add_option("-o,--output", output, "output signal file")->required();

  auto* repro = app.add_subcommand("reproduce", "regenerate an experiment and check its bounds");
  repro->add_option("figure", figure, "figure id, fig1..fig10")->required();
  repro->add_option("--outdir", outdir, "directory for the emitted tables (default reproduce_out)");
  repro->add_option("--ecg", ecg, "user-supplied ECG excerpt (required for fig9/fig10)");
  repro->add_option("--notch", notch_freq, "notch frequency for fig10 (default 1/6)");
  repro->add_option("--notch-bw", notch_bw, "notch bandwidth for fig10 (default 0.01)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (coeffs->parsed()) return cmd_coeffs(order);
    if (ord->parsed()) return cmd_order(f0);
    if (predict->parsed())
      return cmd_predict(order, input, output, stages, with_ccf, max_lag, raw16, no_demean,
                         discard_warmup);
    if (analyze->parsed()) return cmd_analyze(order, grid, output);
    if (gen->parsed()) return cmd_gen(kind, n, seed, lowpass, bandpass, jumps, normalize, output);
    if (repro->parsed()) return cmd_reproduce(figure, outdir, ecg, notch_freq, notch_bw);
  } catch (const ungd::io_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
