#pragma once

// Negative-group-delay prediction of band-limited signals: coefficient
// design, streaming execution, frequency-domain analysis, cross-correlation
// tooling, deterministic test-signal generation, and spectral estimation.

#include "ungd/estimation.hpp"
#include "ungd/fft.hpp"
#include "ungd/filter.hpp"
#include "ungd/io.hpp"
#include "ungd/prediction.hpp"
#include "ungd/reproduce.hpp"
#include "ungd/rng.hpp"
#include "ungd/signal_gen.hpp"
#include "ungd/spectral.hpp"
