#pragma once

#include <random>

#include "shiftreal/signal.hpp"

namespace shiftreal {

/// Seeded random causal signal: a sum of six damped complex exponentials
/// (rates in [0.3, 3], frequencies in [-6, 6]) times complex Gaussian weights.
/// It is negligible long before the grid horizon.
TimeSignal random_causal_signal(const GridConfig& g, std::mt19937_64& rng);

/// Seeded random causal signal with independent Gaussian samples on [0, width).
TimeSignal random_window_signal(const GridConfig& g, std::mt19937_64& rng, double width);

}  // namespace shiftreal
