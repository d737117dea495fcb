#pragma once

#include <vector>

#include "shiftreal/signal.hpp"

namespace shiftreal {

/// Causal signal measured in the norm of L2 with weight exp(-weight_rate t).
struct WeightedSignal {
    TimeSignal base;
    double weight_rate = 1.0;
};

/// sqrt(sum |f_k|^2 w_k) with the exact cell weight
/// w_k = int_{t_k}^{t_k+dt} exp(-2 r t) dt, so piecewise constant signals
/// get their exact weighted norm.
double weighted_norm(const WeightedSignal& f);

/// weighted_norm(T(t) f) / weighted_norm(f), with T(t) the zero-filled left
/// shift.  Bounded by exp(r t), with equality when f vanishes on [0, t).
/// Throws std::domain_error when f has zero weighted norm.
double weighted_growth_ratio(const WeightedSignal& f, double t);

/// int_0^t0 |f|^2 / int_0^inf |f|^2 on the grid.  Throws std::domain_error for f = 0.
double finite_time_ratio(const TimeSignal& f, double t0);

struct InequivalenceRow {
    int n = 0;
    double unweighted_norm = 0.0;
    double weighted_norm = 0.0;
    double ratio = 0.0;
};

/// Norms of the bumps 1_[n, n+1) for n = 0..n_max.  Throws
/// std::invalid_argument when the last bump leaves the causal grid.
std::vector<InequivalenceRow> inequivalence_demo(const GridConfig& g, int n_max);

}  // namespace shiftreal
