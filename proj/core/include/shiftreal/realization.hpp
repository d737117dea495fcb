#pragma once

#include <optional>
#include <vector>

#include "shiftreal/signal.hpp"
#include "shiftreal/symbols.hpp"

namespace shiftreal {

/// Element of H2 of the right half-plane, held by its frequency samples.
/// The time trace is causal up to grid.tail_tol (frequency-defined states
/// carry a little Gibbs leakage from a jump at t = 0).
class StateVector {
public:
    // No causality check; used by operators whose output is causal by construction.
    explicit StateVector(FreqSignal f) : freq_(std::move(f)) {}

    static StateVector zero(const GridConfig& g);
    static StateVector from_time(const TimeSignal& x);   // x must be causal
    static StateVector from_frequency(const FreqSignal& f);  // throws std::domain_error if not causal
    static StateVector from_function(const GridConfig& g, const std::function<cplx(cplx)>& x_of_s);

    const GridConfig& grid() const { return freq_.grid; }
    const FreqSignal& freq() const { return freq_; }
    TimeSignal time() const;  // causal part of the trace
    double norm() const { return shiftreal::norm(freq_); }

private:
    FreqSignal freq_;
};

struct RealizationContext {
    GridConfig grid;
    TransferSymbol symbol;
    std::optional<cplx> feedthrough;
    CVector axis;  // grid representation of G (see axis_samples)

    static RealizationContext make(const GridConfig& grid, const TransferSymbol& symbol);
};

/// Boundary value x(0+) read off the frequency samples: symmetric partial
/// sums over the full and the half band (Nyquist bin excluded) combined by
/// one Richardson step to cancel the 1/W truncation term, doubled because a
/// symmetric sum sees the mean of x(0-) = 0 and x(0+).
cplx boundary_value(const FreqSignal& f);

/// T(t): left shift of the trace by m = t/dt samples, zero filled.
StateVector semigroup_apply(const StateVector& x, double t);

/// (beta - A)^{-1} x with samples (x(iw) - x(beta))/(beta - iw).
StateVector resolvent_apply(const StateVector& x, cplx beta);

/// A x = s x(s) - x(0+).  Throws std::domain_error when more than
/// domain_tol of the result's energy sits in the outer half of the band or
/// at negative times.  Sampled states with a jump at t = 0 leave an O(dt)
/// spectral floor there; a state outside the domain puts about half.
StateVector generator_apply(const StateVector& x, double domain_tol = 0.1);

/// Psi x = C T(.) x, the time trace.
TimeSignal observe_trace(const StateVector& x);

/// x(beta) = C (beta - A)^{-1} x.
cplx point_evaluate(const StateVector& x, cplx beta);

/// (z - A)^{-1} B with samples (G(iw) - G(z))/(z - iw).
StateVector resolvent_of_B(const RealizationContext& ctx, cplx z);

/// P+ (G . u^(-.)): the infinite-time input map.
StateVector control_map(const RealizationContext& ctx, const TimeSignal& u);

/// Adjoint of control_map: P+ of the reflected conj(G) x.
TimeSignal control_map_adjoint(const RealizationContext& ctx, const StateVector& x);

/// |C(z-A)^{-1}B evaluated at s - (G(s)-G(z))/(z-s)| / (1 + |rhs|).
double transfer_identity_residual(const RealizationContext& ctx, cplx s, cplx z);

struct SimulateOptions {
    std::vector<int> snapshots;       // sample indices m at which states are returned
    bool direct_convolution = false;  // slow time-domain sum instead of FFT
};

struct Trajectory {
    std::vector<int> snapshot_indices;
    std::vector<StateVector> states;
    TimeSignal y;
};

/// Trajectory for input u held constant on each cell [t_k, t_k + dt).
/// The trace of x(t_m) at t = 0 is the exact cell-integrated convolution;
/// y(t_m) = C(x(t_m) - (mu - A)^{-1} B u_m) + G(mu) u_m.
Trajectory simulate(const RealizationContext& ctx, const StateVector& x0, const TimeSignal& u, cplx mu,
                    const SimulateOptions& opts = {});

/// Response at t_j to a unit input on the cell [0, dt): the integral of
/// the impulse response over [t_{j-1}, t_j] (including delayed feedthrough).
CVector step_increments(const RealizationContext& ctx, int count);

}  // namespace shiftreal
