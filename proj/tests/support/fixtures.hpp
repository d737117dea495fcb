#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "shiftreal/realization.hpp"
#include "shiftreal/symbols.hpp"

namespace fixtures {

using shiftreal::cplx;

inline shiftreal::GridConfig default_grid() { return {}; }

inline shiftreal::GridConfig small_grid()
{
    shiftreal::GridConfig g;
    g.n = 4096;
    g.dt = 1.0 / 64.0;
    return g;
}

// Horizon 256: the rotation example's kernel decays like e^{-t/4} and wraps
// around the default horizon at the 1e-4 level.
inline shiftreal::GridConfig long_grid()
{
    shiftreal::GridConfig g;
    g.n = 65536;
    return g;
}

inline shiftreal::TransferSymbol lowpass() { return shiftreal::make_rational({1.0}, {1.0, 1.0}); }
inline shiftreal::TransferSymbol blaschke1() { return shiftreal::make_blaschke({1.0}); }
inline shiftreal::TransferSymbol delay1() { return shiftreal::make_delay(1.0); }

inline Eigen::MatrixXcd rotation_a0()
{
    Eigen::MatrixXcd a0(2, 2);
    a0 << 0.0, 1.0, -1.0, 0.0;
    return a0;
}

inline Eigen::VectorXcd unit_b()
{
    Eigen::VectorXcd b(2);
    b << 1.0, 0.0;
    return b;
}

// (s^2 - s/2 + 1)/(s^2 + s/2 + 1)
inline shiftreal::TransferSymbol matinner2() { return shiftreal::inner_from_skew(rotation_a0(), unit_b()); }

inline cplx matinner2_closed(cplx s) { return (s * s - 0.5 * s + 1.0) / (s * s + 0.5 * s + 1.0); }

inline shiftreal::TimeSignal exp_decay(const shiftreal::GridConfig& g, double rate = 1.0)
{
    return shiftreal::TimeSignal::sample(g, shiftreal::Support::causal,
                                         [rate](double t) { return cplx(std::exp(-rate * t)); });
}

inline shiftreal::TimeSignal indicator(const shiftreal::GridConfig& g, double a, double b)
{
    return shiftreal::TimeSignal::sample(g, shiftreal::Support::causal, [=](double t) {
        return cplx(t >= a - 1e-12 && t < b - 1e-12 ? 1.0 : 0.0);
    });
}

inline cplx gaussian_complex(std::mt19937_64& rng)
{
    std::normal_distribution<double> nd;
    return {nd(rng), nd(rng)};
}

inline double rel_diff(const shiftreal::FreqSignal& a, const shiftreal::FreqSignal& b)
{
    return shiftreal::norm(a - b) / std::max(shiftreal::norm(b), 1e-300);
}

inline double rel_diff(const shiftreal::TimeSignal& a, const shiftreal::TimeSignal& b)
{
    return shiftreal::norm(a - b) / std::max(shiftreal::norm(b), 1e-300);
}

// G = D + sum r_i/(s - p_i) driven by a cell-constant input: each mode obeys
// x[m+1] = e^{p dt} x[m] + u_m (e^{p dt} - 1)/p and y_m = D u_m + sum r_i x_i[m].
struct PoleResidue {
    cplx d;
    std::vector<cplx> poles;
    std::vector<cplx> residues;
};

inline shiftreal::CVector zoh_oracle(const PoleResidue& pr, const shiftreal::TimeSignal& u)
{
    const shiftreal::GridConfig& g = u.grid;
    const int N = g.half();
    shiftreal::CVector y = shiftreal::CVector::Zero(N);
    for (std::size_t i = 0; i < pr.poles.size(); ++i) {
        const cplx p = pr.poles[i];
        const cplx e = std::exp(p * g.dt), gain = (e - 1.0) / p;
        cplx x = 0.0;
        for (int m = 0; m < N; ++m) {
            y[m] += pr.residues[i] * x;
            x = e * x + gain * u.at(m);
        }
    }
    for (int m = 0; m < N; ++m) y[m] += pr.d * u.at(m);
    return y;
}

}  // namespace fixtures
