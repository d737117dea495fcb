#pragma once

#include <complex>
#include <functional>

#include <Eigen/Core>

namespace shiftreal {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;

/// Periodic sampling grid shared by every operator.
///
/// Samples are stored in DFT order: storage slot i holds signed index
/// k = i for i < n/2 and k = i - n otherwise, at time t_k = k*dt and
/// angular frequency w_k = 2*pi*k/(n*dt).
struct GridConfig {
    int n = 16384;
    double dt = 1.0 / 256.0;
    double tail_tol = 1e-3;

    void validate() const;

    int half() const { return n / 2; }
    double horizon() const { return n * dt; }
    double domega() const;
    double nyquist() const;  // pi/dt

    int signed_index(int slot) const { return slot < n / 2 ? slot : slot - n; }
    int slot(int k) const { return k >= 0 ? k : k + n; }
    double time(int k) const { return k * dt; }
    double omega(int k) const { return k * domega(); }

    bool operator==(const GridConfig& o) const { return n == o.n && dt == o.dt; }
};

enum class Support { causal, anticausal, two_sided };
enum class Half { plus, minus };

struct TimeSignal {
    GridConfig grid;
    Support support = Support::causal;
    CVector samples;  // length n, DFT order; zero outside the support
    bool truncation_suspect = false;

    cplx at(int k) const { return samples[grid.slot(k)]; }

    static TimeSignal zeros(const GridConfig& g, Support s = Support::causal);
    // Samples f(t_k) on the support; t = 0 belongs to the causal side.
    static TimeSignal sample(const GridConfig& g, Support s, const std::function<cplx(double)>& f);
    // Builds a causal signal from values at k = 0, 1, ... (shorter input is zero padded).
    static TimeSignal causal_from(const GridConfig& g, const CVector& values);
};

struct FreqSignal {
    GridConfig grid;
    CVector samples;  // value at i*w_k, DFT order
    bool truncation_suspect = false;

    static FreqSignal zeros(const GridConfig& g);
    static FreqSignal sample(const GridConfig& g, const std::function<cplx(cplx)>& f);
};

// F = dt * FFT(x).  Flags the result when the tail check fails.
FreqSignal to_frequency(const TimeSignal& x);

// Inverse of to_frequency.  Requesting causal (anticausal) support throws
// std::domain_error when the energy on the other side exceeds grid.tail_tol;
// otherwise that residue is dropped.
TimeSignal to_time(const FreqSignal& f, Support support);

// (1/2pi) sum F_k conj(G_k) dw.
cplx inner_product(const FreqSignal& f, const FreqSignal& g);
// dt sum x_k conj(y_k); equal to the frequency form by Parseval.
cplx inner_product(const TimeSignal& x, const TimeSignal& y);

double norm(const FreqSignal& f);
double norm(const TimeSignal& x);

FreqSignal project_h2(const FreqSignal& f, Half half);

// Fraction of energy in the outer 5% of the support window.
double tail_fraction(const TimeSignal& x);
// Fraction of energy at negative (Half::plus) or nonnegative (Half::minus) times.
double leakage_fraction(const FreqSignal& f, Half wanted);

// Cell reflection k -> -k-1: the grid version of t -> -t when sample k
// stands for the cell [t_k, t_k + dt).  Maps causal onto strictly
// anticausal signals and back; it is an involution and unitary.
TimeSignal reflect(const TimeSignal& x);
FreqSignal reflect(const FreqSignal& f);

FreqSignal operator+(const FreqSignal& a, const FreqSignal& b);
FreqSignal operator-(const FreqSignal& a, const FreqSignal& b);
FreqSignal operator*(cplx c, const FreqSignal& a);
TimeSignal operator+(const TimeSignal& a, const TimeSignal& b);
TimeSignal operator-(const TimeSignal& a, const TimeSignal& b);
TimeSignal operator*(cplx c, const TimeSignal& a);

void require_same_grid(const GridConfig& a, const GridConfig& b);

}  // namespace shiftreal
