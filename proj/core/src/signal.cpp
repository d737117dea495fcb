#include "shiftreal/signal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fft.hpp"

namespace shiftreal {

void GridConfig::validate() const
{
    if (n < 16 || (n & (n - 1)) != 0)
        throw std::invalid_argument("grid size must be a power of two >= 16, got " + std::to_string(n));
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("grid spacing must be positive");
    if (!(tail_tol >= 0.0)) throw std::invalid_argument("tail tolerance must be nonnegative");
}

double GridConfig::domega() const { return 2.0 * std::numbers::pi / (n * dt); }
double GridConfig::nyquist() const { return std::numbers::pi / dt; }

void require_same_grid(const GridConfig& a, const GridConfig& b)
{
    if (!(a == b)) throw std::invalid_argument("grid mismatch");
}

namespace {

bool on_support(Support s, int k)
{
    switch (s) {
    case Support::causal: return k >= 0;
    case Support::anticausal: return k < 0;
    case Support::two_sided: return true;
    }
    return true;
}

Support merge(Support a, Support b) { return a == b ? a : Support::two_sided; }

}  // namespace

TimeSignal TimeSignal::zeros(const GridConfig& g, Support s)
{
    g.validate();
    return TimeSignal{g, s, CVector::Zero(g.n), false};
}

TimeSignal TimeSignal::sample(const GridConfig& g, Support s, const std::function<cplx(double)>& f)
{
    TimeSignal x = zeros(g, s);
    for (int i = 0; i < g.n; ++i) {
        int k = g.signed_index(i);
        if (on_support(s, k)) x.samples[i] = f(g.time(k));
    }
    x.truncation_suspect = tail_fraction(x) > g.tail_tol;
    return x;
}

TimeSignal TimeSignal::causal_from(const GridConfig& g, const CVector& values)
{
    TimeSignal x = zeros(g, Support::causal);
    if (values.size() > g.half()) throw std::invalid_argument("causal data longer than half the grid");
    x.samples.head(values.size()) = values;
    x.truncation_suspect = tail_fraction(x) > g.tail_tol;
    return x;
}

FreqSignal FreqSignal::zeros(const GridConfig& g)
{
    g.validate();
    return FreqSignal{g, CVector::Zero(g.n), false};
}

FreqSignal FreqSignal::sample(const GridConfig& g, const std::function<cplx(cplx)>& f)
{
    FreqSignal F = zeros(g);
    for (int i = 0; i < g.n; ++i) F.samples[i] = f(cplx(0.0, g.omega(g.signed_index(i))));
    return F;
}

double tail_fraction(const TimeSignal& x)
{
    const GridConfig& g = x.grid;
    const int edge = static_cast<int>(std::ceil(0.95 * g.half()));
    double total = 0.0, tail = 0.0;
    for (int i = 0; i < g.n; ++i) {
        int k = g.signed_index(i);
        double e = std::norm(x.samples[i]);
        total += e;
        if (k >= edge || k < -edge) tail += e;
    }
    return total > 0.0 ? tail / total : 0.0;
}

FreqSignal to_frequency(const TimeSignal& x)
{
    x.grid.validate();
    FreqSignal f{x.grid, fft::forward(x.samples) * x.grid.dt, false};
    f.truncation_suspect = x.truncation_suspect || tail_fraction(x) > x.grid.tail_tol;
    return f;
}

double leakage_fraction(const FreqSignal& f, Half wanted)
{
    CVector x = fft::backward(f.samples);
    const GridConfig& g = f.grid;
    double total = 0.0, wrong = 0.0;
    for (int i = 0; i < g.n; ++i) {
        int k = g.signed_index(i);
        double e = std::norm(x[i]);
        total += e;
        bool plus_side = k >= 0;
        if (plus_side != (wanted == Half::plus)) wrong += e;
    }
    return total > 0.0 ? wrong / total : 0.0;
}

TimeSignal to_time(const FreqSignal& f, Support support)
{
    const GridConfig& g = f.grid;
    g.validate();
    TimeSignal x{g, support, fft::backward(f.samples) / (g.n * g.dt), false};
    if (support != Support::two_sided) {
        double total = 0.0, wrong = 0.0;
        for (int i = 0; i < g.n; ++i) {
            double e = std::norm(x.samples[i]);
            total += e;
            if (!on_support(support, g.signed_index(i))) wrong += e;
        }
        if (total > 0.0 && wrong > g.tail_tol * total)
            throw std::domain_error(support == Support::causal
                                        ? "signal is not numerically in H2 of the right half-plane "
                                          "(energy at negative times " + std::to_string(wrong / total) + ")"
                                        : "signal is not numerically in H2 of the left half-plane "
                                          "(energy at nonnegative times " + std::to_string(wrong / total) + ")");
        for (int i = 0; i < g.n; ++i)
            if (!on_support(support, g.signed_index(i))) x.samples[i] = 0.0;
    }
    x.truncation_suspect = f.truncation_suspect || tail_fraction(x) > g.tail_tol;
    return x;
}

cplx inner_product(const FreqSignal& f, const FreqSignal& g)
{
    require_same_grid(f.grid, g.grid);
    // (1/2pi) * dw = 1/(n dt)
    return g.samples.dot(f.samples) / (f.grid.n * f.grid.dt);
}

cplx inner_product(const TimeSignal& x, const TimeSignal& y)
{
    require_same_grid(x.grid, y.grid);
    return y.samples.dot(x.samples) * x.grid.dt;
}

double norm(const FreqSignal& f) { return std::sqrt(f.samples.squaredNorm() / (f.grid.n * f.grid.dt)); }
double norm(const TimeSignal& x) { return std::sqrt(x.samples.squaredNorm() * x.grid.dt); }

FreqSignal project_h2(const FreqSignal& f, Half half)
{
    const GridConfig& g = f.grid;
    CVector x = fft::backward(f.samples);
    for (int i = 0; i < g.n; ++i) {
        bool plus_side = g.signed_index(i) >= 0;
        if (plus_side != (half == Half::plus)) x[i] = 0.0;
    }
    return FreqSignal{g, fft::forward(x) / double(g.n), f.truncation_suspect};
}

TimeSignal reflect(const TimeSignal& x)
{
    const GridConfig& g = x.grid;
    TimeSignal y = TimeSignal::zeros(g, Support::two_sided);
    for (int i = 0; i < g.n; ++i) {
        int k = g.signed_index(i);
        y.samples[g.slot(-k - 1)] = x.samples[i];
    }
    if (x.support == Support::causal) y.support = Support::anticausal;
    if (x.support == Support::anticausal) y.support = Support::causal;
    y.truncation_suspect = x.truncation_suspect;
    return y;
}

FreqSignal reflect(const FreqSignal& f)
{
    // Index reversal w -> -w combined with the half-cell phase exp(i w dt).
    const GridConfig& g = f.grid;
    FreqSignal r = FreqSignal::zeros(g);
    for (int i = 0; i < g.n; ++i) {
        int k = g.signed_index(i);
        int mirror = g.slot(k == -g.half() ? k : -k);
        r.samples[i] = std::polar(1.0, g.omega(k) * g.dt) * f.samples[mirror];
    }
    r.truncation_suspect = f.truncation_suspect;
    return r;
}

FreqSignal operator+(const FreqSignal& a, const FreqSignal& b)
{
    require_same_grid(a.grid, b.grid);
    return FreqSignal{a.grid, a.samples + b.samples, a.truncation_suspect || b.truncation_suspect};
}

FreqSignal operator-(const FreqSignal& a, const FreqSignal& b)
{
    require_same_grid(a.grid, b.grid);
    return FreqSignal{a.grid, a.samples - b.samples, a.truncation_suspect || b.truncation_suspect};
}

FreqSignal operator*(cplx c, const FreqSignal& a) { return FreqSignal{a.grid, c * a.samples, a.truncation_suspect}; }

TimeSignal operator+(const TimeSignal& a, const TimeSignal& b)
{
    require_same_grid(a.grid, b.grid);
    return TimeSignal{a.grid, merge(a.support, b.support), a.samples + b.samples,
                      a.truncation_suspect || b.truncation_suspect};
}

TimeSignal operator-(const TimeSignal& a, const TimeSignal& b)
{
    require_same_grid(a.grid, b.grid);
    return TimeSignal{a.grid, merge(a.support, b.support), a.samples - b.samples,
                      a.truncation_suspect || b.truncation_suspect};
}

TimeSignal operator*(cplx c, const TimeSignal& a)
{
    return TimeSignal{a.grid, a.support, c * a.samples, a.truncation_suspect};
}

}  // namespace shiftreal
