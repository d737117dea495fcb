#include "shiftreal/weighted.hpp"

#include <cmath>
#include <stdexcept>

namespace shiftreal {
namespace {

int steps(double t, const GridConfig& g)
{
    if (!(t >= 0.0)) throw std::invalid_argument("time argument must be nonnegative");
    const double m = t / g.dt;
    const double r = std::round(m);
    if (std::abs(m - r) > 1e-9 * std::max(1.0, m))
        throw std::invalid_argument("time argument must be an integer multiple of dt");
    return static_cast<int>(r);
}

double weighted_energy(const CVector& head, const GridConfig& g, double rate)
{
    // int over one cell of exp(-2 r t), factored as exp(-2 r t_k) * cell
    const double cell = rate == 0.0 ? g.dt : -std::expm1(-2.0 * rate * g.dt) / (2.0 * rate);
    double e = 0.0;
    for (Eigen::Index k = 0; k < head.size(); ++k) e += std::norm(head[k]) * std::exp(-2.0 * rate * g.time(int(k)));
    return e * cell;
}

}  // namespace

double weighted_norm(const WeightedSignal& f)
{
    const GridConfig& g = f.base.grid;
    if (f.base.support != Support::causal) throw std::invalid_argument("weighted signal must be causal");
    return std::sqrt(weighted_energy(f.base.samples.head(g.half()), g, f.weight_rate));
}

double weighted_growth_ratio(const WeightedSignal& f, double t)
{
    const GridConfig& g = f.base.grid;
    const int m = steps(t, g);
    const double base = weighted_norm(f);
    if (base == 0.0) throw std::domain_error("weighted norm of f is zero");
    const int h = g.half();
    CVector shifted = CVector::Zero(h);
    if (m < h) shifted.head(h - m) = f.base.samples.segment(m, h - m);
    return std::sqrt(weighted_energy(shifted, g, f.weight_rate)) / base;
}

double finite_time_ratio(const TimeSignal& f, double t0)
{
    const GridConfig& g = f.grid;
    const int m = std::min(steps(t0, g), g.half());
    const double total = f.samples.head(g.half()).squaredNorm();
    if (total == 0.0) throw std::domain_error("finite_time_ratio of the zero signal");
    return f.samples.head(m).squaredNorm() / total;
}

std::vector<InequivalenceRow> inequivalence_demo(const GridConfig& g, int n_max)
{
    g.validate();
    if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
    const int width = steps(1.0, g);
    if (static_cast<long>(n_max + 1) * width > g.half())
        throw std::invalid_argument("bump 1_[n_max, n_max+1) exceeds the grid horizon");
    std::vector<InequivalenceRow> rows;
    for (int n = 0; n <= n_max; ++n) {
        TimeSignal bump = TimeSignal::zeros(g, Support::causal);
        bump.samples.segment(n * width, width).setOnes();
        InequivalenceRow r;
        r.n = n;
        r.unweighted_norm = norm(bump);
        r.weighted_norm = weighted_norm(WeightedSignal{bump, 1.0});
        r.ratio = r.weighted_norm / r.unweighted_norm;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace shiftreal
