#include "shiftreal/random_inputs.hpp"

#include <cmath>

namespace shiftreal {

TimeSignal random_causal_signal(const GridConfig& g, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> rate(0.3, 3.0), freq(-6.0, 6.0);
    std::normal_distribution<double> gauss;
    cplx coef[6], expo[6];
    for (int i = 0; i < 6; ++i) {
        coef[i] = cplx(gauss(rng), gauss(rng));
        double a = rate(rng);
        double w = freq(rng);
        expo[i] = cplx(-a, w);
    }
    return TimeSignal::sample(g, Support::causal, [&](double t) {
        cplx acc = 0.0;
        for (int i = 0; i < 6; ++i) acc += coef[i] * std::exp(expo[i] * t);
        return acc;
    });
}

TimeSignal random_window_signal(const GridConfig& g, std::mt19937_64& rng, double width)
{
    std::normal_distribution<double> gauss;
    const int count = std::min(g.half(), static_cast<int>(std::lround(width / g.dt)));
    CVector v(count);
    for (int i = 0; i < count; ++i) {
        double re = gauss(rng);
        double im = gauss(rng);
        v[i] = cplx(re, im);
    }
    return TimeSignal::causal_from(g, v);
}

}  // namespace shiftreal
